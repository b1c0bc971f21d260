#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morphchain/error.hpp"
#include "morphchain/model.hpp"

namespace morphchain {

namespace {

constexpr std::string_view kMagic = "morphchain-model v1";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_double(std::string_view text, const std::string& path, std::size_t lineno) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(path, lineno, "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

template <typename Int>
Int parse_int(std::string_view text, const std::string& path, std::size_t lineno) {
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(path, lineno, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

struct ConfigEcho {
  TrainConfig config;
  std::uint64_t affix_threshold = 0;
};

ConfigEcho parse_config_line(std::string_view line, const std::string& path) {
  ConfigEcho echo;
  std::set<std::string_view> seen;
  for (std::string_view item : split(line, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(path, 2, "malformed config entry '" + std::string(item) + "'");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "learning_rate") {
      echo.config.learning_rate = parse_double(value, path, 2);
    } else if (key == "epochs") {
      echo.config.epochs = parse_int<std::uint64_t>(value, path, 2);
    } else if (key == "l2_lambda") {
      echo.config.l2_lambda = parse_double(value, path, 2);
    } else if (key == "top_k") {
      echo.config.top_k = parse_int<std::uint64_t>(value, path, 2);
    } else if (key == "seed") {
      echo.config.seed = parse_int<std::int64_t>(value, path, 2);
    } else if (key == "lr_decay") {
      echo.config.lr_decay = parse_double(value, path, 2);
    } else if (key == "affix_threshold") {
      echo.affix_threshold = parse_int<std::uint64_t>(value, path, 2);
    } else {
      throw ParseError(path, 2, "unknown config key '" + std::string(key) + "'");
    }
    seen.insert(key);
  }
  for (const char* key : {"learning_rate", "epochs", "l2_lambda", "top_k", "seed", "lr_decay",
                          "affix_threshold"}) {
    if (seen.count(key) == 0) {
      throw ParseError(path, 2, std::string("missing config key '") + key + "'");
    }
  }
  return echo;
}

Side parse_side(std::string_view text, const std::string& path, std::size_t lineno) {
  if (text == "Suffix") return Side::Suffix;
  if (text == "Prefix") return Side::Prefix;
  throw ParseError(path, lineno, "unknown affix side '" + std::string(text) + "'");
}

enum class Section { None, Weights, Suffixes, Prefixes, Correlations, WordListSec, Embeddings };

}  // namespace

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path);

  out << kMagic << '\n';
  const TrainConfig& c = model.config();
  const std::map<std::string, std::string> echo = {
      {"affix_threshold", std::to_string(model.resources().lexicon.threshold())},
      {"epochs", std::to_string(c.epochs)},
      {"l2_lambda", fmt_double(c.l2_lambda)},
      {"learning_rate", fmt_double(c.learning_rate)},
      {"lr_decay", fmt_double(c.lr_decay)},
      {"seed", std::to_string(c.seed)},
      {"top_k", std::to_string(c.top_k)},
  };
  bool first = true;
  for (const auto& [key, value] : echo) {
    if (!first) out << ',';
    out << key << '=' << value;
    first = false;
  }
  out << '\n';

  out << "[weights]\n";
  for (const auto& [name, value] : model.weights()) {
    out << name << '\t' << fmt_double(value) << '\n';
  }
  out << "[suffixes]\n";
  for (const auto& [affix, count] : model.resources().lexicon.suffixes()) {
    out << affix << '\t' << count << '\n';
  }
  out << "[prefixes]\n";
  for (const auto& [affix, count] : model.resources().lexicon.prefixes()) {
    out << affix << '\t' << count << '\n';
  }
  out << "[correlations]\n";
  for (const auto& [side, a, b, count] : model.resources().correlations.entries()) {
    out << to_string(side) << ' ' << a << ' ' << b << '\t' << count << '\n';
  }
  out << "[wordlist]\n";
  for (const auto& word : model.resources().words.ranked()) {
    out << word << '\t' << model.resources().words.count(word) << '\n';
  }
  out << "[embeddings]\n";
  for (const auto& word : model.resources().embeddings.sorted_words()) {
    out << word << '\t';
    const std::vector<double>& vec = *model.resources().embeddings.find(word);
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (i != 0) out << ' ';
      out << fmt_double(vec[i]);
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing model file: " + path);
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);

  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(path, 1, "empty model file");
  chomp(line);
  if (line != kMagic) {
    throw ParseError(path, 1, "not a '" + std::string(kMagic) + "' file");
  }
  ++lineno;
  if (!std::getline(in, line)) throw ParseError(path, 2, "missing config line");
  chomp(line);
  const ConfigEcho echo = parse_config_line(line, path);

  Model::Weights weights;
  AffixLexicon::Counts suffixes;
  AffixLexicon::Counts prefixes;
  std::vector<CorrelationTable::Entry> correlations;
  std::vector<std::pair<std::string, std::uint64_t>> word_counts;
  std::vector<std::pair<std::string, std::vector<double>>> vectors;

  Section section = Section::None;
  while (std::getline(in, line)) {
    ++lineno;
    chomp(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[weights]") {
        section = Section::Weights;
      } else if (line == "[suffixes]") {
        section = Section::Suffixes;
      } else if (line == "[prefixes]") {
        section = Section::Prefixes;
      } else if (line == "[correlations]") {
        section = Section::Correlations;
      } else if (line == "[wordlist]") {
        section = Section::WordListSec;
      } else if (line == "[embeddings]") {
        section = Section::Embeddings;
      } else {
        throw ParseError(path, lineno, "unknown section " + line);
      }
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path, lineno, "expected name<TAB>value");
    }
    const std::string name = line.substr(0, tab);
    const std::string_view value = std::string_view(line).substr(tab + 1);
    switch (section) {
      case Section::None:
        throw ParseError(path, lineno, "content before any section header");
      case Section::Weights:
        weights[name] = parse_double(value, path, lineno);
        break;
      case Section::Suffixes:
        suffixes[name] = parse_int<std::uint64_t>(value, path, lineno);
        break;
      case Section::Prefixes:
        prefixes[name] = parse_int<std::uint64_t>(value, path, lineno);
        break;
      case Section::Correlations: {
        const std::vector<std::string_view> parts = split(name, ' ');
        if (parts.size() != 3) {
          throw ParseError(path, lineno, "correlation key must be 'Side affix affix'");
        }
        correlations.emplace_back(parse_side(parts[0], path, lineno), std::string(parts[1]),
                                  std::string(parts[2]),
                                  parse_int<std::uint64_t>(value, path, lineno));
        break;
      }
      case Section::WordListSec:
        word_counts.emplace_back(name, parse_int<std::uint64_t>(value, path, lineno));
        break;
      case Section::Embeddings: {
        std::vector<double> vec;
        for (std::string_view part : split(value, ' ')) {
          vec.push_back(parse_double(part, path, lineno));
        }
        vectors.emplace_back(name, std::move(vec));
        break;
      }
    }
  }

  ModelResources resources;
  resources.words = WordList::from_counts(std::move(word_counts));
  const std::size_t dim = vectors.empty() ? 0 : vectors.front().second.size();
  resources.embeddings = EmbeddingTable::from_vectors(dim, std::move(vectors));
  resources.lexicon = AffixLexicon::from_counts(std::move(suffixes), std::move(prefixes),
                                                echo.affix_threshold);
  resources.correlations = CorrelationTable::from_counts(std::move(correlations));

  Model model(std::move(resources), echo.config);
  model.set_weights(std::move(weights));
  return model;
}

}  // namespace morphchain
