#include "morphchain/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "morphchain/error.hpp"
#include "morphchain/utf8.hpp"

namespace morphchain {

namespace {

// Strips one trailing '\r' so CRLF files parse like LF files.
void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_double(std::string_view text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace

void WordList::finalize() {
  ranked_.clear();
  ranked_.reserve(entries_.size());
  for (const auto& [word, count] : entries_) ranked_.push_back(word);
  std::sort(ranked_.begin(), ranked_.end(), [this](const std::string& a, const std::string& b) {
    const auto ca = entries_.find(a)->second;
    const auto cb = entries_.find(b)->second;
    if (ca != cb) return ca > cb;
    return a < b;
  });
  std::set<char32_t> chars;
  for (const auto& word : ranked_) {
    for (char32_t ch : utf8::decode(word)) chars.insert(ch);
  }
  alphabet_.assign(chars.begin(), chars.end());
}

WordList WordList::load(const std::string& path, std::uint64_t min_count) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open wordlist: " + path);
  WordList list;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    chomp(line);
    if (line.empty()) continue;
    std::string word;
    std::uint64_t count = 1;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      word = line;
    } else {
      word = line.substr(0, tab);
      const std::string_view rest(line.data() + tab + 1, line.size() - tab - 1);
      if (word.empty() || !parse_u64(rest, count)) {
        throw ParseError(path, lineno, "expected 'word<TAB>count', got '" + line + "'");
      }
    }
    if (!utf8::is_valid(word)) throw ParseError(path, lineno, "malformed UTF-8 in word");
    list.entries_[word] += count;
  }
  if (min_count > 1) {
    for (auto it = list.entries_.begin(); it != list.entries_.end();) {
      if (it->second < min_count) {
        it = list.entries_.erase(it);
      } else {
        ++it;
      }
    }
  }
  list.finalize();
  return list;
}

WordList WordList::from_counts(std::vector<std::pair<std::string, std::uint64_t>> counts) {
  WordList list;
  for (auto& [word, count] : counts) list.entries_[std::move(word)] += count;
  list.finalize();
  return list;
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embeddings: " + path);
  EmbeddingTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 1, "missing word2vec header");
  chomp(line);
  const auto header = split_ws(line);
  std::uint64_t declared_count = 0;
  std::uint64_t dim = 0;
  if (header.size() != 2 || !parse_u64(header[0], declared_count) || !parse_u64(header[1], dim) ||
      dim == 0) {
    throw ParseError(path, 1, "expected '<count> <dim>' header, got '" + line + "'");
  }
  table.dim_ = dim;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    chomp(line);
    if (line.empty()) continue;
    const auto fields = split_ws(line);
    if (fields.size() != dim + 1) {
      throw ParseError(path, lineno,
                       "expected word plus " + std::to_string(dim) + " values, got " +
                           std::to_string(fields.size()) + " fields");
    }
    if (!utf8::is_valid(fields[0])) throw ParseError(path, lineno, "malformed UTF-8 in word");
    std::vector<double> vec(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_double(fields[k + 1], vec[k])) {
        throw ParseError(path, lineno, "bad numeric value '" + std::string(fields[k + 1]) + "'");
      }
    }
    table.vectors_[std::string(fields[0])] = std::move(vec);
  }
  return table;
}

EmbeddingTable EmbeddingTable::from_vectors(
    std::size_t dim, std::vector<std::pair<std::string, std::vector<double>>> vectors) {
  EmbeddingTable table;
  table.dim_ = dim;
  for (auto& [word, vec] : vectors) {
    if (vec.size() != dim) throw std::invalid_argument("embedding dimension mismatch");
    table.vectors_[std::move(word)] = std::move(vec);
  }
  return table;
}

std::vector<std::string> EmbeddingTable::sorted_words() const {
  std::vector<std::string> words;
  words.reserve(vectors_.size());
  for (const auto& [word, vec] : vectors_) words.push_back(word);
  std::sort(words.begin(), words.end());
  return words;
}

std::optional<double> cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine: vector length mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace morphchain
