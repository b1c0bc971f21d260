#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphchain/candidates.hpp"
#include "morphchain/corpus.hpp"
#include "morphchain/error.hpp"
#include "morphchain/eval.hpp"
#include "morphchain/features.hpp"
#include "morphchain/model.hpp"
#include "morphchain/segmenter.hpp"

namespace {

using namespace morphchain;

std::string format_score(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out << sep;
    out << parts[i];
  }
  return out.str();
}

std::string join_positions(const std::vector<std::size_t>& positions) {
  std::ostringstream out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i > 0) out << ' ';
    out << positions[i];
  }
  return out.str();
}

// One word per line; a trailing "<TAB>count" column is ignored.
std::vector<std::string> read_word_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open word file: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    words.push_back(tab == std::string::npos ? line : line.substr(0, tab));
  }
  if (in.bad()) throw IoError("error reading word file: " + path);
  return words;
}

struct TrainArgs {
  std::string wordlist;
  std::string embeddings;
  std::string out;
  std::uint64_t min_count = 1;
  std::uint64_t affix_threshold = 5;
  std::uint64_t top_affixes = 100;
  std::uint64_t min_shared = 2;
  TrainConfig config;
};

int run_train(const TrainArgs& args) {
  ModelResources resources;
  resources.words = WordList::load(args.wordlist, args.min_count);
  resources.embeddings = EmbeddingTable::load(args.embeddings);
  resources.lexicon = AffixLexicon::build(resources.words, args.affix_threshold, args.top_affixes);
  resources.correlations = CorrelationTable::build(resources.words, resources.lexicon, args.min_shared);

  auto result = train(std::move(resources), args.config);
  save_model(result.model, args.out);

  const auto& trace = result.objective_trace;
  std::cerr << "trained on "
            << std::min<std::uint64_t>(args.config.top_k, result.model.resources().words.size())
            << " words, " << result.model.weights().size() << " features; objective "
            << trace.front() << " -> " << trace.back() << "\n";
  return 0;
}

int run_segment(const std::string& model_path, const std::string& words_path,
                const std::vector<std::string>& words) {
  auto model = load_model(model_path);
  auto inputs = words_path.empty() ? words : read_word_lines(words_path);
  for (const auto& seg : segment_batch(model, inputs)) std::cout << to_line(seg) << "\n";
  return 0;
}

int run_eval(const std::string& model_path, const std::string& gold_path, bool diagnostics) {
  auto model = load_model(model_path);
  auto gold = GoldStandard::load(gold_path);

  std::vector<std::string> words;
  words.reserve(gold.size());
  for (const auto& [word, alternatives] : gold.entries()) words.push_back(word);

  auto report = evaluate(segment_batch(model, words), gold, diagnostics);
  std::cout << format_score(report.precision) << "\t" << format_score(report.recall) << "\t"
            << format_score(report.f1) << "\n";
  std::cout << "hits=" << report.hits << " predicted=" << report.predicted
            << " gold=" << report.gold << " missing_words=" << report.missing_words
            << " skipped_predictions=" << report.skipped_predictions << " averaging=micro\n";
  for (const auto& diag : report.diagnostics) {
    std::cout << diag.word << "\t" << join_positions(diag.predicted) << "\t"
              << join_positions(diag.chosen_gold) << "\n";
  }
  return 0;
}

int run_candidates(const std::string& word) {
  for (const auto& cand : generate_candidates(word)) {
    std::cout << cand.parent << "\t" << to_string(cand.side) << "\t"
              << join(cand.affix_chain, ",") << "\t" << to_string(cand.transform) << "\n";
  }
  return 0;
}

int run_inspect_features(const std::string& word, const std::string& model_path) {
  auto model = load_model(model_path);
  const auto& res = model.resources();
  for (const auto& cand : generate_candidates(word, res.words)) {
    auto features =
        extract_features(word, cand, res.lexicon, res.correlations, res.words, res.embeddings);
    std::cout << cand.parent << "\t" << to_string(cand.side) << "\t";
    bool first = true;
    for (const auto& [name, value] : features) {
      if (!first) std::cout << ",";
      first = false;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", value);
      std::cout << name << "=" << buf;
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"morphological chain segmentation"};
  app.require_subcommand(1);

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "learn a segmentation model from a word list");
  train_cmd->add_option("--wordlist", train_args.wordlist, "word frequency file")->required();
  train_cmd->add_option("--embeddings", train_args.embeddings, "word2vec text embeddings")->required();
  train_cmd->add_option("--out", train_args.out, "model output path")->required();
  train_cmd->add_option("--min-count", train_args.min_count, "drop words rarer than this");
  train_cmd->add_option("--affix-threshold", train_args.affix_threshold,
                        "count affixes of words more frequent than this");
  train_cmd->add_option("--top-affixes", train_args.top_affixes, "affixes kept per side");
  train_cmd->add_option("--min-shared", train_args.min_shared,
                        "stems two affixes must share to correlate");
  train_cmd->add_option("--top-k", train_args.config.top_k, "train on this many frequent words");
  train_cmd->add_option("--epochs", train_args.config.epochs, "gradient ascent epochs");
  train_cmd->add_option("--lr", train_args.config.learning_rate, "learning rate");
  train_cmd->add_option("--l2", train_args.config.l2_lambda, "l2 penalty strength");
  train_cmd->add_option("--lr-decay", train_args.config.lr_decay, "per-epoch learning rate factor");
  train_cmd->add_option("--seed", train_args.config.seed, "seed echoed into the model file");

  std::string segment_model, segment_words_file;
  std::vector<std::string> segment_words;
  auto* segment_cmd = app.add_subcommand("segment", "split words into morphs");
  segment_cmd->add_option("--model", segment_model, "trained model file")->required();
  auto* words_file_opt = segment_cmd->add_option("--words", segment_words_file, "file of words to segment");
  segment_cmd->add_option("word", segment_words, "words to segment")->excludes(words_file_opt);

  std::string eval_model, eval_gold;
  bool eval_diagnostics = false;
  auto* eval_cmd = app.add_subcommand("eval", "score segmentations against a gold standard");
  eval_cmd->add_option("--model", eval_model, "trained model file")->required();
  eval_cmd->add_option("--gold", eval_gold, "gold standard file")->required();
  eval_cmd->add_flag("--diagnostics", eval_diagnostics, "print per-word boundary choices");

  std::string candidates_word;
  auto* candidates_cmd = app.add_subcommand("candidates", "list parent candidates of a word");
  candidates_cmd->add_option("word", candidates_word, "word to expand")->required();

  std::string inspect_word, inspect_model;
  auto* inspect_cmd = app.add_subcommand("inspect-features", "show feature vectors for a word");
  inspect_cmd->add_option("word", inspect_word, "word to inspect")->required();
  inspect_cmd->add_option("--model", inspect_model, "trained model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (train_cmd->parsed()) return run_train(train_args);
    if (segment_cmd->parsed()) {
      if (segment_words.empty() && segment_words_file.empty()) {
        std::cerr << "segment: pass words as arguments or use --words\n";
        return 1;
      }
      return run_segment(segment_model, segment_words_file, segment_words);
    }
    if (eval_cmd->parsed()) return run_eval(eval_model, eval_gold, eval_diagnostics);
    if (candidates_cmd->parsed()) return run_candidates(candidates_word);
    if (inspect_cmd->parsed()) return run_inspect_features(inspect_word, inspect_model);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
