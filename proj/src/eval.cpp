#include "morphchain/eval.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "morphchain/error.hpp"
#include "morphchain/utf8.hpp"

namespace morphchain {

namespace {

std::vector<std::string> split_morphs(std::string_view text) {
  std::vector<std::string> morphs;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    if (end > pos) morphs.emplace_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return morphs;
}

void check_analysis(const std::string& path, std::size_t lineno, const std::string& word,
                    const std::vector<std::string>& morphs) {
  if (morphs.empty())
    throw ParseError(path, lineno, "empty analysis for '" + word + "'");
  std::string joined;
  for (const auto& m : morphs) joined += m;
  if (joined != word)
    throw ParseError(path, lineno,
                     "morphs spell '" + joined + "', not '" + word + "'");
  for (const auto& m : morphs) {
    if (!utf8::is_valid(m))
      throw ParseError(path, lineno, "malformed UTF-8 in analysis of '" + word + "'");
  }
}

std::vector<std::size_t> analysis_boundaries(const GoldStandard::Analysis& morphs) {
  std::vector<std::size_t> bounds;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < morphs.size(); ++i) {
    pos += utf8::length(morphs[i]);
    bounds.push_back(pos);
  }
  return bounds;
}

std::size_t intersection_size(const std::vector<std::size_t>& a,
                              const std::vector<std::size_t>& b) {
  std::size_t count = 0;
  auto it = a.begin();
  for (std::size_t x : b) {
    while (it != a.end() && *it < x) ++it;
    if (it != a.end() && *it == x) ++count;
  }
  return count;
}

double ratio(std::uint64_t hits, std::uint64_t total, std::uint64_t other_total) {
  if (total == 0) return other_total == 0 ? 1.0 : 0.0;
  return static_cast<double>(hits) / static_cast<double>(total);
}

double f_score(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

GoldStandard GoldStandard::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open gold standard file: " + path);

  GoldStandard gold;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(path, lineno, "expected 'word<TAB>analysis'");
    std::string word = line.substr(0, tab);
    if (word.empty()) throw ParseError(path, lineno, "empty word");
    if (!utf8::is_valid(word))
      throw ParseError(path, lineno, "malformed UTF-8 in word");

    auto& alternatives = gold.entries_[word];
    std::string_view rest = std::string_view(line).substr(tab + 1);
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = rest.find(',', pos);
      auto part = rest.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                   : comma - pos);
      auto morphs = split_morphs(part);
      check_analysis(path, lineno, word, morphs);
      alternatives.push_back(std::move(morphs));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  if (in.bad()) throw IoError("error reading gold standard file: " + path);
  return gold;
}

GoldStandard GoldStandard::from_entries(
    std::vector<std::pair<std::string, std::vector<Analysis>>> entries) {
  GoldStandard gold;
  for (auto& [word, alternatives] : entries) {
    if (word.empty()) throw std::invalid_argument("empty word in gold standard");
    if (alternatives.empty())
      throw std::invalid_argument("no analyses for '" + word + "'");
    for (const auto& morphs : alternatives) {
      std::string joined;
      for (const auto& m : morphs) joined += m;
      if (morphs.empty() || joined != word)
        throw std::invalid_argument("morphs do not spell '" + word + "'");
    }
    auto& slot = gold.entries_[word];
    slot.insert(slot.end(), std::make_move_iterator(alternatives.begin()),
                std::make_move_iterator(alternatives.end()));
  }
  return gold;
}

EvalReport evaluate(const std::vector<Segmentation>& preds, const GoldStandard& gold,
                    bool diagnostics) {
  std::map<std::string, const Segmentation*> by_word;
  std::uint64_t skipped = 0;
  for (const auto& seg : preds) {
    if (gold.entries().count(seg.word) == 0) {
      ++skipped;
      continue;
    }
    by_word[seg.word] = &seg;
  }
  if (by_word.empty())
    throw std::invalid_argument("no predicted word appears in the gold standard");

  EvalReport report;
  report.skipped_predictions = skipped;
  static const std::vector<std::size_t> kNoBoundaries;

  for (const auto& [word, alternatives] : gold.entries()) {
    auto found = by_word.find(word);
    const std::vector<std::size_t>* pred = &kNoBoundaries;
    if (found != by_word.end()) {
      pred = &found->second->boundaries;
    } else {
      ++report.missing_words;
    }

    // Pick the alternative this prediction matches best; ties go to the
    // alternative with fewer boundaries, then the earlier one.
    const std::vector<std::size_t>* best = nullptr;
    double best_f1 = -1.0;
    std::size_t best_hits = 0;
    std::vector<std::vector<std::size_t>> bound_sets;
    bound_sets.reserve(alternatives.size());
    for (const auto& morphs : alternatives) bound_sets.push_back(analysis_boundaries(morphs));
    for (const auto& bounds : bound_sets) {
      std::size_t hits = intersection_size(*pred, bounds);
      double p = ratio(hits, pred->size(), bounds.size());
      double r = ratio(hits, bounds.size(), pred->size());
      double f1 = f_score(p, r);
      if (best == nullptr || f1 > best_f1 ||
          (f1 == best_f1 && bounds.size() < best->size())) {
        best = &bounds;
        best_f1 = f1;
        best_hits = hits;
      }
    }

    report.hits += best_hits;
    report.predicted += pred->size();
    report.gold += best->size();
    if (diagnostics) report.diagnostics.push_back({word, *pred, *best});
  }

  report.precision = ratio(report.hits, report.predicted, report.gold);
  report.recall = ratio(report.hits, report.gold, report.predicted);
  report.f1 = f_score(report.precision, report.recall);
  return report;
}

}  // namespace morphchain
