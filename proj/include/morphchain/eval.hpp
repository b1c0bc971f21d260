#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "morphchain/segmenter.hpp"

namespace morphchain {

// Reference segmentations, possibly several alternatives per word.
class GoldStandard {
 public:
  using Analysis = std::vector<std::string>;

  GoldStandard() = default;

  // Lines of the form "word<TAB>analysis" where alternatives are separated by
  // commas and morphs within an alternative by spaces. Morphs must concatenate
  // to the word. Duplicate words have their alternatives appended in file
  // order.
  static GoldStandard load(const std::string& path);

  static GoldStandard from_entries(
      std::vector<std::pair<std::string, std::vector<Analysis>>> entries);

  const std::map<std::string, std::vector<Analysis>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<Analysis>> entries_;
};

struct EvalDiagnostic {
  std::string word;
  std::vector<std::size_t> predicted;
  std::vector<std::size_t> chosen_gold;

  bool operator==(const EvalDiagnostic&) const = default;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t predicted = 0;
  std::uint64_t gold = 0;
  // Predictions for words the gold standard does not cover (not scored).
  std::uint64_t skipped_predictions = 0;
  // Gold words with no prediction (scored against an empty boundary set).
  std::uint64_t missing_words = 0;
  std::vector<EvalDiagnostic> diagnostics;
};

// Micro-averaged boundary precision/recall/F1. For each gold word the
// alternative maximizing that word's F1 against the prediction is chosen
// (ties: fewer boundaries, then file order). Gold words without a prediction
// count as empty predictions; predictions outside the gold standard are
// skipped. Throws std::invalid_argument when no predicted word is in the gold
// standard.
EvalReport evaluate(const std::vector<Segmentation>& preds, const GoldStandard& gold,
                    bool diagnostics = false);

}  // namespace morphchain
