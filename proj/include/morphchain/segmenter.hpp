#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "morphchain/model.hpp"

namespace morphchain {

struct Segmentation {
  std::string word;
  // Split positions in scalar-value counts, strictly increasing, each in
  // (0, length); a boundary at i separates characters i-1 and i.
  std::vector<std::size_t> boundaries;
  // Surface segments induced by the boundaries; they concatenate to word.
  std::vector<std::string> morphs;

  bool operator==(const Segmentation&) const = default;
};

// Repeatedly takes the most probable candidate of the current surface prefix:
// Stop ends the recursion, a suffix candidate contributes one boundary per
// strip-chain element and recurses on the remaining prefix, a prefix candidate
// contributes one boundary and ends. Probability ties prefer Stop, then the
// longer parent, then the lexicographically smaller one. Boundaries always
// live on the original surface, also when a spelling change altered the
// parent.
Segmentation segment(const Model& model, const std::string& word);

std::vector<Segmentation> segment_batch(const Model& model,
                                        const std::vector<std::string>& words);

// "word<TAB>morph1 morph2 ... morphK"
std::string to_line(const Segmentation& seg);

}  // namespace morphchain
