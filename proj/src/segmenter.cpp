#include "morphchain/segmenter.hpp"

#include <set>
#include <stdexcept>
#include <utility>

#include "morphchain/utf8.hpp"

namespace morphchain {

namespace {

// True when candidate a should win over b: higher probability, then Stop,
// then the longer parent, then the smaller parent, then the overall candidate
// order so every tie is resolved.
bool prefer(const std::pair<Candidate, double>& a, const std::pair<Candidate, double>& b) {
  if (a.second != b.second) return a.second > b.second;
  const bool a_stop = a.first.side == Side::Stop;
  const bool b_stop = b.first.side == Side::Stop;
  if (a_stop != b_stop) return a_stop;
  const std::size_t a_len = utf8::length(a.first.parent);
  const std::size_t b_len = utf8::length(b.first.parent);
  if (a_len != b_len) return a_len > b_len;
  if (a.first.parent != b.first.parent) return a.first.parent < b.first.parent;
  return candidate_less(a.first, b.first);
}

// Segments the word's prefix of the given length, accumulating boundaries.
void descend(const Model& model, const std::u32string& word, std::size_t level,
             std::set<std::size_t>& bounds) {
  const auto dist = model.conditional(utf8::encode(word.substr(0, level)));
  const std::pair<Candidate, double>* best = &dist.front();
  for (const auto& entry : dist) {
    if (prefer(entry, *best)) best = &entry;
  }
  const Candidate& z = best->first;
  if (z.side == Side::Stop) return;
  if (z.side == Side::Prefix) {
    bounds.insert(utf8::length(z.surface_affix));
    return;
  }
  std::size_t pos = level;
  for (const auto& affix : z.affix_chain) {
    pos -= utf8::length(affix);
    bounds.insert(pos);
  }
  descend(model, word, pos, bounds);
}

}  // namespace

Segmentation segment(const Model& model, const std::string& word) {
  const std::u32string w = utf8::decode(word);
  if (w.empty()) throw std::invalid_argument("cannot segment an empty word");
  std::set<std::size_t> bounds;
  descend(model, w, w.size(), bounds);

  Segmentation seg;
  seg.word = word;
  seg.boundaries.assign(bounds.begin(), bounds.end());
  seg.morphs.reserve(seg.boundaries.size() + 1);
  std::size_t start = 0;
  for (const std::size_t b : seg.boundaries) {
    seg.morphs.push_back(utf8::encode(w.substr(start, b - start)));
    start = b;
  }
  seg.morphs.push_back(utf8::encode(w.substr(start)));
  return seg;
}

std::vector<Segmentation> segment_batch(const Model& model,
                                        const std::vector<std::string>& words) {
  std::vector<Segmentation> out;
  out.reserve(words.size());
  for (const auto& word : words) out.push_back(segment(model, word));
  return out;
}

std::string to_line(const Segmentation& seg) {
  std::string line = seg.word;
  line += '\t';
  for (std::size_t i = 0; i < seg.morphs.size(); ++i) {
    if (i != 0) line += ' ';
    line += seg.morphs[i];
  }
  return line;
}

}  // namespace morphchain
