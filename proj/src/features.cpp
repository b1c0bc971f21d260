#include "morphchain/features.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>
#include <stdexcept>

#include "morphchain/utf8.hpp"

namespace morphchain {

namespace {

using Counts = AffixLexicon::Counts;

// Keep the top_n highest counts, breaking count ties toward smaller names.
Counts truncate_counts(const Counts& counts, std::size_t top_n) {
  if (counts.size() <= top_n) return counts;
  std::vector<std::pair<std::string, std::uint64_t>> order(counts.begin(), counts.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  order.resize(top_n);
  return Counts(order.begin(), order.end());
}

// Calls fn(len, stem_len) for every affix length where the complementary stem
// keeps at least half of an n-character word.
template <typename Fn>
void for_each_affix_split(std::size_t n, Fn&& fn) {
  for (std::size_t len = 1; len <= 4 && len < n; ++len) {
    const std::size_t stem = n - len;
    if (2 * stem < n) continue;
    fn(len, stem);
  }
}

void check(bool ok, const std::string& word) {
  if (!ok) throw std::invalid_argument("candidate does not belong to word '" + word + "'");
}

// Structural consistency between a candidate and the word it claims to come
// from: chain elements must re-spell the stripped surface, and the parent must
// re-spell the remaining stem under the declared spelling change.
void validate(const std::string& word, const Candidate& cand) {
  const std::u32string w = utf8::decode(word);
  check(!w.empty(), word);
  switch (cand.side) {
    case Side::Stop:
      check(cand.parent == word && cand.affix_chain.empty() && cand.surface_affix.empty() &&
                cand.transform.kind == TransformKind::None,
            word);
      return;
    case Side::Prefix: {
      check(cand.affix_chain.empty() && cand.transform.kind == TransformKind::None, word);
      check(!cand.parent.empty() && !cand.surface_affix.empty(), word);
      const std::string head = cand.surface_affix + cand.parent;
      check(head.size() <= word.size() && word.compare(0, head.size(), head) == 0, word);
      const std::size_t plen = utf8::length(cand.parent);
      const std::size_t level = utf8::length(head);
      check(plen <= 4 && 2 * plen >= level, word);
      return;
    }
    case Side::Suffix:
      break;
  }
  check(!cand.affix_chain.empty(), word);
  std::string stripped;
  for (auto it = cand.affix_chain.rbegin(); it != cand.affix_chain.rend(); ++it) {
    const std::size_t len = utf8::length(*it);
    check(len >= 1 && len <= 4, word);
    stripped += *it;
  }
  check(stripped == cand.surface_affix, word);
  check(cand.surface_affix.size() < word.size() &&
            word.compare(word.size() - cand.surface_affix.size(), std::string::npos,
                         cand.surface_affix) == 0,
        word);
  const std::string stem = word.substr(0, word.size() - cand.surface_affix.size());
  switch (cand.transform.kind) {
    case TransformKind::None:
      check(cand.parent == stem, word);
      break;
    case TransformKind::Repeat: {
      const std::string repeated = utf8::encode(cand.transform.ch);
      check(cand.parent + repeated == stem, word);
      check(cand.parent.size() >= repeated.size() &&
                cand.parent.compare(cand.parent.size() - repeated.size(), std::string::npos,
                                    repeated) == 0,
            word);
      break;
    }
    case TransformKind::Delete:
      check(cand.parent == stem + utf8::encode(cand.transform.ch), word);
      check(cand.parent != word, word);
      break;
    case TransformKind::Modify: {
      const std::u32string s32 = utf8::decode(stem);
      const std::u32string p32 = utf8::decode(cand.parent);
      check(!s32.empty() && s32.size() == p32.size(), word);
      check(s32.compare(0, s32.size() - 1, p32, 0, p32.size() - 1) == 0, word);
      check(p32.back() == cand.transform.ch && s32.back() != cand.transform.ch, word);
      break;
    }
  }
}

void add_stop_features(const std::string& word, const WordList& words, const EmbeddingTable& emb,
                       FeatureVector& fv) {
  const std::u32string w = utf8::decode(word);
  if (const auto* wv = emb.find(word)) {
    std::optional<double> best;
    for (const auto& parent : first_level_parents(word, words)) {
      const auto* pv = emb.find(parent);
      if (pv == nullptr) continue;
      const auto cos = cosine(*wv, *pv);
      if (cos && (!best || *cos > *best)) best = *cos;
    }
    if (best) fv["stop_cos_max:" + std::to_string(cosine_bin(*best))] = 1.0;
  }
  fv["stop_len:" + std::to_string(std::min<std::size_t>(w.size(), 10))] = 1.0;
  fv["stop_begin:" + utf8::encode(w.front())] = 1.0;
  fv["stop_end:" + utf8::encode(w.back())] = 1.0;
}

}  // namespace

AffixLexicon AffixLexicon::build(const WordList& words, std::uint64_t threshold,
                                 std::size_t top_n) {
  Counts suffixes;
  Counts prefixes;
  for (const auto& [word, count] : words.entries()) {
    if (count <= threshold) continue;
    const std::u32string w = utf8::decode(word);
    for_each_affix_split(w.size(), [&](std::size_t len, std::size_t stem) {
      suffixes[utf8::encode(w.substr(stem))] += 1;
      prefixes[utf8::encode(w.substr(0, len))] += 1;
    });
  }
  AffixLexicon lex;
  lex.suffixes_ = truncate_counts(suffixes, top_n);
  lex.prefixes_ = truncate_counts(prefixes, top_n);
  lex.threshold_ = threshold;
  return lex;
}

AffixLexicon AffixLexicon::from_counts(Counts suffixes, Counts prefixes, std::uint64_t threshold) {
  AffixLexicon lex;
  lex.suffixes_ = std::move(suffixes);
  lex.prefixes_ = std::move(prefixes);
  lex.threshold_ = threshold;
  return lex;
}

bool AffixLexicon::contains(Side side, std::string_view affix) const {
  return count(side, affix) != 0;
}

std::uint64_t AffixLexicon::count(Side side, std::string_view affix) const {
  const Counts* table = nullptr;
  if (side == Side::Suffix) table = &suffixes_;
  if (side == Side::Prefix) table = &prefixes_;
  if (table == nullptr) return 0;
  auto it = table->find(std::string(affix));
  return it == table->end() ? 0 : it->second;
}

CorrelationTable CorrelationTable::build(const WordList& words, const AffixLexicon& lexicon,
                                         std::uint64_t min_shared) {
  std::map<std::string, std::set<std::string>> suffix_stems;
  std::map<std::string, std::set<std::string>> prefix_stems;
  for (const auto& [word, count] : words.entries()) {
    const std::u32string w = utf8::decode(word);
    for_each_affix_split(w.size(), [&](std::size_t len, std::size_t stem) {
      const std::string suffix = utf8::encode(w.substr(stem));
      if (lexicon.contains(Side::Suffix, suffix)) {
        suffix_stems[suffix].insert(utf8::encode(w.substr(0, stem)));
      }
      const std::string prefix = utf8::encode(w.substr(0, len));
      if (lexicon.contains(Side::Prefix, prefix)) {
        prefix_stems[prefix].insert(utf8::encode(w.substr(len)));
      }
    });
  }
  auto pair_up = [min_shared](const std::map<std::string, std::set<std::string>>& stems) {
    PairMap pairs;
    for (auto i = stems.begin(); i != stems.end(); ++i) {
      for (auto j = std::next(i); j != stems.end(); ++j) {
        std::vector<std::string> shared;
        std::set_intersection(i->second.begin(), i->second.end(), j->second.begin(),
                              j->second.end(), std::back_inserter(shared));
        if (shared.size() >= min_shared) pairs[{i->first, j->first}] = shared.size();
      }
    }
    return pairs;
  };
  CorrelationTable table;
  table.suffix_pairs_ = pair_up(suffix_stems);
  table.prefix_pairs_ = pair_up(prefix_stems);
  table.index();
  return table;
}

CorrelationTable CorrelationTable::from_counts(std::vector<Entry> entries) {
  CorrelationTable table;
  for (auto& [side, a, b, count] : entries) {
    if (side == Side::Stop || a == b) throw std::invalid_argument("bad correlation entry");
    auto key = std::minmax(a, b);
    auto& pairs = side == Side::Suffix ? table.suffix_pairs_ : table.prefix_pairs_;
    pairs[{key.first, key.second}] = count;
  }
  table.index();
  return table;
}

void CorrelationTable::index() {
  suffix_partners_.clear();
  prefix_partners_.clear();
  auto fill = [](const PairMap& pairs, Adjacency& adj) {
    for (const auto& [key, count] : pairs) {
      adj[key.first].push_back(key.second);
      adj[key.second].push_back(key.first);
    }
    for (auto& [affix, partners] : adj) std::sort(partners.begin(), partners.end());
  };
  fill(suffix_pairs_, suffix_partners_);
  fill(prefix_pairs_, prefix_partners_);
}

std::uint64_t CorrelationTable::count(Side side, std::string_view a, std::string_view b) const {
  if (side == Side::Stop) return 0;
  std::string lo(a);
  std::string hi(b);
  if (hi < lo) std::swap(lo, hi);
  const PairMap& pairs = side == Side::Suffix ? suffix_pairs_ : prefix_pairs_;
  auto it = pairs.find({lo, hi});
  return it == pairs.end() ? 0 : it->second;
}

bool CorrelationTable::correlated(Side side, std::string_view a, std::string_view b) const {
  return count(side, a, b) != 0;
}

const std::vector<std::string>& CorrelationTable::partners(Side side,
                                                           std::string_view affix) const {
  static const std::vector<std::string> kEmpty;
  if (side == Side::Stop) return kEmpty;
  const Adjacency& adj = side == Side::Suffix ? suffix_partners_ : prefix_partners_;
  auto it = adj.find(affix);
  return it == adj.end() ? kEmpty : it->second;
}

std::vector<CorrelationTable::Entry> CorrelationTable::entries() const {
  std::vector<Entry> out;
  out.reserve(size());
  for (const auto& [key, count] : suffix_pairs_) {
    out.emplace_back(Side::Suffix, key.first, key.second, count);
  }
  for (const auto& [key, count] : prefix_pairs_) {
    out.emplace_back(Side::Prefix, key.first, key.second, count);
  }
  return out;
}

int cosine_bin(double cos) {
  const int bin = static_cast<int>(std::floor((cos + 1.0) * 10.0));
  return std::clamp(bin, 0, 19);
}

FeatureVector extract_features(const std::string& word, const Candidate& cand,
                               const AffixLexicon& lexicon, const CorrelationTable& corr,
                               const WordList& words, const EmbeddingTable& emb) {
  validate(word, cand);
  FeatureVector fv;
  if (cand.side == Side::Stop) {
    add_stop_features(word, words, emb, fv);
  } else {
    const std::string side = to_string(cand.side);
    if (const auto* wv = emb.find(word)) {
      if (const auto* pv = emb.find(cand.parent)) {
        if (const auto cos = cosine(*wv, *pv)) {
          fv["cos_bin:" + std::to_string(cosine_bin(*cos))] = 1.0;
        }
      }
    }
    const std::vector<std::string> surface_only = {cand.surface_affix};
    const std::vector<std::string>& elements =
        cand.side == Side::Suffix ? cand.affix_chain : surface_only;
    for (const auto& affix : elements) {
      if (lexicon.contains(cand.side, affix)) {
        fv["affix:" + side + ":" + affix] += 1.0;
      } else {
        fv["affix_unk:" + side] += 1.0;
      }
    }
    bool corr_hit = false;
    for (const auto& affix : elements) {
      for (const auto& partner : corr.partners(cand.side, affix)) {
        const std::string sibling =
            cand.side == Side::Suffix ? cand.parent + partner : partner + cand.parent;
        if (words.contains(sibling)) {
          corr_hit = true;
          break;
        }
      }
      if (corr_hit) break;
    }
    if (corr_hit) fv["corr:" + side] = 1.0;
    if (words.contains(cand.parent)) fv["in_wordlist"] = 1.0;
    switch (cand.transform.kind) {
      case TransformKind::None:
        break;
      case TransformKind::Repeat:
        fv["xform_repeat"] = 1.0;
        break;
      case TransformKind::Delete:
        fv["xform_delete"] = 1.0;
        break;
      case TransformKind::Modify:
        fv["xform_modify"] = 1.0;
        break;
    }
  }
  fv[std::string("bias:") + to_string(cand.side)] = 1.0;
  return fv;
}

}  // namespace morphchain
