#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "morphchain/candidates.hpp"
#include "morphchain/corpus.hpp"

namespace morphchain {

// Frequent affixes harvested from the word list: for every word with count
// above the threshold, each suffix and prefix of length 1-4 whose complementary
// stem keeps at least half the word counts once. Each side is truncated to the
// top_n most frequent affixes (ties broken lexicographically).
class AffixLexicon {
 public:
  using Counts = std::map<std::string, std::uint64_t>;

  AffixLexicon() = default;

  static AffixLexicon build(const WordList& words, std::uint64_t threshold, std::size_t top_n);
  static AffixLexicon from_counts(Counts suffixes, Counts prefixes, std::uint64_t threshold = 0);

  bool contains(Side side, std::string_view affix) const;
  std::uint64_t count(Side side, std::string_view affix) const;

  const Counts& suffixes() const { return suffixes_; }
  const Counts& prefixes() const { return prefixes_; }
  std::uint64_t threshold() const { return threshold_; }

 private:
  Counts suffixes_;
  Counts prefixes_;
  std::uint64_t threshold_ = 0;
};

// Affix pairs that attach to common stems: (a, b) is recorded when at least
// min_shared stems t have both t+a and t+b in the word list (prefix side:
// a+t and b+t), each with the stem keeping at least half the word. Pairs are
// unordered and stored once per side.
class CorrelationTable {
 public:
  using Entry = std::tuple<Side, std::string, std::string, std::uint64_t>;

  CorrelationTable() = default;

  static CorrelationTable build(const WordList& words, const AffixLexicon& lexicon,
                                std::uint64_t min_shared);
  static CorrelationTable from_counts(std::vector<Entry> entries);

  std::uint64_t count(Side side, std::string_view a, std::string_view b) const;
  bool correlated(Side side, std::string_view a, std::string_view b) const;

  // Affixes paired with the given one, sorted; empty when none.
  const std::vector<std::string>& partners(Side side, std::string_view affix) const;

  // All pairs, suffix side first, each pair with its smaller member first.
  std::vector<Entry> entries() const;
  std::size_t size() const { return suffix_pairs_.size() + prefix_pairs_.size(); }

 private:
  using PairMap = std::map<std::pair<std::string, std::string>, std::uint64_t>;
  using Adjacency = std::map<std::string, std::vector<std::string>, std::less<>>;

  void index();

  PairMap suffix_pairs_;
  PairMap prefix_pairs_;
  Adjacency suffix_partners_;
  Adjacency prefix_partners_;
};

// Sparse feature vector keyed by feature name. Entries are never zero.
using FeatureVector = std::map<std::string, double>;

// Bin index for a cosine value: floor((cos + 1) * 10) clamped to [0, 19].
int cosine_bin(double cos);

// Indicator features of a (word, candidate) pair.
//
// Non-Stop candidates emit: cos_bin:<k> when both word and parent have
// embeddings; affix:<side>:<a> per strip-chain element in the lexicon (the
// surface affix for prefix candidates) and affix_unk:<side> per element
// outside it; corr:<side> when some element has a correlated partner whose
// substitution lands in the word list; in_wordlist when the parent is a word
// list member; and xform_* matching the spelling change. The Stop candidate
// emits stop_cos_max:<k> binned from the best parent cosine, stop_len:<n>
// (capped at 10), and stop_begin/stop_end character indicators. Every
// candidate carries bias:<side>.
//
// Throws std::invalid_argument when the candidate does not belong to the word.
FeatureVector extract_features(const std::string& word, const Candidate& cand,
                               const AffixLexicon& lexicon, const CorrelationTable& corr,
                               const WordList& words, const EmbeddingTable& emb);

}  // namespace morphchain
