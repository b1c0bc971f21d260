#pragma once

#include <string>
#include <vector>

#include "morphchain/corpus.hpp"

namespace morphchain {

enum class Side { Suffix, Prefix, Stop };

enum class TransformKind { None, Repeat, Delete, Modify };

// Stem-boundary spelling change applied when deriving a parent: Repeat undoes a
// doubled final consonant, Delete restores a character dropped before the affix,
// Modify restores a substituted final character.
struct Transform {
  TransformKind kind = TransformKind::None;
  char32_t ch = 0;

  friend bool operator==(const Transform&, const Transform&) = default;
};

const char* to_string(Side side);
std::string to_string(const Transform& t);

// One entry of C(w): a parent word plus how it was reached.
//
// For Suffix candidates, affix_chain lists the stripped suffixes outermost
// first, and surface_affix is the trailing residue of the word once the
// parent's surface form is removed. Prefix candidates are terminal: their
// affix_chain is empty and surface_affix is the leading residue relative to
// the (possibly suffix-stripped) word they were split from. The Stop candidate
// has parent == word and empty affixes.
struct Candidate {
  std::string parent;
  Side side = Side::Stop;
  std::vector<std::string> affix_chain;
  std::string surface_affix;
  Transform transform;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Total order used for canonical output: parent, side, transform, chain, surface.
bool candidate_less(const Candidate& a, const Candidate& b);

// Candidate space C(w): recursive suffix stripping (affix length 1-4, parent at
// least half the word, words of length <= 2 are not split), terminal prefix
// splits at every recursion level, spelling-change parents at suffix split
// points, plus exactly one Stop candidate. Duplicate (parent, side, transform)
// entries are collapsed, keeping the shortest affix_chain (ties: lexicographically
// smallest chain; for prefix candidates, the split closest to the whole word).
// The word list enables Delete/Modify parents; without it only Repeat applies.
// Deterministic; result is sorted by candidate_less.
std::vector<Candidate> generate_candidates(const std::string& word, const WordList& words);
std::vector<Candidate> generate_candidates(const std::string& word);

// Parents reachable in a single split of the word (both sides, including
// spelling-change parents). Used by root-or-not scoring features.
std::vector<std::string> first_level_parents(const std::string& word, const WordList& words);

// Contrast set N(w): distinct single adjacent-character transpositions of the
// word, excluding the word itself. Words shorter than two characters get an
// empty neighborhood.
struct Neighborhood {
  std::string center;
  std::vector<std::string> members;
};

Neighborhood generate_neighbors(const std::string& word);

}  // namespace morphchain
