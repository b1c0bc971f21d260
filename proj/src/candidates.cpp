#include "morphchain/candidates.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "morphchain/utf8.hpp"

namespace morphchain {

namespace {

using Chain32 = std::vector<std::u32string>;

bool chain_less(const Chain32& a, const Chain32& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<std::string> encode_chain(const Chain32& chain) {
  std::vector<std::string> out;
  out.reserve(chain.size());
  for (const auto& a : chain) out.push_back(utf8::encode(a));
  return out;
}

struct DedupKey {
  std::string parent;
  int side;
  int kind;
  char32_t ch;

  bool operator<(const DedupKey& o) const {
    return std::tie(parent, side, kind, ch) < std::tie(o.parent, o.side, o.kind, o.ch);
  }
};

DedupKey key_of(const Candidate& c) {
  return DedupKey{c.parent, static_cast<int>(c.side), static_cast<int>(c.transform.kind),
                  c.transform.ch};
}

struct Pending {
  Chain32 chain;  // strip chain in scalar values; empty for prefix candidates
  Candidate cand;
};

class Builder {
 public:
  Builder(const std::u32string& word, const WordList* words) : word_(word), words_(words) {}

  std::vector<Candidate> run() {
    const std::size_t n = word_.size();
    // best[L] is the minimal strip chain reaching the length-L prefix of the
    // word, or nullopt when no legal strip sequence reaches it. Levels are
    // processed longest first, so each chain is final before its level is
    // expanded.
    std::vector<std::optional<Chain32>> best(n + 1);
    best[n] = Chain32{};
    for (std::size_t level = n; level >= 1; --level) {
      if (!best[level]) continue;
      visit_level(level, *best[level], best);
    }

    std::vector<Candidate> out;
    out.reserve(found_.size() + 1);
    for (auto& [key, pending] : found_) out.push_back(std::move(pending.cand));
    out.push_back(Candidate{utf8::encode(word_), Side::Stop, {}, "", Transform{}});
    std::sort(out.begin(), out.end(), candidate_less);
    return out;
  }

 private:
  void visit_level(std::size_t level, const Chain32& chain,
                   std::vector<std::optional<Chain32>>& best) {
    // Terminal prefix splits: the kept parent is the tail of this level.
    for (std::size_t t = 1; t <= 4 && t < level; ++t) {
      if (2 * t < level) continue;
      offer(Pending{{},
                    Candidate{utf8::encode(word_.substr(level - t, t)),
                              Side::Prefix,
                              {},
                              utf8::encode(word_.substr(0, level - t)),
                              Transform{}}});
    }
    if (level <= 2) return;
    for (std::size_t alen = 1; alen <= 4 && alen < level; ++alen) {
      const std::size_t plen = level - alen;
      if (2 * plen < level) continue;
      Chain32 chain2 = chain;
      chain2.push_back(word_.substr(plen, alen));
      const std::string residue = utf8::encode(word_.substr(plen));
      offer(Pending{chain2, Candidate{utf8::encode(word_.substr(0, plen)), Side::Suffix,
                                      encode_chain(chain2), residue, Transform{}}});
      add_transforms(plen, chain2, residue);
      if (!best[plen] || chain_less(chain2, *best[plen])) best[plen] = std::move(chain2);
    }
  }

  void add_transforms(std::size_t plen, const Chain32& chain, const std::string& residue) {
    if (plen >= 2 && word_[plen - 1] == word_[plen - 2]) {
      offer(Pending{chain, Candidate{utf8::encode(word_.substr(0, plen - 1)), Side::Suffix,
                                     encode_chain(chain), residue,
                                     Transform{TransformKind::Repeat, word_[plen - 1]}}});
    }
    if (words_ == nullptr || words_->empty()) return;
    const std::string stem = utf8::encode(word_.substr(0, plen));
    const std::string stem_lead = utf8::encode(word_.substr(0, plen - 1));
    for (char32_t c : words_->alphabet()) {
      const std::string encoded = utf8::encode(c);
      // Restore a character deleted before the affix; the whole word is never
      // its own parent.
      const bool restores_whole_word = plen + 1 == word_.size() && c == word_[plen];
      if (!restores_whole_word) {
        const std::string restored = stem + encoded;
        if (words_->contains(restored)) {
          offer(Pending{chain, Candidate{restored, Side::Suffix, encode_chain(chain), residue,
                                         Transform{TransformKind::Delete, c}}});
        }
      }
      // Restore a substituted final stem character.
      if (c != word_[plen - 1]) {
        const std::string swapped = stem_lead + encoded;
        if (words_->contains(swapped)) {
          offer(Pending{chain, Candidate{swapped, Side::Suffix, encode_chain(chain), residue,
                                         Transform{TransformKind::Modify, c}}});
        }
      }
    }
  }

  void offer(Pending pending) {
    auto it = found_.find(key_of(pending.cand));
    if (it == found_.end()) {
      found_.emplace(key_of(pending.cand), std::move(pending));
      return;
    }
    Pending& held = it->second;
    if (pending.cand.side == Side::Prefix) {
      // Equal prefix parents keep the split closest to the whole word.
      if (pending.cand.surface_affix.size() > held.cand.surface_affix.size()) {
        held = std::move(pending);
      }
    } else if (chain_less(pending.chain, held.chain)) {
      held = std::move(pending);
    }
  }

  const std::u32string& word_;
  const WordList* words_;
  std::map<DedupKey, Pending> found_;
};

const WordList& empty_wordlist() {
  static const WordList empty;
  return empty;
}

}  // namespace

const char* to_string(Side side) {
  switch (side) {
    case Side::Suffix: return "Suffix";
    case Side::Prefix: return "Prefix";
    case Side::Stop: return "Stop";
  }
  return "?";
}

std::string to_string(const Transform& t) {
  switch (t.kind) {
    case TransformKind::None: return "none";
    case TransformKind::Repeat: return "repeat(" + utf8::encode(t.ch) + ")";
    case TransformKind::Delete: return "delete(" + utf8::encode(t.ch) + ")";
    case TransformKind::Modify: return "modify(" + utf8::encode(t.ch) + ")";
  }
  return "?";
}

bool candidate_less(const Candidate& a, const Candidate& b) {
  const auto key = [](const Candidate& c) {
    return std::make_tuple(std::cref(c.parent), static_cast<int>(c.side),
                           static_cast<int>(c.transform.kind), c.transform.ch,
                           std::cref(c.affix_chain), std::cref(c.surface_affix));
  };
  return key(a) < key(b);
}

std::vector<Candidate> generate_candidates(const std::string& word, const WordList& words) {
  const std::u32string w = utf8::decode(word);
  if (w.empty()) throw std::invalid_argument("generate_candidates: empty word");
  Builder builder(w, &words);
  return builder.run();
}

std::vector<Candidate> generate_candidates(const std::string& word) {
  return generate_candidates(word, empty_wordlist());
}

std::vector<std::string> first_level_parents(const std::string& word, const WordList& words) {
  const std::u32string w = utf8::decode(word);
  if (w.empty()) throw std::invalid_argument("first_level_parents: empty word");
  std::set<std::string> parents;
  const std::size_t n = w.size();
  for (std::size_t t = 1; t <= 4 && t < n; ++t) {
    if (2 * t >= n) parents.insert(utf8::encode(w.substr(n - t, t)));
  }
  if (n > 2) {
    for (std::size_t alen = 1; alen <= 4 && alen < n; ++alen) {
      const std::size_t plen = n - alen;
      if (2 * plen < n) continue;
      parents.insert(utf8::encode(w.substr(0, plen)));
      if (plen >= 2 && w[plen - 1] == w[plen - 2]) {
        parents.insert(utf8::encode(w.substr(0, plen - 1)));
      }
      if (!words.empty()) {
        const std::string stem = utf8::encode(w.substr(0, plen));
        const std::string stem_lead = utf8::encode(w.substr(0, plen - 1));
        for (char32_t c : words.alphabet()) {
          const std::string encoded = utf8::encode(c);
          const bool restores_whole_word = plen + 1 == n && c == w[plen];
          if (!restores_whole_word && words.contains(stem + encoded)) {
            parents.insert(stem + encoded);
          }
          if (c != w[plen - 1] && words.contains(stem_lead + encoded)) {
            parents.insert(stem_lead + encoded);
          }
        }
      }
    }
  }
  return {parents.begin(), parents.end()};
}

Neighborhood generate_neighbors(const std::string& word) {
  const std::u32string w = utf8::decode(word);
  Neighborhood out{word, {}};
  if (w.size() < 2) return out;
  std::set<std::string> members;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == w[i + 1]) continue;
    std::u32string swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    members.insert(utf8::encode(swapped));
  }
  out.members.assign(members.begin(), members.end());
  return out;
}

}  // namespace morphchain
