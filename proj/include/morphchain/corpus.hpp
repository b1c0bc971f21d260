#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace morphchain {

namespace detail {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

using StringEq = std::equal_to<>;

}  // namespace detail

// Word-frequency table. Immutable once built; lookups are thread-safe.
class WordList {
 public:
  using CountMap =
      std::unordered_map<std::string, std::uint64_t, detail::StringHash, detail::StringEq>;

  WordList() = default;

  // Reads UTF-8 lines of the form "word" or "word<TAB>count". Words without a
  // count get count 1; duplicate words have their counts summed. Entries with a
  // final count below min_count are dropped.
  static WordList load(const std::string& path, std::uint64_t min_count = 1);

  static WordList from_counts(std::vector<std::pair<std::string, std::uint64_t>> counts);

  bool contains(std::string_view word) const { return entries_.find(word) != entries_.end(); }

  std::uint64_t count(std::string_view word) const {
    auto it = entries_.find(word);
    return it == entries_.end() ? 0 : it->second;
  }

  // Words ordered by count descending, ties lexicographically ascending.
  const std::vector<std::string>& ranked() const { return ranked_; }

  // Sorted distinct scalar values occurring in any word.
  const std::vector<char32_t>& alphabet() const { return alphabet_; }

  const CountMap& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  void finalize();

  CountMap entries_;
  std::vector<std::string> ranked_;
  std::vector<char32_t> alphabet_;
};

// Dense word vectors in word2vec text format.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  // Header "<count> <dim>" followed by "word v1 ... v_dim" rows. Later
  // duplicates overwrite earlier ones.
  static EmbeddingTable load(const std::string& path);

  static EmbeddingTable from_vectors(
      std::size_t dim, std::vector<std::pair<std::string, std::vector<double>>> vectors);

  const std::vector<double>* find(std::string_view word) const {
    auto it = vectors_.find(word);
    return it == vectors_.end() ? nullptr : &it->second;
  }

  bool contains(std::string_view word) const { return vectors_.find(word) != vectors_.end(); }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }

  // Words in lexicographic order (for serialization).
  std::vector<std::string> sorted_words() const;

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>, detail::StringHash, detail::StringEq>
      vectors_;
};

// Cosine similarity. Returns nullopt when either vector has zero norm; throws
// std::invalid_argument on length mismatch.
std::optional<double> cosine(std::span<const double> a, std::span<const double> b);

}  // namespace morphchain
