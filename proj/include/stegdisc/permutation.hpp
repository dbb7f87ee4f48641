#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stegdisc {

/// An ordered arrangement of the indices 0..n-1; the address of one object.
class Permutation {
 public:
  Permutation() = default;

  /// Throws NotAPermutation unless every value 0..n-1 appears exactly once.
  explicit Permutation(std::vector<std::uint32_t> elems);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return elems_.size(); }
  std::uint32_t operator[](std::size_t i) const { return elems_[i]; }
  std::span<const std::uint32_t> elems() const noexcept { return elems_; }

  /// Comma-joined decimal form, e.g. "2,0,1".
  std::string to_string() const;
  static Permutation parse(std::string_view text);

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> elems_;
};

bool is_permutation(std::span<const std::uint32_t> elems) noexcept;

/// Address code: position of a permutation in the lexicographic order of all
/// n! permutations. Only defined for n <= kMaxRankableSize.
using AddressCode = std::uint64_t;

inline constexpr std::size_t kMaxRankableSize = 20;

/// n!, or 0 when it does not fit in 64 bits.
std::uint64_t factorial(std::size_t n) noexcept;

AddressCode rank(const Permutation& perm);
Permutation unrank(AddressCode code, std::size_t n);

/// The fixed tag vocabulary of a disc; index i always maps to tags()[i].
class HashtagAlphabet {
 public:
  HashtagAlphabet() = default;
  explicit HashtagAlphabet(std::vector<std::string> tags);

  /// n distinct tags "#t0", "#t1", ... for tests and defaults.
  static HashtagAlphabet numbered(std::size_t n, std::string_view stem = "t");

  std::size_t size() const noexcept { return tags_.size(); }
  const std::vector<std::string>& tags() const noexcept { return tags_; }
  const std::string& operator[](std::size_t i) const { return tags_[i]; }

  /// Index of tag, or -1.
  long index_of(std::string_view tag) const;

  std::string to_string() const;
  static HashtagAlphabet parse(std::string_view text);

  friend bool operator==(const HashtagAlphabet& a, const HashtagAlphabet& b) {
    return a.tags_ == b.tags_;
  }

 private:
  std::vector<std::string> tags_;
  std::unordered_map<std::string, std::size_t> index_;
};

bool is_valid_hashtag(std::string_view tag) noexcept;

using HashtagSeq = std::vector<std::string>;

HashtagSeq perm_to_hashtags(const Permutation& perm, const HashtagAlphabet& alphabet);
Permutation hashtags_to_perm(std::span<const std::string> seq,
                             const HashtagAlphabet& alphabet);

}  // namespace stegdisc

template <>
struct std::hash<stegdisc::Permutation> {
  std::size_t operator()(const stegdisc::Permutation& p) const noexcept {
    std::size_t h = p.size();
    for (auto v : p.elems()) h = h * 1000003u ^ v;
    return h;
  }
};
