#include "stegdisc/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "stegdisc/errors.hpp"

namespace stegdisc {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

bool is_permutation(std::span<const std::uint32_t> elems) noexcept {
  std::vector<bool> seen(elems.size(), false);
  for (auto v : elems) {
    if (v >= elems.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<std::uint32_t> elems) : elems_(std::move(elems)) {
  if (elems_.empty() || !is_permutation(elems_)) {
    raise(Errc::NotAPermutation, "not a permutation: [" + to_string() + "]");
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> elems(n);
  for (std::size_t i = 0; i < n; ++i) elems[i] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(elems));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(elems_[i]);
  }
  return out;
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<std::uint32_t> elems;
  for (auto part : split(text, ',')) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      raise(Errc::NotAPermutation, "malformed permutation '" + std::string(text) + "'");
    }
    elems.push_back(v);
  }
  return Permutation(std::move(elems));
}

std::uint64_t factorial(std::size_t n) noexcept {
  if (n > kMaxRankableSize) return 0;
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

AddressCode rank(const Permutation& perm) {
  const auto n = perm.size();
  if (n > kMaxRankableSize) {
    raise(Errc::CodeOutOfRange, "rank undefined for n = " + std::to_string(n));
  }
  // Lehmer digits weighted by the factorial number system.
  AddressCode code = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller_after = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (perm[j] < perm[i]) ++smaller_after;
    }
    code += smaller_after * factorial(n - 1 - i);
  }
  return code;
}

Permutation unrank(AddressCode code, std::size_t n) {
  if (n == 0 || n > kMaxRankableSize || code >= factorial(n)) {
    raise(Errc::CodeOutOfRange, "code " + std::to_string(code) +
                                    " out of range for n = " + std::to_string(n));
  }
  std::vector<std::uint32_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> elems;
  elems.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto weight = factorial(n - 1 - i);
    const auto digit = code / weight;
    code %= weight;
    elems.push_back(remaining[digit]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return Permutation(std::move(elems));
}

bool is_valid_hashtag(std::string_view tag) noexcept {
  if (tag.size() < 2 || tag.front() != '#') return false;
  return std::none_of(tag.begin(), tag.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u <= 0x20 || u == 0x7f || c == ',';
  });
}

HashtagAlphabet::HashtagAlphabet(std::vector<std::string> tags) : tags_(std::move(tags)) {
  if (tags_.empty()) raise(Errc::ConfigInvalid, "hashtag alphabet is empty");
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (!is_valid_hashtag(tags_[i])) {
      raise(Errc::ConfigInvalid, "invalid hashtag '" + tags_[i] + "'");
    }
    if (!index_.emplace(tags_[i], i).second) {
      raise(Errc::ConfigInvalid, "duplicate hashtag '" + tags_[i] + "'");
    }
  }
}

HashtagAlphabet HashtagAlphabet::numbered(std::size_t n, std::string_view stem) {
  std::vector<std::string> tags;
  for (std::size_t i = 0; i < n; ++i) tags.push_back("#" + std::string(stem) + std::to_string(i));
  return HashtagAlphabet(std::move(tags));
}

long HashtagAlphabet::index_of(std::string_view tag) const {
  auto it = index_.find(std::string(tag));
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

std::string HashtagAlphabet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (i) out.push_back(',');
    out += tags_[i];
  }
  return out;
}

HashtagAlphabet HashtagAlphabet::parse(std::string_view text) {
  std::vector<std::string> tags;
  for (auto part : split(text, ',')) tags.emplace_back(part);
  return HashtagAlphabet(std::move(tags));
}

HashtagSeq perm_to_hashtags(const Permutation& perm, const HashtagAlphabet& alphabet) {
  if (perm.size() != alphabet.size()) {
    raise(Errc::SizeMismatch, "permutation of size " + std::to_string(perm.size()) +
                                  " for alphabet of size " + std::to_string(alphabet.size()));
  }
  HashtagSeq out;
  out.reserve(perm.size());
  for (auto v : perm.elems()) out.push_back(alphabet[v]);
  return out;
}

Permutation hashtags_to_perm(std::span<const std::string> seq,
                             const HashtagAlphabet& alphabet) {
  std::vector<std::uint32_t> elems;
  elems.reserve(seq.size());
  for (const auto& tag : seq) {
    auto idx = alphabet.index_of(tag);
    if (idx < 0) raise(Errc::UnknownTag, "unknown hashtag '" + tag + "'");
    elems.push_back(static_cast<std::uint32_t>(idx));
  }
  if (elems.size() != alphabet.size() || !is_permutation(elems)) {
    raise(Errc::NotAPermutation, "hashtag sequence is not a permutation of the alphabet");
  }
  return Permutation(std::move(elems));
}

}  // namespace stegdisc
