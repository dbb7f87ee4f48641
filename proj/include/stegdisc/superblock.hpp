#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stegdisc/carrier.hpp"
#include "stegdisc/permutation.hpp"

namespace stegdisc {

/// How the hidden next-pointer of a block is interpreted.
///  A: stream counter resolved through a local counter -> address dictionary
///     (the original two-dictionary scheme, kept as a baseline).
///  B: lexicographic address code; no used-address dictionary.
///  C: stream counter resolved by replaying the sampler; no dictionaries.
enum class Mode { A, B, C };

char mode_char(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

struct DiscConfig {
  std::size_t n = 0;
  unsigned p = 32;
  std::size_t m = 0;
  Mode mode = Mode::C;
  HashtagAlphabet alphabet;
  Permutation genesis;
  std::string disc_id;
  CarrierSpec carrier;

  /// Throws ConfigInvalid. `min_capacity` is the smallest cover object the
  /// disc may be handed.
  void validate(std::size_t min_capacity) const;

  /// Fresh secret material (alphabet, genesis, id) drawn from `seed`.
  static DiscConfig generate(std::size_t n, unsigned p, std::size_t m, Mode mode,
                             CarrierSpec carrier, std::uint64_t seed);

  /// Text hidden in the genesis block so a disc can be cross-checked.
  std::string superblock_echo() const;
};

struct FileEntry {
  std::string name;
  std::uint64_t start_counter = 0;  // 0 for empty files
  std::uint64_t length = 0;

  friend bool operator==(const FileEntry&, const FileEntry&) = default;
};

/// Client-side state of a disc: the secret, the sampler position, and the
/// catalog (kept in chain order). Mode A additionally keeps its dictionary of
/// used addresses in a sidecar file "<document>.dict".
struct DiscDocument {
  DiscConfig config;
  std::uint64_t iteration = 0;
  std::vector<FileEntry> files;
  std::map<std::uint64_t, AddressCode> dictionary;

  std::string header_text() const;
  std::string catalog_text() const;
  std::string dictionary_text() const;

  static DiscDocument parse(std::string_view document, std::string_view dictionary = {});

  /// Writes via temp file + rename.
  void save(const std::filesystem::path& path) const;
  static DiscDocument load(const std::filesystem::path& path);
};

std::filesystem::path dictionary_path(const std::filesystem::path& document);

std::string percent_encode(std::string_view text);
std::string percent_decode(std::string_view text);

/// Non-empty, valid UTF-8, no control characters.
bool is_valid_file_name(std::string_view name) noexcept;

}  // namespace stegdisc
