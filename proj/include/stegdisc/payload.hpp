#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace stegdisc {

inline constexpr std::uint8_t kPayloadVersion = 1;
inline constexpr std::uint8_t kFlagGenesis = 0x01;

/// Hidden content of one object: a p-bit pointer to the next block plus up to
/// m data bytes.
///
/// Wire layout (all integers big-endian):
///   version (1) | flags (1) | next_counter (ceil(p/8)) | data_len (4) | data
struct BlockPayload {
  std::uint8_t version = kPayloadVersion;
  std::uint8_t flags = 0;
  std::uint64_t next_counter = 0;  // 0 = end of chain
  std::vector<std::uint8_t> data;

  bool is_genesis() const noexcept { return flags & kFlagGenesis; }

  friend bool operator==(const BlockPayload&, const BlockPayload&) = default;
};

struct PayloadHeader {
  std::uint8_t version = 0;
  std::uint8_t flags = 0;
  std::uint64_t next_counter = 0;
  std::uint32_t data_len = 0;
};

inline constexpr std::size_t counter_bytes(unsigned p) noexcept { return (p + 7) / 8; }
inline constexpr std::size_t header_size(unsigned p) noexcept { return 6 + counter_bytes(p); }

std::vector<std::uint8_t> encode_payload(
    const BlockPayload& payload, unsigned p,
    std::size_t max_data = std::numeric_limits<std::size_t>::max());

/// Parses only the fixed-size header; `bytes` may stop right after it.
PayloadHeader peek_header(std::span<const std::uint8_t> bytes, unsigned p);

/// Trailing bytes past data_len are ignored.
BlockPayload decode_payload(std::span<const std::uint8_t> bytes, unsigned p);

}  // namespace stegdisc
