#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace stegdisc {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(std::span<const std::uint8_t> data);
Sha256Digest sha256(std::string_view text);

std::string to_hex(std::span<const std::uint8_t> bytes);

/// Remainder of the digest read as a 256-bit big-endian integer.
std::uint64_t digest_mod(const Sha256Digest& digest, std::uint64_t modulus);

}  // namespace stegdisc
