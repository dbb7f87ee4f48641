#include "stegdisc/sha256.hpp"

#include <openssl/sha.h>

namespace stegdisc {

Sha256Digest sha256(std::span<const std::uint8_t> data) {
  Sha256Digest out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Sha256Digest sha256(std::string_view text) {
  return sha256(std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                          text.size()));
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

std::uint64_t digest_mod(const Sha256Digest& digest, std::uint64_t modulus) {
  // Horner over base 256; the 128-bit accumulator keeps acc * 256 exact.
  unsigned __int128 acc = 0;
  for (auto b : digest) acc = (acc * 256 + b) % modulus;
  return static_cast<std::uint64_t>(acc);
}

}  // namespace stegdisc
