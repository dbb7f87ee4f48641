#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stegdisc/bitmap.hpp"
#include "stegdisc/payload.hpp"

namespace stegdisc {

enum class CarrierKind { Bitmap, Opaque };

/// A multimedia object, before or after a payload is hidden in it.
///
/// Bitmap objects hold a complete BMP file. Opaque objects hold the payload
/// bytes verbatim and advertise a fixed capacity; they exist for fast tests.
struct CarrierObject {
  CarrierKind kind = CarrierKind::Bitmap;
  std::vector<std::uint8_t> bytes;
  std::size_t opaque_capacity = 0;

  static CarrierObject bitmap(const Bitmap& image);
  static CarrierObject opaque(std::size_t capacity, std::vector<std::uint8_t> bytes = {});

  friend bool operator==(const CarrierObject&, const CarrierObject&) = default;
};

/// Same shape as a carrier; named separately where a payload is present.
using StegoObject = CarrierObject;

/// Bitmap: floor(width * height * 3 / 8). Opaque: the configured size.
std::size_t capacity(const CarrierObject& carrier);

/// Writes payload bits, most significant first, into the least significant
/// bit of successive colour-channel bytes. Row padding and headers are untouched.
StegoObject embed(const CarrierObject& carrier, std::span<const std::uint8_t> payload);

std::vector<std::uint8_t> extract(const StegoObject& stego, std::size_t expected_len);

/// Reads a block: extracts the header, then the full payload it declares.
BlockPayload read_block(const StegoObject& stego, unsigned p);
/// Header-only read; enough to follow the chain.
PayloadHeader read_block_header(const StegoObject& stego, unsigned p);

StegoObject write_block(const CarrierObject& carrier, const BlockPayload& payload, unsigned p,
                        std::size_t max_data);

/// How a disc obtains fresh cover objects.
struct CarrierSpec {
  CarrierKind kind = CarrierKind::Bitmap;
  std::uint32_t width = 64;  // synthetic bitmap size
  std::uint32_t height = 64;
  std::size_t opaque_capacity = 0;

  std::size_t capacity() const noexcept;

  /// "bitmap:WxH" or "opaque:N".
  std::string to_string() const;
  static CarrierSpec parse(std::string_view text);

  friend bool operator==(const CarrierSpec&, const CarrierSpec&) = default;
};

/// Cover objects drawn in order from a directory of .bmp files; once those run
/// out, synthetic bitmaps seeded by (disc id, block counter).
class CarrierPool {
 public:
  explicit CarrierPool(CarrierSpec spec, std::optional<std::filesystem::path> directory = {});

  const CarrierSpec& spec() const noexcept { return spec_; }

  /// Smallest capacity any object handed out by next() can have.
  std::size_t min_capacity() const;

  CarrierObject next(std::string_view disc_id, std::uint64_t counter);

  std::size_t pool_remaining() const noexcept { return files_.size() - cursor_; }

 private:
  CarrierSpec spec_;
  std::vector<CarrierObject> files_;
  std::size_t cursor_ = 0;
};

}  // namespace stegdisc
