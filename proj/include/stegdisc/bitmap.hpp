#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stegdisc {

/// Uncompressed 24-bit image, pixels stored top-down in B,G,R order.
struct Bitmap {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> bgr;

  Bitmap() = default;
  Bitmap(std::uint32_t w, std::uint32_t h) : width(w), height(h), bgr(std::size_t{w} * h * 3) {}
};

/// Location of the pixel array inside a BMP file.
struct BmpLayout {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::size_t pixel_offset = 0;
  std::size_t stride = 0;  // padded row length in bytes
  bool bottom_up = true;
};

/// Throws UnsupportedCarrier for anything but a well-formed 24-bit BI_RGB file.
BmpLayout parse_bmp_layout(std::span<const std::uint8_t> file);

std::vector<std::uint8_t> encode_bmp(const Bitmap& image);
Bitmap decode_bmp(std::span<const std::uint8_t> file);

/// Deterministic noise image; same seed, same pixels.
Bitmap synthetic_bitmap(std::uint32_t width, std::uint32_t height, std::uint64_t seed);

}  // namespace stegdisc
