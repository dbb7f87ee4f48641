#include "stegdisc/bitmap.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "stegdisc/errors.hpp"

namespace stegdisc {

namespace {

constexpr std::size_t kFileHeaderSize = 14;
constexpr std::size_t kInfoHeaderSize = 40;

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  return std::uint32_t{b[at]} | std::uint32_t{b[at + 1]} << 8 |
         std::uint32_t{b[at + 2]} << 16 | std::uint32_t{b[at + 3]} << 24;
}

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

std::size_t row_stride(std::uint32_t width) { return (std::size_t{width} * 3 + 3) & ~std::size_t{3}; }

}  // namespace

BmpLayout parse_bmp_layout(std::span<const std::uint8_t> file) {
  if (file.size() < kFileHeaderSize + kInfoHeaderSize || file[0] != 'B' || file[1] != 'M') {
    raise(Errc::UnsupportedCarrier, "not a BMP file");
  }
  const auto info_size = le32(file, 14);
  const auto width = static_cast<std::int32_t>(le32(file, 18));
  const auto height = static_cast<std::int32_t>(le32(file, 22));
  const auto bpp = le16(file, 28);
  const auto compression = le32(file, 30);
  if (info_size < kInfoHeaderSize || bpp != 24 || compression != 0) {
    raise(Errc::UnsupportedCarrier, "only uncompressed 24-bit bitmaps are supported");
  }
  if (width <= 0 || height == 0 || height == INT32_MIN) {
    raise(Errc::UnsupportedCarrier, "bitmap dimensions must be positive");
  }
  BmpLayout layout;
  layout.width = static_cast<std::uint32_t>(width);
  layout.height = static_cast<std::uint32_t>(height < 0 ? -height : height);
  layout.bottom_up = height > 0;
  layout.pixel_offset = le32(file, 10);
  layout.stride = row_stride(layout.width);
  if (layout.pixel_offset < kFileHeaderSize + info_size ||
      layout.pixel_offset + layout.stride * layout.height > file.size()) {
    raise(Errc::UnsupportedCarrier, "bitmap pixel array is truncated");
  }
  return layout;
}

std::vector<std::uint8_t> encode_bmp(const Bitmap& image) {
  if (image.width == 0 || image.height == 0 ||
      image.bgr.size() != std::size_t{image.width} * image.height * 3) {
    raise(Errc::UnsupportedCarrier, "bitmap dimensions inconsistent with pixel data");
  }
  const auto stride = row_stride(image.width);
  const auto pixel_bytes = stride * image.height;
  const auto offset = kFileHeaderSize + kInfoHeaderSize;

  std::vector<std::uint8_t> out;
  out.reserve(offset + pixel_bytes);
  out.push_back('B');
  out.push_back('M');
  put32(out, static_cast<std::uint32_t>(offset + pixel_bytes));
  put32(out, 0);
  put32(out, static_cast<std::uint32_t>(offset));
  put32(out, kInfoHeaderSize);
  put32(out, image.width);
  put32(out, image.height);  // positive: bottom-up rows
  put16(out, 1);
  put16(out, 24);
  put32(out, 0);
  put32(out, static_cast<std::uint32_t>(pixel_bytes));
  put32(out, 2835);  // 72 dpi
  put32(out, 2835);
  put32(out, 0);
  put32(out, 0);

  const auto row_bytes = std::size_t{image.width} * 3;
  for (std::uint32_t r = image.height; r-- > 0;) {
    const auto* row = image.bgr.data() + r * row_bytes;
    out.insert(out.end(), row, row + row_bytes);
    out.resize(out.size() + (stride - row_bytes), 0);
  }
  return out;
}

Bitmap decode_bmp(std::span<const std::uint8_t> file) {
  const auto layout = parse_bmp_layout(file);
  Bitmap image(layout.width, layout.height);
  const auto row_bytes = std::size_t{layout.width} * 3;
  for (std::uint32_t r = 0; r < layout.height; ++r) {
    const auto file_row = layout.bottom_up ? layout.height - 1 - r : r;
    const auto* src = file.data() + layout.pixel_offset + file_row * layout.stride;
    std::copy(src, src + row_bytes, image.bgr.begin() + static_cast<std::ptrdiff_t>(r * row_bytes));
  }
  return image;
}

Bitmap synthetic_bitmap(std::uint32_t width, std::uint32_t height, std::uint64_t seed) {
  Bitmap image(width, height);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < image.bgr.size(); i += 8) {
    auto word = rng();
    for (std::size_t j = i; j < std::min(i + 8, image.bgr.size()); ++j, word >>= 8) {
      image.bgr[j] = static_cast<std::uint8_t>(word);
    }
  }
  return image;
}

}  // namespace stegdisc
