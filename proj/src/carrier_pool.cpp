#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>

#include "stegdisc/carrier.hpp"
#include "stegdisc/errors.hpp"
#include "stegdisc/sha256.hpp"

namespace stegdisc {

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    raise(Errc::ConfigInvalid, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::size_t CarrierSpec::capacity() const noexcept {
  if (kind == CarrierKind::Opaque) return opaque_capacity;
  return std::size_t{width} * height * 3 / 8;
}

std::string CarrierSpec::to_string() const {
  if (kind == CarrierKind::Opaque) return "opaque:" + std::to_string(opaque_capacity);
  return "bitmap:" + std::to_string(width) + "x" + std::to_string(height);
}

CarrierSpec CarrierSpec::parse(std::string_view text) {
  CarrierSpec spec;
  if (text.starts_with("opaque:")) {
    spec.kind = CarrierKind::Opaque;
    spec.opaque_capacity = parse_u64(text.substr(7), "opaque capacity");
    return spec;
  }
  if (text.starts_with("bitmap:")) {
    auto dims = text.substr(7);
    auto x = dims.find('x');
    if (x == std::string_view::npos) raise(Errc::ConfigInvalid, "bitmap carrier needs WxH");
    auto w = parse_u64(dims.substr(0, x), "bitmap width");
    auto h = parse_u64(dims.substr(x + 1), "bitmap height");
    if (w == 0 || h == 0 || w > 65535 || h > 65535) {
      raise(Errc::ConfigInvalid, "bitmap dimensions out of range");
    }
    spec.kind = CarrierKind::Bitmap;
    spec.width = static_cast<std::uint32_t>(w);
    spec.height = static_cast<std::uint32_t>(h);
    return spec;
  }
  raise(Errc::ConfigInvalid, "unknown carrier spec '" + std::string(text) + "'");
}

CarrierPool::CarrierPool(CarrierSpec spec, std::optional<std::filesystem::path> directory)
    : spec_(spec) {
  if (!directory || spec_.kind != CarrierKind::Bitmap) return;
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(*directory)) {
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (entry.is_regular_file() && ext == ".bmp") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), {}};
    CarrierObject obj{CarrierKind::Bitmap, std::move(bytes), 0};
    try {
      (void)capacity(obj);
    } catch (const Error&) {
      continue;  // not a usable 24-bit bitmap
    }
    files_.push_back(std::move(obj));
  }
}

std::size_t CarrierPool::min_capacity() const {
  auto cap = spec_.capacity();
  for (std::size_t i = cursor_; i < files_.size(); ++i) cap = std::min(cap, capacity(files_[i]));
  return cap;
}

CarrierObject CarrierPool::next(std::string_view disc_id, std::uint64_t counter) {
  if (spec_.kind == CarrierKind::Opaque) return CarrierObject::opaque(spec_.opaque_capacity);
  if (cursor_ < files_.size()) return files_[cursor_++];

  const auto digest = sha256(std::string(disc_id) + ":" + std::to_string(counter));
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | digest[static_cast<std::size_t>(i)];
  return CarrierObject::bitmap(synthetic_bitmap(spec_.width, spec_.height, seed));
}

}  // namespace stegdisc
