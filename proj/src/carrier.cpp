#include "stegdisc/carrier.hpp"

#include "stegdisc/errors.hpp"

namespace stegdisc {

namespace {

// Byte offset in the BMP file of colour channel number `k`.
struct ChannelMap {
  BmpLayout layout;
  std::size_t row_bytes;

  explicit ChannelMap(const BmpLayout& l) : layout(l), row_bytes(std::size_t{l.width} * 3) {}

  std::size_t offset(std::size_t k) const {
    return layout.pixel_offset + (k / row_bytes) * layout.stride + k % row_bytes;
  }
};

void require_fits(std::size_t len, std::size_t cap) {
  if (len > cap) {
    raise(Errc::CapacityExceeded, std::to_string(len) + " bytes exceed carrier capacity of " +
                                      std::to_string(cap));
  }
}

}  // namespace

CarrierObject CarrierObject::bitmap(const Bitmap& image) {
  return {CarrierKind::Bitmap, encode_bmp(image), 0};
}

CarrierObject CarrierObject::opaque(std::size_t capacity, std::vector<std::uint8_t> bytes) {
  return {CarrierKind::Opaque, std::move(bytes), capacity};
}

std::size_t capacity(const CarrierObject& carrier) {
  switch (carrier.kind) {
    case CarrierKind::Bitmap: {
      const auto layout = parse_bmp_layout(carrier.bytes);
      return std::size_t{layout.width} * layout.height * 3 / 8;
    }
    case CarrierKind::Opaque:
      return carrier.opaque_capacity;
  }
  raise(Errc::UnsupportedCarrier, "unknown carrier kind");
}

StegoObject embed(const CarrierObject& carrier, std::span<const std::uint8_t> payload) {
  require_fits(payload.size(), capacity(carrier));
  if (carrier.kind == CarrierKind::Opaque) {
    return CarrierObject::opaque(carrier.opaque_capacity, {payload.begin(), payload.end()});
  }
  StegoObject out = carrier;
  const ChannelMap map(parse_bmp_layout(carrier.bytes));
  std::size_t k = 0;
  for (auto byte : payload) {
    for (int bit = 7; bit >= 0; --bit, ++k) {
      auto& target = out.bytes[map.offset(k)];
      target = static_cast<std::uint8_t>((target & 0xfe) | ((byte >> bit) & 1));
    }
  }
  return out;
}

std::vector<std::uint8_t> extract(const StegoObject& stego, std::size_t expected_len) {
  require_fits(expected_len, capacity(stego));
  if (stego.kind == CarrierKind::Opaque) {
    if (expected_len > stego.bytes.size()) {
      raise(Errc::TruncatedPayload, "opaque object holds only " +
                                        std::to_string(stego.bytes.size()) + " bytes");
    }
    return {stego.bytes.begin(), stego.bytes.begin() + static_cast<std::ptrdiff_t>(expected_len)};
  }
  const ChannelMap map(parse_bmp_layout(stego.bytes));
  std::vector<std::uint8_t> out(expected_len, 0);
  std::size_t k = 0;
  for (auto& byte : out) {
    for (int bit = 0; bit < 8; ++bit, ++k) {
      byte = static_cast<std::uint8_t>((byte << 1) | (stego.bytes[map.offset(k)] & 1));
    }
  }
  return out;
}

PayloadHeader read_block_header(const StegoObject& stego, unsigned p) {
  return peek_header(extract(stego, header_size(p)), p);
}

BlockPayload read_block(const StegoObject& stego, unsigned p) {
  const auto head = read_block_header(stego, p);
  const auto total = header_size(p) + std::size_t{head.data_len};
  if (total > capacity(stego)) {
    raise(Errc::TruncatedPayload, "declared block length exceeds carrier capacity");
  }
  return decode_payload(extract(stego, total), p);
}

StegoObject write_block(const CarrierObject& carrier, const BlockPayload& payload, unsigned p,
                        std::size_t max_data) {
  return embed(carrier, encode_payload(payload, p, max_data));
}

}  // namespace stegdisc
