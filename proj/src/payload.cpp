#include "stegdisc/payload.hpp"

#include <string>

#include "stegdisc/errors.hpp"
#include "stegdisc/sampler.hpp"

namespace stegdisc {

namespace {

void check_width(unsigned p) {
  if (p < 1 || p > 64) raise(Errc::ConfigInvalid, "counter width p must be in [1, 64]");
}

}  // namespace

std::vector<std::uint8_t> encode_payload(const BlockPayload& payload, unsigned p,
                                         std::size_t max_data) {
  check_width(p);
  if (payload.next_counter > counter_limit(p)) {
    raise(Errc::CounterTooWide, "counter " + std::to_string(payload.next_counter) +
                                    " does not fit in " + std::to_string(p) + " bits");
  }
  if (payload.data.size() > max_data || payload.data.size() > 0xffffffffu) {
    raise(Errc::DataTooLong, "block data of " + std::to_string(payload.data.size()) +
                                 " bytes exceeds " + std::to_string(max_data));
  }

  const auto cb = counter_bytes(p);
  std::vector<std::uint8_t> out;
  out.reserve(header_size(p) + payload.data.size());
  out.push_back(payload.version);
  out.push_back(payload.flags);
  for (std::size_t i = cb; i-- > 0;) {
    out.push_back(static_cast<std::uint8_t>(payload.next_counter >> (8 * i)));
  }
  const auto len = static_cast<std::uint32_t>(payload.data.size());
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(len >> shift));
  }
  out.insert(out.end(), payload.data.begin(), payload.data.end());
  return out;
}

PayloadHeader peek_header(std::span<const std::uint8_t> bytes, unsigned p) {
  check_width(p);
  if (bytes.size() < header_size(p)) {
    raise(Errc::TruncatedPayload, "payload shorter than its header");
  }
  PayloadHeader h;
  h.version = bytes[0];
  if (h.version != kPayloadVersion) {
    raise(Errc::BadVersion, "unknown payload version " + std::to_string(h.version));
  }
  h.flags = bytes[1];
  const auto cb = counter_bytes(p);
  for (std::size_t i = 0; i < cb; ++i) h.next_counter = (h.next_counter << 8) | bytes[2 + i];
  if (h.next_counter > counter_limit(p)) {
    raise(Errc::CounterTooWide, "stored counter exceeds " + std::to_string(p) + " bits");
  }
  for (std::size_t i = 0; i < 4; ++i) h.data_len = (h.data_len << 8) | bytes[2 + cb + i];
  return h;
}

BlockPayload decode_payload(std::span<const std::uint8_t> bytes, unsigned p) {
  const auto h = peek_header(bytes, p);
  const auto start = header_size(p);
  if (bytes.size() - start < h.data_len) {
    raise(Errc::TruncatedPayload, "payload declares " + std::to_string(h.data_len) +
                                      " data bytes, " + std::to_string(bytes.size() - start) +
                                      " present");
  }
  BlockPayload out;
  out.version = h.version;
  out.flags = h.flags;
  out.next_counter = h.next_counter;
  out.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                  bytes.begin() + static_cast<std::ptrdiff_t>(start + h.data_len));
  return out;
}

}  // namespace stegdisc
