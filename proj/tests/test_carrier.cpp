#include <fstream>
#include <random>

#include "doctest.h"
#include "stegdisc/bitmap.hpp"
#include "stegdisc/carrier.hpp"
#include "stegdisc/errors.hpp"
#include "stegdisc/payload.hpp"
#include "support.hpp"

using namespace stegdisc;
using Bytes = std::vector<std::uint8_t>;

namespace {

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Io;
}

CarrierObject blank(std::uint32_t w, std::uint32_t h) { return CarrierObject::bitmap(Bitmap(w, h)); }

}  // namespace

TEST_SUITE("payload") {
  TEST_CASE("empty null block") {
    BlockPayload pl;
    CHECK(encode_payload(pl, 8) == Bytes{0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00});
  }

  TEST_CASE("hand-assembled layout") {
    BlockPayload pl{1, 0, 258, {'A', 'B'}};
    CHECK(encode_payload(pl, 16) == Bytes{0x01, 0x00, 0x01, 0x02, 0x00, 0x00, 0x00, 0x02, 0x41, 0x42});
    CHECK(decode_payload(encode_payload(pl, 16), 16) == pl);
  }

  TEST_CASE("counter width is rounded up to whole bytes") {
    CHECK(header_size(8) == 7);
    CHECK(header_size(9) == 8);
    CHECK(header_size(32) == 10);
    CHECK(header_size(64) == 14);
    BlockPayload pl{1, kFlagGenesis, 0x1ff, {}};
    CHECK(encode_payload(pl, 9) == Bytes{0x01, 0x01, 0x01, 0xff, 0, 0, 0, 0});
  }

  TEST_CASE("errors") {
    CHECK(error_of([] { encode_payload({1, 0, 256, {}}, 8); }) == Errc::CounterTooWide);
    CHECK(error_of([] { encode_payload({1, 0, 1, Bytes(5)}, 8, 4); }) == Errc::DataTooLong);
    CHECK(error_of([] { decode_payload(Bytes{0x02, 0, 0, 0, 0, 0, 0}, 8); }) == Errc::BadVersion);
    Bytes truncated{0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x64};
    truncated.resize(truncated.size() + 10);
    CHECK(error_of([&] { decode_payload(truncated, 8); }) == Errc::TruncatedPayload);
    CHECK(error_of([] { decode_payload(Bytes{0x01, 0x00}, 8); }) == Errc::TruncatedPayload);
    // counter byte field wider than p bits
    CHECK(error_of([] { decode_payload(Bytes{0x01, 0x00, 0x02, 0x00, 0, 0, 0, 0}, 9); }) ==
          Errc::CounterTooWide);
  }

  TEST_CASE("round trip over random payloads") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
      const unsigned p = 1 + rng() % 64;
      BlockPayload pl;
      pl.flags = rng() % 2;
      pl.next_counter = p == 64 ? rng() : rng() % (std::uint64_t{1} << p);
      pl.data = stegtest::random_bytes(rng, rng() % 300);
      const auto bytes = encode_payload(pl, p);
      CHECK(bytes.size() == header_size(p) + pl.data.size());
      CHECK(decode_payload(bytes, p) == pl);
    }
  }
}

TEST_SUITE("bitmap") {
  TEST_CASE("capacity examples") {
    CHECK(capacity(blank(100, 100)) == 3750);
    CHECK(capacity(blank(1, 1)) == 0);
    CHECK(capacity(blank(2, 2)) == 1);
    CHECK(capacity(CarrierObject::opaque(17)) == 17);
  }

  TEST_CASE("encode/decode preserves pixels and pads rows") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      const auto w = static_cast<std::uint32_t>(1 + rng() % 40);
      const auto h = static_cast<std::uint32_t>(1 + rng() % 40);
      const auto image = synthetic_bitmap(w, h, rng());
      const auto file = encode_bmp(image);
      const auto layout = parse_bmp_layout(file);
      CHECK(layout.width == w);
      CHECK(layout.height == h);
      CHECK(layout.stride % 4 == 0);
      CHECK(file.size() == layout.pixel_offset + layout.stride * h);
      const auto back = decode_bmp(file);
      CHECK(back.width == w);
      CHECK(back.bgr == image.bgr);
    }
  }

  TEST_CASE("rejects non-24-bit or malformed files") {
    auto file = encode_bmp(Bitmap(4, 4));
    auto bad_magic = file;
    bad_magic[0] = 'X';
    CHECK(error_of([&] { parse_bmp_layout(bad_magic); }) == Errc::UnsupportedCarrier);
    auto bad_depth = file;
    bad_depth[28] = 8;
    CHECK(error_of([&] { parse_bmp_layout(bad_depth); }) == Errc::UnsupportedCarrier);
    file.resize(file.size() - 1);
    CHECK(error_of([&] { parse_bmp_layout(file); }) == Errc::UnsupportedCarrier);
  }
}

TEST_SUITE("embedding") {
  TEST_CASE("bits go most-significant first into successive channel LSBs") {
    const auto carrier = blank(8, 2);
    const auto stego = embed(carrier, Bytes{0xa5});
    const auto offset = parse_bmp_layout(carrier.bytes).pixel_offset;
    const int expected[8] = {1, 0, 1, 0, 0, 1, 0, 1};
    for (int k = 0; k < 8; ++k) CHECK(stego.bytes[offset + k] == expected[k]);
  }

  TEST_CASE("row padding is skipped") {
    // width 1: 3 channel bytes then 1 padding byte per row
    const auto carrier = blank(1, 8);
    const auto stego = embed(carrier, Bytes{0xff, 0xff, 0xff});
    const auto layout = parse_bmp_layout(carrier.bytes);
    for (std::uint32_t row = 0; row < 8; ++row) {
      CHECK(stego.bytes[layout.pixel_offset + row * layout.stride + 3] == 0);
    }
  }

  TEST_CASE("capacity overflow") {
    const auto carrier = blank(10, 10);
    CHECK(error_of([&] { embed(carrier, Bytes(capacity(carrier) + 1)); }) == Errc::CapacityExceeded);
    CHECK(error_of([&] { extract(carrier, capacity(carrier) + 1); }) == Errc::CapacityExceeded);
    CHECK(error_of([] { embed(CarrierObject::opaque(3), Bytes(4)); }) == Errc::CapacityExceeded);
    CHECK_NOTHROW(embed(carrier, Bytes(capacity(carrier))));
  }

  TEST_CASE("unembedded zero bitmap extracts zeros") {
    const auto carrier = blank(20, 20);
    CHECK(extract(carrier, capacity(carrier)) == Bytes(capacity(carrier), 0));
  }

  TEST_CASE("round trip, LSB-only change, capacity monotone") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 500; ++i) {
      const auto w = static_cast<std::uint32_t>(1 + rng() % 48);
      const auto h = static_cast<std::uint32_t>(1 + rng() % 48);
      const auto carrier = CarrierObject::bitmap(synthetic_bitmap(w, h, rng()));
      const auto cap = capacity(carrier);
      const auto payload = stegtest::random_bytes(rng, cap ? rng() % (cap + 1) : 0);
      const auto stego = embed(carrier, payload);
      REQUIRE(stego.bytes.size() == carrier.bytes.size());
      CHECK(extract(stego, payload.size()) == payload);
      for (std::size_t b = 0; b < carrier.bytes.size(); ++b) {
        if ((stego.bytes[b] | 1) != (carrier.bytes[b] | 1)) {
          FAIL_CHECK("non-LSB change at byte " << b);
          break;
        }
      }
      const auto bigger = CarrierObject::bitmap(Bitmap(w + 1, h));
      CHECK_NOTHROW(embed(bigger, payload));
    }
  }

  TEST_CASE("opaque carrier stores the payload verbatim") {
    const Bytes payload{1, 2, 3};
    const auto stego = embed(CarrierObject::opaque(8), payload);
    CHECK(stego.bytes == payload);
    CHECK(extract(stego, 3) == payload);
    CHECK(error_of([&] { extract(stego, 5); }) == Errc::TruncatedPayload);
  }

  TEST_CASE("two-phase block read equals one-phase decode") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
      const unsigned p = 8 + rng() % 57;
      BlockPayload pl;
      pl.next_counter = rng() % (std::uint64_t{1} << 8);
      pl.data = stegtest::random_bytes(rng, rng() % 200);
      const auto carrier = CarrierObject::bitmap(synthetic_bitmap(40, 40, rng()));
      const auto stego = write_block(carrier, pl, p, 200);
      const auto encoded = encode_payload(pl, p);
      CHECK(read_block(stego, p) == decode_payload(extract(stego, encoded.size()), p));
      CHECK(read_block_header(stego, p).data_len == pl.data.size());
    }
  }
}

TEST_SUITE("carrier pool") {
  TEST_CASE("spec parse and print") {
    CHECK(CarrierSpec::parse("bitmap:32x16").capacity() == 32 * 16 * 3 / 8);
    CHECK(CarrierSpec::parse("opaque:99").capacity() == 99);
    CHECK(CarrierSpec::parse("bitmap:7x9").to_string() == "bitmap:7x9");
    CHECK(error_of([] { CarrierSpec::parse("jpeg:1"); }) == Errc::ConfigInvalid);
  }

  TEST_CASE("synthetic carriers are deterministic per disc and counter") {
    CarrierPool a(CarrierSpec::parse("bitmap:16x16"));
    CarrierPool b(CarrierSpec::parse("bitmap:16x16"));
    CHECK(a.next("disc", 5) == b.next("disc", 5));
    CHECK_FALSE(a.next("disc", 5) == a.next("disc", 6));
    CHECK(capacity(a.next("disc", 1)) == a.min_capacity());
  }

  TEST_CASE("directory covers are consumed in name order, then synthetic") {
    stegtest::TempDir dir("pool");
    for (int i : {2, 1}) {
      std::ofstream out(dir / ("cover" + std::to_string(i) + ".bmp"), std::ios::binary);
      const auto file = encode_bmp(synthetic_bitmap(20 + i, 20, i));
      out.write(reinterpret_cast<const char*>(file.data()), static_cast<std::streamsize>(file.size()));
    }
    CarrierPool pool(CarrierSpec::parse("bitmap:64x64"), dir.path());
    CHECK(pool.pool_remaining() == 2);
    CHECK(pool.min_capacity() == 21 * 20 * 3 / 8);
    CHECK(parse_bmp_layout(pool.next("d", 1).bytes).width == 21);
    CHECK(parse_bmp_layout(pool.next("d", 2).bytes).width == 22);
    CHECK(parse_bmp_layout(pool.next("d", 3).bytes).width == 64);
  }
}
