#include <fstream>
#include <set>
#include <thread>

#include "doctest.h"
#include "stegdisc/errors.hpp"
#include "stegdisc/osn_backend.hpp"
#include "support.hpp"

using namespace stegdisc;
using Bytes = std::vector<std::uint8_t>;

namespace {

const HashtagSeq abc{"#a", "#b", "#c"};
const HashtagSeq cab{"#c", "#a", "#b"};

Errc error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Io;
}

// Both backends must satisfy the same contract.
void contract(OsnBackend& b) {
  CHECK_FALSE(b.exists(abc));
  CHECK(b.size() == 0);

  const Bytes obj{0, 1, 2, 255};
  const auto id = b.post(obj, cab);
  CHECK(id == address_digest(cab));
  CHECK(b.exists(cab));
  CHECK_FALSE(b.exists(abc));  // order is significant
  CHECK(error_of([&] { b.fetch(abc); }) == Errc::NotFound);
  CHECK(b.fetch(cab) == obj);
  CHECK(error_of([&] { b.post(Bytes{9}, cab); }) == Errc::DuplicateAddress);
  CHECK(b.fetch(cab) == obj);

  b.replace(cab, Bytes{7, 7});
  CHECK(b.fetch(cab) == Bytes{7, 7});
  CHECK(b.size() == 1);
  CHECK(error_of([&] { b.replace(abc, Bytes{1}); }) == Errc::NotFound);

  b.remove(cab);
  CHECK_FALSE(b.exists(cab));
  CHECK(error_of([&] { b.remove(cab); }) == Errc::NotFound);

  // recycling
  b.post(Bytes{4}, cab);
  CHECK(b.fetch(cab) == Bytes{4});
  b.post(Bytes{}, abc);
  CHECK(b.fetch(abc).empty());
  const auto addrs = b.addresses();
  CHECK(std::set<HashtagSeq>(addrs.begin(), addrs.end()) == std::set<HashtagSeq>{abc, cab});

  CHECK(error_of([&] { b.post(Bytes{}, HashtagSeq{"#a", "#a"}); }) == Errc::NotAPermutation);
  CHECK(error_of([&] { b.exists(HashtagSeq{"a"}); }) == Errc::UnknownTag);
}

}  // namespace

TEST_CASE("memory backend contract") {
  MemoryBackend b;
  contract(b);
  CHECK(b.post_count() == 3);
}

TEST_CASE("directory backend contract") {
  stegtest::TempDir dir("osn");
  DirectoryBackend b(dir.path());
  contract(b);
}

TEST_CASE("directory backend survives restart byte-for-byte") {
  stegtest::TempDir dir("osn");
  std::mt19937_64 rng(1);
  std::map<HashtagSeq, Bytes> posted;
  {
    DirectoryBackend b(dir.path());
    for (std::uint32_t i = 0; i < 20; ++i) {
      HashtagSeq seq = perm_to_hashtags(unrank(i, 4), HashtagAlphabet::numbered(4));
      posted[seq] = stegtest::random_bytes(rng, rng() % 4096);
      b.post(posted[seq], seq);
    }
  }
  DirectoryBackend again(dir.path());
  CHECK(again.size() == posted.size());
  for (const auto& [seq, bytes] : posted) CHECK(again.fetch(seq) == bytes);
}

TEST_CASE("directory layout: one directory per post with object and metadata") {
  stegtest::TempDir dir("osn");
  DirectoryBackend b(dir.path());
  b.post(Bytes{1, 2}, cab);
  const auto post_dir = dir.path() / "posts" / address_digest(cab);
  CHECK(std::filesystem::exists(post_dir / "object.bin"));
  std::ifstream meta(post_dir / "meta.txt");
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(meta, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  CHECK(HashtagSeq(lines.begin(), lines.begin() + 3) == cab);
  CHECK(lines[3].size() == 20);  // YYYY-MM-DDTHH:MM:SSZ
  CHECK(lines[3].back() == 'Z');
}

TEST_CASE("address digest is collision-free across orderings") {
  const auto alphabet = HashtagAlphabet::numbered(5);
  std::set<std::string> digests;
  for (AddressCode c = 0; c < factorial(5); ++c) digests.insert(address_digest(perm_to_hashtags(unrank(c, 5), alphabet)));
  CHECK(digests.size() == 120);
}

TEST_CASE("failure injection is reproducible and off by default") {
  auto count_failures = [](std::uint64_t seed) {
    MemoryBackend b({std::chrono::microseconds{0}, 0.3, seed});
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
      try {
        b.exists(abc);
      } catch (const Error& e) {
        CHECK(e.code() == Errc::BackendUnavailable);
        ++failures;
      }
    }
    return failures;
  };
  const auto f1 = count_failures(5);
  CHECK(f1 == count_failures(5));
  CHECK(f1 > 20);
  CHECK(f1 < 120);

  MemoryBackend quiet;
  for (int i = 0; i < 200; ++i) CHECK_NOTHROW(quiet.exists(abc));
  CHECK(error_of([&] { quiet.set_config({{}, 1.5, 0}); }) == Errc::ConfigInvalid);
}

TEST_CASE("latency is applied per call") {
  MemoryBackend b({std::chrono::microseconds{2000}, 0.0, 0});
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 5; ++i) b.exists(abc);
  CHECK(std::chrono::steady_clock::now() - t0 >= std::chrono::milliseconds(10));
}

TEST_CASE("concurrent posts keep addresses unique") {
  MemoryBackend b;
  const auto alphabet = HashtagAlphabet::numbered(5);
  std::atomic<int> duplicates{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (AddressCode c = 0; c < 120; ++c) {
        try {
          b.post(Bytes{1}, perm_to_hashtags(unrank(c, 5), alphabet));
        } catch (const Error&) {
          ++duplicates;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  CHECK(b.size() == 120);
  CHECK(duplicates == 3 * 120);
}

TEST_CASE("backend specs") {
  CHECK(dynamic_cast<MemoryBackend*>(make_backend("memory").get()) != nullptr);
  stegtest::TempDir dir("osn");
  CHECK(dynamic_cast<DirectoryBackend*>(make_backend("dir:" + dir.path().string()).get()) != nullptr);
  CHECK(error_of([] { make_backend("facebook"); }) == Errc::UsageError);
}
