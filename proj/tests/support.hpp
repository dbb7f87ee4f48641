#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "stegdisc/disc.hpp"

namespace stegtest {

using namespace stegdisc;

// Self-deleting scratch directory under the system temp dir.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("stegdisc-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  std::filesystem::path path_;
};

inline CarrierSpec opaque_carrier(std::size_t capacity = 1 << 16) {
  return {CarrierKind::Opaque, 0, 0, capacity};
}

inline DiscConfig make_config(std::size_t n, std::size_t m, Mode mode, unsigned p = 32,
                              CarrierSpec carrier = opaque_carrier(), std::uint64_t seed = 7) {
  return DiscConfig::generate(n, p, m, mode, carrier, seed);
}

inline std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t len) {
  std::vector<std::uint8_t> out(len);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

inline std::vector<std::uint8_t> bytes_of(std::string_view s) { return {s.begin(), s.end()}; }

}  // namespace stegtest
