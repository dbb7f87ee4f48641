#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "stegdisc/permutation.hpp"

namespace stegdisc {

/// One object shared on the simulated network, keyed by its ordered hashtags.
struct Post {
  std::string post_id;
  std::vector<std::uint8_t> object;
  HashtagSeq hashtags;
  std::chrono::system_clock::time_point created_at;
};

struct BackendConfig {
  std::chrono::microseconds latency{0};
  double failure_rate = 0.0;       // probability of BackendUnavailable per call
  std::uint64_t failure_seed = 0;  // makes injected failures reproducible
};

/// Simulated open social network.
///
/// Posts are keyed by the *ordered* hashtag sequence: the same tags in a
/// different order are a different address. Objects are returned byte for
/// byte as posted. Reads may run concurrently; mutations are serialized.
class OsnBackend {
 public:
  explicit OsnBackend(BackendConfig config = {});
  virtual ~OsnBackend() = default;

  OsnBackend(const OsnBackend&) = delete;
  OsnBackend& operator=(const OsnBackend&) = delete;

  /// Throws DuplicateAddress when the sequence is already live.
  std::string post(std::span<const std::uint8_t> object, const HashtagSeq& hashtags);
  bool exists(const HashtagSeq& hashtags);
  /// Throws NotFound.
  std::vector<std::uint8_t> fetch(const HashtagSeq& hashtags);
  void replace(const HashtagSeq& hashtags, std::span<const std::uint8_t> object);
  void remove(const HashtagSeq& hashtags);

  std::size_t size();
  std::vector<HashtagSeq> addresses();

  /// Number of successful post() calls since construction.
  std::uint64_t post_count() const noexcept { return posts_made_.load(); }

  void set_config(const BackendConfig& config);

 protected:
  virtual void do_post(const Post& post) = 0;
  virtual bool do_exists(const HashtagSeq& hashtags) const = 0;
  virtual std::optional<std::vector<std::uint8_t>> do_fetch(const HashtagSeq& hashtags) const = 0;
  virtual bool do_replace(const HashtagSeq& hashtags, std::span<const std::uint8_t> object) = 0;
  virtual bool do_remove(const HashtagSeq& hashtags) = 0;
  virtual std::vector<HashtagSeq> do_addresses() const = 0;

 private:
  void inject_faults();

  BackendConfig config_;
  std::mutex fault_mutex_;
  std::mt19937_64 fault_rng_;
  std::shared_mutex mutex_;
  std::atomic<std::uint64_t> posts_made_{0};
};

/// Stable key of an ordered sequence: hex SHA-256 of the newline-joined tags.
std::string address_digest(const HashtagSeq& hashtags);

void validate_hashtag_seq(const HashtagSeq& hashtags);

class MemoryBackend final : public OsnBackend {
 public:
  using OsnBackend::OsnBackend;

 protected:
  void do_post(const Post& post) override;
  bool do_exists(const HashtagSeq& hashtags) const override;
  std::optional<std::vector<std::uint8_t>> do_fetch(const HashtagSeq& hashtags) const override;
  bool do_replace(const HashtagSeq& hashtags, std::span<const std::uint8_t> object) override;
  bool do_remove(const HashtagSeq& hashtags) override;
  std::vector<HashtagSeq> do_addresses() const override;

 private:
  std::map<HashtagSeq, Post> posts_;
};

/// One directory per post under <root>/posts/<address digest>/ holding
/// `object.bin` and `meta.txt` (one hashtag per line, then an ISO-8601 time).
class DirectoryBackend final : public OsnBackend {
 public:
  explicit DirectoryBackend(std::filesystem::path root, BackendConfig config = {});

  const std::filesystem::path& root() const noexcept { return root_; }

 protected:
  void do_post(const Post& post) override;
  bool do_exists(const HashtagSeq& hashtags) const override;
  std::optional<std::vector<std::uint8_t>> do_fetch(const HashtagSeq& hashtags) const override;
  bool do_replace(const HashtagSeq& hashtags, std::span<const std::uint8_t> object) override;
  bool do_remove(const HashtagSeq& hashtags) override;
  std::vector<HashtagSeq> do_addresses() const override;

 private:
  std::filesystem::path post_dir(const HashtagSeq& hashtags) const;

  std::filesystem::path root_;
};

/// "memory" or "dir:<path>".
std::shared_ptr<OsnBackend> make_backend(std::string_view spec, BackendConfig config = {});

std::string iso8601(std::chrono::system_clock::time_point t);

}  // namespace stegdisc
