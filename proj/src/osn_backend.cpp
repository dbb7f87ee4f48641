#include "stegdisc/osn_backend.hpp"

#include <ctime>
#include <fstream>
#include <iterator>
#include <thread>

#include "stegdisc/errors.hpp"
#include "stegdisc/sha256.hpp"

namespace stegdisc {

namespace fs = std::filesystem;

namespace {

std::string join_lines(const HashtagSeq& hashtags) {
  std::string out;
  for (const auto& tag : hashtags) {
    out += tag;
    out.push_back('\n');
  }
  return out;
}

void write_file_bytes(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) raise(Errc::Io, "cannot write " + path.string());
}

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::Io, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

std::string iso8601(std::chrono::system_clock::time_point t) {
  const auto secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string address_digest(const HashtagSeq& hashtags) {
  const auto d = sha256(join_lines(hashtags));
  return to_hex(d);
}

void validate_hashtag_seq(const HashtagSeq& hashtags) {
  if (hashtags.empty()) raise(Errc::NotAPermutation, "empty hashtag sequence");
  for (std::size_t i = 0; i < hashtags.size(); ++i) {
    if (!is_valid_hashtag(hashtags[i])) raise(Errc::UnknownTag, "invalid hashtag '" + hashtags[i] + "'");
    for (std::size_t j = 0; j < i; ++j) {
      if (hashtags[i] == hashtags[j]) raise(Errc::NotAPermutation, "repeated hashtag " + hashtags[i]);
    }
  }
}

// ---------------------------------------------------------------------------

OsnBackend::OsnBackend(BackendConfig config)
    : config_(config), fault_rng_(config.failure_seed) {
  if (!(config_.failure_rate >= 0.0 && config_.failure_rate <= 1.0)) {
    raise(Errc::ConfigInvalid, "failure_rate must lie in [0, 1]");
  }
}

void OsnBackend::set_config(const BackendConfig& config) {
  if (!(config.failure_rate >= 0.0 && config.failure_rate <= 1.0)) {
    raise(Errc::ConfigInvalid, "failure_rate must lie in [0, 1]");
  }
  std::lock_guard lock(fault_mutex_);
  config_ = config;
  fault_rng_.seed(config.failure_seed);
}

void OsnBackend::inject_faults() {
  bool fail = false;
  std::chrono::microseconds latency{0};
  {
    std::lock_guard lock(fault_mutex_);
    latency = config_.latency;
    if (config_.failure_rate > 0.0) {
      fail = std::uniform_real_distribution<double>(0.0, 1.0)(fault_rng_) < config_.failure_rate;
    }
  }
  if (latency.count() > 0) std::this_thread::sleep_for(latency);
  if (fail) raise(Errc::BackendUnavailable, "social network temporarily unavailable");
}

std::string OsnBackend::post(std::span<const std::uint8_t> object, const HashtagSeq& hashtags) {
  validate_hashtag_seq(hashtags);
  inject_faults();
  std::unique_lock lock(mutex_);
  if (do_exists(hashtags)) raise(Errc::DuplicateAddress, "address already occupied");
  Post post{address_digest(hashtags), {object.begin(), object.end()}, hashtags,
            std::chrono::system_clock::now()};
  do_post(post);
  ++posts_made_;
  return post.post_id;
}

bool OsnBackend::exists(const HashtagSeq& hashtags) {
  validate_hashtag_seq(hashtags);
  inject_faults();
  std::shared_lock lock(mutex_);
  return do_exists(hashtags);
}

std::vector<std::uint8_t> OsnBackend::fetch(const HashtagSeq& hashtags) {
  validate_hashtag_seq(hashtags);
  inject_faults();
  std::shared_lock lock(mutex_);
  auto obj = do_fetch(hashtags);
  if (!obj) raise(Errc::NotFound, "no post at address");
  return std::move(*obj);
}

void OsnBackend::replace(const HashtagSeq& hashtags, std::span<const std::uint8_t> object) {
  validate_hashtag_seq(hashtags);
  inject_faults();
  std::unique_lock lock(mutex_);
  if (!do_replace(hashtags, object)) raise(Errc::NotFound, "no post at address");
}

void OsnBackend::remove(const HashtagSeq& hashtags) {
  validate_hashtag_seq(hashtags);
  inject_faults();
  std::unique_lock lock(mutex_);
  if (!do_remove(hashtags)) raise(Errc::NotFound, "no post at address");
}

std::size_t OsnBackend::size() { return addresses().size(); }

std::vector<HashtagSeq> OsnBackend::addresses() {
  std::shared_lock lock(mutex_);
  return do_addresses();
}

// ---------------------------------------------------------------------------

void MemoryBackend::do_post(const Post& post) { posts_.emplace(post.hashtags, post); }

bool MemoryBackend::do_exists(const HashtagSeq& hashtags) const { return posts_.contains(hashtags); }

std::optional<std::vector<std::uint8_t>> MemoryBackend::do_fetch(const HashtagSeq& hashtags) const {
  auto it = posts_.find(hashtags);
  if (it == posts_.end()) return std::nullopt;
  return it->second.object;
}

bool MemoryBackend::do_replace(const HashtagSeq& hashtags, std::span<const std::uint8_t> object) {
  auto it = posts_.find(hashtags);
  if (it == posts_.end()) return false;
  it->second.object.assign(object.begin(), object.end());
  return true;
}

bool MemoryBackend::do_remove(const HashtagSeq& hashtags) { return posts_.erase(hashtags) > 0; }

std::vector<HashtagSeq> MemoryBackend::do_addresses() const {
  std::vector<HashtagSeq> out;
  out.reserve(posts_.size());
  for (const auto& [key, _] : posts_) out.push_back(key);
  return out;
}

// ---------------------------------------------------------------------------

DirectoryBackend::DirectoryBackend(fs::path root, BackendConfig config)
    : OsnBackend(config), root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "posts", ec);
  if (ec) raise(Errc::Io, "cannot create backend root " + root_.string() + ": " + ec.message());
}

fs::path DirectoryBackend::post_dir(const HashtagSeq& hashtags) const {
  return root_ / "posts" / address_digest(hashtags);
}

void DirectoryBackend::do_post(const Post& post) {
  const auto final_dir = post_dir(post.hashtags);
  const auto tmp_dir = final_dir.parent_path() / (".tmp-" + final_dir.filename().string());
  fs::remove_all(tmp_dir);
  fs::create_directories(tmp_dir);
  write_file_bytes(tmp_dir / "object.bin", post.object);
  std::ofstream meta(tmp_dir / "meta.txt", std::ios::trunc);
  meta << join_lines(post.hashtags) << iso8601(post.created_at) << '\n';
  meta.close();
  if (!meta) raise(Errc::Io, "cannot write post metadata");
  fs::rename(tmp_dir, final_dir);
}

bool DirectoryBackend::do_exists(const HashtagSeq& hashtags) const {
  return fs::exists(post_dir(hashtags) / "object.bin");
}

std::optional<std::vector<std::uint8_t>> DirectoryBackend::do_fetch(const HashtagSeq& hashtags) const {
  const auto path = post_dir(hashtags) / "object.bin";
  if (!fs::exists(path)) return std::nullopt;
  return read_file_bytes(path);
}

bool DirectoryBackend::do_replace(const HashtagSeq& hashtags, std::span<const std::uint8_t> object) {
  const auto dir = post_dir(hashtags);
  if (!fs::exists(dir / "object.bin")) return false;
  write_file_bytes(dir / "object.bin.tmp", object);
  fs::rename(dir / "object.bin.tmp", dir / "object.bin");
  return true;
}

bool DirectoryBackend::do_remove(const HashtagSeq& hashtags) {
  const auto dir = post_dir(hashtags);
  if (!fs::exists(dir / "object.bin")) return false;
  fs::remove_all(dir);
  return true;
}

std::vector<HashtagSeq> DirectoryBackend::do_addresses() const {
  std::vector<HashtagSeq> out;
  for (const auto& entry : fs::directory_iterator(root_ / "posts")) {
    if (!entry.is_directory() || entry.path().filename().string().starts_with(".")) continue;
    std::ifstream meta(entry.path() / "meta.txt");
    std::vector<std::string> lines;
    for (std::string line; std::getline(meta, line);) {
      if (!line.empty()) lines.push_back(line);
    }
    if (lines.size() < 2) continue;
    lines.pop_back();  // timestamp
    out.push_back(std::move(lines));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::shared_ptr<OsnBackend> make_backend(std::string_view spec, BackendConfig config) {
  if (spec == "memory") return std::make_shared<MemoryBackend>(config);
  if (spec.starts_with("dir:") && spec.size() > 4) {
    return std::make_shared<DirectoryBackend>(fs::path(spec.substr(4)), config);
  }
  raise(Errc::UsageError, "backend must be 'memory' or 'dir:<path>', got '" + std::string(spec) + "'");
}

}  // namespace stegdisc
