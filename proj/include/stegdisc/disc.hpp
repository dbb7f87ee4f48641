#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stegdisc/carrier.hpp"
#include "stegdisc/osn_backend.hpp"
#include "stegdisc/payload.hpp"
#include "stegdisc/permutation.hpp"
#include "stegdisc/sampler.hpp"
#include "stegdisc/superblock.hpp"

namespace stegdisc {

/// ceil(M / m): blocks needed for M bytes in m-byte blocks.
std::uint64_t compute_chain_length(std::uint64_t M, std::uint64_t m);

/// One object of the chain as seen during traversal. `counter` is the value
/// other blocks use to point here: the stream counter (modes A, C) or the
/// address code plus one (mode B, keeping 0 free for NULL). The genesis block
/// has counter 0.
struct ChainBlock {
  Permutation address;
  std::uint64_t counter = 0;
  BlockPayload payload;
};

enum class ViolationKind {
  MissingBlock,      // pointed-to address has no post
  UndecodableBlock,  // post exists but carries no valid payload
  BadPointer,        // next pointer does not resolve or points at the wrong block
  CounterOrder,      // stream counters not strictly increasing (mode C)
  LengthMismatch,    // block data length disagrees with the catalog
  GenesisMismatch,   // genesis block does not echo this superblock
  DictionaryMismatch,// mode A used-address set differs from the live chain
};

std::string_view violation_name(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::uint64_t counter = 0;  // pointer value of the offending block
  std::string address;        // comma-joined permutation, when known
  std::string file;           // catalog entry concerned, if any
  std::string detail;
};

struct FsckReport {
  std::vector<Violation> violations;
  std::size_t blocks_visited = 0;  // genesis included

  bool clean() const noexcept { return violations.empty(); }
};

struct TradeoffStats {
  std::size_t superblock_bytes = 0;
  std::size_t catalog_bytes = 0;
  std::size_t dictionary_bytes = 0;
  std::uint64_t alloc_iterations = 0;   // hash evaluations spent allocating
  std::uint64_t replay_iterations = 0;  // hash evaluations spent resolving pointers
  std::size_t blocks = 0;               // live blocks, genesis included
  std::size_t files = 0;

  std::size_t persistent_bytes() const noexcept {
    return superblock_bytes + catalog_bytes + dictionary_bytes;
  }
};

struct DiscOptions {
  /// Superblock/catalog document; rewritten after every mutation when set.
  std::optional<std::filesystem::path> document;
  std::optional<std::filesystem::path> carrier_dir;
  /// Consecutive occupied emissions tolerated; defaults by n.
  std::optional<std::uint64_t> stall_threshold;
};

/// A filesystem whose blocks are objects on the simulated network.
///
/// All blocks form one chain rooted at the genesis address; every block hides
/// a pointer to its successor. Files occupy consecutive runs and new files are
/// appended at the tail. Deleting a file copies the pointer held by its last
/// block into the block preceding it, then removes its posts.
///
/// Mutations are serialized; reads may run concurrently with each other.
class Disc {
 public:
  static std::unique_ptr<Disc> format(DiscConfig config, std::shared_ptr<OsnBackend> backend,
                                      DiscOptions options = {});
  static std::unique_ptr<Disc> open(const std::filesystem::path& document,
                                    std::shared_ptr<OsnBackend> backend, DiscOptions options = {});
  static std::unique_ptr<Disc> open(DiscDocument document, std::shared_ptr<OsnBackend> backend,
                                    DiscOptions options = {});

  Disc(const Disc&) = delete;
  Disc& operator=(const Disc&) = delete;

  FileEntry write_file(std::string_view name, std::span<const std::uint8_t> bytes);
  std::vector<std::uint8_t> read_file(std::string_view name) const;
  void delete_file(std::string_view name);
  FileEntry modify_file(std::string_view name, std::span<const std::uint8_t> bytes);

  /// Sorted by name.
  std::vector<FileEntry> list_files() const;
  std::optional<FileEntry> find_file(std::string_view name) const;

  FsckReport fsck() const;
  TradeoffStats stats() const;

  /// Every block reachable from genesis, genesis first. Throws ChainBroken.
  std::vector<ChainBlock> traverse() const;
  /// The run of blocks holding one file. Throws FileNotFound / ChainBroken.
  std::vector<ChainBlock> file_blocks(std::string_view name) const;

  /// Address a stored pointer refers to. Throws InvalidCounter/CodeOutOfRange.
  Permutation resolve(std::uint64_t pointer) const;
  HashtagSeq hashtags(const Permutation& address) const;

  /// Mode A only: genesis plus every address in the used-address dictionary.
  std::set<Permutation> used_addresses() const;

  const DiscConfig& config() const noexcept { return config_; }
  DiscDocument document() const;
  std::uint64_t sampler_iteration() const;
  OsnBackend& backend() const noexcept { return *backend_; }

 private:
  class Resolver;
  struct Run {
    FileEntry entry;
    std::vector<Permutation> addresses;
  };

  Disc(DiscConfig config, std::shared_ptr<OsnBackend> backend, DiscOptions options);

  Run append_run(std::span<const std::uint8_t> bytes);
  void splice_out(const FileEntry& entry);
  ChainBlock locate_tail(Resolver& resolver) const;
  ChainBlock fetch_block(const Permutation& address, std::uint64_t counter) const;
  void rewrite_pointer(const ChainBlock& block, std::uint64_t next);
  SamplerState& sampler();
  void persist() const;
  std::vector<FileEntry>::iterator find_entry(std::string_view name);
  std::vector<FileEntry>::const_iterator find_entry(std::string_view name) const;
  DiscDocument document_locked() const;

  DiscConfig config_;
  std::shared_ptr<OsnBackend> backend_;
  DiscOptions options_;
  CarrierPool pool_;
  AllocationLimits limits_;

  std::vector<FileEntry> files_;  // chain order
  std::uint64_t iteration_ = 0;   // persisted sampler position
  std::optional<SamplerState> sampler_;
  std::map<std::uint64_t, Permutation> dictionary_;  // mode A
  std::set<Permutation> used_;                       // mode A, genesis included
  std::optional<ChainBlock> tail_;

  mutable std::shared_mutex mutex_;
  mutable std::atomic<std::uint64_t> alloc_iterations_{0};
  mutable std::atomic<std::uint64_t> replay_iterations_{0};
};

}  // namespace stegdisc
