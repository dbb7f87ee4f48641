#include "stegdisc/disc.hpp"

#include <algorithm>
#include <mutex>

#include "stegdisc/errors.hpp"

namespace stegdisc {

std::uint64_t compute_chain_length(std::uint64_t M, std::uint64_t m) {
  if (m == 0) raise(Errc::ConfigInvalid, "block size must be at least 1");
  return M / m + (M % m != 0);
}

std::string_view violation_name(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::MissingBlock: return "MissingBlock";
    case ViolationKind::UndecodableBlock: return "UndecodableBlock";
    case ViolationKind::BadPointer: return "BadPointer";
    case ViolationKind::CounterOrder: return "CounterOrder";
    case ViolationKind::LengthMismatch: return "LengthMismatch";
    case ViolationKind::GenesisMismatch: return "GenesisMismatch";
    case ViolationKind::DictionaryMismatch: return "DictionaryMismatch";
  }
  return "Unknown";
}

// Maps stored pointers back to addresses. In mode C one cursor walks the
// stream forward, so resolving the increasing pointers of a traversal costs
// one pass up to the largest counter.
class Disc::Resolver {
 public:
  explicit Resolver(const Disc& disc) : disc_(disc), cursor_(disc.config_.genesis) {}
  ~Resolver() { disc_.replay_iterations_ += spent_; }

  Resolver(const Resolver&) = delete;
  Resolver& operator=(const Resolver&) = delete;

  Permutation resolve(std::uint64_t pointer) {
    if (pointer == 0) raise(Errc::InvalidCounter, "null pointer");
    switch (disc_.config_.mode) {
      case Mode::A: {
        auto it = disc_.dictionary_.find(pointer);
        if (it == disc_.dictionary_.end()) {
          raise(Errc::InvalidCounter, "counter " + std::to_string(pointer) + " not in dictionary");
        }
        return it->second;
      }
      case Mode::B:
        return unrank(pointer - 1, disc_.config_.n);
      case Mode::C: {
        if (pointer > disc_.iteration_) {
          raise(Errc::InvalidCounter,
                "counter " + std::to_string(pointer) + " lies beyond the allocated stream");
        }
        auto done = sampler_seek(cursor_, pointer, &spent_);
        if (!done) {
          raise(Errc::InvalidCounter,
                "no address completes at counter " + std::to_string(pointer));
        }
        return std::move(*done);
      }
    }
    raise(Errc::ConfigInvalid, "unknown mode");
  }

  Permutation resolve_in_chain(std::uint64_t pointer) {
    try {
      return resolve(pointer);
    } catch (const Error& e) {
      if (e.code() == Errc::InvalidCounter || e.code() == Errc::CodeOutOfRange) {
        raise(Errc::ChainBroken, std::string("broken pointer: ") + e.what());
      }
      throw;
    }
  }

 private:
  const Disc& disc_;
  SamplerState cursor_;
  std::uint64_t spent_ = 0;
};

namespace {

struct Probe {
  std::optional<ChainBlock> block;
  ViolationKind problem = ViolationKind::MissingBlock;
  std::string detail;
};

}  // namespace

// ---------------------------------------------------------------------------

Disc::Disc(DiscConfig config, std::shared_ptr<OsnBackend> backend, DiscOptions options)
    : config_(std::move(config)),
      backend_(std::move(backend)),
      options_(std::move(options)),
      pool_(config_.carrier, options_.carrier_dir) {
  limits_.max_iteration = config_.mode == Mode::B ? kUnbounded : counter_limit(config_.p);
  limits_.stall_threshold =
      options_.stall_threshold.value_or(AllocationLimits::default_stall_threshold(config_.n));
  if (config_.mode == Mode::A) used_.insert(config_.genesis);
}

std::unique_ptr<Disc> Disc::format(DiscConfig config, std::shared_ptr<OsnBackend> backend,
                                   DiscOptions options) {
  if (!backend) raise(Errc::ConfigInvalid, "no backend");
  std::unique_ptr<Disc> disc(new Disc(std::move(config), std::move(backend), std::move(options)));
  const auto& cfg = disc->config_;
  cfg.validate(disc->pool_.min_capacity());

  const auto tags = disc->hashtags(cfg.genesis);
  if (disc->backend_->exists(tags)) raise(Errc::DuplicateAddress, "genesis address already occupied");

  BlockPayload genesis;
  genesis.flags = kFlagGenesis;
  const auto echo = cfg.superblock_echo();
  genesis.data.assign(echo.begin(), echo.end());
  const auto carrier = disc->pool_.next(cfg.disc_id, 0);
  const auto room = capacity(carrier);
  if (header_size(cfg.p) + echo.size() > room) {
    raise(Errc::ConfigInvalid, "carrier too small for the genesis block");
  }
  const auto obj = write_block(carrier, genesis, cfg.p, room - header_size(cfg.p));
  disc->backend_->post(obj.bytes, tags);
  disc->tail_ = ChainBlock{cfg.genesis, 0, genesis};
  disc->persist();
  return disc;
}

std::unique_ptr<Disc> Disc::open(const std::filesystem::path& document,
                                 std::shared_ptr<OsnBackend> backend, DiscOptions options) {
  if (!options.document) options.document = document;
  return open(DiscDocument::load(document), std::move(backend), std::move(options));
}

std::unique_ptr<Disc> Disc::open(DiscDocument document, std::shared_ptr<OsnBackend> backend,
                                 DiscOptions options) {
  if (!backend) raise(Errc::ConfigInvalid, "no backend");
  std::unique_ptr<Disc> disc(
      new Disc(std::move(document.config), std::move(backend), std::move(options)));
  disc->config_.validate(disc->pool_.min_capacity());
  disc->files_ = std::move(document.files);
  disc->iteration_ = document.iteration;
  if (disc->config_.mode == Mode::A) {
    for (const auto& [counter, code] : document.dictionary) {
      auto address = unrank(code, disc->config_.n);
      disc->used_.insert(address);
      disc->dictionary_.emplace(counter, std::move(address));
    }
  }

  const auto genesis = disc->fetch_block(disc->config_.genesis, 0);
  const auto echo = disc->config_.superblock_echo();
  if (!genesis.payload.is_genesis() ||
      std::string(genesis.payload.data.begin(), genesis.payload.data.end()) != echo) {
    raise(Errc::ConfigInvalid, "genesis block does not match this superblock");
  }
  return disc;
}

// ---------------------------------------------------------------------------

HashtagSeq Disc::hashtags(const Permutation& address) const {
  return perm_to_hashtags(address, config_.alphabet);
}

ChainBlock Disc::fetch_block(const Permutation& address, std::uint64_t counter) const {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = backend_->fetch(hashtags(address));
  } catch (const Error& e) {
    if (e.code() != Errc::NotFound) throw;
    raise(Errc::ChainBroken, "block " + std::to_string(counter) + " [" + address.to_string() +
                                 "] is missing from the network");
  }
  StegoObject obj{config_.carrier.kind, std::move(bytes), config_.carrier.opaque_capacity};
  try {
    return ChainBlock{address, counter, read_block(obj, config_.p)};
  } catch (const Error& e) {
    raise(Errc::ChainBroken, "block " + std::to_string(counter) + " [" + address.to_string() +
                                 "] is undecodable: " + e.what());
  }
}

void Disc::rewrite_pointer(const ChainBlock& block, std::uint64_t next) {
  const auto tags = hashtags(block.address);
  StegoObject obj{config_.carrier.kind, backend_->fetch(tags), config_.carrier.opaque_capacity};
  auto payload = block.payload;
  payload.next_counter = next;
  const auto room = capacity(obj) - std::min(capacity(obj), header_size(config_.p));
  const auto updated = write_block(obj, payload, config_.p, payload.is_genesis() ? room : config_.m);
  backend_->replace(tags, updated.bytes);
}

SamplerState& Disc::sampler() {
  if (!sampler_) {
    SamplerState state(config_.genesis);
    std::uint64_t spent = 0;
    auto done = sampler_seek(state, iteration_, &spent);
    replay_iterations_ += spent;
    if (iteration_ != 0 && !done) {
      raise(Errc::ConfigInvalid, "stored sampler position is not a completion point");
    }
    sampler_ = std::move(state);
  }
  return *sampler_;
}

ChainBlock Disc::locate_tail(Resolver& resolver) const {
  auto last = std::find_if(files_.rbegin(), files_.rend(),
                           [](const FileEntry& f) { return f.length > 0; });
  if (last == files_.rend()) {
    auto genesis = fetch_block(config_.genesis, 0);
    if (genesis.payload.next_counter != 0) raise(Errc::ChainBroken, "empty disc has a non-null genesis pointer");
    return genesis;
  }
  const auto blocks = compute_chain_length(last->length, config_.m);
  std::uint64_t pointer = last->start_counter;
  ChainBlock block;
  for (std::uint64_t i = 0; i < blocks; ++i) {
    if (pointer == 0) raise(Errc::ChainBroken, "chain ends inside '" + last->name + "'");
    block = fetch_block(resolver.resolve_in_chain(pointer), pointer);
    pointer = block.payload.next_counter;
  }
  if (pointer != 0) raise(Errc::ChainBroken, "last block of the chain has a non-null pointer");
  return block;
}

Disc::Run Disc::append_run(std::span<const std::uint8_t> bytes) {
  const auto total = bytes.size();
  const auto blocks = compute_chain_length(total, config_.m);
  if (blocks == 0) return {};

  const SamplerState& base = sampler();
  SamplerState state = base;
  std::set<Permutation> pending;
  const OccupiedFn occupied = [&](const Permutation& address) {
    if (pending.contains(address)) return true;
    if (config_.mode == Mode::A) return used_.contains(address);
    return backend_->exists(hashtags(address));
  };

  struct Slot {
    Permutation address;
    std::uint64_t stream_counter;
    std::uint64_t pointer;
  };
  std::vector<Slot> slots;
  slots.reserve(blocks);
  for (std::uint64_t i = 0; i < blocks; ++i) {
    auto adv = allocate_address(state, occupied, limits_);
    const auto pointer = config_.mode == Mode::B ? rank(adv.perm) + 1 : adv.counter;
    pending.insert(adv.perm);
    slots.push_back({std::move(adv.perm), adv.counter, pointer});
    state = std::move(adv.state);
  }
  alloc_iterations_ += state.iteration() - base.iteration();

  Resolver resolver(*this);
  const ChainBlock tail = tail_ ? *tail_ : locate_tail(resolver);

  std::vector<Permutation> posted;
  BlockPayload last_payload;
  try {
    for (std::uint64_t i = 0; i < blocks; ++i) {
      BlockPayload payload;
      payload.next_counter = i + 1 < blocks ? slots[i + 1].pointer : 0;
      const auto begin = i * config_.m;
      const auto end = std::min<std::uint64_t>(begin + config_.m, total);
      payload.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(begin),
                          bytes.begin() + static_cast<std::ptrdiff_t>(end));
      const auto carrier = pool_.next(config_.disc_id, slots[i].stream_counter);
      const auto obj = write_block(carrier, payload, config_.p, config_.m);
      backend_->post(obj.bytes, hashtags(slots[i].address));
      posted.push_back(slots[i].address);
      if (i + 1 == blocks) last_payload = std::move(payload);
    }
    rewrite_pointer(tail, slots.front().pointer);
  } catch (...) {
    for (const auto& address : posted) {
      try {
        backend_->remove(hashtags(address));
      } catch (const Error&) {
        // orphaned post; it only keeps an address occupied
      }
    }
    tail_.reset();
    throw;
  }

  sampler_ = std::move(state);
  iteration_ = sampler_->iteration();
  Run run;
  for (auto& slot : slots) {
    if (config_.mode == Mode::A) {
      used_.insert(slot.address);
      dictionary_.emplace(slot.stream_counter, slot.address);
    }
    run.addresses.push_back(slot.address);
  }
  tail_ = ChainBlock{slots.back().address, slots.back().pointer, std::move(last_payload)};
  run.entry.start_counter = slots.front().pointer;
  run.entry.length = total;
  return run;
}

void Disc::splice_out(const FileEntry& entry) {
  Resolver resolver(*this);
  const auto blocks = compute_chain_length(entry.length, config_.m);

  std::size_t budget = 1;
  for (const auto& f : files_) budget += compute_chain_length(f.length, config_.m);

  ChainBlock prev = fetch_block(config_.genesis, 0);
  while (prev.payload.next_counter != entry.start_counter) {
    const auto pointer = prev.payload.next_counter;
    if (pointer == 0 || budget-- == 0) {
      raise(Errc::ChainBroken, "'" + entry.name + "' is not reachable from genesis");
    }
    prev = fetch_block(resolver.resolve_in_chain(pointer), pointer);
  }

  std::vector<ChainBlock> run;
  std::uint64_t pointer = entry.start_counter;
  for (std::uint64_t i = 0; i < blocks; ++i) {
    if (pointer == 0) raise(Errc::ChainBroken, "chain ends inside '" + entry.name + "'");
    run.push_back(fetch_block(resolver.resolve_in_chain(pointer), pointer));
    pointer = run.back().payload.next_counter;
  }
  const auto after = pointer;

  rewrite_pointer(prev, after);
  prev.payload.next_counter = after;

  for (const auto& block : run) {
    try {
      backend_->remove(hashtags(block.address));
    } catch (const Error& e) {
      if (e.code() != Errc::NotFound && e.code() != Errc::BackendUnavailable) throw;
    }
    if (config_.mode == Mode::A) {
      dictionary_.erase(block.counter);
      used_.erase(block.address);
    }
  }
  if (after == 0) {
    tail_ = std::move(prev);
  } else if (tail_ && std::any_of(run.begin(), run.end(), [&](const ChainBlock& b) {
               return b.address == tail_->address;
             })) {
    tail_.reset();
  }
}

// ---------------------------------------------------------------------------

std::vector<FileEntry>::iterator Disc::find_entry(std::string_view name) {
  return std::find_if(files_.begin(), files_.end(), [&](const FileEntry& f) { return f.name == name; });
}

std::vector<FileEntry>::const_iterator Disc::find_entry(std::string_view name) const {
  return std::find_if(files_.begin(), files_.end(), [&](const FileEntry& f) { return f.name == name; });
}

FileEntry Disc::write_file(std::string_view name, std::span<const std::uint8_t> bytes) {
  std::unique_lock lock(mutex_);
  if (!is_valid_file_name(name)) raise(Errc::UsageError, "invalid file name");
  if (find_entry(name) != files_.end()) raise(Errc::NameExists, "'" + std::string(name) + "' already exists");
  auto run = append_run(bytes);
  run.entry.name = std::string(name);
  files_.push_back(run.entry);
  persist();
  return run.entry;
}

std::vector<std::uint8_t> Disc::read_file(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = find_entry(name);
  if (it == files_.end()) raise(Errc::FileNotFound, "'" + std::string(name) + "' not found");
  const auto& entry = *it;
  const auto blocks = compute_chain_length(entry.length, config_.m);

  Resolver resolver(*this);
  std::vector<std::uint8_t> out;
  out.reserve(entry.length);
  std::uint64_t pointer = entry.start_counter;
  for (std::uint64_t i = 0; i < blocks; ++i) {
    if (pointer == 0) raise(Errc::ChainBroken, "chain ends inside '" + entry.name + "'");
    const auto block = fetch_block(resolver.resolve_in_chain(pointer), pointer);
    const auto expected = i + 1 < blocks ? config_.m : entry.length - (blocks - 1) * config_.m;
    if (block.payload.data.size() != expected) {
      raise(Errc::ChainBroken, "block " + std::to_string(pointer) + " of '" + entry.name +
                                   "' holds " + std::to_string(block.payload.data.size()) +
                                   " bytes, expected " + std::to_string(expected));
    }
    out.insert(out.end(), block.payload.data.begin(), block.payload.data.end());
    pointer = block.payload.next_counter;
  }
  return out;
}

void Disc::delete_file(std::string_view name) {
  std::unique_lock lock(mutex_);
  auto it = find_entry(name);
  if (it == files_.end()) raise(Errc::FileNotFound, "'" + std::string(name) + "' not found");
  if (it->length > 0) splice_out(*it);
  files_.erase(find_entry(name));
  persist();
}

FileEntry Disc::modify_file(std::string_view name, std::span<const std::uint8_t> bytes) {
  std::unique_lock lock(mutex_);
  auto it = find_entry(name);
  if (it == files_.end()) raise(Errc::FileNotFound, "'" + std::string(name) + "' not found");
  const FileEntry old = *it;

  // The new run is posted at the tail before the old one is spliced out, so
  // the old entry stays readable until the replacement is complete.
  auto run = append_run(bytes);
  run.entry.name = old.name;
  if (old.length > 0) {
    try {
      splice_out(old);
    } catch (...) {
      if (run.entry.length > 0) {
        try {
          splice_out(run.entry);
        } catch (const Error&) {
        }
      }
      throw;
    }
  }
  files_.erase(find_entry(name));
  files_.push_back(run.entry);
  persist();
  return run.entry;
}

std::vector<FileEntry> Disc::list_files() const {
  std::shared_lock lock(mutex_);
  auto out = files_;
  std::sort(out.begin(), out.end(), [](const FileEntry& a, const FileEntry& b) { return a.name < b.name; });
  return out;
}

std::optional<FileEntry> Disc::find_file(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = find_entry(name);
  if (it == files_.end()) return std::nullopt;
  return *it;
}

// ---------------------------------------------------------------------------

std::vector<ChainBlock> Disc::traverse() const {
  std::shared_lock lock(mutex_);
  std::size_t budget = 1;
  for (const auto& f : files_) budget += compute_chain_length(f.length, config_.m);

  Resolver resolver(*this);
  std::vector<ChainBlock> out;
  out.push_back(fetch_block(config_.genesis, 0));
  while (out.back().payload.next_counter != 0) {
    if (out.size() > budget) raise(Errc::ChainBroken, "chain is longer than the catalog allows");
    const auto pointer = out.back().payload.next_counter;
    out.push_back(fetch_block(resolver.resolve_in_chain(pointer), pointer));
  }
  return out;
}

std::vector<ChainBlock> Disc::file_blocks(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = find_entry(name);
  if (it == files_.end()) raise(Errc::FileNotFound, "'" + std::string(name) + "' not found");
  Resolver resolver(*this);
  std::vector<ChainBlock> out;
  std::uint64_t pointer = it->start_counter;
  for (std::uint64_t i = 0; i < compute_chain_length(it->length, config_.m); ++i) {
    if (pointer == 0) raise(Errc::ChainBroken, "chain ends inside '" + it->name + "'");
    out.push_back(fetch_block(resolver.resolve_in_chain(pointer), pointer));
    pointer = out.back().payload.next_counter;
  }
  return out;
}

Permutation Disc::resolve(std::uint64_t pointer) const {
  std::shared_lock lock(mutex_);
  Resolver resolver(*this);
  return resolver.resolve(pointer);
}

std::set<Permutation> Disc::used_addresses() const {
  std::shared_lock lock(mutex_);
  return used_;
}

std::uint64_t Disc::sampler_iteration() const {
  std::shared_lock lock(mutex_);
  return iteration_;
}

FsckReport Disc::fsck() const {
  std::shared_lock lock(mutex_);
  FsckReport report;
  Resolver resolver(*this);

  auto add = [&](ViolationKind kind, std::uint64_t counter, const Permutation* address,
                 std::string file, std::string detail) {
    report.violations.push_back(
        {kind, counter, address ? address->to_string() : std::string{}, std::move(file), std::move(detail)});
  };
  auto probe = [&](const Permutation& address, std::uint64_t counter) -> Probe {
    std::vector<std::uint8_t> bytes;
    try {
      bytes = backend_->fetch(hashtags(address));
    } catch (const Error& e) {
      if (e.code() != Errc::NotFound) throw;
      return {std::nullopt, ViolationKind::MissingBlock, "no post at this address"};
    }
    try {
      StegoObject obj{config_.carrier.kind, std::move(bytes), config_.carrier.opaque_capacity};
      return {ChainBlock{address, counter, read_block(obj, config_.p)}, {}, {}};
    } catch (const Error& e) {
      return {std::nullopt, ViolationKind::UndecodableBlock, e.what()};
    }
  };

  auto genesis = probe(config_.genesis, 0);
  if (!genesis.block) {
    add(genesis.problem, 0, &config_.genesis, {}, "genesis: " + genesis.detail);
    return report;
  }
  report.blocks_visited = 1;
  const auto echo = config_.superblock_echo();
  if (!genesis.block->payload.is_genesis() ||
      std::string(genesis.block->payload.data.begin(), genesis.block->payload.data.end()) != echo) {
    add(ViolationKind::GenesisMismatch, 0, &config_.genesis, {}, "genesis block does not echo the superblock");
  }

  std::vector<const FileEntry*> chain;
  std::set<std::uint64_t> starts;
  std::size_t expected_blocks = 1;
  for (const auto& f : files_) {
    if (f.length == 0) continue;
    chain.push_back(&f);
    starts.insert(f.start_counter);
    expected_blocks += compute_chain_length(f.length, config_.m);
  }
  auto successor_of = [&](std::size_t k) { return k + 1 < chain.size() ? chain[k + 1]->start_counter : 0; };

  const auto first = chain.empty() ? 0 : chain.front()->start_counter;
  if (genesis.block->payload.next_counter != first) {
    add(ViolationKind::BadPointer, 0, &config_.genesis, {},
        "genesis points to " + std::to_string(genesis.block->payload.next_counter) +
            ", catalog expects " + std::to_string(first));
  }

  std::set<Permutation> reachable{config_.genesis};
  std::uint64_t last_counter = 0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto& file = *chain[k];
    const auto blocks = compute_chain_length(file.length, config_.m);
    std::uint64_t pointer = file.start_counter;
    std::optional<Permutation> address;
    try {
      address = resolver.resolve(pointer);
    } catch (const Error& e) {
      if (e.code() != Errc::InvalidCounter && e.code() != Errc::CodeOutOfRange) throw;
      add(ViolationKind::BadPointer, pointer, nullptr, file.name,
          std::string("catalog start does not resolve: ") + e.what());
      continue;
    }

    for (std::uint64_t j = 0; j < blocks; ++j) {
      auto got = probe(*address, pointer);
      if (!got.block) {
        add(got.problem, pointer, &*address, file.name, got.detail);
        break;
      }
      const auto& block = *got.block;
      ++report.blocks_visited;
      reachable.insert(block.address);

      if (config_.mode == Mode::C) {
        if (pointer <= last_counter) {
          add(ViolationKind::CounterOrder, pointer, &block.address, file.name,
              "counter does not exceed its predecessor " + std::to_string(last_counter));
        }
        last_counter = pointer;
      }
      const auto expected_len = j + 1 < blocks ? config_.m : file.length - (blocks - 1) * config_.m;
      if (block.payload.data.size() != expected_len) {
        add(ViolationKind::LengthMismatch, pointer, &block.address, file.name,
            "holds " + std::to_string(block.payload.data.size()) + " bytes, expected " +
                std::to_string(expected_len));
      }

      const auto next = block.payload.next_counter;
      if (j + 1 == blocks) {
        if (next != successor_of(k)) {
          add(ViolationKind::BadPointer, pointer, &block.address, file.name,
              "last block points to " + std::to_string(next) + ", expected " +
                  std::to_string(successor_of(k)));
        }
        break;
      }
      std::string why;
      if (next == 0) {
        why = "null pointer inside the file";
      } else if (starts.contains(next)) {
        why = "points at the start of another file";
      } else if (config_.mode == Mode::C && next <= pointer) {
        why = "points backwards in the stream";
      } else {
        try {
          address = resolver.resolve(next);
        } catch (const Error& e) {
          if (e.code() != Errc::InvalidCounter && e.code() != Errc::CodeOutOfRange) throw;
          why = e.what();
        }
      }
      if (!why.empty()) {
        add(ViolationKind::BadPointer, pointer, &block.address, file.name,
            why + "; " + std::to_string(blocks - 1 - j) + " block(s) unreachable");
        break;
      }
      pointer = next;
    }
  }

  if (config_.mode == Mode::A && report.blocks_visited == expected_blocks && reachable != used_) {
    add(ViolationKind::DictionaryMismatch, 0, nullptr, {},
        "used-address dictionary holds " + std::to_string(used_.size()) + " addresses, chain has " +
            std::to_string(reachable.size()));
  }
  return report;
}

TradeoffStats Disc::stats() const {
  std::shared_lock lock(mutex_);
  const auto doc = document_locked();
  TradeoffStats s;
  s.superblock_bytes = doc.header_text().size();
  s.catalog_bytes = doc.catalog_text().size();
  s.dictionary_bytes = config_.mode == Mode::A ? doc.dictionary_text().size() : 0;
  s.alloc_iterations = alloc_iterations_.load();
  s.replay_iterations = replay_iterations_.load();
  s.files = files_.size();
  s.blocks = 1;
  for (const auto& f : files_) s.blocks += compute_chain_length(f.length, config_.m);
  return s;
}

DiscDocument Disc::document() const {
  std::shared_lock lock(mutex_);
  return document_locked();
}

DiscDocument Disc::document_locked() const {
  DiscDocument doc;
  doc.config = config_;
  doc.iteration = iteration_;
  doc.files = files_;
  for (const auto& [counter, address] : dictionary_) doc.dictionary.emplace(counter, rank(address));
  return doc;
}

void Disc::persist() const {
  if (options_.document) document_locked().save(*options_.document);
}

}  // namespace stegdisc
