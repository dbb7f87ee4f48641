#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stegdisc/permutation.hpp"

namespace stegdisc {

/// Position in the pseudorandom permutation stream rooted at a seed.
///
/// One step hashes "<current_input>;<iteration>" with SHA-256, reduces the
/// big-endian digest mod n, and appends the pick unless it is already in the
/// partial permutation. Rejected picks still consume an iteration. When the
/// partial permutation reaches length n it is emitted and becomes the next
/// current_input. The state is a pure function of (seed, iteration).
class SamplerState {
 public:
  SamplerState() = default;
  explicit SamplerState(Permutation seed);

  const Permutation& seed() const noexcept { return seed_; }
  std::uint64_t iteration() const noexcept { return iteration_; }
  std::span<const std::uint32_t> partial() const noexcept { return partial_; }
  const std::string& current_input() const noexcept { return current_input_; }

  /// One hash evaluation. Returns the permutation completed by this step, if any.
  std::optional<Permutation> step();

  friend bool operator==(const SamplerState&, const SamplerState&) = default;

 private:
  Permutation seed_;
  std::uint64_t iteration_ = 0;
  std::vector<std::uint32_t> partial_;
  std::vector<bool> taken_;
  std::string current_input_;
};

struct Emission {
  Permutation perm;
  std::uint64_t counter = 0;  // iteration at which perm completed
};

struct Advance {
  Permutation perm;
  std::uint64_t counter = 0;
  SamplerState state;
};

inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

/// Largest counter representable in p bits: 2^p - 1.
std::uint64_t counter_limit(unsigned p) noexcept;

/// Runs the stream until the next completed permutation. Throws
/// CounterOverflow if that would take the iteration past max_iteration.
Advance sampler_advance(const SamplerState& state, std::uint64_t max_iteration = kUnbounded);

/// The permutation completed exactly at iteration `counter` of the stream
/// rooted at seed. Throws InvalidCounter if no permutation completes there.
Permutation sampler_replay(const Permutation& seed, std::uint64_t counter);

/// Moves `cursor` forward to iteration `counter` and returns the permutation
/// completed there. The cursor is restarted from its seed when it is already
/// past `counter`. Returns the number of hash evaluations spent via `spent`.
std::optional<Permutation> sampler_seek(SamplerState& cursor, std::uint64_t counter,
                                        std::uint64_t* spent = nullptr);

struct AllocationLimits {
  std::uint64_t max_iteration = kUnbounded;
  std::uint64_t stall_threshold = 1'000'000;

  /// 10 * n! consecutive rejections for n <= 8, otherwise 10^6.
  static std::uint64_t default_stall_threshold(std::size_t n) noexcept;
};

using OccupiedFn = std::function<bool(const Permutation&)>;

/// Advances until the stream emits a permutation for which occupied() is false.
Advance allocate_address(const SamplerState& state, const OccupiedFn& occupied,
                         const AllocationLimits& limits);

}  // namespace stegdisc
