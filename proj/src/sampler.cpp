#include "stegdisc/sampler.hpp"

#include <charconv>

#include "stegdisc/errors.hpp"
#include "stegdisc/sha256.hpp"

namespace stegdisc {

SamplerState::SamplerState(Permutation seed)
    : seed_(std::move(seed)),
      taken_(seed_.size(), false),
      current_input_(seed_.to_string()) {
  if (seed_.size() == 0) raise(Errc::NotAPermutation, "sampler seed is empty");
}

std::optional<Permutation> SamplerState::step() {
  const auto n = seed_.size();
  ++iteration_;

  std::string input;
  input.reserve(current_input_.size() + 24);
  input += current_input_;
  input.push_back(';');
  char digits[24];
  auto [end, ec] = std::to_chars(digits, digits + sizeof digits, iteration_);
  input.append(digits, end);

  const auto pick = static_cast<std::uint32_t>(digest_mod(sha256(input), n));
  if (!taken_[pick]) {
    taken_[pick] = true;
    partial_.push_back(pick);
  }
  if (partial_.size() < n) return std::nullopt;

  Permutation done(std::move(partial_));
  partial_.clear();
  taken_.assign(n, false);
  current_input_ = done.to_string();
  return done;
}

std::uint64_t counter_limit(unsigned p) noexcept {
  if (p >= 64) return kUnbounded;
  return (std::uint64_t{1} << p) - 1;
}

Advance sampler_advance(const SamplerState& state, std::uint64_t max_iteration) {
  SamplerState next = state;
  while (true) {
    if (next.iteration() >= max_iteration) {
      raise(Errc::CounterOverflow,
            "sampler counter would exceed " + std::to_string(max_iteration));
    }
    if (auto done = next.step()) {
      const auto counter = next.iteration();
      return {std::move(*done), counter, std::move(next)};
    }
  }
}

std::optional<Permutation> sampler_seek(SamplerState& cursor, std::uint64_t counter,
                                        std::uint64_t* spent) {
  if (cursor.iteration() > counter ||
      (cursor.iteration() == counter && counter != 0)) {
    cursor = SamplerState(cursor.seed());
  }
  std::optional<Permutation> done;
  std::uint64_t steps = 0;
  while (cursor.iteration() < counter) {
    done = cursor.step();
    ++steps;
  }
  if (spent) *spent += steps;
  return done;
}

Permutation sampler_replay(const Permutation& seed, std::uint64_t counter) {
  if (counter == 0) raise(Errc::InvalidCounter, "counter 0 is the null pointer");
  SamplerState cursor(seed);
  auto done = sampler_seek(cursor, counter);
  if (!done) {
    raise(Errc::InvalidCounter,
          "no permutation completes at iteration " + std::to_string(counter));
  }
  return std::move(*done);
}

std::uint64_t AllocationLimits::default_stall_threshold(std::size_t n) noexcept {
  if (n <= 8) return 10 * factorial(n);
  return 1'000'000;
}

Advance allocate_address(const SamplerState& state, const OccupiedFn& occupied,
                         const AllocationLimits& limits) {
  std::uint64_t rejected = 0;
  Advance adv = sampler_advance(state, limits.max_iteration);
  while (occupied(adv.perm)) {
    if (++rejected > limits.stall_threshold) {
      raise(Errc::AllocationStall, std::to_string(rejected) +
                                       " consecutive occupied addresses; address space exhausted");
    }
    adv = sampler_advance(adv.state, limits.max_iteration);
  }
  return adv;
}

}  // namespace stegdisc
