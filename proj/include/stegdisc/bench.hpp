#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stegdisc/carrier.hpp"
#include "stegdisc/superblock.hpp"

namespace stegdisc {

/// Workload grid for the memory-versus-recomputation comparison.
struct BenchSpec {
  std::vector<std::size_t> sizes{10, 100};  // data blocks written per run
  std::vector<Mode> modes{Mode::A, Mode::B, Mode::C};
  std::size_t n = 8;
  unsigned p = 32;
  std::size_t m = 64;
  std::size_t blocks_per_file = 2;
  CarrierSpec carrier{CarrierKind::Bitmap, 32, 32, 0};
  std::uint64_t seed = 1;

  /// Throws SpecInvalid.
  void validate() const;
};

struct ReadSample {
  std::string name;
  std::uint64_t last_counter = 0;  // largest stream counter in the file
  std::uint64_t iterations = 0;    // hash evaluations spent reading it
};

struct BenchRow {
  Mode mode = Mode::C;
  std::size_t data_blocks = 0;
  std::size_t files = 0;
  std::size_t superblock_bytes = 0;
  std::size_t catalog_bytes = 0;
  std::size_t dictionary_bytes = 0;
  std::uint64_t alloc_iterations = 0;
  std::uint64_t read_iterations = 0;
  double write_ms = 0;
  double read_ms = 0;
  std::vector<ReadSample> reads;  // chain order

  /// Local state that must persist, catalog excluded.
  std::size_t state_bytes() const noexcept { return superblock_bytes + dictionary_bytes; }
};

/// Per (mode, size): format a disc on a fresh in-memory network, write the
/// files, read each back once, delete every other file and re-read the rest.
/// Throws ChainBroken if any read disagrees with what was written.
std::vector<BenchRow> run_benchmark(const BenchSpec& spec);

std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace stegdisc
