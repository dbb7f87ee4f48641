#include "stegdisc/bench.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#include "stegdisc/disc.hpp"
#include "stegdisc/errors.hpp"

namespace stegdisc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

BenchRow run_one(const BenchSpec& spec, Mode mode, std::size_t size) {
  auto backend = std::make_shared<MemoryBackend>();
  auto config = DiscConfig::generate(spec.n, spec.p, spec.m, mode, spec.carrier, spec.seed);
  auto disc = Disc::format(config, backend);

  std::mt19937_64 rng(spec.seed ^ (size * 0x9e3779b97f4a7c15ull));
  std::vector<std::pair<std::string, std::vector<std::uint8_t>>> files;
  for (std::size_t left = size, i = 0; left > 0; ++i) {
    const auto blocks = std::min(left, spec.blocks_per_file);
    left -= blocks;
    // the final block of each file is left partially filled
    std::vector<std::uint8_t> data(blocks * spec.m - (spec.m > 1 ? 1 : 0));
    for (auto& b : data) b = static_cast<std::uint8_t>(rng());
    char name[32];
    std::snprintf(name, sizeof name, "file%05zu", i);
    files.emplace_back(name, std::move(data));
  }

  BenchRow row;
  row.mode = mode;
  row.data_blocks = size;
  row.files = files.size();

  auto start = Clock::now();
  for (const auto& [name, data] : files) disc->write_file(name, data);
  row.write_ms = ms_since(start);

  const auto after_write = disc->stats();
  row.superblock_bytes = after_write.superblock_bytes;
  row.catalog_bytes = after_write.catalog_bytes;
  row.dictionary_bytes = after_write.dictionary_bytes;
  row.alloc_iterations = after_write.alloc_iterations;

  start = Clock::now();
  for (const auto& [name, data] : files) {
    const auto before = disc->stats().replay_iterations;
    if (disc->read_file(name) != data) raise(Errc::ChainBroken, "benchmark read mismatch in " + name);
    ReadSample sample{name, 0, disc->stats().replay_iterations - before};
    for (const auto& block : disc->file_blocks(name)) {
      sample.last_counter = std::max(sample.last_counter, block.counter);
    }
    row.reads.push_back(std::move(sample));
  }
  row.read_ms = ms_since(start);
  for (const auto& r : row.reads) row.read_iterations += r.iterations;

  for (std::size_t i = 0; i < files.size(); i += 2) disc->delete_file(files[i].first);
  for (std::size_t i = 1; i < files.size(); i += 2) {
    if (disc->read_file(files[i].first) != files[i].second) {
      raise(Errc::ChainBroken, "benchmark read mismatch after deletes in " + files[i].first);
    }
  }
  return row;
}

}  // namespace

void BenchSpec::validate() const {
  auto fail = [](const std::string& why) { raise(Errc::SpecInvalid, why); };
  if (sizes.empty() || modes.empty()) fail("benchmark needs at least one size and one mode");
  for (auto s : sizes) {
    if (s == 0) fail("benchmark sizes must be positive");
  }
  if (m == 0 || blocks_per_file == 0) fail("m and blocks_per_file must be positive");
  if (n == 0) fail("n must be positive");
  for (auto mode : modes) {
    if (mode == Mode::A && n > 8) fail("mode A needs n <= 8");
  }
}

std::vector<BenchRow> run_benchmark(const BenchSpec& spec) {
  spec.validate();
  std::vector<BenchRow> rows;
  for (auto mode : spec.modes) {
    for (auto size : spec.sizes) rows.push_back(run_one(spec, mode, size));
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::string out =
      "mode  blocks  files  state_B  dict_B  catalog_B  alloc_iter  read_iter  write_ms  read_ms\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-4c  %6zu  %5zu  %7zu  %6zu  %9zu  %10llu  %9llu  %8.2f  %7.2f\n",
                  mode_char(r.mode), r.data_blocks, r.files, r.state_bytes(), r.dictionary_bytes,
                  r.catalog_bytes, static_cast<unsigned long long>(r.alloc_iterations),
                  static_cast<unsigned long long>(r.read_iterations), r.write_ms, r.read_ms);
    out += line;
  }
  return out;
}

}  // namespace stegdisc
