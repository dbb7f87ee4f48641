#include "stegdisc/shell.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "stegdisc/bench.hpp"
#include "stegdisc/errors.hpp"

namespace stegdisc {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr std::string_view kHelp =
    "commands:\n"
    "  format [n=8] [p=32] [m=1024] [mode=C] [carrier=bitmap:64x64] [seed=N]\n"
    "  open [superblock-path]\n"
    "  put <local-path> <name>\n"
    "  get <name> <local-path>\n"
    "  ls\n"
    "  rm <name>\n"
    "  edit <name> <local-path>\n"
    "  stat\n"
    "  fsck\n"
    "  bench [sizes=10,100] [modes=A,B,C] [n=8] [p=32] [m=64]\n"
    "  exit\n";

using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues parse_key_values(const std::vector<std::string>& args, std::size_t from,
                           std::initializer_list<std::string_view> allowed) {
  KeyValues out;
  for (std::size_t i = from; i < args.size(); ++i) {
    const auto eq = args[i].find('=');
    if (eq == std::string::npos) raise(Errc::UsageError, "expected key=value, got '" + args[i] + "'");
    auto key = args[i].substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      raise(Errc::UsageError, "unknown option '" + key + "'");
    }
    out[key] = args[i].substr(eq + 1);
  }
  return out;
}

std::uint64_t as_u64(const KeyValues& kv, std::string_view key, std::uint64_t fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  std::uint64_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    raise(Errc::UsageError, std::string(key) + " must be a non-negative integer");
  }
  return v;
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find(',', start);
    if (pos == std::string_view::npos) pos = text.size();
    if (pos > start) out.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::uint8_t> read_local(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::UsageError, "cannot read local file " + path.string());
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_local(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) raise(Errc::UsageError, "cannot write local file " + path.string());
}

void expect_args(const std::vector<std::string>& args, std::size_t count, std::string_view usage) {
  if (args.size() != count) raise(Errc::UsageError, "usage: " + std::string(usage));
}

json entry_json(const FileEntry& e, std::size_t m) {
  return {{"name", e.name},
          {"length", e.length},
          {"start_counter", e.start_counter},
          {"blocks", compute_chain_length(e.length, m)}};
}

CommandResult text_or_json(bool as_json, const std::string& text, const json& j) {
  return {kExitOk, as_json ? j.dump() + "\n" : text};
}

}  // namespace

fs::path default_disc_path() {
  if (const char* home = std::getenv("STEGDISC_HOME"); home && *home) return fs::path(home) / "disc.sb";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".stegdisc" / "disc.sb";
  return fs::path(".stegdisc") / "disc.sb";
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string current;
  bool in_token = false;
  char quote = 0;
  for (char c : line) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        current.push_back(c);
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
      in_token = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_token) out.push_back(std::move(current));
      current.clear();
      in_token = false;
    } else {
      current.push_back(c);
      in_token = true;
    }
  }
  if (quote) raise(Errc::UsageError, "unterminated quote");
  if (in_token) out.push_back(std::move(current));
  return out;
}

int exit_status_for(Errc code) noexcept {
  switch (code) {
    case Errc::ChainBroken:
      return kExitIntegrity;
    case Errc::BackendUnavailable:
    case Errc::Io:
      return kExitBackend;
    default:
      return kExitUser;
  }
}

Shell::Shell(ShellOptions options) : options_(std::move(options)) {
  if (options_.disc_path.empty()) options_.disc_path = default_disc_path();
  backend_ = make_backend(options_.backend);
}

CommandResult Shell::run_command(std::string_view line) {
  std::vector<std::string> args;
  try {
    args = tokenize(line);
  } catch (const Error& e) {
    return {kExitUser, std::string("error: ") + e.what() + "\n"};
  }
  return run_args(args);
}

CommandResult Shell::run_args(const std::vector<std::string>& args) {
  if (args.empty()) return {};
  std::string joined;
  for (const auto& a : args) joined += (joined.empty() ? "" : " ") + a;
  history_.push_back(joined);
  try {
    return dispatch(args);
  } catch (const Error& e) {
    if (options_.json) {
      json j{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}};
      return {exit_status_for(e.code()), j.dump() + "\n"};
    }
    return {exit_status_for(e.code()), std::string("error: ") + e.what() + "\n"};
  } catch (const fs::filesystem_error& e) {
    return {kExitBackend, std::string("error: ") + e.what() + "\n"};
  }
}

CommandResult Shell::dispatch(const std::vector<std::string>& args) {
  const auto& cmd = args.front();
  if (cmd == "format") return cmd_format(args);
  if (cmd == "open") return cmd_open(args);
  if (cmd == "put") return cmd_put(args);
  if (cmd == "get") return cmd_get(args);
  if (cmd == "ls") return cmd_ls(args);
  if (cmd == "rm") return cmd_rm(args);
  if (cmd == "edit") return cmd_edit(args);
  if (cmd == "stat") return cmd_stat(args);
  if (cmd == "fsck") return cmd_fsck(args);
  if (cmd == "bench") return cmd_bench(args);
  if (cmd == "help") return cmd_help(args);
  if (cmd == "exit" || cmd == "quit") {
    finished_ = true;
    return {};
  }
  raise(Errc::UnknownCommand, "unknown command '" + cmd + "' (try 'help')");
}

Disc& Shell::require_disc() {
  if (!disc_) {
    if (!fs::exists(options_.disc_path)) {
      raise(Errc::UsageError, "no disc at " + options_.disc_path.string() + "; run 'format' first");
    }
    disc_ = Disc::open(options_.disc_path, backend_, {options_.disc_path, options_.carrier_dir, {}});
  }
  return *disc_;
}

CommandResult Shell::cmd_format(const std::vector<std::string>& args) {
  auto kv = parse_key_values(args, 1, {"n", "p", "m", "mode", "carrier", "seed"});
  if (fs::exists(options_.disc_path)) {
    raise(Errc::UsageError, "a superblock already exists at " + options_.disc_path.string());
  }
  const auto n = as_u64(kv, "n", 8);
  const auto p = as_u64(kv, "p", 32);
  const auto m = as_u64(kv, "m", 1024);
  const auto mode = parse_mode(kv.contains("mode") ? kv["mode"] : "C");
  const auto carrier = CarrierSpec::parse(kv.contains("carrier") ? kv["carrier"] : "bitmap:64x64");
  const auto seed = kv.contains("seed") ? as_u64(kv, "seed", 0) : std::random_device{}() * 0x100000001ull;
  if (p > 64 || n == 0 || n > 1'000'000) raise(Errc::UsageError, "n or p out of range");

  auto config = DiscConfig::generate(n, static_cast<unsigned>(p), m, mode, carrier, seed);
  disc_ = Disc::format(std::move(config), backend_, {options_.disc_path, options_.carrier_dir, {}});
  const auto& c = disc_->config();
  std::string text = "formatted disc " + c.disc_id + " (mode " + mode_char(c.mode) +
                     ", n=" + std::to_string(c.n) + ", p=" + std::to_string(c.p) +
                     ", m=" + std::to_string(c.m) + ") at " + options_.disc_path.string() + "\n";
  return text_or_json(options_.json, text,
                      {{"disc_id", c.disc_id}, {"mode", std::string(1, mode_char(c.mode))},
                       {"n", c.n}, {"p", c.p}, {"m", c.m},
                       {"superblock", options_.disc_path.string()}});
}

CommandResult Shell::cmd_open(const std::vector<std::string>& args) {
  if (args.size() > 2) raise(Errc::UsageError, "usage: open [superblock-path]");
  if (args.size() == 2) options_.disc_path = args[1];
  disc_.reset();
  auto& disc = require_disc();
  const auto& c = disc.config();
  std::string text = "opened disc " + c.disc_id + " (mode " + mode_char(c.mode) + ", " +
                     std::to_string(disc.list_files().size()) + " files)\n";
  return text_or_json(options_.json, text, {{"disc_id", c.disc_id}, {"files", disc.list_files().size()}});
}

CommandResult Shell::cmd_put(const std::vector<std::string>& args) {
  expect_args(args, 3, "put <local-path> <name>");
  const auto bytes = read_local(args[1]);
  auto& disc = require_disc();
  const auto entry = disc.write_file(args[2], bytes);
  const auto blocks = compute_chain_length(entry.length, disc.config().m);
  std::string text = "wrote " + entry.name + " (" + std::to_string(entry.length) + " bytes, " +
                     std::to_string(blocks) + " blocks)\n";
  if (options_.verbose) {
    for (const auto& block : disc.file_blocks(entry.name)) {
      text += "  ";
      for (const auto& tag : disc.hashtags(block.address)) text += tag + " ";
      text += "(" + std::to_string(block.counter) + ")\n";
    }
  }
  return text_or_json(options_.json, text, entry_json(entry, disc.config().m));
}

CommandResult Shell::cmd_get(const std::vector<std::string>& args) {
  expect_args(args, 3, "get <name> <local-path>");
  auto& disc = require_disc();
  const auto bytes = disc.read_file(args[1]);
  write_local(args[2], bytes);
  std::string text = "read " + args[1] + " (" + std::to_string(bytes.size()) + " bytes)\n";
  return text_or_json(options_.json, text, {{"name", args[1]}, {"length", bytes.size()}});
}

CommandResult Shell::cmd_ls(const std::vector<std::string>& args) {
  expect_args(args, 1, "ls");
  auto& disc = require_disc();
  std::string text;
  json list = json::array();
  for (const auto& e : disc.list_files()) {
    text += e.name + "\t" + std::to_string(e.length) + "\n";
    list.push_back(entry_json(e, disc.config().m));
  }
  return text_or_json(options_.json, text, {{"files", list}});
}

CommandResult Shell::cmd_rm(const std::vector<std::string>& args) {
  expect_args(args, 2, "rm <name>");
  require_disc().delete_file(args[1]);
  return text_or_json(options_.json, "deleted " + args[1] + "\n", {{"deleted", args[1]}});
}

CommandResult Shell::cmd_edit(const std::vector<std::string>& args) {
  expect_args(args, 3, "edit <name> <local-path>");
  const auto bytes = read_local(args[2]);
  auto& disc = require_disc();
  const auto entry = disc.modify_file(args[1], bytes);
  std::string text = "modified " + entry.name + " (" + std::to_string(entry.length) + " bytes)\n";
  return text_or_json(options_.json, text, entry_json(entry, disc.config().m));
}

CommandResult Shell::cmd_stat(const std::vector<std::string>& args) {
  expect_args(args, 1, "stat");
  auto& disc = require_disc();
  const auto s = disc.stats();
  const auto& c = disc.config();
  json j{{"disc_id", c.disc_id},
         {"mode", std::string(1, mode_char(c.mode))},
         {"n", c.n},
         {"p", c.p},
         {"m", c.m},
         {"files", s.files},
         {"blocks", s.blocks},
         {"superblock_bytes", s.superblock_bytes},
         {"catalog_bytes", s.catalog_bytes},
         {"dictionary_bytes", s.dictionary_bytes},
         {"persistent_bytes", s.persistent_bytes()},
         {"alloc_iterations", s.alloc_iterations},
         {"replay_iterations", s.replay_iterations},
         {"sampler_iteration", disc.sampler_iteration()}};
  std::string text;
  for (const auto& [key, value] : j.items()) {
    text += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  }
  return text_or_json(options_.json, text, j);
}

CommandResult Shell::cmd_fsck(const std::vector<std::string>& args) {
  expect_args(args, 1, "fsck");
  const auto report = require_disc().fsck();
  json violations = json::array();
  std::string text;
  for (const auto& v : report.violations) {
    violations.push_back({{"kind", std::string(violation_name(v.kind))},
                          {"counter", v.counter},
                          {"address", v.address},
                          {"file", v.file},
                          {"detail", v.detail}});
    text += std::string(violation_name(v.kind)) + " at counter " + std::to_string(v.counter);
    if (!v.file.empty()) text += " in '" + v.file + "'";
    text += ": " + v.detail + "\n";
  }
  text += report.clean() ? "clean: " : "violations found: ";
  text += std::to_string(report.blocks_visited) + " blocks visited\n";
  auto result = text_or_json(options_.json, text,
                             {{"clean", report.clean()},
                              {"blocks_visited", report.blocks_visited},
                              {"violations", violations}});
  if (!report.clean()) result.status = kExitIntegrity;
  return result;
}

CommandResult Shell::cmd_bench(const std::vector<std::string>& args) {
  auto kv = parse_key_values(args, 1, {"sizes", "modes", "n", "p", "m", "seed"});
  BenchSpec spec;
  try {
    if (kv.contains("sizes")) {
      spec.sizes.clear();
      for (const auto& s : split_commas(kv["sizes"])) spec.sizes.push_back(std::stoull(s));
    }
    if (kv.contains("modes")) {
      spec.modes.clear();
      for (const auto& s : split_commas(kv["modes"])) spec.modes.push_back(parse_mode(s));
    }
  } catch (const std::logic_error&) {
    raise(Errc::SpecInvalid, "sizes must be comma-separated integers");
  } catch (const Error& e) {
    raise(Errc::SpecInvalid, e.what());
  }
  spec.n = as_u64(kv, "n", spec.n);
  spec.p = static_cast<unsigned>(as_u64(kv, "p", spec.p));
  spec.m = as_u64(kv, "m", spec.m);
  spec.seed = as_u64(kv, "seed", spec.seed);

  const auto rows = run_benchmark(spec);
  json j = json::array();
  for (const auto& r : rows) {
    j.push_back({{"mode", std::string(1, mode_char(r.mode))},
                 {"blocks", r.data_blocks},
                 {"files", r.files},
                 {"state_bytes", r.state_bytes()},
                 {"dictionary_bytes", r.dictionary_bytes},
                 {"catalog_bytes", r.catalog_bytes},
                 {"alloc_iterations", r.alloc_iterations},
                 {"read_iterations", r.read_iterations},
                 {"write_ms", r.write_ms},
                 {"read_ms", r.read_ms}});
  }
  return text_or_json(options_.json, format_bench_table(rows), {{"runs", j}});
}

CommandResult Shell::cmd_help(const std::vector<std::string>&) {
  return {kExitOk, std::string(kHelp)};
}

}  // namespace stegdisc
