#include "stegdisc/superblock.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>

#include "stegdisc/errors.hpp"
#include "stegdisc/payload.hpp"
#include "stegdisc/sampler.hpp"

namespace stegdisc {

namespace fs = std::filesystem;

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    raise(Errc::ConfigInvalid, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find('\t', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

bool is_disc_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
  });
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::Io, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_atomically(const fs::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) raise(Errc::Io, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) raise(Errc::Io, "cannot replace " + path.string() + ": " + ec.message());
}

}  // namespace

char mode_char(Mode mode) noexcept {
  switch (mode) {
    case Mode::A: return 'A';
    case Mode::B: return 'B';
    case Mode::C: return 'C';
  }
  return '?';
}

Mode parse_mode(std::string_view text) {
  if (text == "A" || text == "a") return Mode::A;
  if (text == "B" || text == "b") return Mode::B;
  if (text == "C" || text == "c") return Mode::C;
  raise(Errc::ConfigInvalid, "mode must be A, B or C");
}

void DiscConfig::validate(std::size_t min_capacity) const {
  auto fail = [](const std::string& why) { raise(Errc::ConfigInvalid, why); };
  if (n < 1) fail("n must be at least 1");
  if (alphabet.size() != n) fail("alphabet size differs from n");
  if (genesis.size() != n) fail("genesis permutation size differs from n");
  if (p < 1 || p > 64) fail("p must be in [1, 64]");
  if (m < 1) fail("m must be at least 1");
  if (!is_disc_id(disc_id)) fail("disc id must be alphanumeric");
  if (header_size(p) + m > min_capacity) {
    fail("block of " + std::to_string(header_size(p) + m) + " bytes exceeds carrier capacity " +
         std::to_string(min_capacity));
  }
  if (mode == Mode::A && n > 8) fail("mode A keeps n!-scale dictionaries; requires n <= 8");
  if (mode == Mode::B) {
    if (n > kMaxRankableSize) fail("mode B address codes need n <= 20");
    if (p < 64 && factorial(n) > counter_limit(p)) fail("mode B requires 2^p > n!");
  }
}

DiscConfig DiscConfig::generate(std::size_t n, unsigned p, std::size_t m, Mode mode,
                                CarrierSpec carrier, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::string> seen;
  std::vector<std::string> tags;
  while (tags.size() < n) {
    std::string tag = "#";
    for (int i = 0; i < 7; ++i) tag.push_back(static_cast<char>('a' + rng() % 26));
    if (seen.insert(tag).second) tags.push_back(tag);
  }
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  std::shuffle(order.begin(), order.end(), rng);

  char id[17];
  std::snprintf(id, sizeof id, "%016llx", static_cast<unsigned long long>(rng()));

  DiscConfig cfg;
  cfg.n = n;
  cfg.p = p;
  cfg.m = m;
  cfg.mode = mode;
  cfg.alphabet = HashtagAlphabet(std::move(tags));
  cfg.genesis = Permutation(std::move(order));
  cfg.disc_id = id;
  cfg.carrier = carrier;
  return cfg;
}

std::string DiscConfig::superblock_echo() const {
  return "stegdisc/1 n=" + std::to_string(n) + " p=" + std::to_string(p) +
         " m=" + std::to_string(m) + " mode=" + mode_char(mode) + " id=" + disc_id;
}

// ---------------------------------------------------------------------------

std::string DiscDocument::header_text() const {
  std::ostringstream out;
  out << "disc_id=" << config.disc_id << '\n'
      << "mode=" << mode_char(config.mode) << '\n'
      << "n=" << config.n << '\n'
      << "p=" << config.p << '\n'
      << "m=" << config.m << '\n'
      << "genesis=" << config.genesis.to_string() << '\n'
      << "alphabet=" << config.alphabet.to_string() << '\n'
      << "carrier=" << config.carrier.to_string() << '\n'
      << "iteration=" << iteration << '\n';
  return out.str();
}

std::string DiscDocument::catalog_text() const {
  std::string out;
  for (const auto& f : files) {
    out += percent_encode(f.name);
    out += '\t';
    out += std::to_string(f.start_counter);
    out += '\t';
    out += std::to_string(f.length);
    out += '\n';
  }
  return out;
}

std::string DiscDocument::dictionary_text() const {
  std::string out;
  for (const auto& [counter, code] : dictionary) {
    out += std::to_string(counter);
    out += '\t';
    out += std::to_string(code);
    out += '\n';
  }
  return out;
}

DiscDocument DiscDocument::parse(std::string_view document, std::string_view dictionary) {
  DiscDocument doc;
  std::map<std::string, std::string, std::less<>> header;
  std::set<std::string> names;

  std::istringstream lines{std::string(document)};
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.find('\t') != std::string::npos) {
      auto fields = split_tabs(line);
      if (fields.size() != 3) raise(Errc::ConfigInvalid, "malformed catalog line");
      FileEntry entry{percent_decode(fields[0]), parse_u64(fields[1], "start counter"),
                      parse_u64(fields[2], "length")};
      if (!is_valid_file_name(entry.name) || !names.insert(entry.name).second) {
        raise(Errc::ConfigInvalid, "bad or duplicate file name in catalog");
      }
      doc.files.push_back(std::move(entry));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) raise(Errc::ConfigInvalid, "malformed superblock line '" + line + "'");
    header[line.substr(0, eq)] = line.substr(eq + 1);
  }

  auto need = [&](std::string_view key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) raise(Errc::ConfigInvalid, "superblock lacks '" + std::string(key) + "'");
    return it->second;
  };
  static constexpr std::string_view kKnown[] = {"disc_id", "mode", "n",       "p",        "m",
                                                "genesis", "alphabet", "carrier", "iteration"};
  for (const auto& [key, _] : header) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      raise(Errc::ConfigInvalid, "unknown superblock key '" + key + "'");
    }
  }

  auto& cfg = doc.config;
  cfg.disc_id = need("disc_id");
  cfg.mode = parse_mode(need("mode"));
  cfg.n = parse_u64(need("n"), "n");
  cfg.p = static_cast<unsigned>(parse_u64(need("p"), "p"));
  cfg.m = parse_u64(need("m"), "m");
  try {
    cfg.genesis = Permutation::parse(need("genesis"));
  } catch (const Error& e) {
    raise(Errc::ConfigInvalid, std::string("genesis: ") + e.what());
  }
  cfg.alphabet = HashtagAlphabet::parse(need("alphabet"));
  cfg.carrier = header.contains("carrier") ? CarrierSpec::parse(header.find("carrier")->second)
                                           : CarrierSpec{};
  doc.iteration = header.contains("iteration")
                      ? parse_u64(header.find("iteration")->second, "iteration")
                      : 0;

  std::istringstream dict{std::string(dictionary)};
  for (std::string line; std::getline(dict, line);) {
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2) raise(Errc::ConfigInvalid, "malformed dictionary line");
    doc.dictionary.emplace(parse_u64(fields[0], "dictionary counter"),
                           parse_u64(fields[1], "dictionary code"));
  }
  return doc;
}

fs::path dictionary_path(const fs::path& document) {
  auto p = document;
  p += ".dict";
  return p;
}

void DiscDocument::save(const fs::path& path) const {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  if (config.mode == Mode::A) write_atomically(dictionary_path(path), dictionary_text());
  write_atomically(path, header_text() + catalog_text());
}

DiscDocument DiscDocument::load(const fs::path& path) {
  const auto text = read_text(path);
  std::string dict;
  if (fs::exists(dictionary_path(path))) dict = read_text(dictionary_path(path));
  return parse(text, dict);
}

// ---------------------------------------------------------------------------

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0f]);
    }
  }
  return out;
}

std::string percent_decode(std::string_view text) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out.push_back(text[i]);
      continue;
    }
    if (i + 2 >= text.size()) raise(Errc::ConfigInvalid, "truncated percent escape");
    int hi = hex(text[i + 1]);
    int lo = hex(text[i + 2]);
    if (hi < 0 || lo < 0) raise(Errc::ConfigInvalid, "bad percent escape");
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  return out;
}

bool is_valid_file_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  std::size_t i = 0;
  while (i < name.size()) {
    const auto c = static_cast<unsigned char>(name[i]);
    if (c < 0x20 || c == 0x7f) return false;
    std::size_t extra = 0;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xe0) == 0xc0 && c >= 0xc2) {
      extra = 1;
    } else if ((c & 0xf0) == 0xe0) {
      extra = 2;
    } else if ((c & 0xf8) == 0xf0 && c <= 0xf4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= name.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(name[i + k]) & 0xc0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace stegdisc
