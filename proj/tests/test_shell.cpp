#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>

#include "doctest.h"
#include "json.hpp"
#include "stegdisc/shell.hpp"
#include "support.hpp"

using namespace stegdisc;
using namespace stegtest;
using Bytes = std::vector<std::uint8_t>;

namespace {

void write_bytes(const std::filesystem::path& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Bytes read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

ShellOptions options_in(const TempDir& dir) {
  ShellOptions o;
  o.disc_path = dir / "disc.sb";
  return o;
}

struct ProcResult {
  int status;
  std::string output;
};

ProcResult run_process(const std::string& command) {
  ProcResult r{0, {}};
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("  put  a.txt   doc ") == std::vector<std::string>{"put", "a.txt", "doc"});
  CHECK(tokenize("put 'my file.txt' \"x y\"") == std::vector<std::string>{"put", "my file.txt", "x y"});
  CHECK(tokenize("put '' x") == std::vector<std::string>{"put", "", "x"});
  CHECK(tokenize("").empty());
  CHECK_THROWS_AS(tokenize("put 'open"), Error);
}

TEST_CASE("exit status mapping") {
  CHECK(exit_status_for(Errc::FileNotFound) == 1);
  CHECK(exit_status_for(Errc::UsageError) == 1);
  CHECK(exit_status_for(Errc::ChainBroken) == 2);
  CHECK(exit_status_for(Errc::BackendUnavailable) == 3);
  CHECK(exit_status_for(Errc::Io) == 3);
}

TEST_CASE("default superblock location honours STEGDISC_HOME") {
  const char* old = std::getenv("STEGDISC_HOME");
  const std::string saved = old ? old : "";
  setenv("STEGDISC_HOME", "/tmp/somewhere", 1);
  CHECK(default_disc_path() == std::filesystem::path("/tmp/somewhere/disc.sb"));
  if (old) setenv("STEGDISC_HOME", saved.c_str(), 1); else unsetenv("STEGDISC_HOME");
}

TEST_CASE("command examples") {
  TempDir dir("shell");
  Shell shell(options_in(dir));

  auto r = shell.run_command("format n=5 m=32 mode=C seed=1");
  CHECK(r.status == 0);
  r = shell.run_command("ls");
  CHECK(r.status == 0);
  CHECK(r.output.empty());

  std::mt19937_64 rng(1);
  const auto content = random_bytes(rng, 1000);
  write_bytes(dir / "f.bin", content);
  CHECK(shell.run_command("put " + (dir / "f.bin").string() + " doc").status == 0);
  CHECK(shell.run_command("get doc " + (dir / "out.bin").string()).status == 0);
  CHECK(read_bytes(dir / "out.bin") == content);
  CHECK(shell.run_command("ls").output == "doc\t1000\n");

  r = shell.run_command("rm missing");
  CHECK(r.status != 0);
  CHECK(r.output.find("not found") != std::string::npos);
  CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 1);
}

TEST_CASE("user errors") {
  TempDir dir("shell");
  Shell shell(options_in(dir));
  CHECK(shell.run_command("ls").status == 1);  // no disc yet
  CHECK(shell.run_command("frobnicate").status == 1);
  CHECK(shell.run_command("format n=5 bogus=1").status == 1);
  CHECK(shell.run_command("format n=5 m=16 seed=2").status == 0);
  CHECK(shell.run_command("format n=5 m=16 seed=2").status == 1);  // refuses to overwrite
  CHECK(shell.run_command("put").status == 1);
  CHECK(shell.run_command("put /nonexistent/file x").status == 1);
  CHECK(shell.run_command("edit nope " + (dir / "disc.sb").string()).status == 1);
  CHECK(shell.run_command("get nope " + (dir / "x").string()).output.find("not found") != std::string::npos);
  CHECK(shell.run_command("bench sizes=abc").status == 1);
  CHECK(shell.run_command("help").output.find("put <local-path> <name>") != std::string::npos);
  CHECK_FALSE(shell.finished());
  shell.run_command("exit");
  CHECK(shell.finished());
  CHECK(shell.history().size() == 12);
}

TEST_CASE("integrity and backend failures map to distinct statuses") {
  TempDir dir("shell");
  Shell shell(options_in(dir));
  shell.run_command("format n=5 m=4 seed=3");
  write_bytes(dir / "f", Bytes(12, 1));
  shell.run_command("put " + (dir / "f").string() + " f");
  CHECK(shell.run_command("fsck").status == 0);

  const auto block = shell.disc()->file_blocks("f")[1];
  shell.backend()->remove(shell.disc()->hashtags(block.address));
  auto r = shell.run_command("fsck");
  CHECK(r.status == 2);
  CHECK(r.output.find("MissingBlock") != std::string::npos);
  CHECK(shell.run_command("get f " + (dir / "g").string()).status == 2);

  shell.backend()->set_config({{}, 1.0, 0});
  CHECK(shell.run_command("rm f").status == 3);
}

TEST_CASE("json output") {
  TempDir dir("shell");
  auto options = options_in(dir);
  options.json = true;
  Shell shell(options);
  auto j = nlohmann::json::parse(shell.run_command("format n=6 m=20 mode=B seed=4").output);
  CHECK(j["mode"] == "B");
  write_bytes(dir / "f", Bytes(50, 7));
  j = nlohmann::json::parse(shell.run_command("put " + (dir / "f").string() + " name").output);
  CHECK(j["blocks"] == 3);
  CHECK(j["length"] == 50);
  j = nlohmann::json::parse(shell.run_command("ls").output);
  CHECK(j["files"].size() == 1);
  j = nlohmann::json::parse(shell.run_command("stat").output);
  CHECK(j["blocks"] == 4);
  CHECK(j["dictionary_bytes"] == 0);
  j = nlohmann::json::parse(shell.run_command("fsck").output);
  CHECK(j["clean"] == true);
  const auto r = shell.run_command("rm nothing");
  j = nlohmann::json::parse(r.output);
  CHECK(j["error"] == "FileNotFound");
  CHECK(r.status == 1);
}

TEST_CASE("shell and library produce identical disc state") {
  for (const char* mode : {"A", "B", "C"}) {
    CAPTURE(mode);
    TempDir dir("shell");
    Shell shell(options_in(dir));
    REQUIRE(shell.run_command(std::string("format n=6 m=10 mode=") + mode + " seed=9").status == 0);

    auto backend = std::make_shared<MemoryBackend>();
    auto disc = Disc::format(DiscConfig::generate(6, 32, 10, parse_mode(mode), CarrierSpec::parse("bitmap:64x64"), 9),
                             backend);

    std::mt19937_64 rng(10);
    for (int i = 0; i < 12; ++i) {
      const auto name = "f" + std::to_string(i % 5);
      const auto data = random_bytes(rng, rng() % 60);
      const auto local = dir / ("in" + std::to_string(i));
      write_bytes(local, data);
      if (disc->find_file(name)) {
        if (i % 3 == 0) {
          CHECK(shell.run_command("rm " + name).status == 0);
          disc->delete_file(name);
        } else {
          CHECK(shell.run_command("edit " + name + " " + local.string()).status == 0);
          disc->modify_file(name, data);
        }
      } else {
        CHECK(shell.run_command("put " + local.string() + " " + name).status == 0);
        disc->write_file(name, data);
      }
    }
    const auto a = shell.disc()->document();
    const auto b = disc->document();
    CHECK(a.header_text() == b.header_text());
    CHECK(a.catalog_text() == b.catalog_text());
    CHECK(a.dictionary_text() == b.dictionary_text());
    auto sa = shell.backend()->addresses();
    auto sb = backend->addresses();
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    CHECK(sa == sb);
    for (const auto& seq : sa) CHECK(shell.backend()->fetch(seq) == backend->fetch(seq));
  }
}

TEST_CASE("one-shot and interactive modes share one dispatch path") {
  TempDir dir("cli");
  const std::string cli = STEGDISC_CLI;
  const auto doc = (dir / "disc.sb").string();
  write_bytes(dir / "in.txt", bytes_of("hello from the command line"));
  const std::string common = cli + " --disc " + doc + " --backend dir:" + (dir / "osn").string();

  auto r = run_process(common + " format n=6 m=8 seed=5");
  CHECK(r.status == 0);
  r = run_process(common + " put " + (dir / "in.txt").string() + " greeting");
  CHECK(r.status == 0);
  const auto oneshot_ls = run_process(common + " ls");
  CHECK(oneshot_ls.output == "greeting\t27\n");

  std::ofstream script(dir / "script");
  script << "ls\nget greeting " << (dir / "out.txt").string() << "\nrm ghost\nls\nexit\nls\n";
  script.close();
  r = run_process(common + " < " + (dir / "script").string());
  CHECK(r.output.find(oneshot_ls.output + "read greeting (27 bytes)\nerror: 'ghost' not found\n" +
                      oneshot_ls.output) == 0);
  CHECK(r.output.size() == 2 * oneshot_ls.output.size() + 50);
  CHECK(read_bytes(dir / "out.txt") == bytes_of("hello from the command line"));

  r = run_process(common + " rm ghost");
  CHECK(r.status == 1);
  r = run_process(common + " --json stat");
  CHECK(nlohmann::json::parse(r.output)["files"] == 1);
  r = run_process(cli + " --backend nowhere ls");
  CHECK(r.status == 1);
}
