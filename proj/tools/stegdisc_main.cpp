// stegdisc: shell for a filesystem hidden in hashtag-addressed posts.
//
//   stegdisc [--disc PATH] [--backend memory|dir:PATH] [--json] [--verbose] [COMMAND ARGS...]
//
// Without a command, reads commands from standard input.

#include <unistd.h>

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "stegdisc/errors.hpp"
#include "stegdisc/shell.hpp"

int main(int argc, char** argv) {
  CLI::App app{"stegdisc - steganographic filesystem over a simulated social network"};
  stegdisc::ShellOptions options;
  std::string disc_path;
  std::string pool;
  app.add_option("--disc", disc_path, "superblock/catalog document");
  app.add_option("--backend", options.backend, "memory | dir:<path>");
  app.add_option("--pool", pool, "directory of cover .bmp files");
  app.add_flag("--json", options.json, "machine-readable output");
  app.add_flag("--verbose", options.verbose, "show block addresses");
  app.prefix_command();
  CLI11_PARSE(app, argc, argv);

  if (!disc_path.empty()) options.disc_path = disc_path;
  if (!pool.empty()) options.carrier_dir = pool;

  std::unique_ptr<stegdisc::Shell> shell;
  try {
    shell = std::make_unique<stegdisc::Shell>(options);
  } catch (const stegdisc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return stegdisc::exit_status_for(e.code());
  }

  const auto rest = app.remaining();
  if (!rest.empty()) {
    const auto result = shell->run_args(rest);
    (result.status == 0 ? std::cout : std::cerr) << result.output;
    return result.status;
  }

  const bool interactive = isatty(STDIN_FILENO);
  int status = 0;
  std::string line;
  while (!shell->finished()) {
    if (interactive) std::cout << "stegdisc> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    const auto result = shell->run_command(line);
    (result.status == 0 ? std::cout : std::cerr) << result.output << std::flush;
    status = result.status;
  }
  return status;
}
