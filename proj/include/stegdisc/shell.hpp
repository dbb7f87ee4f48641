#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stegdisc/disc.hpp"
#include "stegdisc/errors.hpp"
#include "stegdisc/osn_backend.hpp"

namespace stegdisc {

enum ExitStatus : int {
  kExitOk = 0,
  kExitUser = 1,
  kExitIntegrity = 2,
  kExitBackend = 3,
};

struct ShellOptions {
  std::filesystem::path disc_path;  // superblock document
  std::string backend = "memory";
  std::optional<std::filesystem::path> carrier_dir;
  bool json = false;
  bool verbose = false;
};

struct CommandResult {
  int status = kExitOk;
  std::string output;  // newline-terminated when non-empty
};

/// $STEGDISC_HOME/disc.sb, else ~/.stegdisc/disc.sb.
std::filesystem::path default_disc_path();

/// Splits on whitespace; single or double quotes group words.
std::vector<std::string> tokenize(std::string_view line);

int exit_status_for(Errc code) noexcept;

/// Command interpreter shared by one-shot invocations and the interactive loop.
class Shell {
 public:
  explicit Shell(ShellOptions options);

  CommandResult run_command(std::string_view line);
  CommandResult run_args(const std::vector<std::string>& args);

  bool finished() const noexcept { return finished_; }
  const std::vector<std::string>& history() const noexcept { return history_; }

  Disc* disc() noexcept { return disc_.get(); }
  std::shared_ptr<OsnBackend> backend() const noexcept { return backend_; }

 private:
  CommandResult dispatch(const std::vector<std::string>& args);
  Disc& require_disc();

  CommandResult cmd_format(const std::vector<std::string>& args);
  CommandResult cmd_open(const std::vector<std::string>& args);
  CommandResult cmd_put(const std::vector<std::string>& args);
  CommandResult cmd_get(const std::vector<std::string>& args);
  CommandResult cmd_ls(const std::vector<std::string>& args);
  CommandResult cmd_rm(const std::vector<std::string>& args);
  CommandResult cmd_edit(const std::vector<std::string>& args);
  CommandResult cmd_stat(const std::vector<std::string>& args);
  CommandResult cmd_fsck(const std::vector<std::string>& args);
  CommandResult cmd_bench(const std::vector<std::string>& args);
  CommandResult cmd_help(const std::vector<std::string>& args);

  ShellOptions options_;
  std::shared_ptr<OsnBackend> backend_;
  std::unique_ptr<Disc> disc_;
  std::vector<std::string> history_;
  bool finished_ = false;
};

}  // namespace stegdisc
