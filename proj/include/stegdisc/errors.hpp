#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stegdisc {

enum class Errc {
  // addressing
  SizeMismatch,
  UnknownTag,
  NotAPermutation,
  CodeOutOfRange,
  CounterOverflow,
  InvalidCounter,
  AllocationStall,
  // payloads and carriers
  CounterTooWide,
  DataTooLong,
  BadVersion,
  TruncatedPayload,
  UnsupportedCarrier,
  CapacityExceeded,
  // social network backend
  DuplicateAddress,
  BackendUnavailable,
  NotFound,
  // filesystem
  ConfigInvalid,
  NameExists,
  FileNotFound,
  ChainBroken,
  // shell
  UnknownCommand,
  UsageError,
  SpecInvalid,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace stegdisc
