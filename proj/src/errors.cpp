#include "stegdisc/errors.hpp"

namespace stegdisc {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::UnknownTag: return "UnknownTag";
    case Errc::NotAPermutation: return "NotAPermutation";
    case Errc::CodeOutOfRange: return "CodeOutOfRange";
    case Errc::CounterOverflow: return "CounterOverflow";
    case Errc::InvalidCounter: return "InvalidCounter";
    case Errc::AllocationStall: return "AllocationStall";
    case Errc::CounterTooWide: return "CounterTooWide";
    case Errc::DataTooLong: return "DataTooLong";
    case Errc::BadVersion: return "BadVersion";
    case Errc::TruncatedPayload: return "TruncatedPayload";
    case Errc::UnsupportedCarrier: return "UnsupportedCarrier";
    case Errc::CapacityExceeded: return "CapacityExceeded";
    case Errc::DuplicateAddress: return "DuplicateAddress";
    case Errc::BackendUnavailable: return "BackendUnavailable";
    case Errc::NotFound: return "NotFound";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::NameExists: return "NameExists";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::ChainBroken: return "ChainBroken";
    case Errc::UnknownCommand: return "UnknownCommand";
    case Errc::UsageError: return "UsageError";
    case Errc::SpecInvalid: return "SpecInvalid";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace stegdisc
