#ifndef JSR_ERROR_HPP
#define JSR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace jsr {

enum class Errc {
  InvalidArgument,
  NonFinite,
  NonConvergence,
  DimensionMismatch,
  DimensionOverflow,
  IndexOutOfRange,
  BudgetExceeded,
  DimensionCap,
  IllConditioned,
  NotAnIdeal,
  NotAChain,
  PreconditionNotCertified,
  ParseError,
  ShapeError,
  IoError,
};

constexpr std::string_view errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionOverflow: return "DimensionOverflow";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::DimensionCap: return "DimensionCap";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::NotAnIdeal: return "NotAnIdeal";
    case Errc::NotAChain: return "NotAChain";
    case Errc::PreconditionNotCertified: return "PreconditionNotCertified";
    case Errc::ParseError: return "ParseError";
    case Errc::ShapeError: return "ShapeError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every library failure is reported through this type; `code()` carries the kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace jsr

#endif  // JSR_ERROR_HPP
