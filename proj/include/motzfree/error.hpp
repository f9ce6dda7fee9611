#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace motzfree {

enum class Errc {
  empty_word,
  bad_endpoint,
  bad_step,
  non_positive,
  length_mismatch,
  not_alternating,
  order_mismatch,
  order_exceeded,
  label_mismatch,
  unknown_generator,
  unknown_algebra,
  missing_moment,
  missing_psi,
  centering_violation,
  unknown_law,
  invalid_argument,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::empty_word: return "EmptyWord";
    case Errc::bad_endpoint: return "BadEndpoint";
    case Errc::bad_step: return "BadStep";
    case Errc::non_positive: return "NonPositive";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::not_alternating: return "NotAlternating";
    case Errc::order_mismatch: return "OrderMismatch";
    case Errc::order_exceeded: return "OrderExceeded";
    case Errc::label_mismatch: return "LabelMismatch";
    case Errc::unknown_generator: return "UnknownGenerator";
    case Errc::unknown_algebra: return "UnknownAlgebra";
    case Errc::missing_moment: return "MissingMoment";
    case Errc::missing_psi: return "MissingPsi";
    case Errc::centering_violation: return "CenteringViolation";
    case Errc::unknown_law: return "UnknownLaw";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// that callers (the CLI in particular) can map it to a stable name.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace motzfree
