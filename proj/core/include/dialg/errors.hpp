#pragma once

#include <stdexcept>
#include <string>

#include "dialg/report.hpp"

namespace dialg {

/// A caller broke an operation's precondition (dimension or tag mismatch,
/// incompatible truncation bounds, out-of-window index).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed interchange input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation refused its input because a validator failed; carries the
/// validator's report so the caller can show the witnesses.
class RejectedInput : public std::runtime_error {
 public:
  RejectedInput(const std::string& what, Report report)
      : std::runtime_error(what), report_(std::move(report)) {}

  [[nodiscard]] const Report& report() const { return report_; }

 private:
  Report report_;
};

}  // namespace dialg
