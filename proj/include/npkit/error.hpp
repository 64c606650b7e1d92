#pragma once

#include <stdexcept>
#include <string>

namespace npkit {

enum class ErrorKind {
  Domain,             // precondition or type invariant violated
  Uncertified,        // a truncated evaluation could not certify its tail
  Overflow,           // exact integer arithmetic left the 128-bit range
  Degenerate,         // distances too close to decide
  CoincidentPoints,   // three-point solve with repeated points
  NotDiscPreserving,  // Moebius map exists but does not preserve the disc
  NoSolution,         // a bounded search exhausted its budget
  Window,             // word outside the truncation window
  InsufficientData,   // not enough levels/terms for a diagnostic
  Capacity,           // enumeration would exceed the configured cap
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace npkit
