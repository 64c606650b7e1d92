#include "npkit/error.hpp"

namespace npkit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Uncertified: return "uncertified";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Degenerate: return "degenerate configuration";
    case ErrorKind::CoincidentPoints: return "coincident points";
    case ErrorKind::NotDiscPreserving: return "not disc preserving";
    case ErrorKind::NoSolution: return "no solution";
    case ErrorKind::Window: return "window violation";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::Capacity: return "capacity exceeded";
  }
  return "unknown error";
}

}  // namespace npkit
