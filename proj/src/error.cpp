#include "qfl/error.hpp"

namespace qfl {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Resonance: return "resonance";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Boundary: return "boundary";
    case ErrorKind::NoSignChange: return "no-sign-change";
    case ErrorKind::UnstableRegime: return "unstable-regime";
    case ErrorKind::Identity: return "identity";
  }
  return "unknown";
}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qfl
