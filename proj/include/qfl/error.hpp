#ifndef QFL_ERROR_HPP
#define QFL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qfl {

enum class ErrorKind {
  Domain,          // arguments outside the model's domain
  Pole,            // evaluation on a Drude pole
  Resonance,       // evaluation on a surface or system resonance
  Convergence,     // iterative solver or quadrature did not converge
  Boundary,        // maximiser pinned to the end of the scanned range
  NoSignChange,    // bisection bracket without a sign change
  UnstableRegime,  // steady-state quantity requested for an unstable system
  Identity,        // a numerical identity check failed
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

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace qfl

#endif
