#ifndef QFL_POLYNOMIAL_HPP
#define QFL_POLYNOMIAL_HPP

#include <span>
#include <vector>

#include "qfl/units.hpp"

namespace qfl {

// Horner evaluation of sum c[i] z^i and its derivative.
struct PolyValue {
  cplx value;
  cplx derivative;
};

PolyValue evaluate_poly(std::span<const cplx> ascending, cplx z);

struct PolyRootOptions {
  int max_iterations = 500;
  double step_tol = 1e-15;  // relative to max(|z|, 1)
  int polish_steps = 3;
};

// All roots of a polynomial with complex coefficients in ascending order,
// by simultaneous Aberth-Ehrlich iteration followed by Newton polishing.
// The leading coefficient must be non-zero. Throws a convergence error if
// the iteration stalls.
std::vector<cplx> polynomial_roots(std::span<const cplx> ascending,
                                   const PolyRootOptions& opts = {});

}  // namespace qfl

#endif
