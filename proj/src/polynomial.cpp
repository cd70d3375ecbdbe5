#include "qfl/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfl/error.hpp"

namespace qfl {

namespace {

// Magnitude below which |p(z)| is indistinguishable from rounding noise.
double rounding_bound(std::span<const cplx> c, cplx z) {
  const double r = std::abs(z);
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + std::abs(c[i]);
  return 8.0 * std::numeric_limits<double>::epsilon() * acc;
}

}  // namespace

PolyValue evaluate_poly(std::span<const cplx> c, cplx z) {
  cplx p = 0.0;
  cplx dp = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

std::vector<cplx> polynomial_roots(std::span<const cplx> c, const PolyRootOptions& opts) {
  std::size_t deg = c.size() - 1;
  if (c.empty() || c.back() == cplx{0.0}) {
    raise(ErrorKind::Domain, "polynomial_roots needs a non-zero leading coefficient");
  }
  if (deg == 0) return {};

  // Fujiwara bound on root magnitudes sets the radius of the starting circle.
  double bound = 0.0;
  const double lead = std::abs(c.back());
  for (std::size_t i = 0; i < deg; ++i) {
    const double ratio = std::abs(c[i]) / lead;
    bound = std::max(bound, std::pow(ratio, 1.0 / static_cast<double>(deg - i)));
  }
  const double radius = std::max(bound, 1e-3);
  const cplx centre = -c[deg - 1] / (static_cast<double>(deg) * c.back());

  std::vector<cplx> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(deg) + 0.4;
    z[k] = centre + radius * std::polar(1.0, angle);
  }

  std::vector<bool> done(deg, false);
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < deg; ++k) {
      if (done[k]) continue;
      const auto [p, dp] = evaluate_poly(c, z[k]);
      if (std::abs(p) <= rounding_bound(c, z[k])) {
        done[k] = true;
        continue;
      }
      const cplx ratio = p / dp;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      const cplx step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      if (std::abs(step) <= opts.step_tol * std::max(std::abs(z[k]), 1.0)) {
        done[k] = true;
      } else {
        all_done = false;
      }
      if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag())) {
        raise(ErrorKind::Convergence, "Aberth iteration diverged");
      }
    }
    if (all_done) break;
  }
  if (iter == opts.max_iterations) {
    raise(ErrorKind::Convergence, "Aberth iteration did not converge");
  }

  // Newton steps only accepted when they lower the residual, which keeps
  // clustered roots from hopping onto a neighbour.
  for (auto& root : z) {
    double best = std::abs(evaluate_poly(c, root).value);
    for (int s = 0; s < opts.polish_steps && best > 0.0; ++s) {
      const auto [p, dp] = evaluate_poly(c, root);
      if (dp == cplx{0.0}) break;
      const cplx trial = root - p / dp;
      const double res = std::abs(evaluate_poly(c, trial).value);
      if (!(res < best)) break;
      root = trial;
      best = res;
    }
  }
  return z;
}

}  // namespace qfl
