#ifndef QFL_QUADRATURE_HPP
#define QFL_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "qfl/parallel.hpp"

namespace qfl {

/// A value with an absolute error bound and the number of leaf integrand
/// evaluations behind it. Inner quadratures return one of these so their
/// error propagates into the outer estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  long evals = 0;
};

enum class Rule { GK15, GK21 };

struct QuadOptions {
  double abs_tol = 0.0;
  double rel_tol = 1e-8;
  int max_intervals = 2000;
  Rule rule = Rule::GK21;
  /// Evaluate the nodes of each bisected interval concurrently. Node results
  /// are summed in a fixed order, so the outcome does not depend on it.
  Execution exec = Execution::Serial;
};

struct QuadResult : Estimate {
  bool converged = false;
  int intervals = 0;
  double worst_a = 0.0;  // subinterval with the largest error at exit
  double worst_b = 0.0;
  double worst_error = 0.0;
};

/// Globally adaptive Gauss-Kronrod over [breaks.front(), breaks.back()],
/// starting from the panels delimited by the sorted breakpoints and
/// repeatedly bisecting the panel with the largest error until
/// error <= max(abs_tol, rel_tol |value|) or max_intervals is reached.
/// The panel error is |K - G| plus the propagated error of f.
QuadResult integrate_nested(const std::function<Estimate(double)>& f,
                            std::vector<double> breaks, const QuadOptions& opts = {});

QuadResult integrate(const std::function<double(double)>& f, std::vector<double> breaks,
                     const QuadOptions& opts = {});

inline QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                            const QuadOptions& opts = {}) {
  return integrate(f, std::vector<double>{a, b}, opts);
}

/// Either limit may be infinite. [a, inf) uses x = a + (1 - t)/t, the real
/// line uses x = t/(1 - t^2).
QuadResult integrate_infinite(const std::function<double(double)>& f, double a, double b,
                              const QuadOptions& opts = {});

/// Integrates over [a, b] with x = peak + width tan(t), clustering nodes
/// within ~width of a narrow peak. Requires width > 0.
QuadResult integrate_peaked(const std::function<Estimate(double)>& f, double a, double b,
                            double peak, double width, const QuadOptions& opts = {});

}  // namespace qfl

#endif
