#include "qfl/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qfl/error.hpp"
#include "qfl/polynomial.hpp"

namespace qfl {

double RootSet::max_imag() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    if (!spurious[i]) m = std::max(m, roots[i].imag());
  }
  return m;
}

RootSet solve_roots(const ShearConfig& cfg, double kx, double ky, const RootOptions& opts) {
  const QuarticPoly q = quartic_poly(cfg, kx, ky);
  const double scale = q.scale();
  const double coupling = std::exp(-2.0 * std::hypot(kx, ky) * cfg.gap());
  auto roots = polynomial_roots(q.c, {.polish_steps = 0});

  RootSet rs;
  rs.kx = kx;
  rs.ky = ky;
  // Polish with the factored form Pa Pb - e: near-degenerate pairs (large
  // |k| L) are ill conditioned in the expanded coefficients but not here.
  const double sa = kx * cfg.v_upper;
  const double sb = kx * cfg.v_lower;
  const double g = cfg.gamma();
  const auto factored = [&](cplx z) {
    const cplx pa = 2.0 * drude_w(g, z - sa) - 1.0;
    const cplx pb = 2.0 * drude_w(g, z - sb) - 1.0;
    const cplx dpa = 4.0 * (z - sa) + 2.0 * kI * g;
    const cplx dpb = 4.0 * (z - sb) + 2.0 * kI * g;
    return std::pair{pa * pb - coupling, dpa * pb + pa * dpb};
  };
  for (int s = 0; s < opts.polish_steps; ++s) {
    bool moved = false;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto [f, df] = factored(roots[i]);
      if (f == cplx{0.0} || df == cplx{0.0}) continue;
      const cplx ratio = f / df;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < 4; ++j) {
        if (j != i) repulsion += 1.0 / (roots[i] - roots[j]);
      }
      const cplx trial = roots[i] - ratio / (1.0 - ratio * repulsion);
      if (std::abs(factored(trial).first) < std::abs(f)) {
        roots[i] = trial;
        moved = true;
      }
    }
    if (!moved) break;
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (std::size_t i = 0; i < 4; ++i) {
    rs.roots[i] = roots[i];
    rs.residuals[i] = std::abs(q(roots[i])) / scale;
    rs.spurious[i] =
        drude_pole_proximity(cfg, {roots[i], kx, ky}) < opts.spurious_threshold;
    if (!(rs.residuals[i] <= opts.residual_tol)) {
      std::ostringstream msg;
      msg << "root " << roots[i] << " at kx=" << kx << " ky=" << ky << " has residual "
          << rs.residuals[i];
      raise(ErrorKind::Convergence, msg.str());
    }
  }
  return rs;
}

std::vector<LocusPoint> root_locus(const ShearConfig& cfg, double kx_min, double kx_max,
                                   int steps, const RootOptions& opts) {
  if (steps < 1 || !(kx_max >= kx_min) || !(kx_min > 0.0)) {
    raise(ErrorKind::Domain, "root_locus needs 0 < kx_min <= kx_max and steps >= 1");
  }
  std::vector<LocusPoint> out;
  out.reserve(static_cast<std::size_t>(steps));
  std::array<cplx, 4> prev{};
  std::array<cplx, 4> prev2{};
  std::array<int, 4> perm{0, 1, 2, 3};
  for (int s = 0; s < steps; ++s) {
    const double kx =
        steps == 1 ? kx_min : kx_min + (kx_max - kx_min) * s / static_cast<double>(steps - 1);
    LocusPoint lp{solve_roots(cfg, kx, 0.0, opts), {0, 1, 2, 3}};
    if (s > 0) {
      std::array<cplx, 4> predicted = prev;
      if (s > 1) {
        for (std::size_t b = 0; b < 4; ++b) predicted[b] = 2.0 * prev[b] - prev2[b];
      }
      // perm[b] = index of the root continuing branch b.
      std::array<int, 4> trial{0, 1, 2, 3};
      double best = std::numeric_limits<double>::infinity();
      do {
        double cost = 0.0;
        for (std::size_t b = 0; b < 4; ++b) {
          cost += std::norm(lp.roots.roots[static_cast<std::size_t>(trial[b])] - predicted[b]);
        }
        if (cost < best) {
          best = cost;
          perm = trial;
        }
      } while (std::next_permutation(trial.begin(), trial.end()));
      for (std::size_t b = 0; b < 4; ++b) lp.branch[static_cast<std::size_t>(perm[b])] = static_cast<int>(b);
    }
    prev2 = prev;
    for (std::size_t i = 0; i < 4; ++i) {
      prev[static_cast<std::size_t>(lp.branch[i])] = lp.roots.roots[i];
    }
    if (s == 0) prev2 = prev;
    out.push_back(lp);
  }
  return out;
}

double default_kx_max(const ShearConfig& cfg) {
  const double base = 12.0 / cfg.gap();
  const double dv = cfg.relative_velocity();
  if (dv == 0.0) return base;
  return std::max(base, 8.0 * kOmegaSp / dv);
}

namespace {

// Growth rates at equal values are resolved towards the smallest kx so that
// flat tails at -gamma/2 never read as a maximiser at k_max.
constexpr double kFlatTolerance = 1e-13;

struct Scan {
  std::vector<double> kx;
  std::vector<double> growth;
  std::size_t argmax = 0;
};

Scan run_scan(const ShearConfig& cfg, double kmin, double kmax, const ScanOptions& opts) {
  const auto n = static_cast<std::size_t>(opts.points);
  Scan sc;
  sc.kx.resize(n);
  sc.growth.resize(n);
  const double ratio = std::log(kmax / kmin) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) sc.kx[i] = kmin * std::exp(ratio * static_cast<double>(i));
  sc.kx.back() = kmax;
  for_each_index(n, opts.exec, [&](std::size_t i) {
    sc.growth[i] = solve_roots(cfg, sc.kx[i], 0.0, opts.roots).max_imag();
  });
  const double top = *std::max_element(sc.growth.begin(), sc.growth.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (sc.growth[i] >= top - kFlatTolerance) {
      sc.argmax = i;
      break;
    }
  }
  return sc;
}

}  // namespace

StabilityReport max_growth(const ShearConfig& cfg, const ScanOptions& opts) {
  cfg.validate();
  if (opts.points < 3 || !(opts.kx_min > 0.0)) {
    raise(ErrorKind::Domain, "max_growth needs at least 3 scan points and kx_min > 0");
  }
  double kmax = opts.kx_max > 0.0 ? opts.kx_max : default_kx_max(cfg);
  if (!(kmax > opts.kx_min)) raise(ErrorKind::Domain, "kx_max must exceed kx_min");

  StabilityReport rep;
  Scan sc = run_scan(cfg, opts.kx_min, kmax, opts);
  if (sc.argmax + 1 == sc.kx.size()) {
    kmax *= 4.0;
    rep.extended = true;
    sc = run_scan(cfg, opts.kx_min, kmax, opts);
    if (sc.argmax + 1 == sc.kx.size()) {
      std::ostringstream msg;
      msg << "growth-rate maximiser pinned at kx_max=" << kmax << " after one extension";
      raise(ErrorKind::Boundary, msg.str());
    }
  }
  rep.kx_min = opts.kx_min;
  rep.kx_max = kmax;
  rep.scan_resolution = sc.kx[1] / sc.kx[0];

  double best_k = sc.kx[sc.argmax];
  double best_g = sc.growth[sc.argmax];
  if (sc.argmax > 0) {
    const auto growth = [&](double kx) { return solve_roots(cfg, kx, 0.0, opts.roots).max_imag(); };
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = sc.kx[sc.argmax - 1];
    double b = sc.kx[sc.argmax + 1];
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double gc = growth(c);
    double gd = growth(d);
    while (b - a > opts.refine_tol) {
      if (gc > gd) {
        b = d;
        d = c;
        gd = gc;
        c = b - invphi * (b - a);
        gc = growth(c);
      } else {
        a = c;
        c = d;
        gc = gd;
        d = a + invphi * (b - a);
        gd = growth(d);
      }
    }
    const double k_mid = 0.5 * (a + b);
    const double g_mid = growth(k_mid);
    if (g_mid > best_g) {
      best_g = g_mid;
      best_k = k_mid;
    }
  }
  rep.max_growth = best_g;
  rep.argmax_kx = best_k;
  rep.stable = best_g < 0.0;
  return rep;
}

const char* to_string(Parameter p) {
  switch (p) {
    case Parameter::Gamma: return "gamma";
    case Parameter::Velocity: return "velocity";
    case Parameter::Gap: return "gap";
  }
  return "unknown";
}

Parameter parameter_from_string(const std::string& name) {
  if (name == "gamma") return Parameter::Gamma;
  if (name == "velocity" || name == "v") return Parameter::Velocity;
  if (name == "gap" || name == "L") return Parameter::Gap;
  raise(ErrorKind::Domain, "unknown parameter '" + name + "' (expected gamma, velocity or gap)");
}

namespace {

template <typename GrowthFn>
CriticalValue bisect_threshold(Parameter param, double lo, double hi, GrowthFn&& growth,
                               const CriticalOptions& opts) {
  const int n = std::max(opts.prescan_points, 2);
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, i / static_cast<double>(n - 1));
    m[static_cast<std::size_t>(i)] = growth(x[static_cast<std::size_t>(i)]);
  }
  int changes = 0;
  std::size_t at = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if ((m[i - 1] < 0.0) != (m[i] < 0.0)) {
      ++changes;
      at = i;
    }
  }
  if (changes == 0) {
    std::ostringstream msg;
    msg << "stability functional keeps one sign (" << (m[0] < 0.0 ? "stable" : "unstable")
        << ") over " << to_string(param) << " in [" << lo << ", " << hi << "]";
    raise(ErrorKind::NoSignChange, msg.str());
  }
  if (changes > 1) {
    std::ostringstream msg;
    msg << "stability functional changes sign " << changes << " times over " << to_string(param)
        << " in [" << lo << ", " << hi << "]";
    raise(ErrorKind::Convergence, msg.str());
  }
  double a = x[at - 1];
  double b = x[at];
  const bool a_stable = m[at - 1] < 0.0;
  CriticalValue cv;
  cv.parameter = param;
  while (b - a > opts.tol) {
    const double mid = 0.5 * (a + b);
    if ((growth(mid) < 0.0) == a_stable) {
      a = mid;
    } else {
      b = mid;
    }
    ++cv.iterations;
  }
  cv.value = 0.5 * (a + b);
  cv.bracket = {a, b};
  return cv;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) raise(ErrorKind::Domain, std::string(name) + " must be positive");
}

}  // namespace

CriticalValue critical_gamma(double v, double gap, const CriticalOptions& opts) {
  require_positive(v, "v");
  require_positive(gap, "L");
  return bisect_threshold(
      Parameter::Gamma, 1e-4, 1.0,
      [&](double g) { return max_growth(ShearConfig::symmetric(g, v, gap), opts.scan).max_growth; },
      opts);
}

CriticalValue critical_velocity(double gamma, double gap, const CriticalOptions& opts) {
  require_positive(gamma, "gamma");
  require_positive(gap, "L");
  return bisect_threshold(
      Parameter::Velocity, 1e-3, 0.99,
      [&](double v) { return max_growth(ShearConfig::symmetric(gamma, v, gap), opts.scan).max_growth; },
      opts);
}

CriticalValue critical_gap(double gamma, double v, const CriticalOptions& opts) {
  require_positive(gamma, "gamma");
  require_positive(v, "v");
  return bisect_threshold(
      Parameter::Gap, 1e-3, 50.0,
      [&](double l) { return max_growth(ShearConfig::symmetric(gamma, v, l), opts.scan).max_growth; },
      opts);
}

const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Ok: return "ok";
    case CellStatus::NoSignChange: return "no-sign-change";
    case CellStatus::Failed: return "failed";
  }
  return "unknown";
}

DiagramCell diagram_cell(double v, double gap, const CriticalOptions& opts) {
  DiagramCell cell;
  try {
    cell.estimate = growth_estimate(v, gap);
    cell.gamma_cr = critical_gamma(v, gap, opts).value;
  } catch (const Error& e) {
    cell.gamma_cr = 0.0;
    cell.status = e.kind() == ErrorKind::NoSignChange ? CellStatus::NoSignChange : CellStatus::Failed;
    cell.message = e.what();
  }
  return cell;
}

StabilityDiagram stability_diagram(const std::vector<double>& v_axis,
                                   const std::vector<double>& gap_axis,
                                   const CriticalOptions& opts, Execution exec) {
  StabilityDiagram d{v_axis, gap_axis, {}};
  d.cells.assign(gap_axis.size(), std::vector<DiagramCell>(v_axis.size()));
  CriticalOptions cell_opts = opts;
  if (exec == Execution::Parallel) cell_opts.scan.exec = Execution::Serial;
  const std::size_t nv = v_axis.size();
  for_each_index(nv * gap_axis.size(), exec, [&](std::size_t idx) {
    const std::size_t il = idx / nv;
    const std::size_t iv = idx % nv;
    d.cells[il][iv] = diagram_cell(v_axis[iv], gap_axis[il], cell_opts);
  });
  return d;
}

}  // namespace qfl
