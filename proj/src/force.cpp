#include "qfl/force.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <limits>
#include <sstream>

#include "qfl/error.hpp"

namespace qfl {

StableConfig certify_stable(const ShearConfig& cfg, const ScanOptions& opts) {
  const StabilityReport rep = max_growth(cfg, opts);
  if (!rep.stable) {
    std::ostringstream msg;
    msg << "configuration is unstable (max growth rate " << rep.max_growth << " at kx="
        << rep.argmax_kx << "): natural modes grow exponentially, so the system never reaches "
        << "a steady state and no stationary friction force exists";
    raise(ErrorKind::UnstableRegime, msg.str());
  }
  return StableConfig(cfg, rep);
}

namespace {

constexpr double kPi3 = kPi * kPi * kPi;

double resonance_frequency(double gamma) {
  return std::sqrt(std::max(kOmegaSp * kOmegaSp - 0.25 * gamma * gamma, 0.0));
}

// Sign weight of the two gain windows: -kx for the upper slab, +kx for the lower.
double window_weight(const ShearConfig& cfg, double omega, double kx) {
  double w = 0.0;
  if (in_gain_window(cfg, Side::Upper, omega, kx)) w -= kx;
  if (in_gain_window(cfg, Side::Lower, omega, kx)) w += kx;
  return w;
}

double rr_density(const ShearConfig& cfg, double omega, double kx, double ky) {
  const double weight = window_weight(cfg, omega, kx);
  if (weight == 0.0) return 0.0;
  const double g = cfg.gamma();
  const cplx ru = bare_reflection(g, cplx{omega - kx * cfg.v_upper});
  const cplx rl = bare_reflection(g, cplx{omega - kx * cfg.v_lower});
  const double coupling = std::exp(-2.0 * std::hypot(kx, ky) * cfg.gap());
  const double denom = std::norm(1.0 - ru * rl * coupling);
  return weight * ru.imag() * rl.imag() * coupling / (2.0 * kPi3 * denom);
}

double coeff_density(const ShearConfig& cfg, double omega, double kx, double ky) {
  const bool upper = in_gain_window(cfg, Side::Upper, omega, kx);
  const bool lower = in_gain_window(cfg, Side::Lower, omega, kx);
  if (!upper && !lower) return 0.0;
  const SpectralPoint pt{cplx{omega}, kx, ky};
  const double k = pt.k();
  const SurfaceCoefficients sc = surface_coeffs(cfg, pt);
  const cplx eps_u = slab_eps(cfg, Side::Upper, pt);
  const cplx eps_l = slab_eps(cfg, Side::Lower, pt);
  const double denom = std::norm(1.0 - sc.r_plus * sc.r_minus);
  double total = 0.0;
  if (upper) {
    const double amp = std::norm(sc.t_plus * std::exp(-k * cfg.z_plus) / eps_u);
    total += -kx * sc.r_minus.imag() * amp * std::abs(eps_u.imag()) / (4.0 * kPi3 * denom);
  }
  if (lower) {
    const double amp = std::norm(sc.t_minus * std::exp(k * cfg.z_minus) / eps_l);
    total += kx * sc.r_plus.imag() * amp * std::abs(eps_l.imag()) / (4.0 * kPi3 * denom);
  }
  return total;
}

struct Peak {
  double position;
  double width;
};

// Splits [a, b] at the peaks inside it and integrates each piece, mapping
// x = p + w tan(t) onto pieces that end on a peak narrower than 5% of the piece.
Estimate integrate_with_peaks(const std::function<Estimate(double)>& f, double a, double b,
                              std::vector<Peak> peaks, const QuadOptions& opts) {
  std::vector<Peak> inside;
  for (const auto& p : peaks) {
    if (p.position > a && p.position < b && p.width > 0.0) inside.push_back(p);
  }
  std::sort(inside.begin(), inside.end(),
            [](const Peak& x, const Peak& y) { return x.position < y.position; });
  std::vector<Peak> merged;
  for (const auto& p : inside) {
    if (!merged.empty() && p.position - merged.back().position <= 1e-12 * (b - a)) {
      merged.back().width = std::min(merged.back().width, p.width);
    } else {
      merged.push_back(p);
    }
  }
  struct Node {
    double x;
    double width;  // 0 for a plain limit
  };
  std::vector<Node> nodes{{a, 0.0}};
  for (const auto& p : merged) nodes.push_back({p.position, p.width});
  nodes.push_back({b, 0.0});

  Estimate total;
  const auto add = [&](const QuadResult& r) {
    total.value += r.value;
    total.error += r.error;
    total.evals += r.evals;
  };
  const auto piece = [&](double lo, double hi, const Node* peak) {
    if (peak != nullptr && peak->width < 0.05 * (hi - lo)) {
      add(integrate_peaked(f, lo, hi, peak->x, peak->width, opts));
    } else {
      add(integrate_nested(f, {lo, hi}, opts));
    }
  };
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const Node& l = nodes[i - 1];
    const Node& r = nodes[i];
    const bool pl = l.width > 0.0;
    const bool pr = r.width > 0.0;
    if (pl && pr) {
      const double mid = 0.5 * (l.x + r.x);
      piece(l.x, mid, &l);
      piece(mid, r.x, &r);
    } else {
      piece(l.x, r.x, pl ? &l : (pr ? &r : nullptr));
    }
  }
  return total;
}

using Density = std::function<double(double, double, double)>;

struct NestedSetup {
  ShearConfig cfg;
  Density density;
  double k_max;
  double rel_tol;
  Rule rule;
  int max_intervals;
  Execution exec;
  std::vector<double> kx_hints;  // extra kx breakpoints, both signs allowed
};

Estimate omega_integral(const NestedSetup& s, double kx, double ky) {
  const double top = std::max(kx * s.cfg.v_upper, kx * s.cfg.v_lower);
  if (!(top > 0.0)) return {};
  const double g = s.cfg.gamma();
  std::vector<Peak> peaks;
  try {
    const RootSet rs = solve_roots(s.cfg, kx, ky);
    for (std::size_t i = 0; i < 4; ++i) {
      if (!rs.spurious[i]) peaks.push_back({rs.roots[i].real(), std::max(std::abs(rs.roots[i].imag()), 1e-12)});
    }
  } catch (const Error&) {
    // Breakpoints are only a hint; the adaptive rule copes without them.
  }
  if (g > 0.0) {
    const double wr = resonance_frequency(g);
    for (Side side : {Side::Upper, Side::Lower}) {
      const double shift = kx * s.cfg.velocity(side);
      peaks.push_back({shift + wr, 0.5 * g});
      peaks.push_back({shift - wr, 0.5 * g});
    }
  }
  QuadOptions qo;
  qo.rel_tol = 0.25 * s.rel_tol;
  qo.rule = s.rule;
  qo.max_intervals = s.max_intervals;
  return integrate_with_peaks(
      [&](double w) { return Estimate{s.density(w, kx, ky), 0.0, 1}; }, 0.0, top, peaks, qo);
}

Estimate ky_integral(const NestedSetup& s, double kx) {
  if (!(std::max(kx * s.cfg.v_upper, kx * s.cfg.v_lower) > 0.0)) return {};
  QuadOptions qo;
  qo.rel_tol = 0.5 * s.rel_tol;
  qo.rule = s.rule;
  qo.max_intervals = s.max_intervals;
  const double scale = std::min(1.0 / s.cfg.gap(), s.k_max);
  const auto r = integrate_nested([&](double ky) { return omega_integral(s, kx, ky); },
                                  {0.0, 0.25 * scale, scale, s.k_max}, qo);
  // even in ky
  return {2.0 * r.value, 2.0 * r.error, r.evals};
}

QuadResult kx_integral(const NestedSetup& s, double lo, double hi) {
  QuadOptions qo;
  qo.rel_tol = s.rel_tol;
  qo.rule = s.rule;
  qo.max_intervals = s.max_intervals;
  qo.exec = s.exec;
  std::vector<double> breaks{lo, hi};
  for (double h : s.kx_hints) {
    if (h > lo && h < hi) breaks.push_back(h);
  }
  return integrate_nested([&](double kx) { return ky_integral(s, kx); }, breaks, qo);
}

// Resonant kx where a Doppler-shifted plasmon of one slab meets the
// counter-propagating one of the other, plus each slab's window onset.
std::vector<double> kx_hints(const ShearConfig& cfg, const StabilityReport* rep) {
  const double wr = resonance_frequency(cfg.gamma());
  std::vector<double> hints;
  const double dv = cfg.relative_velocity();
  if (dv > 0.0) {
    hints.push_back(2.0 * wr / dv);
    hints.push_back(-2.0 * wr / dv);
  }
  for (Side side : {Side::Upper, Side::Lower}) {
    const double v = std::abs(cfg.velocity(side));
    if (v > 0.0) {
      hints.push_back(wr / v);
      hints.push_back(-wr / v);
    }
  }
  if (rep != nullptr && rep->argmax_kx > 0.0) {
    hints.push_back(rep->argmax_kx);
    hints.push_back(-rep->argmax_kx);
  }
  return hints;
}

ForceResult run_nested(NestedSetup s, bool mirror) {
  ForceResult fr;
  const bool pos = s.cfg.v_upper > 0.0 || s.cfg.v_lower > 0.0;
  const bool neg = s.cfg.v_upper < 0.0 || s.cfg.v_lower < 0.0;
  std::vector<std::pair<double, double>> ranges;
  double factor = 1.0;
  if (mirror) {
    ranges.emplace_back(0.0, s.k_max);
    factor = 2.0;
  } else {
    if (neg) ranges.emplace_back(-s.k_max, 0.0);
    if (pos) ranges.emplace_back(0.0, s.k_max);
  }
  for (const auto& [lo, hi] : ranges) {
    const QuadResult r = kx_integral(s, lo, hi);
    if (!r.converged) {
      std::ostringstream msg;
      msg << "force quadrature did not converge: estimate " << factor * r.value << " +- "
          << factor * r.error << " after " << r.intervals << " kx panels; worst panel ["
          << r.worst_a << ", " << r.worst_b << "] with error " << factor * r.worst_error;
      raise(ErrorKind::Convergence, msg.str());
    }
    fr.value += factor * r.value;
    fr.abs_error_estimate += factor * r.error;
    fr.integrand_evaluations += r.evals;
  }
  return fr;
}

}  // namespace

double integrand_rr_form(const StableConfig& sc, double omega, double kx, double ky) {
  return rr_density(sc.config(), omega, kx, ky);
}

double integrand_coeff_form(const StableConfig& sc, double omega, double kx, double ky) {
  return coeff_density(sc.config(), omega, kx, ky);
}

const char* to_string(IntegrandForm f) {
  return f == IntegrandForm::ReflectionProduct ? "reflection-product" : "coefficient";
}

const char* to_string(Regime r) { return r == Regime::Stable ? "stable" : "unstable-rejected"; }

SpectralDensityGrid spectral_density_grid(const ShearConfig& cfg, double omega_min,
                                          double omega_max, double kx_min, double kx_max,
                                          int n_omega, int n_kx, double ky, IntegrandForm form,
                                          Execution exec) {
  if (n_omega < 1 || n_kx < 1 || !(omega_max >= omega_min) || !(kx_max >= kx_min)) {
    raise(ErrorKind::Domain, "spectral_density_grid needs non-empty ranges and grid sizes >= 1");
  }
  const StableConfig sc = certify_stable(cfg);
  const auto axis = [](double lo, double hi, int n) {
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0);
    return a;
  };
  SpectralDensityGrid grid;
  grid.omega_axis = axis(omega_min, omega_max, n_omega);
  grid.kx_axis = axis(kx_min, kx_max, n_kx);
  grid.ky = ky;
  grid.cfg = cfg;
  grid.form = form;
  grid.values.assign(grid.omega_axis.size(), std::vector<double>(grid.kx_axis.size(), 0.0));
  for_each_index(grid.omega_axis.size(), exec, [&](std::size_t i) {
    for (std::size_t j = 0; j < grid.kx_axis.size(); ++j) {
      const double w = grid.omega_axis[i];
      const double kx = grid.kx_axis[j];
      if (!(w > 0.0)) continue;
      grid.values[i][j] = form == IntegrandForm::ReflectionProduct ? integrand_rr_form(sc, w, kx, ky)
                                                                  : integrand_coeff_form(sc, w, kx, ky);
    }
  });
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  grid.timestamp = ts.str();
  return grid;
}

ForceResult total_force(const ShearConfig& cfg, const ForceOptions& opts) {
  cfg.validate();
  if (cfg.is_static() || (cfg.v_upper == cfg.v_lower && cfg.v_upper == 0.0)) {
    return {};
  }
  const StableConfig sc = certify_stable(cfg, opts.scan);
  ForceResult meta;
  double rel_tol = opts.rel_tol;
  if (opts.check_near_critical && cfg.is_symmetric() && cfg.gamma() > 0.0) {
    try {
      CriticalOptions co;
      co.scan = opts.scan;
      co.scan.exec = opts.exec;
      const double g_cr = critical_gamma(cfg.relative_velocity(), cfg.gap(), co).value;
      if (cfg.gamma() <= g_cr * (1.0 + opts.near_critical_margin)) {
        meta.near_critical = true;
        rel_tol *= 10.0;
        std::ostringstream w;
        w << "gamma=" << cfg.gamma() << " lies within " << 100.0 * opts.near_critical_margin
          << "% of the threshold " << g_cr << "; tolerance relaxed to " << rel_tol;
        meta.warnings.push_back(w.str());
      }
    } catch (const Error&) {
      // no threshold in the bracket: far from critical
    }
  }
  const Density density = opts.form == IntegrandForm::ReflectionProduct
                              ? Density([&](double w, double kx, double ky) { return integrand_rr_form(sc, w, kx, ky); })
                              : Density([&](double w, double kx, double ky) { return integrand_coeff_form(sc, w, kx, ky); });
  NestedSetup s{cfg,
                density,
                opts.k_max > 0.0 ? opts.k_max : default_kx_max(cfg),
                rel_tol,
                opts.rule,
                opts.max_intervals,
                opts.exec,
                kx_hints(cfg, &sc.report())};
  ForceResult fr = run_nested(s, opts.use_mirror && cfg.is_symmetric());
  fr.near_critical = meta.near_critical;
  fr.warnings = meta.warnings;
  return fr;
}

std::vector<ForceResult> force_sweep(const ShearConfig& tmpl, Parameter parameter,
                                     const std::vector<double>& values, const ForceOptions& opts) {
  std::vector<ForceResult> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double gamma = tmpl.gamma();
    double v = tmpl.relative_velocity();
    double gap = tmpl.gap();
    switch (parameter) {
      case Parameter::Gamma: gamma = values[i]; break;
      case Parameter::Velocity: v = values[i]; break;
      case Parameter::Gap: gap = values[i]; break;
    }
    try {
      out[i] = total_force(ShearConfig::symmetric(gamma, v, gap), opts);
    } catch (const Error& e) {
      out[i] = {};
      out[i].value = std::numeric_limits<double>::quiet_NaN();
      out[i].abs_error_estimate = std::numeric_limits<double>::quiet_NaN();
      out[i].message = e.what();
      if (e.kind() == ErrorKind::UnstableRegime) {
        out[i].regime = Regime::UnstableRejected;
      } else {
        out[i].warnings.push_back(std::string("failed: ") + to_string(e.kind()));
      }
    }
  }
  return out;
}

ForceResult force_lower_only(double gamma, double v, double gap, const ForceOptions& opts) {
  const ShearConfig cfg = ShearConfig::lower_only(gamma, v, gap);
  if (v == 0.0) return {};
  const StableConfig sc = certify_stable(cfg, opts.scan);
  const Density density = [gamma, v, gap](double w, double kx, double ky) {
    if (!(w > 0.0 && w < kx * v)) return 0.0;
    const cplx r0 = bare_reflection(gamma, cplx{w});
    const cplx r1 = bare_reflection(gamma, cplx{w - kx * v});
    const double e = std::exp(-2.0 * std::hypot(kx, ky) * gap);
    return kx * r0.imag() * r1.imag() * e / (2.0 * kPi3 * std::norm(1.0 - r0 * r1 * e));
  };
  NestedSetup s{cfg,
                density,
                opts.k_max > 0.0 ? opts.k_max : default_kx_max(cfg),
                opts.rel_tol,
                opts.rule,
                opts.max_intervals,
                opts.exec,
                kx_hints(cfg, &sc.report())};
  return run_nested(s, false);
}

double force_lossless_weak(double v, double gap) {
  if (!(v > 0.0) || !(gap > 0.0)) raise(ErrorKind::Domain, "force_lossless_weak needs v > 0 and L > 0");
  const double a = 2.0 * kOmegaSp / v;
  // Stop where the exponent has dropped by 40 below its ky = 0 value.
  const double cut = 20.0 / gap + a;
  const double ky_max = std::sqrt(cut * cut - a * a);
  const auto r = integrate(
      [&](double ky) { return std::exp(-2.0 * gap * (std::sqrt(a * a + ky * ky) - a)); }, 0.0,
      ky_max, {.rel_tol = 1e-12});
  const double prefactor = -std::pow(kOmegaSp, 3) / (4.0 * kPi * v * v);
  return prefactor * 2.0 * r.value * std::exp(-2.0 * gap * a);
}

double force_lossless_weak_bessel(double v, double gap) {
  if (!(v > 0.0) || !(gap > 0.0)) raise(ErrorKind::Domain, "force_lossless_weak needs v > 0 and L > 0");
  const double a = 2.0 * kOmegaSp / v;
  return -std::pow(kOmegaSp, 3) / (4.0 * kPi * v * v) * 2.0 * a * std::cyl_bessel_k(1.0, 2.0 * a * gap);
}

PlemeljReport plemelj_check(const std::vector<double>& gammas,
                            const std::function<double(double)>& f, double rel_tol) {
  PlemeljReport rep;
  rep.limit = 0.5 * kPi * kOmegaSp * (f(-kOmegaSp) - f(kOmegaSp));
  const double inf = std::numeric_limits<double>::infinity();
  for (double g : gammas) {
    if (!(g > 0.0)) raise(ErrorKind::Domain, "plemelj_check needs gamma > 0");
    const double wr = resonance_frequency(g);
    const auto integrand = [&](double w) {
      return Estimate{bare_reflection(g, cplx{w}).imag() * f(w), 0.0, 1};
    };
    QuadOptions qo;
    qo.rel_tol = rel_tol;
    qo.abs_tol = 1e-14;
    Estimate total;
    for (const auto& r : {integrate_peaked(integrand, -inf, 0.0, -wr, 0.5 * g, qo),
                          integrate_peaked(integrand, 0.0, inf, wr, 0.5 * g, qo)}) {
      total.value += r.value;
      total.error += r.error;
    }
    rep.rows.push_back({g, total.value, total.value - rep.limit, total.error});
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& r : rep.rows) {
    if (std::abs(r.error) > 100.0 * std::max(r.quad_error, 1e-13)) {
      lx.push_back(std::log(r.gamma));
      ly.push_back(std::log(std::abs(r.error)));
    }
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    rep.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  } else {
    rep.order = std::numeric_limits<double>::quiet_NaN();
  }
  // Along decreasing gamma the error magnitude must not grow beyond noise.
  std::vector<PlemeljRow> sorted = rep.rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.gamma > b.gamma; });
  rep.monotone = true;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double noise = 100.0 * std::max(sorted[i].quad_error + sorted[i - 1].quad_error, 1e-13);
    if (std::abs(sorted[i].error) > std::abs(sorted[i - 1].error) + noise) rep.monotone = false;
  }
  return rep;
}

}  // namespace qfl
