#include "qfl/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "qfl/error.hpp"
#include "qfl/force.hpp"
#include "qfl/greens.hpp"
#include "qfl/khi.hpp"
#include "qfl/stability.hpp"

namespace qfl {

using nlohmann::json;

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  bool coin() { return uniform(0.0, 1.0) < 0.5; }

 private:
  std::mt19937_64 rng_;
};

// Smallest max-distance pairing of two 4-element root sets.
double match_roots(const std::array<cplx, 4>& a, const std::array<cplx, 4>& b) {
  std::array<int, 4> perm{0, 1, 2, 3};
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[static_cast<std::size_t>(perm[i])]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

CheckResult make(const std::string& id, const std::string& title) {
  CheckResult r;
  r.id = id;
  r.title = title;
  return r;
}

CheckResult check_critical_gamma() {
  auto r = make("AC1", "critical damping at v = 0.1, L = 0.1");
  const auto cv = critical_gamma(0.1, 0.1);
  r.metrics = {{"gamma_cr", cv.value}, {"bracket", cv.bracket}, {"expected", 0.18}, {"tolerance", 0.01}};
  r.passed = std::abs(cv.value - 0.18) <= 0.01;
  r.detail = "gamma_cr = " + fmt(cv.value);
  return r;
}

CheckResult check_critical_triple() {
  auto r = make("AC2", "critical velocity and gap close the triple");
  const auto v = critical_velocity(0.18, 0.1);
  const auto l = critical_gap(0.18, 0.1);
  r.metrics = {{"v_cr", v.value}, {"L_cr", l.value}, {"expected", 0.10}, {"tolerance", 0.01}};
  r.passed = std::abs(v.value - 0.1) <= 0.01 && std::abs(l.value - 0.1) <= 0.01;
  r.detail = "v_cr = " + fmt(v.value) + ", L_cr = " + fmt(l.value);
  return r;
}

CheckResult check_estimate(Execution exec) {
  auto r = make("AC3", "growth-rate estimate against numerical threshold");
  const double g_cr = critical_gamma(0.1, 0.1).value;
  const double v_bar = 0.1 / (kOmegaSp * 0.1);
  const double est = kOmegaSp * std::exp(-2.0 / v_bar);
  const double rel = std::abs(g_cr - est) / g_cr;
  const std::vector<std::array<double, 2>> sweep = {{0.05, 0.1}, {0.06, 0.1}, {0.07, 0.1}, {0.08, 0.1},
                                                    {0.09, 0.1}, {0.10, 0.1}, {0.6, 1.0},  {0.7, 1.0},
                                                    {0.8, 1.0},  {0.9, 1.0}};
  std::vector<double> errs(sweep.size());
  for_each_index(sweep.size(), exec, [&](std::size_t i) {
    CriticalOptions co;
    co.scan.exec = Execution::Serial;
    const double g = critical_gamma(sweep[i][0], sweep[i][1], co).value;
    errs[i] = std::abs(g - growth_estimate(sweep[i][0], sweep[i][1])) / g;
  });
  const double worst = *std::max_element(errs.begin(), errs.end());
  r.metrics = {{"gamma_cr", g_cr},          {"estimate", est},   {"relative_error", rel},
               {"tolerance", 0.10},         {"sweep", sweep},    {"sweep_relative_errors", errs},
               {"sweep_tolerance", 0.20}};
  r.passed = rel < 0.10 && worst < 0.20;
  r.detail = "relative error " + fmt(rel) + ", sweep worst " + fmt(worst);
  return r;
}

CheckResult check_v0_roots(std::uint64_t seed) {
  auto r = make("AC4", "static-slab roots against the closed form");
  Sampler s(seed);
  double worst = 0.0;
  double worst_imag = 0.0;
  int underdamped = 0;
  for (int n = 0; n < 1000; ++n) {
    const double g = s.uniform(1e-3, 1.0);
    const double gap = s.log_uniform(1e-2, 10.0);
    const double kx = s.log_uniform(1e-3, 30.0);
    const double e = std::exp(-kx * gap);
    const RootSet rs = solve_roots(ShearConfig::symmetric(g, 0.0, gap), kx, 0.0);
    std::array<cplx, 4> oracle{};
    std::size_t idx = 0;
    for (double sign : {1.0, -1.0}) {
      const double radicand = kOmegaSp * kOmegaSp * (1.0 + sign * e) - 0.25 * g * g;
      const cplx root = std::sqrt(cplx{radicand});
      oracle[idx++] = -0.5 * kI * g + root;
      oracle[idx++] = -0.5 * kI * g - root;
      if (radicand > 0.0) {
        ++underdamped;
        // the two roots closest to the oracle pair
        for (const cplx& o : {oracle[idx - 2], oracle[idx - 1]}) {
          const auto it = std::min_element(rs.roots.begin(), rs.roots.end(),
                                           [&](cplx a, cplx b) { return std::abs(a - o) < std::abs(b - o); });
          worst_imag = std::max(worst_imag, std::abs(it->imag() + 0.5 * g));
        }
      }
    }
    worst = std::max(worst, match_roots(rs.roots, oracle));
  }
  r.metrics = {{"samples", 1000},           {"max_abs_deviation", worst}, {"tolerance", 1e-9},
               {"underdamped_pairs", underdamped}, {"max_imag_deviation", worst_imag},
               {"imag_tolerance", 1e-12}};
  r.passed = worst < 1e-9 && worst_imag < 1e-12;
  r.detail = "max deviation " + fmt(worst) + ", max |Im + gamma/2| " + fmt(worst_imag);
  return r;
}

CheckResult check_gamma0_roots(std::uint64_t seed) {
  auto r = make("AC5", "lossless roots against the dispersion relation");
  Sampler s(seed + 1);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double v = s.uniform(0.01, 0.99);
    const double gap = s.log_uniform(1e-2, 10.0);
    const double kx = s.log_uniform(1e-3, 30.0);
    const auto m = lossless_dispersion(v, gap, kx, 0.0);
    const RootSet rs = solve_roots(ShearConfig::symmetric(0.0, v, gap), kx, 0.0);
    worst = std::max(worst, match_roots(rs.roots, {m.omega_plus, -m.omega_plus, m.omega_minus, -m.omega_minus}));
  }
  r.metrics = {{"samples", 1000}, {"max_abs_deviation", worst}, {"tolerance", 1e-9}};
  r.passed = worst < 1e-9;
  r.detail = "max deviation " + fmt(worst);
  return r;
}

CheckResult check_gain_identity(std::uint64_t seed) {
  auto r = make("AC6", "transmission and reflection identity in the gain window");
  Sampler s(seed + 2);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double g = s.uniform(0.01, 1.0);
    const double v = s.uniform(0.01, 0.99);
    const double gap = s.log_uniform(1e-2, 5.0);
    const ShearConfig cfg = ShearConfig::symmetric(g, v, gap);
    const Side side = s.coin() ? Side::Upper : Side::Lower;
    const double kabs = s.log_uniform(1e-2, 20.0);
    const double kx = side == Side::Upper ? -kabs : kabs;
    const double omega = s.uniform(0.0, 1.0) * kabs * v / 2.0;
    if (!(omega > 0.0)) continue;
    const SpectralPoint pt{cplx{omega}, kx, s.uniform(-5.0, 5.0)};
    const auto sc = surface_coeffs(cfg, pt);
    const cplx eps = slab_eps(cfg, side, pt);
    const double k = pt.k();
    const cplx t = side == Side::Upper ? sc.t_plus * std::exp(-k * cfg.z_plus) : sc.t_minus * std::exp(k * cfg.z_minus);
    const double rim = side == Side::Upper ? sc.r_plus.imag() : sc.r_minus.imag();
    const double lhs = std::norm(t / eps) * std::abs(eps.imag());
    const double rhs = 2.0 * std::abs(rim);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  r.metrics = {{"samples", 10000}, {"max_relative_deviation", worst}, {"tolerance", 1e-12}};
  r.passed = worst < 1e-12;
  r.detail = "max relative deviation " + fmt(worst);
  return r;
}

struct IdentityStats {
  double null_friction = 0.0;
  double rotation = 0.0;
  double reciprocity = 0.0;
  int configs = 0;
};

IdentityStats green_identities(std::uint64_t seed) {
  Sampler s(seed + 3);
  IdentityStats st;
  while (st.configs < 1000) {
    const double g = s.uniform(0.05, 1.0);
    const double gap = s.log_uniform(0.05, 5.0);
    ShearConfig cfg = ShearConfig::symmetric(g, s.uniform(0.0, 0.5), gap);
    if (st.configs % 2 == 1) {
      cfg.v_upper = s.uniform(-0.3, 0.3);
      cfg.v_lower = s.uniform(-0.3, 0.3);
    }
    ScanOptions so;
    so.points = 200;
    so.exec = Execution::Serial;
    if (!max_growth(cfg, so).stable) continue;
    ++st.configs;
    const SpectralPoint pt{cplx{s.uniform(0.01, 2.0)}, s.uniform(-20.0, 20.0), s.uniform(-20.0, 20.0)};
    const double z1 = s.uniform(cfg.z_minus, cfg.z_plus);
    const double z2 = s.uniform(cfg.z_minus, cfg.z_plus);
    st.null_friction = std::max(st.null_friction, null_friction_residual(cfg, pt, z1, z2));
    const double a = s.uniform(cfg.z_minus - 1.0, cfg.z_plus + 1.0);
    const double b = s.uniform(cfg.z_minus - 1.0, cfg.z_plus + 1.0);
    st.rotation = std::max(st.rotation, rotation_identity_error(cfg, pt, a, b));
    st.reciprocity = std::max(st.reciprocity, reciprocity_identity_error(cfg, pt, a, b));
  }
  return st;
}

CheckResult check_green_identities(std::uint64_t seed, const std::string& id, bool null_part,
                                   bool symmetry_part) {
  auto r = make(id, "Green's function null-friction, rotation and reciprocity identities");
  const IdentityStats st = green_identities(seed);
  r.metrics = {{"configurations", st.configs}, {"tolerance", 1e-10}};
  bool ok = true;
  std::ostringstream d;
  if (null_part) {
    r.metrics["null_friction"] = st.null_friction;
    ok = ok && st.null_friction < 1e-10;
    d << "null " << fmt(st.null_friction) << " ";
  }
  if (symmetry_part) {
    r.metrics["rotation"] = st.rotation;
    r.metrics["reciprocity"] = st.reciprocity;
    ok = ok && st.rotation < 1e-10 && st.reciprocity < 1e-10;
    d << "rotation " << fmt(st.rotation) << " reciprocity " << fmt(st.reciprocity);
  }
  r.passed = ok;
  r.detail = d.str();
  return r;
}

CheckResult check_dual_form(Execution exec) {
  auto r = make("AC8", "force from both integrand forms");
  const std::vector<std::array<double, 3>> points = {{0.19, 0.1, 0.1}, {0.3, 0.1, 0.1}, {0.1, 0.3, 1.0}};
  json rows = json::array();
  bool ok = true;
  for (const auto& p : points) {
    ForceOptions o;
    o.rel_tol = 1e-5;
    o.exec = exec;
    const ShearConfig cfg = ShearConfig::symmetric(p[0], p[1], p[2]);
    const auto rr = total_force(cfg, o);
    o.form = IntegrandForm::Coefficient;
    const auto co = total_force(cfg, o);
    o.form = IntegrandForm::ReflectionProduct;
    o.rule = Rule::GK15;
    const auto low = total_force(cfg, o);
    const double rel = std::abs(co.value - rr.value) / std::abs(rr.value);
    const double rel_order = std::abs(low.value - rr.value) / std::abs(rr.value);
    ok = ok && rel < 1e-3 && rel_order < 1e-3;
    rows.push_back({{"gamma", p[0]}, {"v", p[1]}, {"L", p[2]}, {"F_reflection_product", rr.value},
                    {"F_coefficient", co.value}, {"F_gk15", low.value}, {"relative_difference", rel},
                    {"order_relative_difference", rel_order}});
  }
  r.metrics = {{"points", rows}, {"tolerance", 1e-3}, {"rel_tol", 1e-5}};
  r.passed = ok;
  r.detail = ok ? "forms agree at all points" : "forms disagree";
  return r;
}

CheckResult check_lossless_limit(Execution exec) {
  auto r = make("AC9", "one-slab force against the lossless weak-coupling limit");
  const double v = 0.2;
  const double gap = 2.0;
  const double ref = force_lossless_weak(v, gap);
  const double bessel = force_lossless_weak_bessel(v, gap);
  std::vector<double> gammas = {1e-2, 3e-3, 1e-3};
  std::vector<double> forces;
  std::vector<double> devs;
  for (double g : gammas) {
    ForceOptions o;
    o.exec = exec;
    const auto f = force_lower_only(g, v, gap, o);
    forces.push_back(f.value);
    devs.push_back(std::abs(f.value / ref - 1.0));
  }
  const bool monotone = devs[0] > devs[1] && devs[1] > devs[2];
  r.metrics = {{"lossless", ref},    {"lossless_bessel", bessel}, {"gammas", gammas},
               {"forces", forces},  {"relative_deviation", devs}, {"tolerance", 0.10},
               {"monotone", monotone}};
  r.passed = devs.back() < 0.10 && monotone;
  r.detail = "deviation at gamma=1e-3: " + fmt(devs.back()) + (monotone ? ", decreasing" : ", not decreasing");
  return r;
}

CheckResult check_plemelj() {
  auto r = make("AC10", "delta-function limit of Im r");
  const std::vector<double> gammas = {0.2, 0.1, 0.05, 0.02, 0.01, 0.005};
  const auto lin = plemelj_check(gammas, [](double w) { return w; });
  const auto gauss = plemelj_check(gammas, [](double w) { return std::exp(-(w - 0.3) * (w - 0.3) / 0.5); });
  double lin_ratio = 0.0;
  std::vector<double> lin_err;
  std::vector<double> gauss_err;
  for (const auto& row : lin.rows) {
    lin_ratio = std::max(lin_ratio, std::abs(row.error) / row.gamma);
    lin_err.push_back(row.error);
  }
  for (const auto& row : gauss.rows) gauss_err.push_back(row.error);
  const bool gauss_ok = gauss.monotone && std::abs(gauss.order - 1.0) < 0.2;
  const bool lin_ok = lin.monotone && lin_ratio < 1.0;
  r.metrics = {{"gammas", gammas},
               {"linear", {{"limit", lin.limit}, {"errors", lin_err}, {"max_error_over_gamma", lin_ratio}}},
               {"gaussian", {{"limit", gauss.limit}, {"errors", gauss_err}, {"order", gauss.order}}},
               {"order_tolerance", 0.2}};
  r.passed = lin_ok && gauss_ok;
  r.detail = "linear max |err|/gamma " + fmt(lin_ratio) + ", gaussian order " + fmt(gauss.order);
  return r;
}

CheckResult check_divergence(Execution exec) {
  auto r = make("AC11", "force grows towards each threshold");
  struct Sweep {
    const char* name;
    Parameter p;
    ShearConfig tmpl;
    std::vector<double> values;
  };
  const std::vector<Sweep> sweeps = {
      {"gamma", Parameter::Gamma, ShearConfig::symmetric(0.3, 0.1, 0.1), {0.30, 0.25, 0.21, 0.19, 0.185}},
      {"velocity", Parameter::Velocity, ShearConfig::symmetric(0.18, 0.1, 0.1), {0.06, 0.07, 0.08, 0.09, 0.095}},
      {"gap", Parameter::Gap, ShearConfig::symmetric(0.18, 0.1, 0.1), {0.2, 0.15, 0.12, 0.11, 0.105}}};
  bool ok = true;
  json out = json::object();
  for (const auto& s : sweeps) {
    ForceOptions o;
    o.exec = exec;
    const auto res = force_sweep(s.tmpl, s.p, s.values, o);
    std::vector<double> mags;
    bool inc = true;
    for (std::size_t i = 0; i < res.size(); ++i) {
      mags.push_back(std::abs(res[i].value));
      if (!std::isfinite(res[i].value) || (i > 0 && !(mags[i] > mags[i - 1]))) inc = false;
    }
    ok = ok && inc;
    out[s.name] = {{"values", s.values}, {"abs_force", mags}, {"increasing", inc}};
  }
  r.metrics = out;
  r.passed = ok;
  r.detail = ok ? "all three sweeps strictly increasing" : "a sweep is not strictly increasing";
  return r;
}

CheckResult check_ridges() {
  auto r = make("AC12", "spectral density ridges and window");
  const ShearConfig cfg = ShearConfig::symmetric(0.19, 0.1, 0.1);
  const StableConfig sc = certify_stable(cfg);
  const double v = 0.1;
  double worst = 0.0;
  json rows = json::array();
  for (int i = 0; i < 10; ++i) {
    const double kx = 20.0 + 2.0 * i;
    const double top = kx * v / 2.0;
    double best_w = 0.0;
    double best = -1.0;
    const int n = 20000;
    for (int j = 1; j < n; ++j) {
      const double w = top * j / n;
      const double d = std::abs(integrand_rr_form(sc, w, kx, 0.0));
      if (d > best) {
        best = d;
        best_w = w;
      }
    }
    double nearest = INFINITY;
    for (double s1 : {1.0, -1.0}) {
      for (double s2 : {1.0, -1.0}) {
        const double branch = s1 * kOmegaSp + s2 * top;
        if (branch > 0.0 && std::abs(branch - best_w) < std::abs(nearest - best_w)) nearest = branch;
      }
    }
    const double rel = std::abs(best_w - nearest) / nearest;
    worst = std::max(worst, rel);
    rows.push_back({{"kx", kx}, {"argmax_omega", best_w}, {"branch", nearest}, {"relative", rel}});
  }
  const auto grid = spectral_density_grid(cfg, 0.0, 3.0, -40.0, 40.0, 121, 161, 0.0);
  long outside = 0;
  long nonzero_outside = 0;
  for (std::size_t i = 0; i < grid.omega_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.kx_axis.size(); ++j) {
      if (grid.omega_axis[i] >= std::abs(grid.kx_axis[j]) * v / 2.0) {
        ++outside;
        if (grid.values[i][j] != 0.0) ++nonzero_outside;
      }
    }
  }
  r.metrics = {{"ridges", rows}, {"tolerance", 0.10}, {"outside_cells", outside}, {"nonzero_outside", nonzero_outside}};
  r.passed = worst < 0.10 && nonzero_outside == 0;
  r.detail = "worst ridge offset " + fmt(worst) + ", non-zero cells outside window " + std::to_string(nonzero_outside);
  return r;
}

CheckResult check_khi(std::uint64_t seed) {
  auto r = make("AC13", "Kelvin-Helmholtz correspondence");
  Sampler s(seed + 4);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double v = s.uniform(1e-3, 0.99);
    const double kx = (s.coin() ? 1.0 : -1.0) * s.log_uniform(1e-3, 1e2);
    worst = std::max(worst, correspondence_check(v, kx, {.steps = 0}).algebraic_residual);
  }
  const DriftRow d = quartic_drift(0.1, 1e-2, 1e-3, 1e-6);
  r.metrics = {{"algebraic_residual", worst},
               {"algebraic_tolerance", 1e-12},
               {"quartic", {{"v", 0.1}, {"kx", 1e-2}, {"L", 1e-3}, {"gamma", 1e-6},
                            {"roots", {{d.roots[0].real(), d.roots[0].imag()}, {d.roots[1].real(), d.roots[1].imag()}}},
                            {"targets", {{d.targets[0].real(), d.targets[0].imag()}, {d.targets[1].real(), d.targets[1].imag()}}},
                            {"relative_deviation", d.relative_deviation}}},
               {"quartic_tolerance", 0.05}};
  r.passed = worst < 1e-12 && d.relative_deviation < 0.05;
  r.detail = "algebraic " + fmt(worst) + ", quartic deviation " + fmt(d.relative_deviation);
  return r;
}

CheckResult check_sanity(Execution exec) {
  auto r = make("AC14", "static limit and force sign");
  double worst = 0.0;
  for (double g : {0.05, 0.1, 0.2, 0.3}) {
    const auto rep = max_growth(ShearConfig::symmetric(g, 0.0, 50.0));
    worst = std::max(worst, std::abs(rep.max_growth + 0.5 * g));
  }
  const auto f0 = total_force(ShearConfig::symmetric(0.2, 0.0, 0.1));
  const bool zero_ok = f0.value == 0.0 && f0.integrand_evaluations == 0;
  const std::vector<std::array<double, 3>> matrix = {
      {0.19, 0.1, 0.1}, {0.3, 0.1, 0.1}, {0.25, 0.05, 0.2}, {0.1, 0.3, 1.0}, {0.5, 0.5, 0.3}};
  std::vector<double> forces;
  bool neg = true;
  for (const auto& p : matrix) {
    ForceOptions o;
    o.exec = exec;
    const auto f = total_force(ShearConfig::symmetric(p[0], p[1], p[2]), o);
    forces.push_back(f.value);
    neg = neg && f.value < 0.0;
  }
  r.metrics = {{"static_gap", 50.0},         {"max_growth_deviation", worst}, {"tolerance", 1e-12},
               {"zero_velocity_force", f0.value}, {"zero_velocity_evaluations", f0.integrand_evaluations},
               {"matrix", matrix},           {"forces", forces}};
  r.passed = worst < 1e-12 && zero_ok && neg;
  r.detail = "max |M + gamma/2| " + fmt(worst) + (zero_ok ? ", F(v=0) = 0" : ", F(v=0) != 0") +
             (neg ? ", all forces negative" : ", a force is non-negative");
  return r;
}

template <typename Fn>
CheckResult timed(Fn&& fn, const std::string& id) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r = make(id, "check aborted");
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

int acceptance_count() { return 14; }

CheckResult run_acceptance(int number, const VerifyOptions& opts) {
  const std::string id = "AC" + std::to_string(number);
  const auto seed = opts.seed;
  const auto exec = opts.exec;
  switch (number) {
    case 1: return timed([] { return check_critical_gamma(); }, id);
    case 2: return timed([] { return check_critical_triple(); }, id);
    case 3: return timed([&] { return check_estimate(exec); }, id);
    case 4: return timed([&] { return check_v0_roots(seed); }, id);
    case 5: return timed([&] { return check_gamma0_roots(seed); }, id);
    case 6: return timed([&] { return check_gain_identity(seed); }, id);
    case 7: return timed([&] { return check_green_identities(seed, "AC7", true, true); }, id);
    case 8: return timed([&] { return check_dual_form(exec); }, id);
    case 9: return timed([&] { return check_lossless_limit(exec); }, id);
    case 10: return timed([] { return check_plemelj(); }, id);
    case 11: return timed([&] { return check_divergence(exec); }, id);
    case 12: return timed([] { return check_ridges(); }, id);
    case 13: return timed([&] { return check_khi(seed); }, id);
    case 14: return timed([&] { return check_sanity(exec); }, id);
    default: raise(ErrorKind::Domain, "no acceptance criterion " + id);
  }
}

std::vector<std::string> suite_names() {
  return {"appendix-e", "null-friction", "reciprocity", "v0-roots", "gamma0-roots",
          "dual-form",  "lossless-limit", "plemelj",    "khi"};
}

CheckResult run_suite(const std::string& name, const VerifyOptions& opts) {
  const auto seed = opts.seed;
  const auto exec = opts.exec;
  CheckResult r;
  if (name == "appendix-e") {
    r = timed([&] { return check_gain_identity(seed); }, name);
  } else if (name == "null-friction") {
    r = timed([&] { return check_green_identities(seed, name, true, false); }, name);
  } else if (name == "reciprocity") {
    r = timed([&] { return check_green_identities(seed, name, false, true); }, name);
  } else if (name == "v0-roots") {
    r = timed([&] { return check_v0_roots(seed); }, name);
  } else if (name == "gamma0-roots") {
    r = timed([&] { return check_gamma0_roots(seed); }, name);
  } else if (name == "dual-form") {
    r = timed([&] { return check_dual_form(exec); }, name);
  } else if (name == "lossless-limit") {
    r = timed([&] { return check_lossless_limit(exec); }, name);
  } else if (name == "plemelj") {
    r = timed([] { return check_plemelj(); }, name);
  } else if (name == "khi") {
    r = timed([&] { return check_khi(seed); }, name);
  } else {
    raise(ErrorKind::Domain, "unknown verify suite '" + name + "'");
  }
  r.id = name;
  return r;
}

json to_json(const CheckResult& r) {
  return {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
          {"metrics", r.metrics}, {"seconds", r.seconds}};
}

}  // namespace qfl
