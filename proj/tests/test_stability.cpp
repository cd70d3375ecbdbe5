#include <algorithm>
#include <cmath>

#include "qfl/scattering.hpp"
#include "qfl/stability.hpp"
#include "test_support.hpp"

using namespace qfl;
using test::uniform;

namespace {

double nearest(const RootSet& rs, cplx target) {
  double best = INFINITY;
  for (cplx r : rs.roots) best = std::min(best, std::abs(r - target));
  return best;
}

}  // namespace

TEST_SUITE("stability") {

TEST_CASE("roots at rest match the completed-square quadratics") {
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double g = uniform(0.01, 0.6), L = uniform(0.05, 3), kx = uniform(0.05, 30);
    const double e = std::exp(-kx * L);
    const double lo = kOmegaSp * kOmegaSp * (1 - e) - g * g / 4;
    if (lo <= 1e-6) continue;
    const auto rs = solve_roots(ShearConfig::symmetric(g, 0.0, L), kx, 0.0);
    for (double sgn : {1.0, -1.0}) {
      const double d = std::sqrt(kOmegaSp * kOmegaSp * (1 + sgn * e) - g * g / 4);
      CHECK(nearest(rs, cplx{d, -g / 2}) < 1e-9);
      CHECK(nearest(rs, cplx{-d, -g / 2}) < 1e-9);
    }
    for (cplx r : rs.roots) CHECK(std::abs(r.imag() + g / 2) < 1e-9);
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("lossless roots match the dispersion relation") {
  for (int i = 0; i < 300; ++i) {
    const double v = uniform(0, 0.8), L = uniform(0.05, 2), kx = uniform(0.1, 30);
    const auto rs = solve_roots(ShearConfig::symmetric(0.0, v, L), kx, 0.0);
    const auto m = lossless_dispersion(v, L, kx, 0.0);
    for (cplx w : {m.omega_plus, -m.omega_plus, m.omega_minus, -m.omega_minus}) {
      CHECK(nearest(rs, w) < 1e-9 * std::max(1.0, std::abs(w)) + 1e-7);
    }
  }
}

TEST_CASE("root sets are sorted with small residuals") {
  const auto rs = solve_roots(ShearConfig::symmetric(0.19, 0.1, 0.1), 14.0, 0.0);
  for (int i = 0; i < 3; ++i) {
    const cplx a = rs.roots[i], b = rs.roots[i + 1];
    CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
  }
  for (double r : rs.residuals) CHECK(r < 1e-10);
}

TEST_CASE("growth rate examples") {
  const auto rest = max_growth(ShearConfig::symmetric(0.2, 0.0, 50.0));
  CHECK(rest.max_growth == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(rest.stable);
  const auto s = max_growth(ShearConfig::symmetric(0.19, 0.1, 0.1));
  CHECK(s.max_growth < 0.0);
  CHECK(s.stable);
  const auto u = max_growth(ShearConfig::symmetric(0.15, 0.1, 0.1));
  CHECK(u.max_growth > 0.0);
  CHECK_FALSE(u.stable);
  CHECK(u.argmax_kx > u.kx_min);
  CHECK(u.argmax_kx < u.kx_max);
  const auto u_root = solve_roots(ShearConfig::symmetric(0.15, 0.1, 0.1), u.argmax_kx, 0.0);
  CHECK(u_root.max_imag() == doctest::Approx(u.max_growth).epsilon(1e-9));
}

TEST_CASE("scan range defaults") {
  CHECK(default_kx_max(ShearConfig::symmetric(0.1, 0.1, 0.1)) == doctest::Approx(120.0));
  CHECK(default_kx_max(ShearConfig::symmetric(0.1, 0.1, 2.0)) ==
        doctest::Approx(8 * kOmegaSp / 0.1));
  CHECK(default_kx_max(ShearConfig::symmetric(0.1, 0.0, 2.0)) == doctest::Approx(6.0));
}

TEST_CASE("parallel and serial scans agree bitwise") {
  ScanOptions ser, par;
  ser.exec = Execution::Serial;
  par.exec = Execution::Parallel;
  const ShearConfig cfg = ShearConfig::symmetric(0.17, 0.1, 0.1);
  const auto a = max_growth(cfg, ser), b = max_growth(cfg, par);
  CHECK(a.max_growth == b.max_growth);
  CHECK(a.argmax_kx == b.argmax_kx);
}

TEST_CASE("root loci") {
  const auto stable = root_locus(ShearConfig::symmetric(0.3, 0.1, 0.1), 0.5, 40.0, 200);
  REQUIRE(stable.size() == 200);
  for (const auto& p : stable) CHECK(p.roots.max_imag() < 0.0);

  const auto unstable = root_locus(ShearConfig::symmetric(0.1, 0.1, 0.1), 0.5, 40.0, 200);
  bool grows = false;
  for (const auto& p : unstable) grows = grows || p.roots.max_imag() > 0.0;
  CHECK(grows);

  // consecutive matched roots move by a bounded multiple of the local rate
  const double dk = (40.0 - 0.5) / 199;
  for (std::size_t s = 2; s < stable.size(); ++s) {
    for (int b = 0; b < 4; ++b) {
      cplx cur{}, prev{}, prev2{};
      for (int i = 0; i < 4; ++i) {
        if (stable[s].branch[i] == b) cur = stable[s].roots.roots[i];
        if (stable[s - 1].branch[i] == b) prev = stable[s - 1].roots.roots[i];
        if (stable[s - 2].branch[i] == b) prev2 = stable[s - 2].roots.roots[i];
      }
      const double rate = std::abs(prev - prev2) / dk;
      CHECK(std::abs(cur - prev) <= 10.0 * dk * std::max(rate, 1e-3));
    }
  }
  CHECK(test::error_kind_of([] { root_locus(ShearConfig::symmetric(0.3, 0.1, 0.1), 2.0, 1.0, 10); }) ==
        ErrorKind::Domain);
}

TEST_CASE("critical values close the loop") {
  const auto g = critical_gamma(0.1, 0.1);
  CHECK(g.value == doctest::Approx(0.18).epsilon(0.02));
  CHECK(g.bracket[1] - g.bracket[0] <= 1e-4);
  CHECK(max_growth(ShearConfig::symmetric(g.bracket[0], 0.1, 0.1)).max_growth > 0.0);
  CHECK(max_growth(ShearConfig::symmetric(g.bracket[1], 0.1, 0.1)).max_growth < 0.0);
  CHECK(std::abs(critical_gamma_estimate(0.1, 0.1) / g.value - 1.0) < 0.05);
  CHECK(critical_velocity(0.18, 0.1).value == doctest::Approx(0.1).epsilon(0.02));
  CHECK(critical_gap(0.18, 0.1).value == doctest::Approx(0.1).epsilon(0.02));
  CHECK(test::error_kind_of([] { critical_gamma(0.02, 0.1); }) == ErrorKind::NoSignChange);
}

TEST_CASE("threshold depends on v and L only through their ratio") {
  const double a = critical_gamma(0.1, 0.1).value;
  const double b = critical_gamma(0.2, 0.2).value;
  CHECK(std::abs(a - b) < 2e-4);
}

TEST_CASE("stability diagram") {
  const std::vector<double> vs = {0.06, 0.1, 0.14};
  const std::vector<double> ls = {0.08, 0.1, 0.14};
  const auto par = stability_diagram(vs, ls, {}, Execution::Parallel);
  const auto ser = stability_diagram(vs, ls, {}, Execution::Serial);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) {
      CHECK(par.cells[i][j].gamma_cr == ser.cells[i][j].gamma_cr);
      CHECK(par.cells[i][j].status == CellStatus::Ok);
      if (j > 0) CHECK(par.cells[i][j].gamma_cr >= par.cells[i][j - 1].gamma_cr);
      if (i > 0) CHECK(par.cells[i][j].gamma_cr <= par.cells[i - 1][j].gamma_cr);
    }
  }
  CHECK(par.cells[1][1].gamma_cr == doctest::Approx(0.18).epsilon(0.02));
  const DiagramCell quiet = diagram_cell(0.01, 0.5);
  CHECK(quiet.status == CellStatus::NoSignChange);
  CHECK_FALSE(quiet.message.empty());
}

TEST_CASE("parameter names") {
  CHECK(parameter_from_string("v") == Parameter::Velocity);
  CHECK(parameter_from_string("L") == Parameter::Gap);
  CHECK(std::string(to_string(Parameter::Gamma)) == "gamma");
  CHECK(test::error_kind_of([] { parameter_from_string("temperature"); }) == ErrorKind::Domain);
}

}
