#include <cmath>

#include "qfl/force.hpp"
#include "qfl/material.hpp"
#include "test_support.hpp"

using namespace qfl;
using test::uniform;

TEST_SUITE("force") {

TEST_CASE("integrands vanish outside the gain windows and at rest") {
  const StableConfig sc = certify_stable(ShearConfig::symmetric(0.19, 0.1, 0.1));
  for (int i = 0; i < 1000; ++i) {
    const double kx = uniform(-40, 40), w = std::abs(kx) * 0.05 + uniform(1e-9, 2);
    CHECK(integrand_rr_form(sc, w, kx, uniform(-5, 5)) == 0.0);
    CHECK(integrand_coeff_form(sc, w, kx, uniform(-5, 5)) == 0.0);
  }
  const StableConfig rest = certify_stable(ShearConfig::symmetric(0.19, 0.0, 0.1));
  CHECK(integrand_rr_form(rest, 0.3, 10.0, 0.0) == 0.0);
}

TEST_CASE("both integrand forms agree and carry drag") {
  const StableConfig sc = certify_stable(ShearConfig::symmetric(0.19, 0.1, 0.1));
  for (int i = 0; i < 10000; ++i) {
    const double kx = uniform(-40, 40), ky = uniform(-5, 5);
    const double w = uniform(0.0, 1.0) * std::abs(kx) * 0.05;
    if (!(w > 0.0)) continue;
    const double a = integrand_rr_form(sc, w, kx, ky), b = integrand_coeff_form(sc, w, kx, ky);
    CHECK(a <= 0.0);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a) + 1e-300);
    CHECK(integrand_rr_form(sc, w, -kx, ky) == doctest::Approx(a).epsilon(1e-13));
  }
}

TEST_CASE("coupling decays with the gap") {
  const StableConfig a = certify_stable(ShearConfig::symmetric(0.3, 0.3, 1.0));
  const StableConfig b = certify_stable(ShearConfig::symmetric(0.3, 0.3, 2.0));
  const double kx = 4.0, w = 0.5;
  CHECK(integrand_rr_form(b, w, kx, 0.0) / integrand_rr_form(a, w, kx, 0.0) ==
        doctest::Approx(std::exp(-2 * kx)).epsilon(0.05));
}

TEST_CASE("unstable systems are refused") {
  const ShearConfig cfg = ShearConfig::symmetric(0.15, 0.1, 0.1);
  CHECK(test::error_kind_of([&] { certify_stable(cfg); }) == ErrorKind::UnstableRegime);
  CHECK(test::error_kind_of([&] { total_force(cfg); }) == ErrorKind::UnstableRegime);
  CHECK(test::error_kind_of([&] { spectral_density_grid(cfg, 0, 1, -10, 10, 5, 5, 0.0); }) ==
        ErrorKind::UnstableRegime);
  try {
    certify_stable(cfg);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("steady state") != std::string::npos);
  }
}

TEST_CASE("spectral density grid") {
  const auto grid = spectral_density_grid(ShearConfig::symmetric(0.19, 0.1, 0.1), 0.0, 2.0, -40, 40, 41, 81, 0.0);
  for (std::size_t i = 0; i < grid.omega_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.kx_axis.size(); ++j) {
      if (grid.omega_axis[i] >= std::abs(grid.kx_axis[j]) * 0.05) CHECK(grid.values[i][j] == 0.0);
      CHECK(grid.values[i][j] == doctest::Approx(grid.values[i][grid.kx_axis.size() - 1 - j]).epsilon(1e-12));
    }
  }
  CHECK(test::error_kind_of([] { spectral_density_grid(ShearConfig::symmetric(0.19, 0.1, 0.1), 1, 0, -1, 1, 4, 4, 0.0); }) ==
        ErrorKind::Domain);
}

TEST_CASE("total force") {
  const auto rest = total_force(ShearConfig::symmetric(0.19, 0.0, 0.1));
  CHECK(rest.value == 0.0);
  CHECK(rest.integrand_evaluations == 0);

  const auto f = total_force(ShearConfig::symmetric(0.19, 0.1, 0.1));
  CHECK(f.value == doctest::Approx(-7.53418).epsilon(1e-4));
  CHECK(f.abs_error_estimate <= 1e-4 * std::abs(f.value));
  CHECK(f.regime == Regime::Stable);

  ForceOptions o;
  o.rule = Rule::GK15;
  o.use_mirror = false;
  CHECK(total_force(ShearConfig::symmetric(0.19, 0.1, 0.1), o).value == doctest::Approx(f.value).epsilon(2e-4));

  ForceOptions ser;
  ser.exec = Execution::Serial;
  CHECK(total_force(ShearConfig::symmetric(0.19, 0.1, 0.1), ser).value == f.value);
}

TEST_CASE("near-critical runs carry a warning") {
  const auto f = total_force(ShearConfig::symmetric(0.185, 0.1, 0.1));
  CHECK(f.near_critical);
  CHECK_FALSE(f.warnings.empty());
  CHECK(f.value < 0.0);
}

TEST_CASE("sweeps report failures in band") {
  const auto rows = force_sweep(ShearConfig::symmetric(0.0, 0.1, 0.1), Parameter::Gamma, {0.15, 0.3});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].regime == Regime::UnstableRejected);
  CHECK(std::isnan(rows[0].value));
  CHECK_FALSE(rows[0].message.empty());
  CHECK(rows[1].regime == Regime::Stable);
  CHECK(rows[1].value < 0.0);
}

TEST_CASE("one moving slab") {
  CHECK(force_lower_only(0.1, 0.0, 1.0).value == 0.0);
  const auto a = force_lower_only(0.1, 0.2, 1.0);
  const auto b = total_force(ShearConfig::lower_only(0.1, 0.2, 1.0));
  CHECK(a.value < 0.0);
  CHECK(a.value == doctest::Approx(b.value).epsilon(2e-4));
}

TEST_CASE("lossless weak-coupling limit") {
  for (double v : {0.1, 0.3, 0.6}) {
    for (double L : {0.5, 2.0, 5.0}) {
      const double f = force_lossless_weak(v, L);
      CHECK(f < 0.0);
      CHECK(f == doctest::Approx(force_lossless_weak_bessel(v, L)).epsilon(1e-8));
    }
  }
  const double v = 0.05;
  const double slope = std::log(std::abs(force_lossless_weak(v, 3.0) / force_lossless_weak(v, 2.0)));
  CHECK(slope == doctest::Approx(-4 * kOmegaSp / v).epsilon(0.02));
}

TEST_CASE("delta-pair limit of the bare reflection") {
  const auto one = plemelj_check({1e-1, 1e-2, 1e-3}, [](double) { return 1.0; });
  CHECK(one.limit == 0.0);
  for (const auto& row : one.rows) CHECK(std::abs(row.integral) < 1e-8);
  const auto gauss = plemelj_check({1e-1, 3e-2, 1e-2, 3e-3}, [](double w) { return std::exp(-(w - 0.3) * (w - 0.3)); });
  CHECK(gauss.monotone);
  CHECK(gauss.order == doctest::Approx(1.0).epsilon(0.2));
  const auto lin = plemelj_check({1e-1, 1e-2}, [](double w) { return w; });
  CHECK(lin.limit == doctest::Approx(-kPi * kOmegaSp * kOmegaSp));
}

}
