#include <algorithm>
#include <cmath>

#include "qfl/polynomial.hpp"
#include "qfl/scattering.hpp"
#include "qfl/stability.hpp"
#include "test_support.hpp"

using namespace qfl;
using test::uniform;

TEST_SUITE("scattering") {

TEST_CASE("surface coefficients at the plasma frequency and far above it") {
  const ShearConfig cfg = ShearConfig::symmetric(0.0, 0.0, 0.4);
  const SpectralPoint pt{1.0, 2.0, 1.0};
  const SurfaceCoefficients s = surface_coeffs(cfg, pt);
  CHECK(std::abs(s.r_plus - std::exp(-2.0 * pt.k() * cfg.z_plus)) < 1e-14);
  CHECK(std::abs(s.r_minus - std::exp(2.0 * pt.k() * cfg.z_minus)) < 1e-14);
  CHECK(std::abs(s.t_plus) < 1e-15);
  const SurfaceCoefficients far = surface_coeffs(cfg, {1e7, 2.0, 1.0});
  CHECK(std::abs(far.r_plus) < 1e-13);
  CHECK(std::abs(far.t_plus - 1.0) < 1e-13);
}

TEST_CASE("surface resonance guard") {
  const ShearConfig cfg = ShearConfig::symmetric(0.0, 0.0, 0.4);
  CHECK(test::error_kind_of([&] { surface_coeffs(cfg, {kOmegaSp, 1.0, 0.0}); }) ==
        ErrorKind::Resonance);
  CHECK(test::error_kind_of([&] { characteristic_value(cfg, {kOmegaSp, 1.0, 0.0}); }) ==
        ErrorKind::Resonance);
}

TEST_CASE("imaginary part of the reflection coefficient") {
  for (int i = 0; i < 1000; ++i) {
    const ShearConfig cfg = ShearConfig::symmetric(uniform(0.01, 0.5), uniform(0, 0.9), uniform(0.05, 2));
    const SpectralPoint pt{uniform(0.01, 2), uniform(-30, 30), uniform(-5, 5)};
    const SurfaceCoefficients s = surface_coeffs(cfg, pt);
    const cplx ep = slab_eps(cfg, Side::Upper, pt), em = slab_eps(cfg, Side::Lower, pt);
    const double k = pt.k();
    const double ip = -2.0 * ep.imag() / std::norm(1.0 + ep) * std::exp(-2 * k * cfg.z_plus);
    const double im = -2.0 * em.imag() / std::norm(1.0 + em) * std::exp(2 * k * cfg.z_minus);
    CHECK(std::abs(s.r_plus.imag() - ip) <= 1e-12 * std::max(std::abs(ip), 1e-300) + 1e-300);
    CHECK(std::abs(s.r_minus.imag() - im) <= 1e-12 * std::max(std::abs(im), 1e-300) + 1e-300);
  }
}

TEST_CASE("characteristic value limits") {
  const ShearConfig far = ShearConfig::symmetric(0.1, 0.2, 200.0);
  CHECK(std::abs(characteristic_value(far, {0.4, 1.0, 0.0}) - 1.0) < 1e-15);
  const double L = 0.3, k = 2.0;
  const ShearConfig rest = ShearConfig::symmetric(0.0, 0.0, L);
  const double w = kOmegaSp * std::sqrt(1.0 + std::exp(-k * L));
  CHECK(std::abs(characteristic_value(rest, {w, k, 0.0})) < 1e-12);
}

TEST_CASE("quartic equals characteristic value times prefactor") {
  for (int i = 0; i < 500; ++i) {
    const ShearConfig cfg = ShearConfig::symmetric(uniform(0.01, 0.5), uniform(0, 0.9), uniform(0.05, 2));
    const double kx = uniform(-30, 30), ky = uniform(-3, 3);
    const SpectralPoint pt{cplx{uniform(-2, 2), uniform(-0.5, 0.5)}, kx, ky};
    const QuarticPoly q = quartic_poly(cfg, kx, ky);
    CHECK(q.c[4] == cplx{4.0});
    const cplx lhs = q(pt.omega);
    const cplx rhs = characteristic_value(cfg, pt) * quartic_prefactor(cfg, pt);
    CHECK(std::abs(lhs - rhs) < 1e-11 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("quartic factorises at rest") {
  const double g = 0.13, L = 0.4, kx = 3.0;
  const ShearConfig cfg = ShearConfig::symmetric(g, 0.0, L);
  const QuarticPoly q = quartic_poly(cfg, kx, 0.0);
  const double e = std::exp(-kx * L);
  for (double sgn : {1.0, -1.0}) {
    const cplx disc = std::sqrt(cplx{kOmegaSp * kOmegaSp * (1 + sgn * e) - g * g / 4});
    for (cplx root : {-kI * g / 2.0 + disc, -kI * g / 2.0 - disc}) {
      CHECK(std::abs(q(root)) / q.scale() < 1e-14);
    }
  }
}

TEST_CASE("decoupled lossless surfaces give double plasmon roots") {
  const ShearConfig cfg = ShearConfig::symmetric(0.0, 0.0, 100.0);
  const auto roots = solve_roots(cfg, 1.0, 0.0);
  for (cplx r : roots.roots) CHECK(std::abs(std::abs(r) - kOmegaSp) < 1e-7);
}

TEST_CASE("lossless dispersion") {
  const auto m = lossless_dispersion(0.0, 0.5, 2.0, 0.0);
  const double e = std::exp(-2.0 * 0.5);
  CHECK(m.omega_plus.real() == doctest::Approx(kOmegaSp * std::sqrt(1 + e)));
  CHECK(m.omega_minus.real() == doctest::Approx(kOmegaSp * std::sqrt(1 - e)));
  const auto far = lossless_dispersion(0.0, 500.0, 2.0, 0.0);
  CHECK(far.omega_plus.real() == doctest::Approx(kOmegaSp));
  for (int i = 0; i < 500; ++i) {
    const double v = uniform(0, 0.9), L = uniform(0.02, 2), kx = uniform(-30, 30), ky = uniform(-3, 3);
    const auto modes = lossless_dispersion(v, L, kx, ky);
    const QuarticPoly q = quartic_poly(ShearConfig::symmetric(0.0, v, L), kx, ky);
    for (cplx w : {modes.omega_plus, -modes.omega_plus, modes.omega_minus, -modes.omega_minus}) {
      CHECK(std::abs(q(w)) / q.scale() < 1e-9);
    }
  }
  CHECK(test::error_kind_of([] { lossless_dispersion(0.1, 0.0, 1.0, 0.0); }) == ErrorKind::Domain);
}

TEST_CASE("kx mirror of the root set") {
  for (int i = 0; i < 100; ++i) {
    const ShearConfig cfg = ShearConfig::symmetric(uniform(0.01, 0.4), uniform(0.01, 0.5), uniform(0.05, 1));
    const double kx = uniform(0.1, 30);
    const auto a = solve_roots(cfg, kx, 0.0);
    const auto b = solve_roots(cfg, -kx, 0.0);
    for (cplx r : a.roots) {
      double best = INFINITY;
      for (cplx s : b.roots) best = std::min(best, std::abs(-std::conj(r) - s));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("growth and critical velocity estimates") {
  CHECK(growth_estimate(0.1, 0.1) == doctest::Approx(0.17191).epsilon(1e-4));
  CHECK(growth_estimate(1e-4, 0.1) < 1e-300);
  CHECK(growth_estimate(0.2, 0.1) > growth_estimate(0.1, 0.1));
  CHECK(growth_estimate(0.1, 0.2) < growth_estimate(0.1, 0.1));
  CHECK(critical_velocity_estimate(kOmegaSp * std::exp(-2.0)) == doctest::Approx(1.0));
  const double vbar = critical_velocity_estimate(0.18);
  CHECK(vbar == doctest::Approx(-2.0 / std::log(0.18 / kOmegaSp)).epsilon(1e-15));
  CHECK(vbar == doctest::Approx(1.4622).epsilon(1e-3));
  CHECK(std::exp(-2.0 / vbar) == doctest::Approx(0.18 / kOmegaSp).epsilon(1e-15));
  CHECK(test::error_kind_of([] { critical_velocity_estimate(kOmegaSp); }) == ErrorKind::Domain);
  CHECK(test::error_kind_of([] { growth_estimate(0.0, 0.1); }) == ErrorKind::Domain);
}

TEST_CASE("polynomial roots") {
  const std::vector<cplx> c = {-6.0, 11.0, -6.0, 1.0};
  auto roots = polynomial_roots(c);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  for (int i = 0; i < 3; ++i) CHECK(std::abs(roots[i] - cplx(i + 1.0)) < 1e-13);
  const std::vector<cplx> bad = {1.0, 2.0, 0.0};
  CHECK(test::error_kind_of([&] { polynomial_roots(bad); }) == ErrorKind::Domain);
  const auto pv = evaluate_poly(c, cplx{2.0, 1.0});
  CHECK(std::abs(pv.derivative - (3.0 * std::pow(cplx{2.0, 1.0}, 2) - 12.0 * cplx{2.0, 1.0} + 11.0)) < 1e-13);
}

}
