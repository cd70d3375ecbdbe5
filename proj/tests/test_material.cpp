#include <cmath>

#include "qfl/material.hpp"
#include "test_support.hpp"

using namespace qfl;
using test::uniform;

TEST_SUITE("material") {

TEST_CASE("drude permittivity at the plasma and surface plasmon frequencies") {
  CHECK(std::abs(drude_eps({0.0}, 1.0)) < 1e-15);
  const cplx eps_sp = drude_eps({1e-12}, kOmegaSp);
  CHECK(eps_sp.real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(eps_sp.imag()) < 1e-10);
}

TEST_CASE("conjugation symmetry") {
  const cplx w{0.5, 0.0};
  CHECK(test::rel_diff(drude_eps({0.1}, -std::conj(w)), std::conj(drude_eps({0.1}, w))) < 1e-15);
  for (int i = 0; i < 1000; ++i) {
    const cplx z{uniform(-3, 3), uniform(-1, 1)};
    const double g = uniform(0, 0.5);
    if (std::abs(z) < 1e-3 || std::abs(z + kI * g) < 1e-3) continue;
    CHECK(test::rel_diff(drude_eps({g}, -std::conj(z)), std::conj(drude_eps({g}, z))) < 1e-13);
  }
}

TEST_CASE("pole guard") {
  CHECK(test::error_kind_of([] { drude_eps({0.1}, 0.0); }) == ErrorKind::Pole);
  CHECK(test::error_kind_of([] { drude_eps({0.1}, cplx{0.0, -0.1}); }) == ErrorKind::Pole);
  const ShearConfig cfg = ShearConfig::symmetric(0.1, 0.2, 0.1);
  // rest-frame frequency 0.1 - 1 * 0.1 = 0 for the lower slab
  CHECK(test::error_kind_of([&] { slab_eps(cfg, Side::Lower, {0.1, 1.0, 0.0}); }) ==
        ErrorKind::Pole);
}

TEST_CASE("passivity at rest and high-frequency bound") {
  const ShearConfig rest = ShearConfig::symmetric(0.05, 0.0, 0.1);
  for (int i = 0; i < 1000; ++i) {
    const SpectralPoint pt{uniform(1e-3, 5.0), uniform(-20, 20), 0.0};
    CHECK(slab_eps(rest, Side::Upper, pt).imag() > 0.0);
    CHECK(slab_eps(rest, Side::Lower, pt) == drude_eps(rest.drude, pt.omega));
  }
  for (int i = 0; i < 1000; ++i) {
    const double r = uniform(10, 1e4), phi = uniform(-kPi, kPi);
    const cplx w = std::polar(r, phi);
    CHECK(std::abs(drude_eps({uniform(0, 1)}, w) - 1.0) <= 2.0 / (r * r));
  }
}

TEST_CASE("doppler shifts and gain") {
  const ShearConfig cfg = ShearConfig::symmetric(0.1, 0.1, 0.1);
  CHECK(cfg.v_upper == -0.05);
  CHECK(cfg.v_lower == 0.05);
  CHECK(cfg.z_minus == -0.05);
  CHECK(cfg.z_plus == 0.05);
  CHECK(doppler_frequency(cfg, Side::Upper, {0.01, -1.0, 0.0}).real() == doctest::Approx(-0.04));
  CHECK(slab_eps(cfg, Side::Upper, {0.01, -1.0, 0.0}).imag() < 0.0);
  CHECK(is_gain(cfg, Side::Upper, {0.04, -1.0, 0.0}));
  CHECK_FALSE(is_gain(cfg, Side::Upper, {0.06, -1.0, 0.0}));

  for (int i = 0; i < 200; ++i) {
    const double w = uniform(1e-3, 2), kx = uniform(-30, 30);
    if (std::abs(w - kx * 0.05) < 1e-6 || std::abs(w + kx * 0.05) < 1e-6) continue;
    CHECK(test::rel_diff(slab_eps(cfg, Side::Lower, {w, kx, 0.3}),
                         slab_eps(cfg, Side::Upper, {w, -kx, 0.3})) < 1e-15);
  }
}

TEST_CASE("gain test agrees with the closed-form window") {
  const ShearConfig cfg = ShearConfig::symmetric(0.2, 0.3, 0.5);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const double w = uniform(1e-4, 4), kx = uniform(-40, 40);
    for (Side s : {Side::Upper, Side::Lower}) {
      if (std::abs(w - kx * cfg.velocity(s)) < 1e-9) continue;
      if (is_gain(cfg, s, {w, kx, 0.0}) != in_gain_window(cfg, s, w, kx)) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
  const ShearConfig rest = ShearConfig::symmetric(0.2, 0.0, 0.5);
  CHECK_FALSE(is_gain(rest, Side::Upper, {0.3, 5.0, 0.0}));
  CHECK(test::error_kind_of([&] { is_gain(cfg, Side::Upper, {cplx{0.3, 0.1}, 5.0, 0.0}); }) ==
        ErrorKind::Domain);
}

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(ShearConfig::symmetric(0.1, 1.9, 0.1).validate());
  CHECK(test::error_kind_of([] { ShearConfig::symmetric(0.1, 2.0, 0.1).validate(); }) ==
        ErrorKind::Domain);
  CHECK(test::error_kind_of([] { ShearConfig::symmetric(-0.1, 0.1, 0.1).validate(); }) ==
        ErrorKind::Domain);
  CHECK(test::error_kind_of([] { ShearConfig::symmetric(0.1, 0.1, 0.0).validate(); }) ==
        ErrorKind::Domain);
  const ShearConfig lo = ShearConfig::lower_only(0.1, 0.4, 2.0);
  CHECK(lo.v_upper == 0.0);
  CHECK(lo.v_lower == 0.4);
  CHECK(lo.gap() == doctest::Approx(2.0));
  const ShearConfig d = lo.dual();
  CHECK(d.v_lower == -0.4);
  CHECK(d.gap() == lo.gap());
}

}
