#include <cmath>

#include "qfl/greens.hpp"
#include "qfl/scattering.hpp"
#include "test_support.hpp"

using namespace qfl;
using test::uniform;

namespace {

struct Sample {
  ShearConfig cfg;
  SpectralPoint pt;
  double z1, z2;
};

Sample stable_sample() {
  const double gamma = uniform(0.2, 0.6), v = uniform(0.0, 0.1), L = uniform(0.1, 1.0);
  Sample s{ShearConfig::symmetric(gamma, v, L), {uniform(0.01, 2.0), uniform(-20, 20), uniform(-5, 5)}, 0, 0};
  s.z1 = uniform(s.cfg.z_minus, s.cfg.z_plus);
  s.z2 = uniform(s.cfg.z_minus, s.cfg.z_plus);
  return s;
}

}  // namespace

TEST_SUITE("greens") {

TEST_CASE("upper-source kernel matches the multiple-reflection closed form") {
  for (int i = 0; i < 200; ++i) {
    const ShearConfig cfg = ShearConfig::symmetric(uniform(0.05, 0.5), uniform(0, 0.5), uniform(0.05, 1));
    const SpectralPoint pt{uniform(0.01, 2), uniform(-20, 20), uniform(-3, 3)};
    const double z1 = uniform(cfg.z_minus, cfg.z_plus), z2 = cfg.z_plus + uniform(0, 0.5);
    const SurfaceCoefficients s = surface_coeffs(cfg, pt);
    const double k = pt.k();
    const cplx expect = s.t_plus * (1.0 + s.r_minus * std::exp(-2 * k * z1)) * std::exp(k * (z1 - z2)) /
                        (2 * k * (1.0 - s.r_plus * s.r_minus));
    CHECK(test::rel_diff(scalar_g(cfg, pt, z1, z2, Side::Upper), expect) < 1e-12);
  }
}

TEST_CASE("decoupled and free-space limits") {
  const ShearConfig far = ShearConfig::symmetric(0.2, 0.1, 60.0);
  const SpectralPoint pt{0.5, 2.0, 1.0};
  const double k = pt.k();
  const double z1 = far.z_minus + 0.1, z2 = far.z_minus - 0.2;
  const cplx t_minus = surface_coeffs(far, pt).t_minus;
  CHECK(test::rel_diff(scalar_g(far, pt, z1, z2, Side::Lower),
                       t_minus * std::exp(-k * (z1 - z2)) / (2 * k)) < 1e-12);

  const ShearConfig cfg = ShearConfig::symmetric(0.2, 0.1, 0.5);
  const SpectralPoint hf{1e7, 2.0, 1.0};
  const double a = 0.1, b = cfg.z_plus + 0.3;
  CHECK(test::rel_diff(scalar_g(cfg, hf, a, b, Side::Upper), std::exp(-k * std::abs(a - b)) / (2 * k)) < 1e-12);
}

TEST_CASE("kernel solves the Laplace equation in the gap") {
  const ShearConfig cfg = ShearConfig::symmetric(0.25, 0.05, 0.6);
  const SpectralPoint pt{0.4, 3.0, 1.5};
  const double k = pt.k(), h = 1e-4, z2 = cfg.z_plus + 0.2;
  for (double z : {-0.2, 0.0, 0.15}) {
    const cplx c = potential_kernel(cfg, pt, z, z2);
    const cplx lap = (potential_kernel(cfg, pt, z + h, z2) - 2.0 * c + potential_kernel(cfg, pt, z - h, z2)) / (h * h);
    CHECK(std::abs(lap - k * k * c) / (k * k * std::abs(c)) < 1e-6);
  }
}

TEST_CASE("interface continuity and flux matching") {
  const ShearConfig cfg = ShearConfig::symmetric(0.25, 0.05, 0.6);
  const SpectralPoint pt{0.4, 3.0, 1.5};
  const double h = 1e-7, z2 = cfg.z_plus + 0.2, zi = cfg.z_minus;
  const cplx below = potential_kernel(cfg, pt, zi - h, z2);
  const cplx above = potential_kernel(cfg, pt, zi + h, z2);
  CHECK(test::rel_diff(below, above) < 1e-5);
  const cplx d_below = (below - potential_kernel(cfg, pt, zi - 2 * h, z2)) / h;
  const cplx d_above = (potential_kernel(cfg, pt, zi + 2 * h, z2) - above) / h;
  CHECK(test::rel_diff(slab_eps(cfg, Side::Lower, pt) * d_below, d_above) < 1e-5);
}

TEST_CASE("ky = 0 removes the mixed y entries") {
  const ShearConfig cfg = ShearConfig::symmetric(0.3, 0.1, 0.2);
  const Matrix3 m = dyadic_green(cfg, {0.6, 4.0, 0.0}, 0.01, 0.3);
  CHECK(std::abs(m[0][1]) == 0.0);
  CHECK(std::abs(m[1][0]) == 0.0);
  CHECK(std::abs(m[1][2]) == 0.0);
  CHECK(std::abs(m[2][1]) == 0.0);
  CHECK(std::abs(m[0][2]) > 0.0);
}

TEST_CASE("rotation, reciprocity and null-friction identities") {
  for (int i = 0; i < 1000; ++i) {
    const Sample s = stable_sample();
    CHECK(rotation_identity_error(s.cfg, s.pt, s.z1, s.z2) < 1e-10);
    CHECK(reciprocity_identity_error(s.cfg, s.pt, s.z1, s.z2) < 1e-10);
    CHECK(null_friction_residual(s.cfg, s.pt, s.z1, s.z2) < 1e-10);
  }
  const ShearConfig rest = ShearConfig::symmetric(0.3, 0.0, 0.4);
  const ShearConfig dual = rotation_dual(rest);
  CHECK(dual.v_upper == 0.0);
  CHECK(dual.v_lower == 0.0);
  const SpectralPoint pt{0.5, 2.0, -1.0};
  const Matrix3 a = dyadic_green(rest, pt, 0.05, -0.1);
  const Matrix3 b = transpose(dyadic_green(dual, {0.5, -2.0, 1.0}, -0.1, 0.05));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(std::abs(a[r][c] - b[r][c]) <= 1e-14 * max_norm(a));
  CHECK_NOTHROW(verify_identities(rest, pt, 0.05, -0.1));
}

TEST_CASE("region layout is enforced") {
  const ShearConfig cfg = ShearConfig::symmetric(0.3, 0.1, 0.2);
  const SpectralPoint pt{0.5, 1.0, 0.0};
  CHECK(test::error_kind_of([&] { scalar_g(cfg, pt, 0.5, 0.3, Side::Upper); }) == ErrorKind::Domain);
  CHECK(test::error_kind_of([&] { scalar_g(cfg, pt, 0.0, -0.3, Side::Upper); }) == ErrorKind::Domain);
  CHECK(test::error_kind_of([&] { dyadic_G(cfg, pt, 0.0, 0.0, Side::Lower); }) == ErrorKind::Domain);
  CHECK(test::error_kind_of([&] { scalar_g(cfg, {0.5, 0.0, 0.0}, 0.0, 0.3, Side::Upper); }) ==
        ErrorKind::Domain);
  CHECK(test::error_kind_of([&] { naive_kernel_sign(cfg, pt, 0.0); }) == ErrorKind::Domain);
}

TEST_CASE("naive kernel sign") {
  const ShearConfig moving = ShearConfig::symmetric(0.1, 0.1, 0.1);
  CHECK(naive_kernel_sign(moving, {0.04, 1.0, 0.0}, moving.z_minus - 0.1) < 0.0);
  const ShearConfig rest = ShearConfig::symmetric(0.1, 0.0, 0.1);
  for (int i = 0; i < 200; ++i) {
    const SpectralPoint pt{uniform(0.01, 2), uniform(-20, 20), uniform(-3, 3)};
    CHECK(naive_kernel_sign(rest, pt, rest.z_minus - uniform(0, 1)) >= 0.0);
    CHECK(naive_kernel_sign(rest, pt, rest.z_plus + uniform(0, 1)) >= 0.0);
  }
}

}
