#include "qfl/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfl/error.hpp"
#include "qfl/polynomial.hpp"

namespace qfl {

namespace {

cplx checked_reflection(cplx eps, Side side) {
  const cplx denom = 1.0 + eps;
  if (std::abs(denom) < kSurfaceResonanceGuard) {
    std::ostringstream msg;
    msg << "surface plasmon resonance on the " << to_string(side) << " surface (eps=" << eps << ")";
    raise(ErrorKind::Resonance, msg.str());
  }
  return (1.0 - eps) / denom;
}

// 2 W(w - s) - 1 as a quadratic in w, ascending.
std::array<cplx, 3> shifted_drude_quadratic(double gamma, double shift) {
  const cplx ig = kI * gamma;
  return {2.0 * shift * shift - 2.0 * ig * shift - 1.0, -4.0 * shift + 2.0 * ig, cplx{2.0}};
}

}  // namespace

SurfaceCoefficients surface_coeffs(const ShearConfig& cfg, const SpectralPoint& pt) {
  const double k = pt.k();
  const cplx eps_p = slab_eps(cfg, Side::Upper, pt);
  const cplx eps_m = slab_eps(cfg, Side::Lower, pt);
  SurfaceCoefficients sc;
  sc.r_plus = checked_reflection(eps_p, Side::Upper) * std::exp(-2.0 * k * cfg.z_plus);
  sc.r_minus = checked_reflection(eps_m, Side::Lower) * std::exp(2.0 * k * cfg.z_minus);
  sc.t_plus = 2.0 * eps_p / (1.0 + eps_p);
  sc.t_minus = 2.0 * eps_m / (1.0 + eps_m);
  return sc;
}

cplx characteristic_value(const ShearConfig& cfg, const SpectralPoint& pt) {
  const auto sc = surface_coeffs(cfg, pt);
  return 1.0 - sc.r_plus * sc.r_minus;
}

cplx QuarticPoly::operator()(cplx omega) const { return evaluate_poly(c, omega).value; }

cplx QuarticPoly::derivative(cplx omega) const { return evaluate_poly(c, omega).derivative; }

double QuarticPoly::scale() const {
  double s = 0.0;
  for (const auto& ci : c) s = std::max(s, std::abs(ci));
  return s;
}

QuarticPoly quartic_poly(const ShearConfig& cfg, double kx, double ky) {
  const double k = std::hypot(kx, ky);
  const auto a = shifted_drude_quadratic(cfg.gamma(), kx * cfg.v_upper);
  const auto b = shifted_drude_quadratic(cfg.gamma(), kx * cfg.v_lower);
  QuarticPoly q{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) q.c[i + j] += a[i] * b[j];
  }
  q.c[0] -= std::exp(-2.0 * k * cfg.gap());
  return q;
}

cplx quartic_prefactor(const ShearConfig& cfg, const SpectralPoint& pt) {
  const double g = cfg.gamma();
  return (2.0 * drude_w(g, doppler_frequency(cfg, Side::Upper, pt)) - 1.0) *
         (2.0 * drude_w(g, doppler_frequency(cfg, Side::Lower, pt)) - 1.0);
}

double drude_pole_proximity(const ShearConfig& cfg, const SpectralPoint& pt) {
  const double g = cfg.gamma();
  return std::abs(drude_w(g, doppler_frequency(cfg, Side::Upper, pt)) *
                  drude_w(g, doppler_frequency(cfg, Side::Lower, pt)));
}

LosslessModes lossless_dispersion(double v, double gap, double kx, double ky) {
  if (!(v >= 0.0) || !(gap > 0.0)) {
    raise(ErrorKind::Domain, "lossless_dispersion needs v >= 0 and L > 0");
  }
  const double k = std::hypot(kx, ky);
  const double ws2 = kOmegaSp * kOmegaSp;
  const double doppler = 0.5 * kx * v;
  const double coupling = std::exp(-2.0 * k * gap) + (kx * v / kOmegaSp) * (kx * v / kOmegaSp);
  const double split = ws2 * std::sqrt(coupling);
  LosslessModes m;
  m.omega_plus_sq = ws2 + doppler * doppler + split;
  m.omega_minus_sq = ws2 + doppler * doppler - split;
  m.omega_plus = std::sqrt(cplx{m.omega_plus_sq});
  m.omega_minus = std::sqrt(cplx{m.omega_minus_sq});
  return m;
}

double growth_estimate(double v, double gap) {
  if (!(v > 0.0) || !(gap > 0.0)) raise(ErrorKind::Domain, "growth_estimate needs v > 0 and L > 0");
  return kOmegaSp * std::exp(-2.0 * kOmegaSp * gap / v);
}

double critical_velocity_estimate(double gamma) {
  const double g_bar = gamma / kOmegaSp;
  if (!(g_bar > 0.0) || !(g_bar < 1.0)) {
    raise(ErrorKind::Domain, "critical velocity estimate needs 0 < gamma < omega_sp");
  }
  return -2.0 / std::log(g_bar);
}

}  // namespace qfl
