#ifndef QFL_SCATTERING_HPP
#define QFL_SCATTERING_HPP

#include <array>

#include "qfl/material.hpp"

namespace qfl {

/// Quasi-static surface coefficients. r_plus/r_minus carry the propagation
/// factors exp(-2|k| z_plus) and exp(+2|k| z_minus); t_plus/t_minus do not.
struct SurfaceCoefficients {
  cplx r_plus;
  cplx r_minus;
  cplx t_plus;
  cplx t_minus;
};

/// Threshold on |1 + eps| below which a surface is taken to be on resonance.
inline constexpr double kSurfaceResonanceGuard = 1e-12;

SurfaceCoefficients surface_coeffs(const ShearConfig& cfg, const SpectralPoint& pt);

/// 1 - r_plus r_minus; zero on the natural modes of the coupled surfaces.
cplx characteristic_value(const ShearConfig& cfg, const SpectralPoint& pt);

/// Bare reflection (1 - eps_D)/(1 + eps_D) written as 1/(2W - 1), W = w(w + i gamma).
/// Identical to the permittivity form but finite on the Drude poles.
inline cplx bare_reflection(double gamma, cplx omega) {
  return 1.0 / (2.0 * drude_w(gamma, omega) - 1.0);
}

/// Cleared-denominator characteristic polynomial in omega,
///   Q = [2 Wa - 1][2 Wb - 1] - exp(-2|k| L),
/// with Wa, Wb the Drude W of the upper and lower slab at their Doppler
/// shifted frequencies, so that Q = (1 - r_plus r_minus) * prefactor.
struct QuarticPoly {
  std::array<cplx, 5> c;  // ascending powers; c[4] == 4

  cplx operator()(cplx omega) const;
  cplx derivative(cplx omega) const;
  /// max |c_i|, the residual normalisation.
  double scale() const;
};

QuarticPoly quartic_poly(const ShearConfig& cfg, double kx, double ky);

/// [2 Wa - 1][2 Wb - 1], the factor relating Q and 1 - r_plus r_minus.
cplx quartic_prefactor(const ShearConfig& cfg, const SpectralPoint& pt);

/// |Wa Wb|: small values mean a root sits on a Doppler-shifted Drude pole
/// where the permittivity form of the characteristic value is singular.
double drude_pole_proximity(const ShearConfig& cfg, const SpectralPoint& pt);

/// Lossless, symmetric-setup normal modes. omega_minus_sq < 0 marks the
/// purely growing/decaying pair.
struct LosslessModes {
  double omega_plus_sq;
  double omega_minus_sq;
  cplx omega_plus;   // principal square root
  cplx omega_minus;
};

LosslessModes lossless_dispersion(double v, double gap, double kx, double ky);

/// kappa(L, v) = omega_sp exp(-2 omega_sp L / v); the net growth rate of the
/// interacting mode is roughly (kappa - gamma)/2.
double growth_estimate(double v, double gap);

/// Normalised critical velocity -2/log(gamma/omega_sp), where the
/// normalised velocity is v/(omega_sp L). Needs 0 < gamma < omega_sp.
double critical_velocity_estimate(double gamma);

/// Damping at which the estimated growth rate vanishes; equals growth_estimate.
inline double critical_gamma_estimate(double v, double gap) { return growth_estimate(v, gap); }

}  // namespace qfl

#endif
