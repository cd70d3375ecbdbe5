#ifndef QFL_MATERIAL_HPP
#define QFL_MATERIAL_HPP

#include <cmath>

#include "qfl/units.hpp"

namespace qfl {

/// Drude damping in units of omega_p. The plasma frequency itself is 1.
struct DrudeParams {
  double gamma = 0.0;
};

enum class Side { Upper, Lower };

inline const char* to_string(Side s) { return s == Side::Upper ? "upper" : "lower"; }

/// Two semi-infinite Drude slabs, z > z_plus (upper) and z < z_minus (lower),
/// sliding along x with independent velocities. Vacuum fills the gap.
struct ShearConfig {
  DrudeParams drude;
  double v_upper = 0.0;
  double v_lower = 0.0;
  double z_minus = -0.05;
  double z_plus = 0.05;

  /// The sheared setup: upper slab at -v/2, lower at +v/2, surfaces at -+L/2.
  static ShearConfig symmetric(double gamma, double v, double gap);
  /// Upper slab at rest, lower slab moving at +v.
  static ShearConfig lower_only(double gamma, double v, double gap);

  double gamma() const { return drude.gamma; }
  double gap() const { return z_plus - z_minus; }
  double velocity(Side s) const { return s == Side::Upper ? v_upper : v_lower; }
  double relative_velocity() const { return std::abs(v_lower - v_upper); }
  bool is_symmetric() const { return v_upper == -v_lower; }
  bool is_static() const { return v_upper == 0.0 && v_lower == 0.0; }

  /// Reciprocal dual: every velocity reversed.
  ShearConfig dual() const;

  /// Throws a domain error unless gamma >= 0, |v| < 1 and z_plus > z_minus.
  void validate() const;
};

/// Evaluation coordinate (omega, kx, ky). |k| is the transverse magnitude.
struct SpectralPoint {
  cplx omega;
  double kx = 0.0;
  double ky = 0.0;

  double k() const { return std::hypot(kx, ky); }
};

/// Distance to a Drude pole (omega = 0 or omega = -i gamma) below which
/// drude_eps refuses to evaluate.
inline constexpr double kDrudePoleGuard = 1e-12;

/// 1 - 1/(omega^2 + i omega gamma). Im eps > 0 is lossy for omega > 0.
cplx drude_eps(DrudeParams p, cplx omega);

/// omega (omega + i gamma); the Drude response depends on omega only through it.
inline cplx drude_w(double gamma, cplx omega) { return omega * (omega + kI * gamma); }

/// Lab-frame permittivity of one slab: drude_eps(omega - kx v_side).
cplx slab_eps(const ShearConfig& cfg, Side side, const SpectralPoint& pt);

/// Frequency seen in the slab's rest frame.
inline cplx doppler_frequency(const ShearConfig& cfg, Side side, const SpectralPoint& pt) {
  return pt.omega - pt.kx * cfg.velocity(side);
}

/// Im slab_eps < 0 at real omega > 0. Requires gamma > 0 to ever be true.
bool is_gain(const ShearConfig& cfg, Side side, const SpectralPoint& pt);

/// Closed-form gain window 0 < omega < kx v_side.
inline bool in_gain_window(const ShearConfig& cfg, Side side, double omega, double kx) {
  return omega > 0.0 && omega < kx * cfg.velocity(side);
}

}  // namespace qfl

#endif
