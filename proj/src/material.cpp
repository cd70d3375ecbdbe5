#include "qfl/material.hpp"

#include <sstream>

#include "qfl/error.hpp"

namespace qfl {

ShearConfig ShearConfig::symmetric(double gamma, double v, double gap) {
  ShearConfig cfg;
  cfg.drude.gamma = gamma;
  cfg.v_upper = -0.5 * v;
  cfg.v_lower = 0.5 * v;
  cfg.z_minus = -0.5 * gap;
  cfg.z_plus = 0.5 * gap;
  cfg.validate();
  return cfg;
}

ShearConfig ShearConfig::lower_only(double gamma, double v, double gap) {
  ShearConfig cfg = symmetric(gamma, 0.0, gap);
  cfg.v_lower = v;
  cfg.validate();
  return cfg;
}

ShearConfig ShearConfig::dual() const {
  ShearConfig d = *this;
  d.v_upper = -v_upper;
  d.v_lower = -v_lower;
  return d;
}

void ShearConfig::validate() const {
  std::ostringstream msg;
  if (!(drude.gamma >= 0.0) || !std::isfinite(drude.gamma)) {
    msg << "damping must be a non-negative finite number, got " << drude.gamma;
  } else if (!(std::abs(v_upper) < 1.0) || !(std::abs(v_lower) < 1.0)) {
    msg << "slab velocities must satisfy |v| < c, got v_upper=" << v_upper
        << " v_lower=" << v_lower;
  } else if (!(z_plus > z_minus) || !std::isfinite(z_plus) || !std::isfinite(z_minus)) {
    msg << "upper surface must lie above the lower one, got z_minus=" << z_minus
        << " z_plus=" << z_plus;
  } else {
    return;
  }
  raise(ErrorKind::Domain, msg.str());
}

cplx drude_eps(DrudeParams p, cplx omega) {
  if (std::abs(omega) < kDrudePoleGuard || std::abs(omega + kI * p.gamma) < kDrudePoleGuard) {
    std::ostringstream msg;
    msg << "Drude permittivity evaluated on its pole at omega=" << omega
        << " (gamma=" << p.gamma << ")";
    raise(ErrorKind::Pole, msg.str());
  }
  return 1.0 - 1.0 / drude_w(p.gamma, omega);
}

cplx slab_eps(const ShearConfig& cfg, Side side, const SpectralPoint& pt) {
  return drude_eps(cfg.drude, doppler_frequency(cfg, side, pt));
}

bool is_gain(const ShearConfig& cfg, Side side, const SpectralPoint& pt) {
  if (!(pt.omega.real() > 0.0) || pt.omega.imag() != 0.0) {
    raise(ErrorKind::Domain, "gain test requires a real positive frequency");
  }
  // Im eps_D(w) = w gamma / |w (w + i gamma)|^2, so the sign follows the
  // rest-frame frequency; evaluate directly to stay on Drude poles too.
  const double shifted = doppler_frequency(cfg, side, pt).real();
  if (shifted == 0.0 || cfg.gamma() == 0.0) return false;
  return slab_eps(cfg, side, pt).imag() < 0.0;
}

}  // namespace qfl
