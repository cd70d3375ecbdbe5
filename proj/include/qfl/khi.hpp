#ifndef QFL_KHI_HPP
#define QFL_KHI_HPP

#include <algorithm>
#include <array>
#include <vector>

#include "qfl/units.hpp"

namespace qfl {

/// Two identical ideal fluids sliding along x: v_plus above the interface,
/// v_minus below.
struct KhiConfig {
  double v_plus = 0.0;
  double v_minus = 0.0;
};

/// omega = kx (v+ + v-)/2 -+ i kx (v+ - v-)/2, ordered by imaginary part.
std::array<cplx, 2> khi_dispersion(const KhiConfig& cfg, double kx);

/// Largest growth rate over both branches.
inline double khi_growth_rate(const KhiConfig& cfg, double kx) {
  const auto w = khi_dispersion(cfg, kx);
  return std::max(w[0].imag(), w[1].imag());
}

struct DriftRow {
  double gap;
  double gamma;
  std::array<cplx, 2> roots;    // quartic roots nearest the two KHI frequencies
  std::array<cplx, 2> targets;  // KHI frequencies
  double relative_deviation;    // max over the pair
};

struct CorrespondenceReport {
  double v = 0.0;
  double kx = 0.0;
  /// Max over both roots of the low-frequency plasma equation
  /// -1/(w - kx v+)^2 - 1/(w - kx v-)^2 = 0, solved as a quadratic, against
  /// the KHI frequencies; relative to |kx v|.
  double algebraic_residual = 0.0;
  std::vector<DriftRow> drift;
};

struct DriftSequence {
  double gap_start = 1e-1;
  double gap_end = 1e-3;
  double gamma_start = 1e-3;
  double gamma_end = 1e-6;
  int steps = 5;  // geometric, paired
};

/// Symmetric shear +-v/2 at wavenumber kx: algebraic comparison plus the
/// drift of the full quartic's low-frequency roots along the sequence.
CorrespondenceReport correspondence_check(double v, double kx, const DriftSequence& seq = {});

/// Deviation of the quartic's low-frequency roots from the KHI frequencies
/// at a single (L, gamma).
DriftRow quartic_drift(double v, double kx, double gap, double gamma);

}  // namespace qfl

#endif
