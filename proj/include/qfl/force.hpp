#ifndef QFL_FORCE_HPP
#define QFL_FORCE_HPP

#include <functional>
#include <string>
#include <vector>

#include "qfl/quadrature.hpp"
#include "qfl/stability.hpp"

namespace qfl {

/// A configuration whose natural modes all decay. Only certify_stable
/// creates one, so the steady-state integrands cannot be handed an
/// unstable system.
class StableConfig {
 public:
  const ShearConfig& config() const { return cfg_; }
  const StabilityReport& report() const { return report_; }

 private:
  friend StableConfig certify_stable(const ShearConfig& cfg, const ScanOptions& opts);
  StableConfig(const ShearConfig& cfg, const StabilityReport& rep) : cfg_(cfg), report_(rep) {}
  ShearConfig cfg_;
  StabilityReport report_;
};

/// Throws an unstable-regime error when max_growth >= 0: past threshold the
/// field grows without bound and no stationary force exists.
StableConfig certify_stable(const ShearConfig& cfg, const ScanOptions& opts = {});

/// Spectral force density (per unit area, reduced units) at real omega > 0
/// from the reflection-coefficient product,
///   [theta_upper (-kx) + theta_lower (kx)] r''_+ r''_- / (2 pi^3 |1 - r_+ r_-|^2),
/// where theta_side marks the gain window of that slab. Exactly 0 outside
/// both windows.
double integrand_rr_form(const StableConfig& sc, double omega, double kx, double ky);

/// The same density through transmission coefficients,
///   -kx r''_- |t_+ e^{-|k| z_+}/eps_+|^2 |eps''_+| / (4 pi^3 |1 - r_+ r_-|^2)
/// for upper gain and the mirrored lower-gain term.
double integrand_coeff_form(const StableConfig& sc, double omega, double kx, double ky);

enum class IntegrandForm { ReflectionProduct, Coefficient };

const char* to_string(IntegrandForm f);

struct SpectralDensityGrid {
  std::vector<double> omega_axis;
  std::vector<double> kx_axis;
  double ky = 0.0;
  std::vector<std::vector<double>> values;  // values[i_omega][i_kx]
  ShearConfig cfg;
  IntegrandForm form = IntegrandForm::ReflectionProduct;
  std::string timestamp;
};

SpectralDensityGrid spectral_density_grid(const ShearConfig& cfg, double omega_min,
                                          double omega_max, double kx_min, double kx_max,
                                          int n_omega, int n_kx, double ky,
                                          IntegrandForm form = IntegrandForm::ReflectionProduct,
                                          Execution exec = Execution::Parallel);

enum class Regime { Stable, UnstableRejected };

const char* to_string(Regime r);

struct ForceResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long integrand_evaluations = 0;
  Regime regime = Regime::Stable;
  bool near_critical = false;
  std::vector<std::string> warnings;
  std::string message;  // set when the point was not integrated
};

struct ForceOptions {
  double rel_tol = 1e-4;
  IntegrandForm form = IntegrandForm::ReflectionProduct;
  Rule rule = Rule::GK21;
  /// Fold kx < 0 onto kx > 0 for mirror-symmetric configurations.
  bool use_mirror = true;
  double k_max = 0.0;  // 0 selects default_kx_max
  int max_intervals = 400;
  /// Relative damping margin above the threshold inside which the
  /// tolerance is relaxed tenfold and a warning attached.
  double near_critical_margin = 0.05;
  bool check_near_critical = true;
  Execution exec = Execution::Parallel;
  ScanOptions scan;
};

/// Friction per unit area on the lower slab by nested adaptive quadrature,
/// omega innermost, then ky, then kx. Throws for unstable configurations
/// and on non-convergence.
ForceResult total_force(const ShearConfig& cfg, const ForceOptions& opts = {});

/// Sweeps one parameter of a symmetric template. Unstable and failed points
/// are reported in-band.
std::vector<ForceResult> force_sweep(const ShearConfig& tmpl, Parameter parameter,
                                     const std::vector<double>& values,
                                     const ForceOptions& opts = {});

/// Upper slab at rest, lower slab at +v, through the bare reflection
/// coefficient r(omega) and r(omega - kx v) with the window omega < kx v.
ForceResult force_lower_only(double gamma, double v, double gap, const ForceOptions& opts = {});

/// Weak-interaction lossless limit
///   -(omega_sp^3 / (4 pi v^2)) int exp(-2 L sqrt((2 omega_sp/v)^2 + ky^2)) dky.
double force_lossless_weak(double v, double gap);

/// Closed form of the same integral through the modified Bessel function K1.
double force_lossless_weak_bessel(double v, double gap);

struct PlemeljRow {
  double gamma;
  double integral;
  double error;  // integral - limit
  double quad_error;
};

struct PlemeljReport {
  double limit = 0.0;
  std::vector<PlemeljRow> rows;
  /// Least-squares slope of log|error| against log gamma; NaN when the
  /// errors are below quadrature noise.
  double order = 0.0;
  bool monotone = false;
};

/// Integrates Im r(omega) f(omega) over the real line, r = 1/(2W - 1), for
/// each gamma and compares with (pi omega_sp / 2) [f(-omega_sp) - f(omega_sp)].
PlemeljReport plemelj_check(const std::vector<double>& gammas,
                            const std::function<double(double)>& f, double rel_tol = 1e-10);

}  // namespace qfl

#endif
