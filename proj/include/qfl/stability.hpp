#ifndef QFL_STABILITY_HPP
#define QFL_STABILITY_HPP

#include <array>
#include <string>
#include <vector>

#include "qfl/parallel.hpp"
#include "qfl/scattering.hpp"

namespace qfl {

struct RootOptions {
  /// Roots with |Wa Wb| below this sit on a Drude pole and are flagged spurious.
  double spurious_threshold = 1e-8;
  double residual_tol = 1e-10;
  int polish_steps = 8;
};

/// The four natural-mode frequencies at (kx, ky), sorted by real then
/// imaginary part. residual[i] = |Q(root)| / max|c|.
struct RootSet {
  std::array<cplx, 4> roots{};
  std::array<double, 4> residuals{};
  std::array<bool, 4> spurious{};
  double kx = 0.0;
  double ky = 0.0;

  /// Largest Im over the non-spurious roots.
  double max_imag() const;
};

RootSet solve_roots(const ShearConfig& cfg, double kx, double ky, const RootOptions& opts = {});

/// One step of a root locus; branch[i] labels roots.roots[i].
struct LocusPoint {
  RootSet roots;
  std::array<int, 4> branch{};
};

/// Root sets at `steps` equally spaced kx in [kx_min, kx_max] (ky = 0) with
/// branch labels carried over by matching against linearly extrapolated
/// positions from the previous two steps.
std::vector<LocusPoint> root_locus(const ShearConfig& cfg, double kx_min, double kx_max,
                                   int steps, const RootOptions& opts = {});

struct ScanOptions {
  int points = 400;
  double kx_min = 1e-3;
  double kx_max = 0.0;  // 0 selects default_kx_max
  double refine_tol = 1e-6;
  Execution exec = Execution::Parallel;
  RootOptions roots;
};

/// max(12/L, 8 omega_sp / |v_lower - v_upper|), or 12/L for slabs at rest.
double default_kx_max(const ShearConfig& cfg);

struct StabilityReport {
  double max_growth = 0.0;  // M
  double argmax_kx = 0.0;
  bool stable = false;
  double scan_resolution = 0.0;  // ratio between neighbouring scan points
  double kx_min = 0.0;
  double kx_max = 0.0;
  bool extended = false;  // k_max was enlarged once because the maximiser hit it
};

/// M = max over kx > 0 (ky = 0) of the largest growth rate. A maximiser at
/// the lower end of the scan is accepted; one at k_max triggers a single
/// 4x extension and then a boundary error.
StabilityReport max_growth(const ShearConfig& cfg, const ScanOptions& opts = {});

enum class Parameter { Gamma, Velocity, Gap };

const char* to_string(Parameter p);
Parameter parameter_from_string(const std::string& name);

struct CriticalValue {
  Parameter parameter = Parameter::Gamma;
  double value = 0.0;
  std::array<double, 2> bracket{};
  int iterations = 0;
};

struct CriticalOptions {
  double tol = 1e-4;
  int prescan_points = 8;
  ScanOptions scan;
};

/// Threshold damping for the symmetric setup, gamma in [1e-4, 1].
CriticalValue critical_gamma(double v, double gap, const CriticalOptions& opts = {});
/// Threshold relative velocity, v in [1e-3, 0.99].
CriticalValue critical_velocity(double gamma, double gap, const CriticalOptions& opts = {});
/// Threshold gap, L in [1e-3, 50].
CriticalValue critical_gap(double gamma, double v, const CriticalOptions& opts = {});

enum class CellStatus { Ok, NoSignChange, Failed };

const char* to_string(CellStatus s);

struct DiagramCell {
  double gamma_cr = 0.0;  // 0 when no sign change
  double estimate = 0.0;  // growth_estimate(v, L)
  CellStatus status = CellStatus::Ok;
  std::string message;
};

/// A single diagram cell; errors are reported in-band.
DiagramCell diagram_cell(double v, double gap, const CriticalOptions& opts = {});

struct StabilityDiagram {
  std::vector<double> v_axis;
  std::vector<double> gap_axis;
  std::vector<std::vector<DiagramCell>> cells;  // cells[iL][iv]
};

StabilityDiagram stability_diagram(const std::vector<double>& v_axis,
                                   const std::vector<double>& gap_axis,
                                   const CriticalOptions& opts = {},
                                   Execution exec = Execution::Parallel);

}  // namespace qfl

#endif
