#include "qfl/khi.hpp"

#include <algorithm>
#include <cmath>

#include "qfl/error.hpp"
#include "qfl/stability.hpp"

namespace qfl {

std::array<cplx, 2> khi_dispersion(const KhiConfig& cfg, double kx) {
  if (kx == 0.0) raise(ErrorKind::Domain, "khi_dispersion needs kx != 0");
  const double advect = 0.5 * kx * (cfg.v_plus + cfg.v_minus);
  const double growth = 0.5 * std::abs(kx * (cfg.v_plus - cfg.v_minus));
  return {cplx{advect, -growth}, cplx{advect, growth}};
}

namespace {

// 2 w^2 - 2 kx (v+ + v-) w + kx^2 (v+^2 + v-^2) = 0
std::array<cplx, 2> plasma_low_frequency_roots(const KhiConfig& cfg, double kx) {
  const double b = -2.0 * kx * (cfg.v_plus + cfg.v_minus);
  const double c = kx * kx * (cfg.v_plus * cfg.v_plus + cfg.v_minus * cfg.v_minus);
  const cplx sq = std::sqrt(cplx{b * b - 8.0 * c});
  std::array<cplx, 2> r{(-b - sq) / 4.0, (-b + sq) / 4.0};
  std::sort(r.begin(), r.end(), [](cplx x, cplx y) { return x.imag() < y.imag(); });
  return r;
}

}  // namespace

DriftRow quartic_drift(double v, double kx, double gap, double gamma) {
  const ShearConfig cfg = ShearConfig::symmetric(gamma, v, gap);
  const auto targets = khi_dispersion({cfg.v_upper, cfg.v_lower}, kx);
  const RootSet rs = solve_roots(cfg, kx, 0.0);
  DriftRow row{gap, gamma, {}, targets, 0.0};
  std::array<bool, 4> used{};
  for (std::size_t t = 0; t < 2; ++t) {
    std::size_t best = 0;
    double dist = INFINITY;
    for (std::size_t i = 0; i < 4; ++i) {
      if (used[i]) continue;
      const double d = std::abs(rs.roots[i] - targets[t]);
      if (d < dist) {
        dist = d;
        best = i;
      }
    }
    used[best] = true;
    row.roots[t] = rs.roots[best];
    row.relative_deviation = std::max(row.relative_deviation, dist / std::abs(targets[t]));
  }
  return row;
}

CorrespondenceReport correspondence_check(double v, double kx, const DriftSequence& seq) {
  if (!(v > 0.0)) raise(ErrorKind::Domain, "correspondence_check needs v > 0");
  CorrespondenceReport rep;
  rep.v = v;
  rep.kx = kx;
  const KhiConfig khi{-0.5 * v, 0.5 * v};
  const auto khi_roots = khi_dispersion(khi, kx);
  const auto plasma_roots = plasma_low_frequency_roots(khi, kx);
  const double scale = std::abs(kx * v);
  for (std::size_t i = 0; i < 2; ++i) {
    rep.algebraic_residual =
        std::max(rep.algebraic_residual, std::abs(khi_roots[i] - plasma_roots[i]) / scale);
  }
  const int n = std::max(seq.steps, 1);
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 1.0 : i / (n - 1.0);
    const double gap = seq.gap_start * std::pow(seq.gap_end / seq.gap_start, f);
    const double gamma = seq.gamma_start * std::pow(seq.gamma_end / seq.gamma_start, f);
    rep.drift.push_back(quartic_drift(v, kx, gap, gamma));
  }
  return rep;
}

}  // namespace qfl
