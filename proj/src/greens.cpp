#include "qfl/greens.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfl/error.hpp"

namespace qfl {

Matrix3 transpose(const Matrix3& m) {
  Matrix3 t{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

Matrix3 operator+(const Matrix3& a, const Matrix3& b) {
  Matrix3 s{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s[i][j] = a[i][j] + b[i][j];
  return s;
}

Vector3 operator*(const Matrix3& m, const Vector3& v) {
  Vector3 r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i] += m[i][j] * v[j];
  return r;
}

double max_norm(const Matrix3& m) {
  double n = 0.0;
  for (const auto& row : m)
    for (const auto& x : row) n = std::max(n, std::abs(x));
  return n;
}

namespace {

enum class Region { Lower, Gap, Upper };

Region region_of(const ShearConfig& cfg, double z) {
  if (z < cfg.z_minus) return Region::Lower;
  if (z > cfg.z_plus) return Region::Upper;
  return Region::Gap;
}

// c exp(s k (z - shift) + log_scale)
struct Piece {
  cplx c;
  int s;
  double shift;
  double log_scale;
};

struct Solutions {
  double k;
  double gap;
  cplx eps_lower;
  cplx eps_upper;
  cplx wronskian_reduced;  // W = 2k e^{kL} wronskian_reduced
};

Solutions solutions(const ShearConfig& cfg, const SpectralPoint& pt) {
  cfg.validate();
  Solutions s;
  s.k = pt.k();
  if (!(s.k > 0.0)) raise(ErrorKind::Domain, "Green's function needs |k| > 0");
  s.gap = cfg.gap();
  s.eps_lower = slab_eps(cfg, Side::Lower, pt);
  s.eps_upper = slab_eps(cfg, Side::Upper, pt);
  const cplx a = 0.5 * (1.0 + s.eps_lower);
  const cplx b = 0.5 * (1.0 - s.eps_lower);
  const cplx p = 0.5 * (1.0 - s.eps_upper);
  const cplx q = 0.5 * (1.0 + s.eps_upper);
  s.wronskian_reduced = a * q - b * p * std::exp(-2.0 * s.k * s.gap);
  if (std::abs(s.wronskian_reduced) < kSystemResonanceGuard * std::abs(a * q)) {
    std::ostringstream msg;
    msg << "potential kernel on a natural mode at omega=" << pt.omega << " kx=" << pt.kx
        << " ky=" << pt.ky;
    raise(ErrorKind::Resonance, msg.str());
  }
  return s;
}

// Solution decaying into the lower slab, e^{k(z - z_minus)} there.
std::vector<Piece> lower_solution(const ShearConfig& cfg, const Solutions& s, Region r) {
  const cplx a = 0.5 * (1.0 + s.eps_lower);
  const cplx b = 0.5 * (1.0 - s.eps_lower);
  const double kl = s.k * s.gap;
  switch (r) {
    case Region::Lower: return {{1.0, +1, cfg.z_minus, 0.0}};
    case Region::Gap: return {{a, +1, cfg.z_minus, 0.0}, {b, -1, cfg.z_minus, 0.0}};
    case Region::Upper: {
      const cplx inv = 1.0 / s.eps_upper;
      return {{0.5 * a * (1.0 + inv), +1, cfg.z_plus, kl},
              {0.5 * b * (1.0 - inv), +1, cfg.z_plus, -kl},
              {0.5 * a * (1.0 - inv), -1, cfg.z_plus, kl},
              {0.5 * b * (1.0 + inv), -1, cfg.z_plus, -kl}};
    }
  }
  return {};
}

// Solution decaying into the upper slab, e^{-k(z - z_plus)} there.
std::vector<Piece> upper_solution(const ShearConfig& cfg, const Solutions& s, Region r) {
  const cplx p = 0.5 * (1.0 - s.eps_upper);
  const cplx q = 0.5 * (1.0 + s.eps_upper);
  const double kl = s.k * s.gap;
  switch (r) {
    case Region::Upper: return {{1.0, -1, cfg.z_plus, 0.0}};
    case Region::Gap: return {{p, +1, cfg.z_plus, 0.0}, {q, -1, cfg.z_plus, 0.0}};
    case Region::Lower: {
      const cplx inv = 1.0 / s.eps_lower;
      return {{0.5 * p * (1.0 + inv), +1, cfg.z_minus, -kl},
              {0.5 * q * (1.0 - inv), +1, cfg.z_minus, kl},
              {0.5 * p * (1.0 - inv), -1, cfg.z_minus, -kl},
              {0.5 * q * (1.0 + inv), -1, cfg.z_minus, kl}};
    }
  }
  return {};
}

cplx term_value(const ExpTerm& t, double k, double z1, double z2) {
  return t.amp * std::exp(k * (t.s1 * z1 + t.s2 * z2) + t.offset);
}

Matrix3 dyadic_from_terms(const std::vector<ExpTerm>& terms, const SpectralPoint& pt, double z1,
                          double z2) {
  const double k = pt.k();
  Matrix3 m{};
  for (const auto& t : terms) {
    const cplx v = term_value(t, k, z1, z2);
    const Vector3 d1{kI * pt.kx, kI * pt.ky, cplx{t.s1 * k}};
    const Vector3 d2{-kI * pt.kx, -kI * pt.ky, cplx{t.s2 * k}};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m[i][j] -= v * d1[i] * d2[j];
  }
  return m;
}

double relative_difference(const Matrix3& a, const Matrix3& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) diff = std::max(diff, std::abs(a[i][j] - b[i][j]));
  const double scale = std::max(max_norm(a), max_norm(b));
  return scale > 0.0 ? diff / scale : diff;
}

SpectralPoint flipped(const SpectralPoint& pt) { return {pt.omega, -pt.kx, -pt.ky}; }

Matrix3 half_turn(const Matrix3& m) {
  Matrix3 r = m;
  const double p[3] = {-1.0, -1.0, 1.0};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i][j] *= p[i] * p[j];
  return r;
}

void check_layout(const ShearConfig& cfg, double z1, double z2, Side source) {
  const bool gap_ok = z1 >= cfg.z_minus && z1 <= cfg.z_plus;
  const bool src_ok = source == Side::Upper ? z2 > cfg.z_plus : z2 < cfg.z_minus;
  if (!gap_ok || !src_ok) {
    std::ostringstream msg;
    msg << "scalar_g needs z1 in the gap [" << cfg.z_minus << ", " << cfg.z_plus << "] and z2 in the "
        << to_string(source) << " slab, got z1=" << z1 << " z2=" << z2;
    raise(ErrorKind::Domain, msg.str());
  }
}

}  // namespace

std::vector<ExpTerm> potential_terms(const ShearConfig& cfg, const SpectralPoint& pt, double z1,
                                     double z2) {
  const Solutions s = solutions(cfg, pt);
  const bool z1_below = z1 <= z2;
  const double z_lo = z1_below ? z1 : z2;
  const double z_hi = z1_below ? z2 : z1;
  const auto lo = lower_solution(cfg, s, region_of(cfg, z_lo));
  const auto hi = upper_solution(cfg, s, region_of(cfg, z_hi));
  const cplx norm = 1.0 / (2.0 * s.k * s.wronskian_reduced);
  std::vector<ExpTerm> out;
  out.reserve(lo.size() * hi.size());
  for (const auto& a : lo) {
    for (const auto& b : hi) {
      ExpTerm t;
      t.amp = a.c * b.c * norm;
      t.offset = -s.k * (a.s * a.shift + b.s * b.shift) + a.log_scale + b.log_scale - s.k * s.gap;
      t.s1 = z1_below ? a.s : b.s;
      t.s2 = z1_below ? b.s : a.s;
      out.push_back(t);
    }
  }
  return out;
}

cplx potential_kernel(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2) {
  cplx v = 0.0;
  for (const auto& t : potential_terms(cfg, pt, z1, z2)) v += term_value(t, pt.k(), z1, z2);
  return v;
}

Matrix3 dyadic_green(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2) {
  return dyadic_from_terms(potential_terms(cfg, pt, z1, z2), pt, z1, z2);
}

cplx scalar_g(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2, Side source) {
  check_layout(cfg, z1, z2, source);
  return slab_eps(cfg, source, pt) * potential_kernel(cfg, pt, z1, z2);
}

GreensEval dyadic_G(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2,
                    Side source) {
  check_layout(cfg, z1, z2, source);
  const auto terms = potential_terms(cfg, pt, z1, z2);
  cplx phi = 0.0;
  for (const auto& t : terms) phi += term_value(t, pt.k(), z1, z2);
  return {slab_eps(cfg, source, pt) * phi, dyadic_from_terms(terms, pt, z1, z2), source, z1, z2};
}

double rotation_identity_error(const ShearConfig& cfg, const SpectralPoint& pt, double z1,
                               double z2) {
  const Matrix3 lhs = dyadic_green(rotation_dual(cfg), pt, z1, z2);
  const Matrix3 rhs = half_turn(dyadic_green(cfg, flipped(pt), z1, z2));
  return relative_difference(lhs, rhs);
}

double reciprocity_identity_error(const ShearConfig& cfg, const SpectralPoint& pt, double z1,
                                  double z2) {
  const Matrix3 lhs = dyadic_green(cfg, pt, z1, z2);
  const Matrix3 rhs = transpose(dyadic_green(rotation_dual(cfg), flipped(pt), z2, z1));
  return relative_difference(lhs, rhs);
}

double null_friction_residual(const ShearConfig& cfg, const SpectralPoint& pt, double z1,
                              double z2) {
  const Matrix3 g12 = dyadic_green(cfg, pt, z1, z2);
  const Matrix3 sum = g12 + transpose(dyadic_green(cfg, pt, z2, z1));
  const double scale = max_norm(g12);
  return scale > 0.0 ? std::abs(sum[0][2]) / scale : std::abs(sum[0][2]);
}

void verify_identities(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2,
                       double tol) {
  const double rot = rotation_identity_error(cfg, pt, z1, z2);
  const double rec = reciprocity_identity_error(cfg, pt, z1, z2);
  const double nul = null_friction_residual(cfg, pt, z1, z2);
  if (rot > tol || rec > tol || nul > tol) {
    std::ostringstream msg;
    msg << "Green's function identities violated at omega=" << pt.omega << " kx=" << pt.kx
        << " ky=" << pt.ky << ": rotation " << rot << ", reciprocity " << rec << ", null " << nul;
    raise(ErrorKind::Identity, msg.str());
  }
}

double naive_kernel_sign(const ShearConfig& cfg, const SpectralPoint& pt, double z3,
                         const Vector3& u) {
  const Region r = region_of(cfg, z3);
  if (r == Region::Gap) raise(ErrorKind::Domain, "naive_kernel_sign needs z3 inside a slab");
  const Side side = r == Region::Upper ? Side::Upper : Side::Lower;
  const Matrix3 g13 = dyadic_green(cfg, pt, cfg.z_minus, z3);
  double norm2 = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    cplx c = 0.0;
    for (std::size_t i = 0; i < 3; ++i) c += std::conj(g13[i][j]) * u[i];
    norm2 += std::norm(c);
  }
  return slab_eps(cfg, side, pt).imag() * norm2;
}

}  // namespace qfl
