#ifndef QFL_GREENS_HPP
#define QFL_GREENS_HPP

#include <array>
#include <vector>

#include "qfl/material.hpp"

namespace qfl {

using Vector3 = std::array<cplx, 3>;
using Matrix3 = std::array<std::array<cplx, 3>, 3>;

Matrix3 transpose(const Matrix3& m);
Matrix3 operator+(const Matrix3& a, const Matrix3& b);
Vector3 operator*(const Matrix3& m, const Vector3& v);
/// Largest entry magnitude.
double max_norm(const Matrix3& m);

/// One term amp * exp(|k| (s1 z1 + s2 z2) + offset) of a kernel in the two
/// heights. Keeping the exponent separate avoids overflow at large |k| L.
struct ExpTerm {
  cplx amp;
  double offset;
  int s1;
  int s2;
};

/// Quasi-static potential kernel phi(z1, z2) at fixed (omega, kx, ky): the
/// solution of -(eps phi')' + eps k^2 phi = delta(z1 - z2) that decays away
/// from both surfaces, as a sum of exponential terms. Heights on a surface
/// count as gap points.
std::vector<ExpTerm> potential_terms(const ShearConfig& cfg, const SpectralPoint& pt, double z1,
                                     double z2);

cplx potential_kernel(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2);

/// Dyadic kernel -D1 D2^T phi with D1 = (i kx, i ky, d/dz1) on the
/// observation point and D2 = (-i kx, -i ky, d/dz2) on the source point,
/// applied term by term. Valid for z1 != z2.
Matrix3 dyadic_green(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2);

/// Gap observation point with the source inside one slab.
struct GreensEval {
  cplx g;
  Matrix3 dyad;
  Side source_side;
  double z1;
  double z2;
};

/// Below this |1 - r_plus r_minus| the gap kernel is on a system resonance.
inline constexpr double kSystemResonanceGuard = 1e-14;

/// Scalar kernel g = eps(z2) phi for z_minus <= z1 <= z_plus and the source
/// in the named slab; for an upper source
///   g = t_plus (1 + r_minus e^{-2|k| z1}) e^{|k|(z1 - z2)} / (2|k| (1 - r_plus r_minus)).
cplx scalar_g(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2, Side source);

GreensEval dyadic_G(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2,
                    Side source);

/// Velocity-reversed configuration, reachable by a half turn about z.
inline ShearConfig rotation_dual(const ShearConfig& cfg) { return cfg.dual(); }

/// Relative violation of G_dual(k) = P G(-k) P, P = diag(-1, -1, 1).
double rotation_identity_error(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2);

/// Relative violation of G(k; z1, z2) = [G_dual(-k; z2, z1)]^T.
double reciprocity_identity_error(const ShearConfig& cfg, const SpectralPoint& pt, double z1,
                                  double z2);

/// |x-z entry of G(z1, z2) + G(z2, z1)^T| relative to max|G(z1, z2)|.
double null_friction_residual(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2);

/// Throws an identity error if any of the three checks exceeds tol.
void verify_identities(const ShearConfig& cfg, const SpectralPoint& pt, double z1, double z2,
                       double tol = 1e-10);

/// Im eps(z3) |G(z_minus, z3)^dagger u|^2, the weight an unmodified
/// fluctuation-dissipation kernel would assign to a source at z3 inside a
/// slab. Negative wherever that slab has gain.
double naive_kernel_sign(const ShearConfig& cfg, const SpectralPoint& pt, double z3,
                         const Vector3& u = {cplx{1.0}, cplx{0.0}, cplx{0.0}});

}  // namespace qfl

#endif
