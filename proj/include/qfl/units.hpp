#ifndef QFL_UNITS_HPP
#define QFL_UNITS_HPP

#include <complex>
#include <numbers>

// Reduced units throughout: omega_p = c = hbar = 1, so k_p = 1.
// Frequencies are in omega_p, wavenumbers in k_p, velocities in c,
// lengths in 1/k_p and force per unit area in hbar * omega_p * k_p^3.

namespace qfl {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Quasi-static surface plasmon frequency, where the Drude permittivity is -1.
inline constexpr double kOmegaSp = 1.0 / std::numbers::sqrt2;

inline constexpr cplx kI{0.0, 1.0};

}  // namespace qfl

#endif
