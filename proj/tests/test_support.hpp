#ifndef QFL_TEST_SUPPORT_HPP
#define QFL_TEST_SUPPORT_HPP

#include <complex>
#include <random>

#include "doctest.h"
#include "qfl/error.hpp"

namespace qfl::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

template <typename F>
ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a qfl::Error");
  return ErrorKind::Identity;
}

}  // namespace qfl::test

#endif
