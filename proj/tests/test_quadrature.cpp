#include <cmath>

#include "qfl/quadrature.hpp"
#include "qfl/units.hpp"
#include "test_support.hpp"

using namespace qfl;

TEST_SUITE("quadrature") {

TEST_CASE("smooth integrands") {
  const auto r = integrate([](double x) { return std::sin(x); }, 0.0, kPi);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(r.value - 2.0) <= r.error + 1e-15);
  QuadOptions o;
  o.rule = Rule::GK15;
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, o).value ==
        doctest::Approx(std::exp(1.0) - 1).epsilon(1e-13));
}

TEST_CASE("breakpoints and infinite ranges") {
  const auto kink = integrate([](double x) { return std::abs(x - 0.3); }, std::vector<double>{0.0, 0.3, 1.0});
  CHECK(kink.value == doctest::Approx(0.045 + 0.245).epsilon(1e-13));
  const auto g = integrate_infinite([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY);
  CHECK(g.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
  const auto half = integrate_infinite([](double x) { return std::exp(-x); }, 1.0, INFINITY);
  CHECK(half.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(test::error_kind_of([] { integrate([](double) { return 1.0; }, 0.0, INFINITY); }) ==
        ErrorKind::Domain);
}

TEST_CASE("narrow peaks through the tangent map") {
  const double p = 0.2, w = 1e-7;
  const auto lorentz = [&](double x) { return Estimate{w / ((x - p) * (x - p) + w * w), 0.0, 1}; };
  const auto r = integrate_peaked(lorentz, -1.0, 1.0, p, w);
  const double exact = std::atan((1 - p) / w) + std::atan((1 + p) / w);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
  CHECK(r.evals < 2000);
  CHECK(test::error_kind_of([&] { integrate_peaked(lorentz, -1.0, 1.0, p, 0.0); }) ==
        ErrorKind::Domain);
}

TEST_CASE("nested integration propagates inner errors") {
  const auto inner = [](double x) {
    const auto r = integrate([x](double y) { return x * y; }, 0.0, 1.0);
    return Estimate{r.value, r.error, r.evals};
  };
  const auto r = integrate_nested(inner, {0.0, 1.0});
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(r.evals > 21 * 21 - 1);
}

TEST_CASE("non-convergence reports the worst interval") {
  QuadOptions o;
  o.max_intervals = 4;
  o.rel_tol = 1e-14;
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, o);
  CHECK_FALSE(r.converged);
  CHECK(r.worst_a == 0.0);
  CHECK(r.worst_b <= 0.25);
  CHECK(r.worst_error > 0.0);
}

TEST_CASE("parallel node evaluation is deterministic") {
  QuadOptions ser, par;
  par.exec = Execution::Parallel;
  const auto f = [](double x) { return std::cos(40 * x) * std::exp(-x); };
  CHECK(integrate(f, 0.0, 3.0, ser).value == integrate(f, 0.0, 3.0, par).value);
}

}
