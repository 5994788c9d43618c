#include <cmath>
#include <string>

#include "doctest.h"

#include "creep/process_model.hpp"
#include "creep/quadrature.hpp"

using namespace creep;

TEST_CASE("Gauss-Kronrod is exact on low-degree polynomials") {
  const QuadResult r = integrate_gk([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(9.0 - 3.0 + 3.0).epsilon(1e-14));
  CHECK(r.panels == 1);
}

TEST_CASE("semi-infinite integrals") {
  const QuadResult e = integrate([](double x) { return std::exp(-x); }, 0.0, kInf, {1e-12, 0.0, 4000});
  CHECK(e.converged);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-11));
  const QuadResult g = integrate([](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * M_PI); }, 0.0, kInf,
                                 {1e-12, 0.0, 4000});
  CHECK(g.value == doctest::Approx(0.5).epsilon(1e-11));
}

TEST_CASE("error estimate bounds the true error") {
  const QuadResult r = integrate_gk([](double x) { return std::sin(10 * x) * std::exp(-x); }, 0.0, 3.0,
                                    {1e-10, 0.0, 4000});
  const double exact = (10.0 - std::exp(-3.0) * (std::sin(30.0) + 10 * std::cos(30.0))) / 101.0;
  CHECK(r.converged);
  CHECK(std::abs(r.value - exact) <= std::max(r.abs_error, 1e-14));
  CHECK(r.abs_error <= 1e-10);
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  const QuadResult r = integrate_tanh_sinh([](double x, double, double) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));
  // log singularity at the right end, evaluated from the exact distance
  const QuadResult l =
      integrate_tanh_sinh([](double, double, double to_b) { return -std::log(to_b); }, 0.0, 1.0);
  CHECK(l.value == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("non-convergent integrals are reported") {
  const QuadResult d = integrate([](double x) { return 1.0 / x; }, 1.0, kInf);
  CHECK_FALSE(d.converged);
  CHECK_THROWS_AS(integrate_or_throw([](double x) { return 1.0 / x; }, 1.0, kInf, {}, "harmonic"),
                  QuadratureError);
  try {
    integrate_or_throw([](double x) { return std::sin(1.0 / x) / x; }, 1e-9, 1.0, {1e-14, 0.0, 20}, "oscillating");
    FAIL("expected a quadrature error");
  } catch (const QuadratureError& e) {
    CHECK(std::string(e.what()).find("oscillating") != std::string::npos);
    CHECK(e.partial().panels > 0);
    CHECK(e.partial().abs_error > 1e-14);
  }
}
