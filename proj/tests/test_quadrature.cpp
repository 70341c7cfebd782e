#include <doctest.h>

#include <cmath>

#include "dosnet/quadrature.hpp"
#include "oracle.hpp"

using namespace dosnet;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("half-line integrals with known values") {
  CHECK(integrate_zero_to_inf([](double u) { return std::exp(-u); }) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate_zero_to_inf([](double u) { return u * u * std::exp(-u); }) ==
        doctest::Approx(2.0).epsilon(1e-10));
  // Integrable endpoint singularity u^(-1/2).
  CHECK(integrate_zero_to_inf([](double u) { return std::exp(-u) / std::sqrt(u); }) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
  // Beta-type kernel: Int t^(-1/2) (1+t)^-1 dt = pi.
  CHECK(integrate_zero_to_inf(
            [](double t) { return 1.0 / (std::sqrt(t) * (1.0 + t)); }) ==
        doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("finite interval rule") {
  CHECK(integrate_interval([](double x) { return x * x; }, 0.0, 3.0) ==
        doctest::Approx(9.0).epsilon(1e-12));
  CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("divergent integrands raise a numeric error") {
  CHECK_THROWS_AS(integrate_zero_to_inf([](double u) { return 1.0 / (1.0 + u); }),
                  std::runtime_error);
  CHECK_THROWS_AS(
      integrate_zero_to_inf([](double u) { return std::exp(-u) / (u * u); }),
      std::runtime_error);
}

TEST_CASE("adaptive result agrees with an independent fixed-grid trapezoid") {
  const auto f1 = [](double u) { return std::pow(u, -0.5) * std::exp(-u) / (1.0 + u); };
  CHECK(integrate_zero_to_inf(f1) ==
        doctest::Approx(oracle::trapezoid_zero_to_inf(f1)).epsilon(1e-6));
  const auto f2 = [](double t) {
    return std::exp(-0.3 * std::sqrt(t)) / (std::sqrt(t) * (1.0 + t));
  };
  CHECK(integrate_zero_to_inf(f2) ==
        doctest::Approx(oracle::trapezoid_zero_to_inf(f2)).epsilon(1e-6));
}

TEST_SUITE_END();
