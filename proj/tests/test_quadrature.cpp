#include <doctest.h>

#include <cmath>
#include <limits>

#include "conjsum/errors.hpp"
#include "conjsum/quadrature.hpp"
#include "support.hpp"

using namespace conjsum;

TEST_CASE("grid validation") {
  CHECK_NOTHROW(GridSpec{}.validate());
  CHECK_THROWS_AS((GridSpec{15, 24}.validate()), DomainError);
  CHECK_THROWS_AS((GridSpec{8, 24}.validate()), DomainError);
  CHECK_THROWS_AS((GridSpec{64, 0}.validate()), DomainError);
  CHECK(GridSpec{64, 24}.coarsened().m == 32);
  CHECK(GridSpec{16, 24}.coarsened().m == 16);
}

TEST_CASE("periodic trapezoid oracles") {
  const GridSpec g{};
  CHECK(integrate_periodic([](double) { return 1.0; }, g).value == doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(std::abs(integrate_periodic([](double t) { return std::cos(t); }, g).value) <= 1e-12);
  CHECK(integrate_periodic([](double t) { return std::cos(t) * std::cos(t); }, g).value ==
        doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("sin on [0, pi] with m = 64") {
  const auto r = integrate_interval([](double t) { return std::sin(t); }, 0.0, kPi, GridSpec{64, 24});
  CHECK(std::abs(r.value - 2.0) <= 1e-10);
  CHECK(r.est_error >= 0.0);
}

TEST_CASE("graded rule oracles") {
  const GridSpec g{};
  CHECK(std::abs(integrate_graded([](double t) { return t; }, 0.0, 1.0, g).value - 0.5) <= 1e-9);
  const auto si = integrate_graded([](double t) { return std::sin(t) / t; }, 0.0, kPi, g);
  CHECK(std::abs(si.value - testing::sine_integral(kPi)) <= 1e-9);
  CHECK(std::abs(si.value - 1.851937051982466) <= 1e-9);
  const auto c2 = integrate_graded([](double t) { return std::sin(t) * 0.5 / std::tan(0.5 * t); }, 0.0, kPi, g);
  CHECK(std::abs(c2.value - kPi / 2) <= 1e-8);
}

TEST_CASE("graded rule handles an integrable log singularity") {
  // int_0^1 log t dt = -1
  const auto r = integrate_graded([](double t) { return std::log(t); }, 0.0, 1.0, GridSpec{1024, 40});
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("graded domain checks") {
  auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(integrate_graded(one, -0.1, 1.0, GridSpec{}), DomainError);
  CHECK_THROWS_AS(integrate_graded(one, 1.0, 1.0, GridSpec{}), DomainError);
  CHECK_THROWS_AS(integrate_graded(one, 0.0, 4.0, GridSpec{}), DomainError);
}

TEST_CASE("non-finite integrand values are reported") {
  auto bad = [](double t) { return t > 1.0 ? std::numeric_limits<double>::infinity() : 0.0; };
  CHECK_THROWS_AS(integrate_periodic(bad, GridSpec{}), SingularIntegrandError);
  CHECK_THROWS_AS(integrate_interval(bad, 0.0, 2.0, GridSpec{}), SingularIntegrandError);
}

TEST_CASE("breakpoints restore accuracy for kinked integrands") {
  // |t - 0.3| on [0, 1]: exact 0.29
  auto g = [](double t) { return std::abs(t - 0.3); };
  const double br[] = {0.3};
  CHECK(std::abs(integrate_interval(g, 0.0, 1.0, GridSpec{64, 24}, br).value - 0.29) <= 1e-14);
}

TEST_CASE("sign changes") {
  const auto roots = sign_changes([](double t) { return std::cos(t); }, 0.0, 3.0);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(sign_changes([](double) { return 1e-14; }, 0.0, 1.0).empty());
}

TEST_CASE("trigonometric monomials integrate to zero for m >= 4k") {
  for (int k = 1; k <= 64; ++k) {
    const GridSpec g{std::max(16, 4 * k + (4 * k) % 2), 24};
    CHECK(std::abs(integrate_periodic([k](double t) { return std::cos(k * t); }, g).value) <= 1e-10);
    CHECK(std::abs(integrate_periodic([k](double t) { return std::sin(k * t); }, g).value) <= 1e-10);
  }
}

TEST_CASE("mesh refinement does not increase the error estimate on smooth integrands") {
  auto g = [](double t) { return 1.0 / (1.5 - std::cos(t)); };
  double previous = std::numeric_limits<double>::infinity();
  for (int m = 32; m <= 256; m *= 2) {
    const double e = integrate_periodic(g, GridSpec{m, 24}).est_error;
    CHECK((e <= previous || e < 1e-13));
    previous = e;
  }
}
