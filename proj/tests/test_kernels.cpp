#include <doctest.h>

#include <cmath>

#include "conjsum/errors.hpp"
#include "conjsum/kernels.hpp"
#include "support.hpp"

using namespace conjsum;
using testing::fn;

TEST_CASE("conjugate Dirichlet kernel oracles") {
  CHECK(conj_dirichlet(5, 0.0) == 0.0);
  CHECK(conj_dirichlet(2, kPi / 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(conj_dirichlet(64, 0.37) - conj_dirichlet_direct(64, 0.37)) <= 1e-10);
  CHECK(conj_dirichlet(0, 1.3) == 0.0);
  // fallback near multiples of 2*pi
  CHECK(std::abs(conj_dirichlet(7, 2 * kPi)) <= 1e-12);
  CHECK(conj_dirichlet(3, 1e-10) == doctest::Approx(conj_dirichlet_direct(3, 1e-10)).epsilon(1e-12));
}

TEST_CASE("complement oracles") {
  CHECK(std::abs(conj_dirichlet_complement(0, kPi)) <= 1e-15);
  const double t = 1.2;
  double direct = 0.5 / std::tan(0.5 * t);
  for (int nu = 1; nu <= 3; ++nu) direct -= std::sin(nu * t);
  CHECK(std::abs(conj_dirichlet_complement(3, t) - direct) <= 1e-10);
  const double t10 = kPi / 22;
  CHECK(std::abs(conj_dirichlet_complement(10, t10)) <= kPi / (2 * t10) * (1 + 1e-9));
  CHECK_THROWS_AS(conj_dirichlet_complement(4, 0.0), DomainError);
  CHECK_THROWS_AS(conj_dirichlet_complement(4, 2 * kPi), DomainError);
}

TEST_CASE("fourier coefficient oracles") {
  const auto c = fourier_coeffs(fn("cos"), 16);
  CHECK(c.cutoff() == 16);
  for (int nu = 0; nu <= 16; ++nu) {
    CHECK(std::abs(c.a(nu) - (nu == 1 ? 1.0 : 0.0)) <= 1e-10);
    CHECK(std::abs(c.b(nu)) <= 1e-10);
  }
  const auto s3 = fourier_coeffs(fn("sin3x"), 16);
  for (int nu = 0; nu <= 16; ++nu) {
    CHECK(std::abs(s3.b(nu) - (nu == 3 ? 1.0 : 0.0)) <= 1e-10);
    CHECK(std::abs(s3.a(nu)) <= 1e-10);
  }
  const auto saw = fourier_coeffs(fn("sawtooth"), 32);
  for (int k = 1; k <= 32; ++k) CHECK(std::abs(saw.b(k) - 1.0 / k) <= 1e-6);
  CHECK(fourier_coeffs(fn("const"), 4).a0() == doctest::Approx(2.0));
  CHECK_THROWS_AS(fourier_coeffs(fn("sin"), -1), DomainError);
}

TEST_CASE("quadrature coefficients agree with closed forms") {
  for (const char* name : {"sawtooth", "hat"}) {
    const auto& f = fn(name);
    const auto q = fourier_coeffs(f, 128);
    const auto k = known_coeffs(f, 128);
    for (int nu = 0; nu <= 128; ++nu) {
      CHECK(std::abs(q.a(nu) - k.a(nu)) <= 1e-10);
      CHECK(std::abs(q.b(nu) - k.b(nu)) <= 1e-10);
    }
  }
}

TEST_CASE("partial sums") {
  const auto c = fourier_coeffs(fn("cos"), 8);
  CHECK(partial_sum(c, 0, 0.4) == doctest::Approx(c.a0() / 2));
  CHECK(partial_sum(c, 1, 0.4) == doctest::Approx(std::cos(0.4)).epsilon(1e-12));
  CHECK(conj_partial_sum(c, 0, 0.4) == 0.0);
  CHECK(conj_partial_sum(c, 3, 2.0) == doctest::Approx(std::sin(2.0)).epsilon(1e-12));
  const auto s = fourier_coeffs(fn("sin"), 8);
  CHECK(conj_partial_sum(s, 5, 1.1) == doctest::Approx(-std::cos(1.1)).epsilon(1e-12));

  const auto saw = fourier_coeffs(fn("sawtooth"), 8);
  double direct = 0.0;
  for (int nu = 1; nu <= 8; ++nu) direct += std::sin(nu * kPi / 2) / nu;
  CHECK(std::abs(partial_sum(saw, 8, kPi / 2) - direct) <= 1e-6);

  CHECK_THROWS_AS(partial_sum(c, 9, 0.0), CutoffError);
  CHECK_THROWS_AS(conj_partial_sum(c, 9, 0.0), CutoffError);

  const auto all = partial_sums(saw, 8, 0.9, true);
  REQUIRE(all.size() == 9);
  for (int k = 0; k <= 8; ++k) CHECK(all[k] == doctest::Approx(conj_partial_sum(saw, k, 0.9)).epsilon(1e-13));
}

TEST_CASE("partial sums by kernel convolution") {
  CHECK(std::abs(conj_partial_sum_integral(fn("const"), 6, 0.4)) <= 1e-10);
  CHECK(std::abs(conj_partial_sum_integral(fn("sin"), 4, 0.9) + std::cos(0.9)) <= 1e-8);
  const auto saw = fourier_coeffs(fn("sawtooth"), 32);
  CHECK(std::abs(conj_partial_sum_integral(fn("sawtooth"), 16, kPi / 3) - conj_partial_sum(saw, 16, kPi / 3)) <=
        1e-6);
}

TEST_CASE("polynomial helpers") {
  const std::vector<double> g{0.0, 0.5, -0.25, 2.0};
  const double t = 0.8;
  double sine = 0.0;
  for (int nu = 1; nu < 4; ++nu) sine += g[nu] * std::sin(nu * t);
  CHECK(sine_polynomial(g, t) == doctest::Approx(sine).epsilon(1e-14));
  double half = 0.0;
  for (int k = 0; k < 4; ++k) half += g[k] * std::cos((2 * k + 1) * t / 2);
  CHECK(half_cosine_polynomial(g, t) == doctest::Approx(half).epsilon(1e-14));
}
