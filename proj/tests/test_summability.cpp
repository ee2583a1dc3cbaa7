#include <doctest.h>

#include <cmath>
#include <random>

#include "conjsum/errors.hpp"
#include "conjsum/summability.hpp"
#include "support.hpp"

using namespace conjsum;
using testing::fn;

namespace {

// direct double-precision scans, independent of the checkers' bookkeeping
double brute_2_2(const TriangularMatrix& A) {
  double best = 0.0;
  for (int n = 0; n <= A.n_max(); ++n) {
    double prefix = 0.0;
    for (int s = 0; s <= n; ++s) {
      prefix += A.at(n, s);
      if (A.at(n, s) == 0.0) continue;
      best = std::max(best, prefix / ((s + 1) * A.at(n, s)));
    }
  }
  return best;
}

double brute_2_21(const TriangularMatrix& A, const TriangularMatrix& B) {
  double best = 0.0;
  for (int n = 1; n <= A.n_max(); ++n) {
    for (int r = 0; r <= n - 1; ++r) {
      if (A.at(n, r) == 0.0) continue;
      for (int l = 0; l <= r; ++l) {
        const double d = std::abs(A.at(n, r) * B.at(r, r - l) - A.at(n, r + 1) * B.at(r + 1, r + 1 - l));
        best = std::max(best, d * (r + 1) * (r + 1) / A.at(n, r));
      }
    }
  }
  return best;
}

double brute_remark2(const TriangularMatrix& B) {
  const int n = B.n_max();
  double best = 0.0;
  for (int s = 1; s <= n - 1; ++s) {
    double sum = 0.0;
    for (int r = s; r <= n - 1; ++r) {
      for (int k = s; k <= r; ++k) sum += std::abs(B.at(r, r - k) - B.at(r + 1, r + 1 - k));
    }
    best = std::max(best, sum);
  }
  return best;
}

std::vector<double> linear_weights(int n_max) {
  std::vector<double> p(n_max + 1);
  for (int k = 0; k <= n_max; ++k) p[k] = k + 1.0;
  return p;
}

}  // namespace

TEST_CASE("builders") {
  const auto C = cesaro(5);
  for (int k = 0; k <= 3; ++k) CHECK(C.at(3, k) == 0.25);
  CHECK(C.at(3, 4) == 0.0);
  CHECK(C.row(0) == std::vector<double>{1.0});
  const auto I = identity_matrix(5);
  CHECK(I.row(4) == std::vector<double>{0, 0, 0, 0, 1});
  const auto D = delta_at_zero(5);
  CHECK(D.row(3) == std::vector<double>{1, 0, 0, 0});

  const auto N1 = nordlund(std::vector<double>(9, 1.0), 8);
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= n; ++k) CHECK(N1.at(n, k) == doctest::Approx(1.0 / (n + 1)));
  const auto NL = nordlund(linear_weights(2), 2);
  CHECK(NL.at(2, 0) == doctest::Approx(3.0 / 6));
  CHECK(NL.at(2, 1) == doctest::Approx(2.0 / 6));
  CHECK(NL.at(2, 2) == doctest::Approx(1.0 / 6));
  CHECK_THROWS_AS(nordlund({1.0, 0.0}, 1), DomainError);

  CHECK(build_named_matrix("cesaro", 4).has_value());
  CHECK(build_named_matrix("nordlund-linear", 4)->at(1, 0) == doctest::Approx(2.0 / 3));
  CHECK_FALSE(build_named_matrix("bogus", 4).has_value());
}

TEST_CASE("every builder output satisfies the matrix invariants") {
  for (const auto& M : {cesaro(64), identity_matrix(64), delta_at_zero(64), nordlund(linear_weights(64), 64)}) {
    for (int n = 0; n <= M.n_max(); ++n) {
      CHECK(M.row(n).size() == static_cast<std::size_t>(n + 1));
      double sum = 0.0;
      for (double v : M.row(n)) {
        CHECK(v >= 0.0);
        sum += v;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("from_rows validation") {
  CHECK_NOTHROW(from_rows({{1.0}, {0.5, 0.5}}));
  try {
    from_rows({{1.0}, {0.6, 0.6}});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.row() == 1);
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
  CHECK_THROWS_AS(from_rows({{1.0}, {-0.1, 1.1}}), ValidationError);
  CHECK_THROWS_AS(from_rows({{1.0}, {1.0}}), ValidationError);
  CHECK_THROWS_AS(from_rows({{1.0}, {0.5, 0.5, 0.0}}), ValidationError);
  CHECK_THROWS_AS(from_rows({{1.0}, {0.5, NAN}}), ValidationError);
  CHECK_NOTHROW(from_rows({{1.0}, {0.5, 0.5 + 5e-10}}));
}

TEST_CASE("matrix JSON") {
  const auto m = matrix_from_json(R"({"name": "tiny", "rows": [[1], [0.25, 0.75]]})");
  CHECK(m.name() == "tiny");
  CHECK(m.at(1, 1) == 0.75);
  const auto back = matrix_from_json(matrix_to_json(nordlund(linear_weights(6), 6)));
  CHECK(back.rows() == nordlund(linear_weights(6), 6).rows());
  CHECK_THROWS_AS(matrix_from_json("{not json"), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(R"({"rows": 3})"), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(R"({"rows": [[1], [0.6, 0.6]]})"), ValidationError);
}

TEST_CASE("transform oracles") {
  const auto c = fourier_coeffs(fn("sin"), 64);
  const auto C = cesaro(32);
  const auto I = identity_matrix(32);
  for (int n : {1, 4, 9}) {
    for (double x : {0.0, 0.7, -2.0}) {
      CHECK(ab_transform(c, C, I, n, x, true) == doctest::Approx(-(n / (n + 1.0)) * std::cos(x)).epsilon(1e-13));
    }
  }
  CHECK(ab_transform(c, C, C, 4, 0.0, true) ==
        doctest::Approx(-(0.0 + 1.0 / 2 + 2.0 / 3 + 3.0 / 4 + 4.0 / 5) / 5).epsilon(1e-13));
  CHECK_THROWS_AS(ab_transform(fourier_coeffs(fn("sin"), 4), C, C, 8, 0.0, true), CutoffError);
  CHECK_THROWS_AS(ab_weights(C, cesaro(3), 4), DomainError);
}

TEST_CASE("weight folding matches the literal double sum") {
  const auto c = fourier_coeffs(fn("hat"), 64);
  const auto A = nordlund(linear_weights(40), 40);
  const auto B = cesaro(40);
  const auto sums = partial_sums(c, 40, 0.9, true);
  for (int n : {0, 1, 7, 40}) {
    CHECK(ab_transform(sums, A, B, n) == doctest::Approx(ab_transform_reference(sums, A, B, n)).epsilon(1e-13));
  }
}

TEST_CASE("collapse: identity A and B give the conjugate partial sum") {
  const auto I = identity_matrix(32);
  for (const auto& f : corpus()) {
    const auto c = fourier_coeffs(f, 64);
    for (int n = 0; n <= 32; ++n) {
      for (double x : {-1.3, 0.2, 2.9}) {
        CHECK(std::abs(ab_transform(c, I, I, n, x, true) - conj_partial_sum(c, n, x)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("transform is linear in the coefficients") {
  std::mt19937 rng(20261016);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto A = nordlund(linear_weights(16), 16);
  const auto B = cesaro(16);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a1(17), b1(17), a2(17), b2(17), as(17), bs(17);
    const double alpha = u(rng), beta = u(rng);
    for (int k = 0; k <= 16; ++k) {
      a1[k] = u(rng), b1[k] = k ? u(rng) : 0.0, a2[k] = u(rng), b2[k] = k ? u(rng) : 0.0;
      as[k] = alpha * a1[k] + beta * a2[k];
      bs[k] = alpha * b1[k] + beta * b2[k];
    }
    const FourierCoefficients c1(a1, b1), c2(a2, b2), cs(as, bs);
    const double x = u(rng) * kPi;
    for (bool conj : {false, true}) {
      const double lhs = ab_transform(cs, A, B, 16, x, conj);
      const double rhs = alpha * ab_transform(c1, A, B, 16, x, conj) + beta * ab_transform(c2, A, B, 16, x, conj);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("condition 2.1") {
  CHECK(check_condition_2_1(cesaro(64)).min_constant == 1.0);
  const auto id = check_condition_2_1(identity_matrix(20));
  CHECK(id.min_constant == 21.0);
  CHECK(id.witness == std::vector<int>{20});
  const auto d0 = check_condition_2_1(delta_at_zero(20));
  CHECK(d0.min_constant == 1.0);
  CHECK(d0.witness == std::vector<int>{0});
}

TEST_CASE("condition 2.2") {
  CHECK(check_condition_2_2(cesaro(128)).min_constant == 1.0);
  const auto id = check_condition_2_2(identity_matrix(16));
  CHECK_FALSE(id.fails);  // prefix sums vanish wherever a_{n,s} does
  CHECK(id.min_constant == doctest::Approx(brute_2_2(identity_matrix(16))));
  const auto d0 = check_condition_2_2(delta_at_zero(8));
  CHECK(d0.fails);
  CHECK(std::isinf(d0.min_constant));
  CHECK(d0.witness == std::vector<int>{1, 1});
  const auto NL = nordlund(linear_weights(64), 64);
  CHECK(check_condition_2_2(NL).min_constant == doctest::Approx(brute_2_2(NL)).epsilon(1e-12));
}

TEST_CASE("condition 2.21") {
  for (int n_max : {1, 8, 128}) {
    const auto r = check_condition_2_21(cesaro(n_max), cesaro(n_max));
    CHECK(r.min_constant == doctest::Approx(n_max / (n_max + 1.0)).epsilon(1e-13));
    CHECK(r.min_constant < 1.0);
  }
  CHECK(check_condition_2_21(cesaro(32), identity_matrix(32)).min_constant == 0.0);
  const auto NL = nordlund(linear_weights(48), 48);
  CHECK(check_condition_2_21(NL, cesaro(48)).min_constant ==
        doctest::Approx(brute_2_21(NL, cesaro(48))).epsilon(1e-12));
}

TEST_CASE("condition 3.2") {
  CHECK(check_condition_3_2(identity_matrix(64)).min_constant == 0.0);
  const auto r = check_condition_3_2(cesaro(64));
  CHECK(r.min_constant == doctest::Approx(64.0 / 65.0).epsilon(1e-13));
  CHECK(r.min_constant < 1.0);
  std::vector<std::vector<double>> rows;
  for (int n = 0; n <= 64; ++n) rows.emplace_back(n + 1, 1.0 / (n + 1));
  CHECK(check_condition_3_2(from_rows(rows)).min_constant == r.min_constant);
}

TEST_CASE("remark conditions") {
  CHECK(check_remark1_condition(cesaro(10), 3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(check_remark1_condition(nordlund(linear_weights(5), 5), 0) == 1.0);
  for (int n : {1, 10, 100}) {
    CHECK(std::abs(check_remark1_condition(delta_at_zero(100), n) - testing::harmonic(n + 1)) <= 1e-12);
  }
  CHECK(check_remark2_condition(identity_matrix(64)) == 0.0);
  CHECK(check_remark2_condition(cesaro(64)) == doctest::Approx(brute_remark2(cesaro(64))).epsilon(1e-12));
  CHECK(check_remark2_condition(cesaro(1)) == 0.0);
  CHECK(remark1_report(delta_at_zero(40)).min_constant == doctest::Approx(testing::harmonic(41)).epsilon(1e-12));
}

TEST_CASE("checker constants never decrease as the range grows") {
  const auto NL = nordlund(linear_weights(64), 64);
  const auto C = cesaro(64);
  double p21 = 0, p22 = 0, p221 = 0, p32 = 0;
  for (int n_max = 1; n_max <= 64; ++n_max) {
    const double c21 = check_condition_2_1(NL, n_max).min_constant;
    const double c22 = check_condition_2_2(NL, n_max).min_constant;
    const double c221 = check_condition_2_21(NL, C, n_max).min_constant;
    const double c32 = check_condition_3_2(NL, n_max).min_constant;
    CHECK(c21 >= p21);
    CHECK(c22 >= p22);
    CHECK(c221 >= p221);
    CHECK(c32 >= p32);
    p21 = c21, p22 = c22, p221 = c221, p32 = c32;
  }
}

TEST_CASE("condition 2.511") {
  CHECK(check_condition_2_511(fn("const"), 0.4, 8) == 1.0);
  CHECK(check_condition_2_511(fn("sin"), 0.0, 2000) == doctest::Approx(2.0 / kPi).epsilon(1e-6));
  const double h = kPi / 17;
  const double oracle = (2.0 / kPi) * testing::sine_integral(h) / (2.0 * (1.0 - std::cos(h)) / h);
  CHECK(check_condition_2_511(fn("cos"), kPi / 2, 16) == doctest::Approx(oracle).epsilon(1e-10));
}
