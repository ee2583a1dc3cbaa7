#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conjsum/conjugate.hpp"
#include "conjsum/kernels.hpp"
#include "conjsum/moduli.hpp"
#include "conjsum/summability.hpp"

namespace conjsum {

enum class TheoremId { kT1_51, kT1_5, kR1_6, kT2, kT2Trunc, kT3, kT4, kCor };

std::string_view theorem_label(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view label);
bool is_norm_theorem(TheoremId id);

enum class RatioFlag {
  kOk,
  kDegenerate,  ///< lhs and rhs both at the noise floor; ratio reported as 0
  kUnbounded,   ///< rhs vanished under a positive lhs
  kUndefined,   ///< no reference value (first row of a decay table)
};

std::string_view ratio_flag_label(RatioFlag flag);

struct BoundReport {
  TheoremId theorem = TheoremId::kT1_5;
  int n = 0;
  std::optional<double> x;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  RatioFlag flag = RatioFlag::kOk;
  std::string function;
  std::string matrix_a;
  std::string matrix_b;
  std::optional<double> p;
};

/// Values below these are treated as rounding noise when forming lhs/rhs.
inline constexpr double kRhsFloor = 1e-12;
inline constexpr double kLhsFloor = 1e-9;

/// Fills ratio and flag from lhs and rhs.
void finish_ratio(BoundReport& report);

enum class Execution { kSerial, kParallel };

/// Cesaro means of a modulus profile: inner[r] = (1/(r+1)) sum_{k<=r} values[k].
std::vector<double> inner_means(std::span<const double> values);

/// sum_r a_{n,r} inner[r]; with inner built from bar moduli this is the
/// Pointwise bound; with classical moduli, the L^p bound.
double weighted_bound(const TriangularMatrix& A, int n, std::span<const double> inner);
/// sum_r (a_{n,r} + sum_{k=1}^r a_{n,k}/(r+1)) inner[r] + inner[n], inner from plain moduli.
double remark1_bound(const TriangularMatrix& A, int n, std::span<const double> inner);
/// (1/(n+1)) sum_r inner[r].
double cesaro_bound(int n, std::span<const double> inner);

double rhs_theorem1(const PeriodicFunction& f, const TriangularMatrix& A, double x, int n,
                    const GridSpec& grid = {});
double rhs_remark1(const PeriodicFunction& f, const TriangularMatrix& A, double x, int n,
                   const GridSpec& grid = {});
double rhs_theorem2(const PeriodicFunction& f, double x, int n, const GridSpec& grid = {});

/// |T~_{n,A,B} f(x) - f~(x, pi/(n+1))| when truncated, else |T~ f(x) - f~(x)|.
double lhs_theorem1(const PeriodicFunction& f, const TriangularMatrix& A, const TriangularMatrix& B, double x,
                    int n, bool truncated, const GridSpec& grid = {});

/// Per-point data shared by all n of a sweep: the transform inputs, the
/// conjugate limit and the psi-modulus profiles.
class PointData {
public:
  PointData(const PeriodicFunction& f, const FourierCoefficients& coeffs, double x, int n_max,
            const GridSpec& grid, bool with_moduli = true);

  double x() const noexcept { return x_; }
  double conjugate() const noexcept { return conjugate_; }
  std::span<const double> conj_sums() const noexcept { return sums_; }
  const ModulusProfile& tilde() const noexcept { return tilde_; }
  const ModulusProfile& tilde_bar() const noexcept { return tilde_bar_; }

  /// Signed T~_{n,A,B} f(x) - f~(x) or - f~(x, pi/(n+1)).
  double deviation(const TriangularMatrix& A, const TriangularMatrix& B, int n, bool truncated) const;

private:
  const PeriodicFunction* f_;
  double x_;
  GridSpec grid_;
  double conjugate_;
  std::vector<double> sums_;
  ModulusProfile tilde_;
  ModulusProfile tilde_bar_;
};

struct SweepSpec {
  TheoremId theorem = TheoremId::kT1_5;
  std::vector<int> n_list;
  std::vector<double> x_grid = default_x_grid();
  /// Spacing used for x-grid norms.
  double x_spacing = kPi / 16.0;
  std::vector<double> p_list{1.0, 2.0, std::numeric_limits<double>::infinity()};
  /// Only consulted for R1.6, T3 and T4.
  bool truncated = false;
  GridSpec grid{};
  Execution execution = Execution::kParallel;
};

/// Bound reports for one theorem, function and matrix pair. Pointwise
/// theorems yield one row per (x, n), ordered by x then n; norm theorems one
/// row per (p, n). T2 and T4 replace A with the Cesaro matrix.
std::vector<BoundReport> run_theorem(const SweepSpec& spec, const PeriodicFunction& f, const TriangularMatrix& A,
                                     const TriangularMatrix& B);

/// L^p deviation against the classical-modulus bound.
BoundReport norm_report(const PeriodicFunction& f, const TriangularMatrix& A, const TriangularMatrix& B, int n,
                        double p, bool truncated, const GridSpec& grid = {});

/// Deviations |T~ f(x) - f~(x)| along an increasing n list; each row's rhs is
/// the previous row's deviation so the ratio column holds dev(n_i)/dev(n_{i-1}).
std::vector<BoundReport> corollary_decay(const PeriodicFunction& f, const TriangularMatrix& A,
                                         const TriangularMatrix& B, std::span<const int> n_list, double x,
                                         const GridSpec& grid = {});

/// Running max of ratios over rows with flag kOk, keyed by n (ascending n).
std::vector<std::pair<int, double>> running_max_by_n(std::span<const BoundReport> rows);

}  // namespace conjsum
