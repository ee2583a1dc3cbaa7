#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conjsum/kernels.hpp"

namespace conjsum {

/// Finite lower-triangular, nonnegative, row-stochastic matrix.
///
/// Row n holds entries (a_{n,0}, ..., a_{n,n}); entries right of the diagonal
/// are structurally zero and `at` returns 0 for them.
class TriangularMatrix {
public:
  /// Validates shape, nonnegativity and |row sum - 1| <= tol.
  TriangularMatrix(std::string name, std::vector<std::vector<double>> rows, double tol = 1e-9);

  const std::string& name() const noexcept { return name_; }
  int n_max() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  const std::vector<double>& row(int n) const { return rows_.at(n); }
  const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }

  double at(int n, int k) const {
    return (k < 0 || k > n) ? 0.0 : rows_[n][k];
  }

private:
  std::string name_;
  std::vector<std::vector<double>> rows_;
};

/// a_{n,k} = 1/(n+1).
TriangularMatrix cesaro(int n_max);
/// b_{n,n} = 1, all other entries 0.
TriangularMatrix identity_matrix(int n_max);
/// a_{n,0} = 1, all other entries 0.
TriangularMatrix delta_at_zero(int n_max);
/// a_{n,k} = p_{n-k} / (p_0 + ... + p_n); weights must be positive and cover 0..n_max.
TriangularMatrix nordlund(const std::vector<double>& p, int n_max, std::string name = "nordlund");
TriangularMatrix from_rows(std::vector<std::vector<double>> rows, std::string name = "custom");

/// Builder lookup: "cesaro", "identity", "delta0", "nordlund-linear" (p_k = k+1).
/// Empty for unknown names.
std::optional<TriangularMatrix> build_named_matrix(std::string_view name, int n_max);

/// JSON {"name": str, "rows": [[...], ...]}; validation applied on load.
TriangularMatrix matrix_from_json(const std::string& text);
std::string matrix_to_json(const TriangularMatrix& m);

/// Combined weights c_k = sum_{r=k}^{n} a_{n,r} b_{r,k}, k = 0..n, so that the
/// AB-transform equals sum_k c_k S_k.
std::vector<double> ab_weights(const TriangularMatrix& A, const TriangularMatrix& B, int n);

/// sum_{r=0}^{n} sum_{k=0}^{r} a_{n,r} b_{r,k} S_k f(x) (or the conjugate sums).
double ab_transform(const FourierCoefficients& c, const TriangularMatrix& A, const TriangularMatrix& B,
                    int n, double x, bool conjugate);

/// Same transform from precomputed partial sums S_0..S_n.
double ab_transform(std::span<const double> sums, const TriangularMatrix& A, const TriangularMatrix& B,
                    int n);

/// Reference evaluation of the double sum exactly as written, without weight folding.
double ab_transform_reference(std::span<const double> sums, const TriangularMatrix& A,
                              const TriangularMatrix& B, int n);

enum class ConditionId { kAnn, kPrefix, kProduct, kBDifference, kRemark1, kRemark2 };

std::string_view condition_label(ConditionId id);

/// Smallest empirical constant K for which a matrix condition holds on the
/// checked index range, with the index tuple attaining it.
struct ConditionReport {
  ConditionId id = ConditionId::kAnn;
  double min_constant = 0.0;
  /// True when some denominator vanished under a positive numerator.
  bool fails = false;
  std::vector<int> witness;
  int n_max = 0;
};

/// a_{n,n} << 1/(n+1): K = max_n (n+1) a_{n,n}.
ConditionReport check_condition_2_1(const TriangularMatrix& A, int n_max = -1);
/// (1/(s+1)) sum_{r<=s} a_{n,r} << a_{n,s}.
ConditionReport check_condition_2_2(const TriangularMatrix& A, int n_max = -1);
/// |a_{n,r} b_{r,r-l} - a_{n,r+1} b_{r+1,r+1-l}| << a_{n,r}/(r+1)^2, 0 <= l <= r <= n-1.
ConditionReport check_condition_2_21(const TriangularMatrix& A, const TriangularMatrix& B, int n_max = -1);
/// |b_{r,r-l} - b_{r+1,r+1-l}| << 1/(r+1)^2, 0 <= l <= r, r+1 <= n_max.
ConditionReport check_condition_3_2(const TriangularMatrix& B, int n_max = -1);

/// sum_{r=0}^{n} sum_{k=0}^{r} a_{n,k}/(r+1) for one row n.
double check_remark1_condition(const TriangularMatrix& A, int n);
/// max over 0 < s <= n-1 of sum_{r=s}^{n-1} sum_{k=s}^{r} |b_{r,r-k} - b_{r+1,r+1-k}|, n = n_max.
double check_remark2_condition(const TriangularMatrix& B, int n_max = -1);

/// Report-style wrappers (running max over n for remark1, single value for remark2).
ConditionReport remark1_report(const TriangularMatrix& A, int n_max = -1);
ConditionReport remark2_report(const TriangularMatrix& B, int n_max = -1);

/// Ratio LHS/RHS of (1/pi) int_0^{pi/(n+1)} |psi_x(t)|/t dt << w~_x f(pi/(n+1)).
/// 0/0 gives 1; a positive LHS over a vanishing RHS gives +infinity.
double check_condition_2_511(const PeriodicFunction& f, double x, int n, const GridSpec& grid = {});

}  // namespace conjsum
