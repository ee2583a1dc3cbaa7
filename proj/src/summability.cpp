#include "conjsum/summability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "conjsum/errors.hpp"
#include "conjsum/moduli.hpp"

namespace conjsum {

namespace {

constexpr double kBuilderTol = 1e-12;

int resolve_range(int requested, int available) {
  if (requested < 0) return available;
  if (requested > available) {
    throw DomainError("requested range " + std::to_string(requested) + " exceeds matrix n_max " +
                      std::to_string(available));
  }
  return requested;
}

// Running-max bookkeeping shared by the ratio-style checkers.
struct MaxTracker {
  ConditionReport report;

  void offer(long double numerator, long double denominator, std::vector<int> index) {
    if (denominator == 0.0L) {
      if (numerator == 0.0L) return;
      if (!report.fails) {
        report.fails = true;
        report.min_constant = std::numeric_limits<double>::infinity();
        report.witness = std::move(index);
      }
      return;
    }
    if (report.fails) return;
    const double ratio = static_cast<double>(numerator / denominator);
    if (ratio > report.min_constant || report.witness.empty()) {
      report.min_constant = std::max(ratio, report.min_constant);
      report.witness = std::move(index);
    }
  }
};

}  // namespace

TriangularMatrix::TriangularMatrix(std::string name, std::vector<std::vector<double>> rows, double tol)
    : name_(std::move(name)), rows_(std::move(rows)) {
  if (rows_.empty()) throw ValidationError("matrix must have at least one row", 0);
  for (std::size_t n = 0; n < rows_.size(); ++n) {
    const auto& row = rows_[n];
    const int idx = static_cast<int>(n);
    if (row.size() != n + 1) {
      throw ValidationError("row " + std::to_string(n) + " has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(n + 1),
                            idx);
    }
    long double sum = 0.0L;
    for (std::size_t k = 0; k <= n; ++k) {
      if (!std::isfinite(row[k])) throw ValidationError("row " + std::to_string(n) + " has a non-finite entry", idx);
      if (row[k] < 0.0) {
        std::ostringstream os;
        os << "row " << n << " has negative entry " << row[k] << " at column " << k;
        throw ValidationError(os.str(), idx);
      }
      sum += row[k];
    }
    if (std::abs(static_cast<double>(sum) - 1.0) > tol) {
      std::ostringstream os;
      os.precision(17);
      os << "row " << n << " sums to " << static_cast<double>(sum) << ", expected 1";
      throw ValidationError(os.str(), idx);
    }
  }
}

TriangularMatrix cesaro(int n_max) {
  std::vector<std::vector<double>> rows(n_max + 1);
  for (int n = 0; n <= n_max; ++n) rows[n].assign(n + 1, 1.0 / (n + 1));
  return TriangularMatrix("cesaro", std::move(rows), kBuilderTol);
}

TriangularMatrix identity_matrix(int n_max) {
  std::vector<std::vector<double>> rows(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    rows[n].assign(n + 1, 0.0);
    rows[n][n] = 1.0;
  }
  return TriangularMatrix("identity", std::move(rows), kBuilderTol);
}

TriangularMatrix delta_at_zero(int n_max) {
  std::vector<std::vector<double>> rows(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    rows[n].assign(n + 1, 0.0);
    rows[n][0] = 1.0;
  }
  return TriangularMatrix("delta0", std::move(rows), kBuilderTol);
}

TriangularMatrix nordlund(const std::vector<double>& p, int n_max, std::string name) {
  if (static_cast<int>(p.size()) < n_max + 1) {
    throw DomainError("Norlund weights must cover indices 0.." + std::to_string(n_max));
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!(p[k] > 0.0)) throw DomainError("Norlund weight p_" + std::to_string(k) + " must be positive");
  }
  std::vector<std::vector<double>> rows(n_max + 1);
  long double total = 0.0L;
  for (int n = 0; n <= n_max; ++n) {
    total += p[n];
    rows[n].resize(n + 1);
    for (int k = 0; k <= n; ++k) rows[n][k] = static_cast<double>(p[n - k] / total);
  }
  return TriangularMatrix(std::move(name), std::move(rows), kBuilderTol);
}

TriangularMatrix from_rows(std::vector<std::vector<double>> rows, std::string name) {
  return TriangularMatrix(std::move(name), std::move(rows), 1e-9);
}

std::optional<TriangularMatrix> build_named_matrix(std::string_view name, int n_max) {
  if (name == "cesaro") return cesaro(n_max);
  if (name == "identity") return identity_matrix(n_max);
  if (name == "delta0") return delta_at_zero(n_max);
  if (name == "nordlund-linear") {
    std::vector<double> p(n_max + 1);
    for (int k = 0; k <= n_max; ++k) p[k] = k + 1.0;
    return nordlund(p, n_max, "nordlund-linear");
  }
  return std::nullopt;
}

TriangularMatrix matrix_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix JSON does not parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    throw std::invalid_argument("matrix JSON must be an object with a \"rows\" array");
  }
  std::string name = doc.value("name", std::string("custom"));
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["rows"]) {
    if (!row.is_array()) throw std::invalid_argument("matrix JSON rows must be arrays of numbers");
    std::vector<double> values;
    for (const auto& v : row) {
      if (!v.is_number()) throw std::invalid_argument("matrix JSON entries must be numbers");
      values.push_back(v.get<double>());
    }
    rows.push_back(std::move(values));
  }
  return from_rows(std::move(rows), std::move(name));
}

std::string matrix_to_json(const TriangularMatrix& m) {
  nlohmann::json doc;
  doc["name"] = m.name();
  doc["rows"] = m.rows();
  return doc.dump();
}

std::vector<double> ab_weights(const TriangularMatrix& A, const TriangularMatrix& B, int n) {
  if (n < 0 || n > A.n_max() || n > B.n_max()) {
    throw DomainError("transform index " + std::to_string(n) + " outside the matrices' rows");
  }
  std::vector<double> c(n + 1, 0.0);
  for (int r = 0; r <= n; ++r) {
    const double a = A.at(n, r);
    if (a == 0.0) continue;
    for (int k = 0; k <= r; ++k) c[k] += a * B.at(r, k);
  }
  return c;
}

double ab_transform(std::span<const double> sums, const TriangularMatrix& A, const TriangularMatrix& B,
                    int n) {
  if (static_cast<int>(sums.size()) < n + 1) throw CutoffError("not enough partial sums for the transform");
  const auto c = ab_weights(A, B, n);
  double value = 0.0;
  for (int k = 0; k <= n; ++k) value += c[k] * sums[k];
  return value;
}

double ab_transform(const FourierCoefficients& c, const TriangularMatrix& A, const TriangularMatrix& B,
                    int n, double x, bool conjugate) {
  if (n > c.cutoff()) {
    throw CutoffError("transform index " + std::to_string(n) + " exceeds coefficient cutoff " +
                      std::to_string(c.cutoff()));
  }
  const auto sums = partial_sums(c, n, x, conjugate);
  return ab_transform(sums, A, B, n);
}

double ab_transform_reference(std::span<const double> sums, const TriangularMatrix& A,
                              const TriangularMatrix& B, int n) {
  double value = 0.0;
  for (int r = 0; r <= n; ++r) {
    for (int k = 0; k <= r; ++k) value += A.at(n, r) * B.at(r, k) * sums[k];
  }
  return value;
}

std::string_view condition_label(ConditionId id) {
  switch (id) {
    case ConditionId::kAnn: return "2.1";
    case ConditionId::kPrefix: return "2.2";
    case ConditionId::kProduct: return "2.21";
    case ConditionId::kBDifference: return "3.2";
    case ConditionId::kRemark1: return "remark1";
    case ConditionId::kRemark2: return "remark2";
  }
  return "?";
}

ConditionReport check_condition_2_1(const TriangularMatrix& A, int n_max) {
  const int top = resolve_range(n_max, A.n_max());
  MaxTracker t;
  t.report.id = ConditionId::kAnn;
  t.report.n_max = top;
  for (int n = 0; n <= top; ++n) {
    t.offer(static_cast<long double>(n + 1) * A.at(n, n), 1.0L, {n});
  }
  return t.report;
}

ConditionReport check_condition_2_2(const TriangularMatrix& A, int n_max) {
  const int top = resolve_range(n_max, A.n_max());
  MaxTracker t;
  t.report.id = ConditionId::kPrefix;
  t.report.n_max = top;
  for (int n = 0; n <= top; ++n) {
    long double prefix = 0.0L;
    for (int s = 0; s <= n; ++s) {
      prefix += A.at(n, s);
      t.offer(prefix, static_cast<long double>(s + 1) * A.at(n, s), {n, s});
    }
  }
  return t.report;
}

ConditionReport check_condition_2_21(const TriangularMatrix& A, const TriangularMatrix& B, int n_max) {
  const int top = resolve_range(n_max, std::min(A.n_max(), B.n_max()));
  MaxTracker t;
  t.report.id = ConditionId::kProduct;
  t.report.n_max = top;
  for (int n = 1; n <= top; ++n) {
    for (int r = 0; r <= n - 1; ++r) {
      const long double a_r = A.at(n, r);
      const long double a_next = A.at(n, r + 1);
      const long double scale = static_cast<long double>(r + 1) * (r + 1);
      for (int l = 0; l <= r; ++l) {
        const long double diff = std::abs(a_r * B.at(r, r - l) - a_next * B.at(r + 1, r + 1 - l));
        t.offer(diff * scale, a_r, {n, r, l});
      }
    }
  }
  return t.report;
}

ConditionReport check_condition_3_2(const TriangularMatrix& B, int n_max) {
  const int top = resolve_range(n_max, B.n_max());
  MaxTracker t;
  t.report.id = ConditionId::kBDifference;
  t.report.n_max = top;
  for (int r = 0; r + 1 <= top; ++r) {
    const long double scale = static_cast<long double>(r + 1) * (r + 1);
    for (int l = 0; l <= r; ++l) {
      const long double diff = std::abs(static_cast<long double>(B.at(r, r - l)) - B.at(r + 1, r + 1 - l));
      t.offer(diff * scale, 1.0L, {r, l});
    }
  }
  return t.report;
}

double check_remark1_condition(const TriangularMatrix& A, int n) {
  if (n < 0 || n > A.n_max()) throw DomainError("row index outside the matrix");
  long double total = 0.0L;
  long double prefix = 0.0L;
  for (int r = 0; r <= n; ++r) {
    prefix += A.at(n, r);
    total += prefix / (r + 1);
  }
  return static_cast<double>(total);
}

double check_remark2_condition(const TriangularMatrix& B, int n_max) {
  const int n = resolve_range(n_max, B.n_max());
  long double best = 0.0L;
  for (int s = 1; s <= n - 1; ++s) {
    long double sum = 0.0L;
    for (int r = s; r <= n - 1; ++r) {
      for (int k = s; k <= r; ++k) {
        sum += std::abs(static_cast<long double>(B.at(r, r - k)) - B.at(r + 1, r + 1 - k));
      }
    }
    best = std::max(best, sum);
  }
  return static_cast<double>(best);
}

ConditionReport remark1_report(const TriangularMatrix& A, int n_max) {
  const int top = resolve_range(n_max, A.n_max());
  MaxTracker t;
  t.report.id = ConditionId::kRemark1;
  t.report.n_max = top;
  for (int n = 0; n <= top; ++n) t.offer(check_remark1_condition(A, n), 1.0L, {n});
  return t.report;
}

ConditionReport remark2_report(const TriangularMatrix& B, int n_max) {
  const int top = resolve_range(n_max, B.n_max());
  ConditionReport report;
  report.id = ConditionId::kRemark2;
  report.n_max = top;
  report.min_constant = check_remark2_condition(B, top);
  report.witness = {top};
  return report;
}

double check_condition_2_511(const PeriodicFunction& f, double x, int n, const GridSpec& grid) {
  if (n < 0) throw DomainError("n must be nonnegative");
  const double h = kPi / (n + 1);
  const auto breaks = psi_breaks(f, x, 0.0, h);
  auto integrand = [&](double t) { return std::abs(eval_psi(f, x, t)) / t; };
  std::vector<double> splits = breaks;
  const auto roots = sign_changes([&](double t) { return eval_psi(f, x, t); }, 0.0, h);
  splits.insert(splits.end(), roots.begin(), roots.end());
  std::sort(splits.begin(), splits.end());
  const double lhs = detail::graded_value(integrand, 0.0, h, grid, splits, 0.0) / kPi;
  const double rhs = w_tilde(f, x, h, grid);
  if (rhs == 0.0) return lhs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

}  // namespace conjsum
