#include "conjsum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>

#include "conjsum/errors.hpp"

namespace conjsum {

namespace {

int coefficient_cutoff(int n_max) { return std::max(n_max, kDefaultCutoff); }

void require_rows(const TriangularMatrix& M, int n, const char* which) {
  if (n < 0 || n > M.n_max()) {
    throw DomainError(std::string("n = ") + std::to_string(n) + " outside the rows of matrix " + which + " ('" +
                      M.name() + "')");
  }
}

// Runs body(i) for i in [0, count), in parallel when requested. The first
// exception thrown by any iteration is rethrown after the loop.
template <typename Body>
void for_each_index(int count, Execution execution, Body&& body) {
  std::exception_ptr failure;
  const bool parallel = execution == Execution::kParallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(conjsum_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

BoundReport make_row(TheoremId id, const PeriodicFunction& f, const TriangularMatrix& A,
                     const TriangularMatrix& B, int n) {
  BoundReport r;
  r.theorem = id;
  r.n = n;
  r.function = f.name();
  r.matrix_a = A.name();
  r.matrix_b = B.name();
  return r;
}

std::vector<double> point_grid(const SweepSpec& spec, const PeriodicFunction& f) {
  std::vector<double> xs;
  for (double x : spec.x_grid) {
    if (!f.is_conjugate_singular(x)) xs.push_back(x);
  }
  return xs;
}

}  // namespace

std::string_view theorem_label(TheoremId id) {
  switch (id) {
    case TheoremId::kT1_51: return "T1.51";
    case TheoremId::kT1_5: return "T1.5";
    case TheoremId::kR1_6: return "R1.6";
    case TheoremId::kT2: return "T2";
    case TheoremId::kT2Trunc: return "T2.trunc";
    case TheoremId::kT3: return "T3";
    case TheoremId::kT4: return "T4";
    case TheoremId::kCor: return "COR";
  }
  return "?";
}

std::optional<TheoremId> parse_theorem(std::string_view label) {
  for (auto id : {TheoremId::kT1_51, TheoremId::kT1_5, TheoremId::kR1_6, TheoremId::kT2, TheoremId::kT2Trunc,
                  TheoremId::kT3, TheoremId::kT4, TheoremId::kCor}) {
    if (theorem_label(id) == label) return id;
  }
  return std::nullopt;
}

bool is_norm_theorem(TheoremId id) { return id == TheoremId::kT3 || id == TheoremId::kT4; }

std::string_view ratio_flag_label(RatioFlag flag) {
  switch (flag) {
    case RatioFlag::kOk: return "ok";
    case RatioFlag::kDegenerate: return "degenerate";
    case RatioFlag::kUnbounded: return "unbounded";
    case RatioFlag::kUndefined: return "undefined";
  }
  return "?";
}

void finish_ratio(BoundReport& report) {
  if (report.rhs > kRhsFloor) {
    report.ratio = report.lhs / report.rhs;
    report.flag = RatioFlag::kOk;
  } else if (report.lhs <= kLhsFloor) {
    report.ratio = 0.0;
    report.flag = RatioFlag::kDegenerate;
  } else {
    report.ratio = std::numeric_limits<double>::infinity();
    report.flag = RatioFlag::kUnbounded;
  }
}

std::vector<double> inner_means(std::span<const double> values) {
  std::vector<double> inner(values.size());
  double sum = 0.0;
  for (std::size_t r = 0; r < values.size(); ++r) {
    sum += values[r];
    inner[r] = sum / static_cast<double>(r + 1);
  }
  return inner;
}

double weighted_bound(const TriangularMatrix& A, int n, std::span<const double> inner) {
  require_rows(A, n, "A");
  double total = 0.0;
  for (int r = 0; r <= n; ++r) total += A.at(n, r) * inner[r];
  return total;
}

double remark1_bound(const TriangularMatrix& A, int n, std::span<const double> inner) {
  require_rows(A, n, "A");
  double total = 0.0;
  double tail_prefix = 0.0;  // sum_{k=1}^{r} a_{n,k}
  for (int r = 0; r <= n; ++r) {
    if (r >= 1) tail_prefix += A.at(n, r);
    total += (A.at(n, r) + tail_prefix / (r + 1)) * inner[r];
  }
  return total + inner[n];
}

double cesaro_bound(int n, std::span<const double> inner) {
  double total = 0.0;
  for (int r = 0; r <= n; ++r) total += inner[r];
  return total / (n + 1);
}

PointData::PointData(const PeriodicFunction& f, const FourierCoefficients& coeffs, double x, int n_max,
                     const GridSpec& grid, bool with_moduli)
    : f_(&f), x_(x), grid_(grid), conjugate_(conjugate_at(f, x, {}, grid)),
      sums_(partial_sums(coeffs, n_max, x, true)) {
  if (with_moduli) {
    const AveragedModulus m(f, x, true, grid);
    tilde_ = modulus_profile(m, ModulusKind::kWTilde, n_max);
    tilde_bar_ = modulus_profile(m, ModulusKind::kWTildeBar, n_max);
  }
}

double PointData::deviation(const TriangularMatrix& A, const TriangularMatrix& B, int n, bool truncated) const {
  const double transform = ab_transform(sums_, A, B, n);
  const double target = truncated ? conjugate_truncated(*f_, x_, kPi / (n + 1), grid_) : conjugate_;
  return transform - target;
}

double rhs_theorem1(const PeriodicFunction& f, const TriangularMatrix& A, double x, int n, const GridSpec& grid) {
  require_rows(A, n, "A");
  const auto profile = modulus_profile(f, x, ModulusKind::kWTildeBar, n, grid);
  return weighted_bound(A, n, inner_means(profile.values));
}

double rhs_remark1(const PeriodicFunction& f, const TriangularMatrix& A, double x, int n, const GridSpec& grid) {
  require_rows(A, n, "A");
  const auto profile = modulus_profile(f, x, ModulusKind::kWTilde, n, grid);
  return remark1_bound(A, n, inner_means(profile.values));
}

double rhs_theorem2(const PeriodicFunction& f, double x, int n, const GridSpec& grid) {
  if (n < 0) throw DomainError("n must be nonnegative");
  const auto profile = modulus_profile(f, x, ModulusKind::kWTilde, n, grid);
  return cesaro_bound(n, inner_means(profile.values));
}

double lhs_theorem1(const PeriodicFunction& f, const TriangularMatrix& A, const TriangularMatrix& B, double x,
                    int n, bool truncated, const GridSpec& grid) {
  require_rows(A, n, "A");
  require_rows(B, n, "B");
  const auto coeffs = fourier_coeffs(f, coefficient_cutoff(n), grid);
  const PointData point(f, coeffs, x, n, grid, false);
  return std::abs(point.deviation(A, B, n, truncated));
}

std::vector<BoundReport> corollary_decay(const PeriodicFunction& f, const TriangularMatrix& A,
                                         const TriangularMatrix& B, std::span<const int> n_list, double x,
                                         const GridSpec& grid) {
  if (n_list.empty()) return {};
  if (!std::is_sorted(n_list.begin(), n_list.end()) ||
      std::adjacent_find(n_list.begin(), n_list.end()) != n_list.end()) {
    throw DomainError("corollary n list must be strictly increasing");
  }
  const int n_max = n_list.back();
  require_rows(A, n_max, "A");
  require_rows(B, n_max, "B");
  const auto coeffs = fourier_coeffs(f, coefficient_cutoff(n_max), grid);
  const PointData point(f, coeffs, x, n_max, grid, false);

  std::vector<BoundReport> rows;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    BoundReport r = make_row(TheoremId::kCor, f, A, B, n_list[i]);
    r.x = x;
    r.lhs = std::abs(point.deviation(A, B, n_list[i], false));
    if (i == 0) {
      r.rhs = 0.0;
      r.ratio = 0.0;
      r.flag = RatioFlag::kUndefined;
    } else {
      r.rhs = rows.back().lhs;
      finish_ratio(r);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::vector<BoundReport> run_pointwise(const SweepSpec& spec, const PeriodicFunction& f, const TriangularMatrix& A,
                                       const TriangularMatrix& B, int n_max) {
  const auto xs = point_grid(spec, f);
  const auto coeffs = fourier_coeffs(f, coefficient_cutoff(n_max), spec.grid);
  const bool truncated = spec.theorem == TheoremId::kT1_51 || spec.theorem == TheoremId::kT2Trunc ||
                         (spec.theorem == TheoremId::kR1_6 && spec.truncated);

  std::vector<std::vector<BoundReport>> per_x(xs.size());
  for_each_index(static_cast<int>(xs.size()), spec.execution, [&](int i) {
    const double x = xs[i];
    if (spec.theorem == TheoremId::kCor) {
      per_x[i] = corollary_decay(f, A, B, spec.n_list, x, spec.grid);
      return;
    }
    const PointData point(f, coeffs, x, n_max, spec.grid, true);
    const auto inner_bar = inner_means(point.tilde_bar().values);
    const auto inner_plain = inner_means(point.tilde().values);
    for (int n : spec.n_list) {
      BoundReport r = make_row(spec.theorem, f, A, B, n);
      r.x = x;
      r.lhs = std::abs(point.deviation(A, B, n, truncated));
      switch (spec.theorem) {
        case TheoremId::kT1_51:
        case TheoremId::kT1_5: r.rhs = weighted_bound(A, n, inner_bar); break;
        case TheoremId::kR1_6: r.rhs = remark1_bound(A, n, inner_plain); break;
        default: r.rhs = cesaro_bound(n, inner_plain); break;
      }
      finish_ratio(r);
      per_x[i].push_back(std::move(r));
    }
  });

  std::vector<BoundReport> rows;
  for (auto& block : per_x) {
    for (auto& r : block) rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<BoundReport> run_norm(const SweepSpec& spec, const PeriodicFunction& f, const TriangularMatrix& A,
                                  const TriangularMatrix& B, int n_max) {
  const auto xs = point_grid(spec, f);
  const auto coeffs = fourier_coeffs(f, coefficient_cutoff(n_max), spec.grid);

  // deviations[i][j]: signed deviation at xs[i] for spec.n_list[j].
  std::vector<std::vector<double>> deviations(xs.size());
  for_each_index(static_cast<int>(xs.size()), spec.execution, [&](int i) {
    const PointData point(f, coeffs, xs[i], n_max, spec.grid, false);
    for (int n : spec.n_list) deviations[i].push_back(point.deviation(A, B, n, spec.truncated));
  });

  std::vector<std::vector<double>> profiles(spec.p_list.size());
  for_each_index(static_cast<int>(spec.p_list.size()), spec.execution, [&](int i) {
    profiles[i] = inner_means(classical_profile(f, n_max, spec.p_list[i], spec.grid));
  });

  std::vector<BoundReport> rows;
  for (std::size_t ip = 0; ip < spec.p_list.size(); ++ip) {
    for (std::size_t j = 0; j < spec.n_list.size(); ++j) {
      const int n = spec.n_list[j];
      BoundReport r = make_row(spec.theorem, f, A, B, n);
      r.p = spec.p_list[ip];
      std::vector<double> column(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) column[i] = deviations[i][j];
      r.lhs = grid_norm(column, spec.p_list[ip], spec.x_spacing);
      r.rhs = spec.theorem == TheoremId::kT4 ? cesaro_bound(n, profiles[ip]) : weighted_bound(A, n, profiles[ip]);
      finish_ratio(r);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace

std::vector<BoundReport> run_theorem(const SweepSpec& spec, const PeriodicFunction& f, const TriangularMatrix& A,
                                     const TriangularMatrix& B) {
  spec.grid.validate();
  if (spec.n_list.empty()) throw DomainError("n list must not be empty");
  for (int n : spec.n_list) {
    if (n < 0) throw DomainError("n values must be nonnegative");
  }
  const int n_max = *std::max_element(spec.n_list.begin(), spec.n_list.end());
  require_rows(B, n_max, "B");

  const bool cesaro_a = spec.theorem == TheoremId::kT2 || spec.theorem == TheoremId::kT2Trunc ||
                        spec.theorem == TheoremId::kT4;
  const TriangularMatrix a_used = cesaro_a ? cesaro(n_max) : A;
  require_rows(a_used, n_max, "A");

  if (is_norm_theorem(spec.theorem)) return run_norm(spec, f, a_used, B, n_max);
  return run_pointwise(spec, f, a_used, B, n_max);
}

BoundReport norm_report(const PeriodicFunction& f, const TriangularMatrix& A, const TriangularMatrix& B, int n,
                        double p, bool truncated, const GridSpec& grid) {
  SweepSpec spec;
  spec.theorem = TheoremId::kT3;
  spec.n_list = {n};
  spec.p_list = {p};
  spec.truncated = truncated;
  spec.grid = grid;
  return run_theorem(spec, f, A, B).front();
}

std::vector<std::pair<int, double>> running_max_by_n(std::span<const BoundReport> rows) {
  std::map<int, double> per_n;
  for (const auto& r : rows) {
    auto& slot = per_n.try_emplace(r.n, 0.0).first->second;
    if (r.flag == RatioFlag::kOk || r.flag == RatioFlag::kUnbounded) slot = std::max(slot, r.ratio);
  }
  std::vector<std::pair<int, double>> out;
  double running = 0.0;
  for (const auto& [n, v] : per_n) {
    running = std::max(running, v);
    out.emplace_back(n, running);
  }
  return out;
}

}  // namespace conjsum
