#pragma once

#include <vector>

#include "conjsum/functions.hpp"
#include "conjsum/quadrature.hpp"

namespace conjsum {

class TriangularMatrix;

/// Truncation levels and stopping rule for the eps -> 0+ limit.
struct ConjugateSettings {
  /// Strictly decreasing, all in (0, pi]. Default pi * 2^-j, j = 1..20.
  std::vector<double> eps_sequence = default_eps_sequence();
  double extrapolation_tol = 1e-7;

  static std::vector<double> default_eps_sequence();
  void validate() const;
};

/// f~(x, eps) = -(1/pi) int_eps^pi psi_x(t) (1/2) cot(t/2) dt, graded toward eps.
double conjugate_truncated(const PeriodicFunction& f, double x, double eps, const GridSpec& grid = {});

struct ConjugateTrace {
  double value = 0.0;
  /// f~(x, eps_j) for every level visited.
  std::vector<double> truncations;
  /// Extrapolated estimate after each level.
  std::vector<double> estimates;
  int levels_used = 0;
};

/// f~(x) as the eps -> 0+ limit of the truncations.
///
/// For smooth psi the truncation error expands in odd powers of eps, so the
/// levels feed a Richardson table with exponents 1, 3, 5; the estimate is
/// accepted once two successive extrapolants differ by less than the
/// tolerance. Throws ConvergenceError carrying the last two estimates.
ConjugateTrace conjugate_trace(const PeriodicFunction& f, double x, const ConjugateSettings& settings = {},
                               const GridSpec& grid = {});

double conjugate_at(const PeriodicFunction& f, double x, const ConjugateSettings& settings = {},
                    const GridSpec& grid = {});

struct KernelDeviation {
  double to_truncated = 0.0;  ///< T~ f(x) - f~(x, pi/(n+1))
  double to_full = 0.0;       ///< T~ f(x) - f~(x)
};

/// Deviations of the conjugate AB-transform computed only from the kernel
/// integrals against psi_x, never from the transform value itself.
KernelDeviation deviation_kernel_form(const PeriodicFunction& f, const TriangularMatrix& A,
                                      const TriangularMatrix& B, int n, double x, const GridSpec& grid = {});

}  // namespace conjsum
