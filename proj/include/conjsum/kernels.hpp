#pragma once

#include <span>
#include <vector>

#include "conjsum/functions.hpp"
#include "conjsum/quadrature.hpp"

namespace conjsum {

/// Default coefficient cutoff.
inline constexpr int kDefaultCutoff = 512;

/// Conjugate Dirichlet kernel sum_{nu=1}^{k} sin(nu t).
///
/// Uses the product form sin(kt/2) sin((k+1)t/2) / sin(t/2), falling back to the
/// direct sum where |sin(t/2)| < 1e-8.
double conj_dirichlet(int k, double t);

/// Direct summation of the same kernel; reference path.
double conj_dirichlet_direct(int k, double t);

/// (1/2)cot(t/2) - conj_dirichlet(k, t) = cos((2k+1)t/2) / (2 sin(t/2)).
/// Throws DomainError where |sin(t/2)| < 1e-12.
double conj_dirichlet_complement(int k, double t);

/// Cosine/sine coefficients a_nu, b_nu for nu = 0..N (b_0 = 0).
class FourierCoefficients {
public:
  FourierCoefficients(std::vector<double> a, std::vector<double> b);

  int cutoff() const noexcept { return static_cast<int>(a_.size()) - 1; }
  double a0() const noexcept { return a_[0]; }
  double a(int nu) const { return a_.at(nu); }
  double b(int nu) const { return b_.at(nu); }

private:
  std::vector<double> a_;
  std::vector<double> b_;
};

inline constexpr double kCoefficientNoise = 1e-14;

/// a_nu = (1/pi) int_Q f cos(nu t) dt, b_nu likewise with sin, by quadrature.
/// Smooth functions use the periodic trapezoid with at least max(m, 4(N+1))
/// nodes; functions with breakpoints use Gauss-Legendre split at them.
/// Coefficients below kCoefficientNoise * (1/pi) int |f| are set to zero.
FourierCoefficients fourier_coeffs(const PeriodicFunction& f, int N, const GridSpec& grid = {});

/// Coefficients from the closed form attached to f. Throws if f has none.
FourierCoefficients known_coeffs(const PeriodicFunction& f, int N);

/// a0/2 + sum_{nu=1}^k (a_nu cos nu x + b_nu sin nu x).
double partial_sum(const FourierCoefficients& c, int k, double x);

/// sum_{nu=1}^k (a_nu sin nu x - b_nu cos nu x).
double conj_partial_sum(const FourierCoefficients& c, int k, double x);

/// All partial sums S_0 .. S_kmax (or their conjugates) at x in one pass.
std::vector<double> partial_sums(const FourierCoefficients& c, int kmax, double x, bool conjugate);

/// -(1/pi) int_{-pi}^{pi} f(x+t) conj_dirichlet(k, t) dt, evaluated as
/// -(1/pi) int_0^pi psi_x(t) conj_dirichlet(k, t) dt.
double conj_partial_sum_integral(const PeriodicFunction& f, int k, double x, const GridSpec& grid = {});

/// Evaluates sum_nu g_nu sin(nu t) for nu = 1..g.size()-1 (g[0] ignored).
double sine_polynomial(std::span<const double> g, double t);

/// Evaluates sum_k c_k cos((2k+1) t / 2) for k = 0..c.size()-1.
double half_cosine_polynomial(std::span<const double> c, double t);

}  // namespace conjsum
