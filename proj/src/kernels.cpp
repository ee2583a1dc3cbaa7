#include "conjsum/kernels.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "conjsum/errors.hpp"

namespace conjsum {

namespace {

constexpr double kDirectSumThreshold = 1e-8;
constexpr double kComplementSingular = 1e-12;

void require_cutoff(const FourierCoefficients& c, int k) {
  if (k < 0) throw DomainError("partial sum index must be nonnegative");
  if (k > c.cutoff()) {
    throw CutoffError("partial sum index " + std::to_string(k) + " exceeds coefficient cutoff " +
                      std::to_string(c.cutoff()));
  }
}

}  // namespace

double conj_dirichlet_direct(int k, double t) {
  double sum = 0.0;
  for (int nu = 1; nu <= k; ++nu) sum += std::sin(nu * t);
  return sum;
}

double conj_dirichlet(int k, double t) {
  const double s = std::sin(0.5 * t);
  if (std::abs(s) < kDirectSumThreshold) return conj_dirichlet_direct(k, t);
  return std::sin(0.5 * k * t) * std::sin(0.5 * (k + 1) * t) / s;
}

double conj_dirichlet_complement(int k, double t) {
  const double s = std::sin(0.5 * t);
  if (std::abs(s) < kComplementSingular) {
    throw DomainError("conjugate Dirichlet complement is singular at t = " + std::to_string(t));
  }
  return std::cos(0.5 * (2 * k + 1) * t) / (2.0 * s);
}

FourierCoefficients::FourierCoefficients(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty() || a_.size() != b_.size()) {
    throw std::invalid_argument("coefficient arrays must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!std::isfinite(a_[i]) || !std::isfinite(b_[i])) {
      throw std::invalid_argument("non-finite Fourier coefficient at index " + std::to_string(i));
    }
  }
  b_[0] = 0.0;
}

FourierCoefficients fourier_coeffs(const PeriodicFunction& f, int N, const GridSpec& grid) {
  if (N < 0) throw DomainError("coefficient cutoff must be nonnegative");
  grid.validate();

  std::vector<detail::Node> nodes;
  if (f.is_smooth()) {
    int M = std::max(grid.m, 4 * (N + 1));
    M += M % 2;
    const double h = kTwoPi / M;
    nodes.reserve(M);
    for (int i = 0; i < M; ++i) nodes.push_back({-kPi + i * h, h});
  } else {
    const auto edges = detail::merge_edges(-kPi, kPi, f.breakpoints());
    nodes = detail::piecewise_nodes(edges, grid, static_cast<double>(N + 1));
  }

  std::vector<double> a(N + 1, 0.0);
  std::vector<double> b(N + 1, 0.0);
  double scale = 0.0;
  for (const auto& node : nodes) {
    const double wf = node.w * f(node.t) / kPi;
    scale += std::abs(wf);
    const std::complex<double> step = std::polar(1.0, node.t);
    std::complex<double> z = 1.0;
    for (int nu = 0; nu <= N; ++nu) {
      a[nu] += wf * z.real();
      b[nu] += wf * z.imag();
      z *= step;
    }
  }
  // drop rounding noise, so e.g. sin has exactly one nonzero coefficient
  const double floor = kCoefficientNoise * scale;
  for (int nu = 0; nu <= N; ++nu) {
    if (std::abs(a[nu]) < floor) a[nu] = 0.0;
    if (std::abs(b[nu]) < floor) b[nu] = 0.0;
  }
  return FourierCoefficients(std::move(a), std::move(b));
}

FourierCoefficients known_coeffs(const PeriodicFunction& f, int N) {
  const auto& known = f.known_coefficients();
  if (!known) throw std::invalid_argument("function '" + f.name() + "' has no closed-form coefficients");
  std::vector<double> a(N + 1);
  std::vector<double> b(N + 1);
  for (int nu = 0; nu <= N; ++nu) {
    a[nu] = known->a(nu);
    b[nu] = nu == 0 ? 0.0 : known->b(nu);
  }
  return FourierCoefficients(std::move(a), std::move(b));
}

double partial_sum(const FourierCoefficients& c, int k, double x) {
  require_cutoff(c, k);
  double sum = 0.5 * c.a0();
  for (int nu = 1; nu <= k; ++nu) sum += c.a(nu) * std::cos(nu * x) + c.b(nu) * std::sin(nu * x);
  return sum;
}

double conj_partial_sum(const FourierCoefficients& c, int k, double x) {
  require_cutoff(c, k);
  double sum = 0.0;
  for (int nu = 1; nu <= k; ++nu) sum += c.a(nu) * std::sin(nu * x) - c.b(nu) * std::cos(nu * x);
  return sum;
}

std::vector<double> partial_sums(const FourierCoefficients& c, int kmax, double x, bool conjugate) {
  require_cutoff(c, kmax);
  std::vector<double> out(kmax + 1);
  double sum = conjugate ? 0.0 : 0.5 * c.a0();
  out[0] = sum;
  for (int nu = 1; nu <= kmax; ++nu) {
    const double cs = std::cos(nu * x);
    const double sn = std::sin(nu * x);
    sum += conjugate ? c.a(nu) * sn - c.b(nu) * cs : c.a(nu) * cs + c.b(nu) * sn;
    out[nu] = sum;
  }
  return out;
}

double conj_partial_sum_integral(const PeriodicFunction& f, int k, double x, const GridSpec& grid) {
  if (k < 0) throw DomainError("partial sum index must be nonnegative");
  grid.validate();
  const auto breaks = psi_breaks(f, x, 0.0, kPi);
  auto integrand = [&](double t) { return eval_psi(f, x, t) * conj_dirichlet(k, t); };
  return -detail::interval_value(integrand, 0.0, kPi, grid, breaks, k + 1.0) / kPi;
}

double sine_polynomial(std::span<const double> g, double t) {
  const std::complex<double> step = std::polar(1.0, t);
  std::complex<double> z = step;
  double sum = 0.0;
  for (std::size_t nu = 1; nu < g.size(); ++nu) {
    sum += g[nu] * z.imag();
    z *= step;
  }
  return sum;
}

double half_cosine_polynomial(std::span<const double> c, double t) {
  const std::complex<double> step = std::polar(1.0, t);
  std::complex<double> z = std::polar(1.0, 0.5 * t);
  double sum = 0.0;
  for (double ck : c) {
    sum += ck * z.real();
    z *= step;
  }
  return sum;
}

}  // namespace conjsum
