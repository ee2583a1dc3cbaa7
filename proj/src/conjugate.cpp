#include "conjsum/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conjsum/errors.hpp"
#include "conjsum/kernels.hpp"
#include "conjsum/summability.hpp"

namespace conjsum {

namespace {

constexpr int kRichardsonColumns = 3;
constexpr int kMinLevels = 3;

}  // namespace

std::vector<double> ConjugateSettings::default_eps_sequence() {
  std::vector<double> eps;
  for (int j = 1; j <= 20; ++j) eps.push_back(std::ldexp(kPi, -j));
  return eps;
}

void ConjugateSettings::validate() const {
  if (eps_sequence.empty()) throw DomainError("eps sequence must not be empty");
  for (std::size_t j = 0; j < eps_sequence.size(); ++j) {
    const double e = eps_sequence[j];
    if (!(e > 0.0 && e <= kPi)) throw DomainError("eps values must lie in (0, pi]");
    if (j > 0 && !(e < eps_sequence[j - 1])) throw DomainError("eps sequence must be strictly decreasing");
  }
  if (!(extrapolation_tol > 0.0)) throw DomainError("extrapolation tolerance must be positive");
}

double conjugate_truncated(const PeriodicFunction& f, double x, double eps, const GridSpec& grid) {
  if (!(eps > 0.0 && eps <= kPi)) {
    throw DomainError("truncation eps must lie in (0, pi], got " + std::to_string(eps));
  }
  grid.validate();
  if (eps == kPi) return 0.0;
  const auto breaks = psi_breaks(f, x, eps, kPi);
  auto integrand = [&](double t) { return eval_psi(f, x, t) * 0.5 / std::tan(0.5 * t); };
  return -detail::graded_value(integrand, eps, kPi, grid, breaks, 0.0) / kPi;
}

ConjugateTrace conjugate_trace(const PeriodicFunction& f, double x, const ConjugateSettings& settings,
                               const GridSpec& grid) {
  settings.validate();
  const auto& eps = settings.eps_sequence;
  ConjugateTrace trace;
  std::vector<std::vector<double>> table;
  for (std::size_t j = 0; j < eps.size(); ++j) {
    const double value = conjugate_truncated(f, x, eps[j], grid);
    trace.truncations.push_back(value);

    std::vector<double> row{value};
    const int columns = std::min<int>(static_cast<int>(j), kRichardsonColumns);
    for (int i = 1; i <= columns; ++i) {
      const double power = 2.0 * i - 1.0;
      const double ratio = std::pow(eps[j - 1] / eps[j], power);
      row.push_back(row[i - 1] + (row[i - 1] - table[j - 1][i - 1]) / (ratio - 1.0));
    }
    trace.estimates.push_back(row.back());
    table.push_back(std::move(row));

    const std::size_t levels = j + 1;
    if (levels >= kMinLevels &&
        std::abs(trace.estimates[j] - trace.estimates[j - 1]) < settings.extrapolation_tol) {
      trace.value = trace.estimates[j];
      trace.levels_used = static_cast<int>(levels);
      return trace;
    }
  }
  const double last = trace.estimates.back();
  const double previous = trace.estimates.size() > 1 ? trace.estimates[trace.estimates.size() - 2] : last;
  std::ostringstream os;
  os.precision(17);
  os << "conjugate of '" << f.name() << "' at x = " << x << " did not converge: last estimates " << previous
     << ", " << last;
  throw ConvergenceError(os.str(), previous, last);
}

double conjugate_at(const PeriodicFunction& f, double x, const ConjugateSettings& settings,
                    const GridSpec& grid) {
  return conjugate_trace(f, x, settings, grid).value;
}

KernelDeviation deviation_kernel_form(const PeriodicFunction& f, const TriangularMatrix& A,
                                      const TriangularMatrix& B, int n, double x, const GridSpec& grid) {
  grid.validate();
  const auto c = ab_weights(A, B, n);
  std::vector<double> sine(n + 1, 0.0);
  double tail = 0.0;
  for (int nu = n; nu >= 1; --nu) {
    tail += c[nu];
    sine[nu] = tail;
  }
  const double bandwidth = n + 1.0;
  const double h = kPi / (n + 1);

  auto kernel = [&](double t) { return sine_polynomial(sine, t); };
  auto complement = [&](double t) { return half_cosine_polynomial(c, t) / (2.0 * std::sin(0.5 * t)); };

  const auto near = psi_breaks(f, x, 0.0, h);
  const auto far = psi_breaks(f, x, h, kPi);
  const double inner_regular =
      detail::interval_value([&](double t) { return eval_psi(f, x, t) * kernel(t); }, 0.0, h, grid, near,
                             bandwidth);
  const double inner_complement =
      detail::graded_value([&](double t) { return eval_psi(f, x, t) * complement(t); }, 0.0, h, grid, near,
                           bandwidth);
  const double outer =
      detail::interval_value([&](double t) { return eval_psi(f, x, t) * complement(t); }, h, kPi, grid, far,
                             bandwidth);

  KernelDeviation dev{(-inner_regular + outer) / kPi, (inner_complement + outer) / kPi};
  if (!std::isfinite(dev.to_truncated) || !std::isfinite(dev.to_full)) {
    throw SingularIntegrandError("kernel-form deviation is not finite", x);
  }
  return dev;
}

}  // namespace conjsum
