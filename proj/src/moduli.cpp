#include "conjsum/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include <boost/math/tools/minima.hpp>

#include "conjsum/errors.hpp"

namespace conjsum {

namespace {

constexpr int kSupUniformPoints = 256;
constexpr int kSupDyadicLevels = 20;
constexpr int kSupPolished = 4;
constexpr int kSignScanSamples = 2048;

void require_delta(double delta) {
  if (!(delta > 0.0 && delta <= kPi * (1.0 + 1e-15))) {
    throw DomainError("delta must lie in (0, pi], got " + std::to_string(delta));
  }
}

void require_p(double p) {
  if (!(p >= 1.0)) throw DomainError("p must be >= 1 (or infinity), got " + std::to_string(p));
}

// Max over samples, then Brent polish of the best few interior local maxima.
double sup_from_samples(const RealFn& fn, const std::vector<double>& ts, const std::vector<double>& vs) {
  double best = *std::max_element(vs.begin(), vs.end());
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (vs[i] > vs[i - 1] && vs[i] >= vs[i + 1] && vs[i] > 0.0) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return vs[a] > vs[b]; });
  if (peaks.size() > static_cast<std::size_t>(kSupPolished)) peaks.resize(kSupPolished);
  for (std::size_t i : peaks) {
    std::uintmax_t iters = 60;
    auto neg = [&](double t) { return -fn(t); };
    const auto [t, v] = boost::math::tools::brent_find_minima(neg, ts[i - 1], ts[i + 1], 40, iters);
    (void)t;
    best = std::max(best, -v);
  }
  return best;
}

}  // namespace

std::string_view modulus_label(ModulusKind kind) {
  switch (kind) {
    case ModulusKind::kW: return "w";
    case ModulusKind::kWBar: return "w_bar";
    case ModulusKind::kWTilde: return "w_tilde";
    case ModulusKind::kWTildeBar: return "w_tilde_bar";
  }
  return "?";
}

bool is_bar(ModulusKind kind) { return kind == ModulusKind::kWBar || kind == ModulusKind::kWTildeBar; }

bool uses_psi(ModulusKind kind) {
  return kind == ModulusKind::kWTilde || kind == ModulusKind::kWTildeBar;
}

std::vector<double> sup_candidates(double delta) {
  std::vector<double> ts;
  ts.reserve(kSupUniformPoints + kSupDyadicLevels + 1);
  double scale = 1.0;
  for (int j = 0; j <= kSupDyadicLevels; ++j, scale *= 0.5) ts.push_back(delta * scale);
  for (int i = 1; i <= kSupUniformPoints; ++i) ts.push_back(delta * i / kSupUniformPoints);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

double discretized_sup(const RealFn& fn, double delta) {
  const auto ts = sup_candidates(delta);
  std::vector<double> vs(ts.size());
  std::transform(ts.begin(), ts.end(), vs.begin(), fn);
  return sup_from_samples(fn, ts, vs);
}

AveragedModulus::AveragedModulus(const PeriodicFunction& f, double x, bool use_psi, const GridSpec& grid)
    : f_(f), x_(x), use_psi_(use_psi) {
  grid.validate();
  std::vector<double> splits;
  double scale = 1.0;
  for (int j = 0; j <= grid.refinement; ++j, scale *= 0.5) splits.push_back(kPi * scale);
  const auto breaks = psi_breaks(f_, x_, 0.0, kPi);
  splits.insert(splits.end(), breaks.begin(), breaks.end());
  const double fx = f_(x_);
  auto signed_g = [&](double u) {
    return use_psi_ ? f_(x_ + u) - f_(x_ - u) : f_(x_ + u) + f_(x_ - u) - 2.0 * fx;
  };
  const auto roots = sign_changes(signed_g, 0.0, kPi, kSignScanSamples);
  splits.insert(splits.end(), roots.begin(), roots.end());
  const auto segments = detail::merge_edges(0.0, kPi, splits);

  RealFn g = [this](double u) { return abs_g(u); };
  edges_.push_back(0.0);
  cumulative_.push_back(0.0);
  for (std::size_t s = 0; s + 1 < segments.size(); ++s) {
    const double lo = segments[s];
    const double hi = segments[s + 1];
    const int panels = detail::panel_count(hi - lo, grid, 0.0);
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = lo + p * h;
      const double b = p + 1 == panels ? hi : lo + (p + 1) * h;
      cumulative_.push_back(cumulative_.back() + detail::gauss_panels(g, a, b, 1));
      edges_.push_back(b);
    }
  }
}

double AveragedModulus::abs_g(double u) const {
  if (use_psi_) return std::abs(f_(x_ + u) - f_(x_ - u));
  return std::abs(f_(x_ + u) + f_(x_ - u) - 2.0 * f_(x_));
}

double AveragedModulus::integral(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= edges_.back()) return cumulative_.back();
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - edges_.begin()) - 1;
  if (edges_[idx] == t) return cumulative_[idx];
  RealFn g = [this](double u) { return abs_g(u); };
  return cumulative_[idx] + detail::gauss_panels(g, edges_[idx], t, 1);
}

double AveragedModulus::average(double t) const {
  require_delta(t);
  return integral(t) / t;
}

double AveragedModulus::bar(double delta) const {
  require_delta(delta);
  return discretized_sup([this](double t) { return integral(t) / t; }, delta);
}

double w_tilde(const PeriodicFunction& f, double x, double delta, const GridSpec& grid) {
  require_delta(delta);
  return AveragedModulus(f, x, true, grid).plain(delta);
}

double w_plain(const PeriodicFunction& f, double x, double delta, const GridSpec& grid) {
  require_delta(delta);
  return AveragedModulus(f, x, false, grid).plain(delta);
}

double w_tilde_bar(const PeriodicFunction& f, double x, double delta, const GridSpec& grid) {
  require_delta(delta);
  return AveragedModulus(f, x, true, grid).bar(delta);
}

double w_bar(const PeriodicFunction& f, double x, double delta, const GridSpec& grid) {
  require_delta(delta);
  return AveragedModulus(f, x, false, grid).bar(delta);
}

ModulusProfile modulus_profile(const AveragedModulus& m, ModulusKind kind, int n) {
  if (n < 0) throw DomainError("profile length must be nonnegative");
  ModulusProfile profile{kind, m.x(), std::vector<double>(n + 1)};
  for (int k = n; k >= 0; --k) {
    const double delta = profile.delta(k);
    if (is_bar(kind)) {
      const double v = m.bar(delta);
      profile.values[k] = k == n ? v : std::max(v, profile.values[k + 1]);
    } else {
      profile.values[k] = m.plain(delta);
    }
  }
  return profile;
}

ModulusProfile modulus_profile(const PeriodicFunction& f, double x, ModulusKind kind, int n,
                               const GridSpec& grid) {
  return modulus_profile(AveragedModulus(f, x, uses_psi(kind), grid), kind, n);
}

double lp_norm(const RealFn& g, double p, const GridSpec& grid) {
  require_p(p);
  grid.validate();
  const double h = kTwoPi / grid.m;
  if (std::isinf(p)) {
    double best = 0.0;
    for (int i = 0; i < grid.m; ++i) best = std::max(best, std::abs(g(-kPi + i * h)));
    return best;
  }
  double sum = 0.0;
  for (int i = 0; i < grid.m; ++i) sum += std::pow(std::abs(g(-kPi + i * h)), p);
  return std::pow(sum * h, 1.0 / p);
}

double grid_norm(std::span<const double> values, double p, double spacing) {
  require_p(p);
  if (std::isinf(p)) {
    double best = 0.0;
    for (double v : values) best = std::max(best, std::abs(v));
    return best;
  }
  double sum = 0.0;
  for (double v : values) sum += std::pow(std::abs(v), p);
  return std::pow(sum * spacing, 1.0 / p);
}

std::vector<double> pointwise_norm_profile(const PeriodicFunction& f, int n, double p, std::span<const double> xs,
                                           double spacing, const GridSpec& grid) {
  if (n < 0) throw DomainError("profile length must be nonnegative");
  require_p(p);
  std::vector<std::vector<double>> by_k(n + 1, std::vector<double>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const AveragedModulus m(f, xs[i], true, grid);
    for (int k = 0; k <= n; ++k) by_k[k][i] = m.plain(kPi / (k + 1));
  }
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = grid_norm(by_k[k], p, spacing);
  return out;
}

namespace {

double shifted_norm(const PeriodicFunction& f, double t, double p, const GridSpec& grid, bool use_phi) {
  if (use_phi) {
    return lp_norm([&](double x) { return f(x + t) + f(x - t) - 2.0 * f(x); }, p, grid);
  }
  return lp_norm([&](double x) { return f(x + t) - f(x - t); }, p, grid);
}

}  // namespace

double classical_modulus(const PeriodicFunction& f, double delta, double p, const GridSpec& grid,
                         bool use_phi) {
  require_delta(delta);
  require_p(p);
  grid.validate();
  return discretized_sup([&](double t) { return shifted_norm(f, t, p, grid, use_phi); }, delta);
}

std::vector<double> classical_profile(const PeriodicFunction& f, int n, double p, const GridSpec& grid,
                                      bool use_phi) {
  if (n < 0) throw DomainError("profile length must be nonnegative");
  require_p(p);
  grid.validate();

  // Candidates t = pi * num/den are shared across k; key them by the reduced fraction.
  std::map<std::pair<long long, long long>, double> memo;
  auto norm_at = [&](long long num, long long den) {
    const long long g = std::gcd(num, den);
    const std::pair<long long, long long> key{num / g, den / g};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const double t = kPi * (static_cast<double>(key.first) / static_cast<double>(key.second));
    const double v = shifted_norm(f, t, p, grid, use_phi);
    memo.emplace(key, v);
    return v;
  };
  auto norm_fn = [&](double t) { return shifted_norm(f, t, p, grid, use_phi); };

  std::vector<double> values(n + 1);
  for (int k = n; k >= 0; --k) {
    std::vector<std::pair<double, double>> samples;
    const long long base = k + 1;
    for (int j = 0; j <= kSupDyadicLevels; ++j) {
      const long long den = base << j;
      samples.emplace_back(kPi / static_cast<double>(den), norm_at(1, den));
    }
    for (int i = 1; i <= kSupUniformPoints; ++i) {
      const long long den = base * kSupUniformPoints;
      const long long g = std::gcd(static_cast<long long>(i), den);
      samples.emplace_back(kPi * (static_cast<double>(i / g) / static_cast<double>(den / g)), norm_at(i, den));
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end(),
                              [](const auto& a, const auto& b) { return a.first == b.first; }),
                  samples.end());
    std::vector<double> ts;
    std::vector<double> vs;
    for (const auto& [t, v] : samples) {
      ts.push_back(t);
      vs.push_back(v);
    }
    const double v = sup_from_samples(norm_fn, ts, vs);
    values[k] = k == n ? v : std::max(v, values[k + 1]);
  }
  return values;
}

Lemma2Result lemma2_check(const ModulusProfile& tilde, const ModulusProfile& tilde_bar, int n) {
  if (n < 0 || tilde.n() < n || tilde_bar.n() < n) throw DomainError("profiles too short for lemma check");
  Lemma2Result r;
  double sum = 0.0;
  double sum_bar = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += tilde.values[k];
    sum_bar += tilde_bar.values[k];
  }
  r.first_lhs = tilde.values[n];
  r.first_rhs = 2.0 * sum / (n + 1);
  r.second_lhs = tilde_bar.values[n];
  r.second_rhs = sum_bar / (n + 1);
  r.first_ok = r.first_lhs <= r.first_rhs + kLemma2Slack;
  r.second_ok = r.second_lhs <= r.second_rhs + kLemma2Slack;
  return r;
}

Lemma2Result lemma2_check(const PeriodicFunction& f, double x, int n, const GridSpec& grid) {
  if (n < 0) throw DomainError("n must be nonnegative");
  const AveragedModulus m(f, x, true, grid);
  return lemma2_check(modulus_profile(m, ModulusKind::kWTilde, n),
                      modulus_profile(m, ModulusKind::kWTildeBar, n), n);
}

}  // namespace conjsum
