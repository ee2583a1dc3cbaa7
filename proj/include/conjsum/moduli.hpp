#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "conjsum/functions.hpp"
#include "conjsum/quadrature.hpp"

namespace conjsum {

enum class ModulusKind { kW, kWBar, kWTilde, kWTildeBar };

std::string_view modulus_label(ModulusKind kind);
bool is_bar(ModulusKind kind);
/// True for the psi-based (tilde) kinds.
bool uses_psi(ModulusKind kind);

/// Modulus values at delta_k = pi/(k+1), k = 0..n.
struct ModulusProfile {
  ModulusKind kind = ModulusKind::kWTilde;
  std::optional<double> x;
  std::vector<double> values;

  double delta(int k) const { return kPi / (k + 1); }
  int n() const { return static_cast<int>(values.size()) - 1; }
};

/// Candidate points for sup over 0 < t <= delta: delta*2^-j (j = 0..20) and a
/// uniform 256-point grid on (0, delta], ascending.
std::vector<double> sup_candidates(double delta);

/// Discretized sup of fn over (0, delta]: maximum over sup_candidates, with each
/// interior local maximum polished by Brent's method. Never exceeds the true sup.
double discretized_sup(const RealFn& fn, double delta);

/// Averages (1/t) int_0^t |g_x(u)| du for g = psi_x or phi_x, backed by a
/// precomputed cumulative integral on [0, pi]. The mesh is split at the
/// function's breakpoints and at the sign changes of g, so |g| is smooth on
/// every panel.
class AveragedModulus {
public:
  AveragedModulus(const PeriodicFunction& f, double x, bool use_psi, const GridSpec& grid = {});

  /// int_0^t |g_x(u)| du for 0 <= t <= pi.
  double integral(double t) const;
  /// (1/t) int_0^t |g_x(u)| du; 0 < t <= pi.
  double average(double t) const;
  /// Plain modulus at delta.
  double plain(double delta) const { return average(delta); }
  /// Bar modulus at delta (discretized sup of `average`).
  double bar(double delta) const;

  double x() const noexcept { return x_; }

private:
  double abs_g(double u) const;

  PeriodicFunction f_;
  double x_;
  bool use_psi_;
  std::vector<double> edges_;
  std::vector<double> cumulative_;
};

/// w~_x f(delta) = (1/delta) int_0^delta |psi_x(u)| du.
double w_tilde(const PeriodicFunction& f, double x, double delta, const GridSpec& grid = {});
/// w_x f(delta) with phi_x.
double w_plain(const PeriodicFunction& f, double x, double delta, const GridSpec& grid = {});
/// sup_{0<t<=delta} (1/t) int_0^t |psi_x(u)| du, discretized.
double w_tilde_bar(const PeriodicFunction& f, double x, double delta, const GridSpec& grid = {});
/// Same with phi_x.
double w_bar(const PeriodicFunction& f, double x, double delta, const GridSpec& grid = {});

/// Profile of a pointwise modulus for k = 0..n. Bar profiles are made
/// nondecreasing in delta by a running max from the smallest delta upward;
/// every entry is still attained by some t <= delta_k.
ModulusProfile modulus_profile(const AveragedModulus& m, ModulusKind kind, int n);
ModulusProfile modulus_profile(const PeriodicFunction& f, double x, ModulusKind kind, int n,
                               const GridSpec& grid = {});

/// L^p norm over Q = [-pi, pi] by the periodic trapezoid rule; p = inf is the
/// max over the grid nodes. Throws DomainError for p < 1.
double lp_norm(const RealFn& g, double p, const GridSpec& grid = {});

/// Discrete L^p norm of samples on a uniform grid with the given spacing.
double grid_norm(std::span<const double> values, double p, double spacing);

/// omega~ f(delta)_{L^p} = sup_{0<t<=delta} ||psi_.(t)||_{L^p} (or omega with phi).
double classical_modulus(const PeriodicFunction& f, double delta, double p, const GridSpec& grid = {},
                         bool use_phi = false);

/// Classical modulus at delta_k = pi/(k+1), k = 0..n, sharing norm evaluations
/// between the candidate sets of different k. Nondecreasing in delta.
std::vector<double> classical_profile(const PeriodicFunction& f, int n, double p, const GridSpec& grid = {},
                                      bool use_phi = false);

/// Discrete L^p norm over the points xs of x -> w~_x f(pi/(k+1)), k = 0..n.
std::vector<double> pointwise_norm_profile(const PeriodicFunction& f, int n, double p, std::span<const double> xs,
                                           double spacing, const GridSpec& grid = {});

struct Lemma2Result {
  bool first_ok = false;
  bool second_ok = false;
  double first_lhs = 0.0;   ///< w~(pi/(n+1))
  double first_rhs = 0.0;   ///< 2/(n+1) sum_r w~(pi/(r+1))
  double second_lhs = 0.0;  ///< w~bar(pi/(n+1))
  double second_rhs = 0.0;  ///< 1/(n+1) sum_r w~bar(pi/(r+1))
};

inline constexpr double kLemma2Slack = 1e-9;

/// Both averaging inequalities for the psi moduli at row n.
Lemma2Result lemma2_check(const PeriodicFunction& f, double x, int n, const GridSpec& grid = {});
/// Same from precomputed profiles (both must reach at least n).
Lemma2Result lemma2_check(const ModulusProfile& tilde, const ModulusProfile& tilde_bar, int n);

}  // namespace conjsum
