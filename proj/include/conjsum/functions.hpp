#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conjsum {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using RealFn = std::function<double(double)>;

/// Reduces an angle to [-pi, pi).
double wrap_angle(double x);

/// Closed-form Fourier coefficients; `a(0)` is a0, `b(0)` is ignored.
struct KnownCoefficients {
  std::function<double(int)> a;
  std::function<double(int)> b;
};

/// Closed-form conjugate together with the points (mod 2*pi) where it blows up.
struct KnownConjugate {
  RealFn eval;
  std::vector<double> singular_points;
};

/// A named 2*pi-periodic real function.
///
/// Breakpoints are the points of one period, reduced to [-pi, pi), where the
/// function or its derivative jumps. Quadrature routines split their meshes
/// there so that every panel sees a smooth integrand.
class PeriodicFunction {
public:
  PeriodicFunction(std::string name, RealFn eval, std::vector<double> breakpoints = {});

  PeriodicFunction& with_coefficients(KnownCoefficients coeffs);
  PeriodicFunction& with_conjugate(KnownConjugate conjugate);

  const std::string& name() const noexcept { return name_; }
  double operator()(double x) const { return eval_(x); }

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  bool is_smooth() const noexcept { return breakpoints_.empty(); }

  const std::optional<KnownCoefficients>& known_coefficients() const noexcept { return coeffs_; }
  const std::optional<KnownConjugate>& known_conjugate() const noexcept { return conjugate_; }

  /// True when x coincides (mod 2*pi, within tol) with a singular point of the known conjugate.
  bool is_conjugate_singular(double x, double tol = 1e-9) const;

private:
  std::string name_;
  RealFn eval_;
  std::vector<double> breakpoints_;
  std::optional<KnownCoefficients> coeffs_;
  std::optional<KnownConjugate> conjugate_;
};

/// psi_x(t) = f(x+t) - f(x-t).
inline double eval_psi(const PeriodicFunction& f, double x, double t) { return f(x + t) - f(x - t); }

/// phi_x(t) = f(x+t) + f(x-t) - 2 f(x).
inline double eval_phi(const PeriodicFunction& f, double x, double t) {
  return f(x + t) + f(x - t) - 2.0 * f(x);
}

/// Points t in (a, b) where psi_x or phi_x may have a kink or jump, sorted.
std::vector<double> psi_breaks(const PeriodicFunction& f, double x, double a, double b);

/// Points x in (-pi, pi) where psi_.(t) or phi_.(t), seen as a function of x, may be nonsmooth.
std::vector<double> shifted_breaks(const PeriodicFunction& f, double t);

/// Built-in test functions: const, sin, cos, sin3x, sawtooth, hat.
const std::vector<PeriodicFunction>& corpus();

/// Registry lookup by name; nullptr when absent.
const PeriodicFunction* find_function(std::string_view name);

/// Comma separated registry names, for diagnostics.
std::string registry_names();

/// Default evaluation points {j*pi/16 : j = 1..15} and their negatives, ascending.
std::vector<double> default_x_grid();

}  // namespace conjsum
