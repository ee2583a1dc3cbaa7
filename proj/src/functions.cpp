#include "conjsum/functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conjsum {

double wrap_angle(double x) {
  double y = std::remainder(x, kTwoPi);
  if (y >= kPi) y -= kTwoPi;
  return y;
}

PeriodicFunction::PeriodicFunction(std::string name, RealFn eval, std::vector<double> breakpoints)
    : name_(std::move(name)), eval_(std::move(eval)), breakpoints_(std::move(breakpoints)) {
  for (double& c : breakpoints_) c = wrap_angle(c);
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

PeriodicFunction& PeriodicFunction::with_coefficients(KnownCoefficients coeffs) {
  coeffs_ = std::move(coeffs);
  return *this;
}

PeriodicFunction& PeriodicFunction::with_conjugate(KnownConjugate conjugate) {
  conjugate_ = std::move(conjugate);
  return *this;
}

bool PeriodicFunction::is_conjugate_singular(double x, double tol) const {
  if (!conjugate_) return false;
  return std::any_of(conjugate_->singular_points.begin(), conjugate_->singular_points.end(),
                     [&](double s) { return std::abs(wrap_angle(x - s)) <= tol; });
}

namespace {

// Appends every t = s + 2*pi*j lying strictly inside (a, b).
void add_periodic_images(double s, double a, double b, std::vector<double>& out) {
  double t = s - kTwoPi * std::floor((s - a) / kTwoPi);
  constexpr double kEdge = 1e-14;
  for (; t < b; t += kTwoPi) {
    if (t > a + kEdge && t < b - kEdge) out.push_back(t);
  }
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<double> psi_breaks(const PeriodicFunction& f, double x, double a, double b) {
  std::vector<double> out;
  for (double c : f.breakpoints()) {
    add_periodic_images(c - x, a, b, out);
    add_periodic_images(x - c, a, b, out);
  }
  sort_unique(out);
  return out;
}

std::vector<double> shifted_breaks(const PeriodicFunction& f, double t) {
  std::vector<double> out;
  for (double c : f.breakpoints()) {
    add_periodic_images(c - t, -kPi, kPi, out);
    add_periodic_images(c + t, -kPi, kPi, out);
    add_periodic_images(c, -kPi, kPi, out);
  }
  sort_unique(out);
  return out;
}

namespace {

std::vector<PeriodicFunction> build_corpus() {
  std::vector<PeriodicFunction> fs;

  fs.emplace_back("const", [](double) { return 1.0; });
  fs.back()
      .with_coefficients({[](int nu) { return nu == 0 ? 2.0 : 0.0; }, [](int) { return 0.0; }})
      .with_conjugate({[](double) { return 0.0; }, {}});

  fs.emplace_back("sin", [](double x) { return std::sin(x); });
  fs.back()
      .with_coefficients({[](int) { return 0.0; }, [](int nu) { return nu == 1 ? 1.0 : 0.0; }})
      .with_conjugate({[](double x) { return -std::cos(x); }, {}});

  fs.emplace_back("cos", [](double x) { return std::cos(x); });
  fs.back()
      .with_coefficients({[](int nu) { return nu == 1 ? 1.0 : 0.0; }, [](int) { return 0.0; }})
      .with_conjugate({[](double x) { return std::sin(x); }, {}});

  fs.emplace_back("sin3x", [](double x) { return std::sin(3.0 * x); });
  fs.back()
      .with_coefficients({[](int) { return 0.0; }, [](int nu) { return nu == 3 ? 1.0 : 0.0; }})
      .with_conjugate({[](double x) { return -std::cos(3.0 * x); }, {}});

  // Sum of sin(kx)/k: (pi - x)/2 on (0, 2*pi), zero at the jump.
  fs.emplace_back(
      "sawtooth",
      [](double x) {
        const double y = wrap_angle(x);
        const double jump = y > 0.0 ? kPi / 2.0 : (y < 0.0 ? -kPi / 2.0 : 0.0);
        return jump - y / 2.0;
      },
      std::vector<double>{0.0});
  fs.back()
      .with_coefficients({[](int) { return 0.0; }, [](int nu) { return nu == 0 ? 0.0 : 1.0 / nu; }})
      .with_conjugate({[](double x) { return std::log(2.0 * std::abs(std::sin(x / 2.0))); }, {0.0}});

  // Unit triangle of half-width 1 centred at 0.5.
  constexpr double kHatCentre = 0.5;
  fs.emplace_back(
      "hat",
      [](double x) { return std::max(0.0, 1.0 - std::abs(wrap_angle(x) - kHatCentre)); },
      std::vector<double>{kHatCentre - 1.0, kHatCentre, kHatCentre + 1.0});
  auto hat_profile = [](int nu) { return 2.0 * (1.0 - std::cos(nu)) / (kPi * nu * nu); };
  fs.back().with_coefficients(
      {[=](int nu) { return nu == 0 ? 1.0 / kPi : std::cos(nu * kHatCentre) * hat_profile(nu); },
       [=](int nu) { return nu == 0 ? 0.0 : std::sin(nu * kHatCentre) * hat_profile(nu); }});

  return fs;
}

}  // namespace

const std::vector<PeriodicFunction>& corpus() {
  static const std::vector<PeriodicFunction> fs = build_corpus();
  return fs;
}

const PeriodicFunction* find_function(std::string_view name) {
  for (const auto& f : corpus()) {
    if (f.name() == name) return &f;
  }
  return nullptr;
}

std::string registry_names() {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : corpus()) {
    os << (first ? "" : ", ") << f.name();
    first = false;
  }
  return os.str();
}

std::vector<double> default_x_grid() {
  std::vector<double> xs;
  for (int j = 15; j >= 1; --j) xs.push_back(-j * kPi / 16.0);
  for (int j = 1; j <= 15; ++j) xs.push_back(j * kPi / 16.0);
  return xs;
}

}  // namespace conjsum
