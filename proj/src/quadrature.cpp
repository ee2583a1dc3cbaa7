#include "conjsum/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "conjsum/errors.hpp"

namespace conjsum {

namespace {

constexpr int kOrder = 20;
// Radians of the highest frequency allowed per panel.
constexpr double kRadiansPerPanel = 10.0;

struct GaussRule {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};
};

const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    using Rule = boost::math::quadrature::gauss<double, kOrder>;
    GaussRule r;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    // Boost stores the nonnegative half; mirror it, ascending.
    for (int i = 0; i < kOrder / 2; ++i) {
      r.nodes[kOrder / 2 - 1 - i] = -x[i];
      r.weights[kOrder / 2 - 1 - i] = w[i];
      r.nodes[kOrder / 2 + i] = x[i];
      r.weights[kOrder / 2 + i] = w[i];
    }
    return r;
  }();
  return rule;
}

double checked(const RealFn& g, double t) {
  const double v = g(t);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite integrand at t = " << t << "; use the graded rule for singular integrands";
    throw SingularIntegrandError(os.str(), t);
  }
  return v;
}

double trapezoid(const RealFn& g, int m) {
  const double h = kTwoPi / m;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += checked(g, -kPi + i * h);
  return sum * h;
}

std::vector<double> graded_edges(double a, double b, int levels, std::span<const double> breaks) {
  std::vector<double> edges;
  const double d = b - a;
  edges.reserve(levels + 2 + breaks.size());
  double scale = 1.0;
  for (int j = 0; j <= levels; ++j, scale *= 0.5) edges.push_back(a + d * scale);
  edges.push_back(a);
  for (double t : breaks) {
    if (t > a && t < b) edges.push_back(t);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

double piecewise(const RealFn& g, const std::vector<double>& edges, const GridSpec& grid,
                 double bandwidth) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    sum += detail::gauss_panels(g, lo, hi, detail::panel_count(hi - lo, grid, bandwidth));
  }
  return sum;
}

}  // namespace

void GridSpec::validate() const {
  if (m < 16 || m % 2 != 0) {
    throw DomainError("grid m must be an even integer >= 16, got " + std::to_string(m));
  }
  if (refinement < 1) {
    throw DomainError("grid refinement must be >= 1, got " + std::to_string(refinement));
  }
}

GridSpec GridSpec::coarsened() const {
  GridSpec g = *this;
  g.m = std::max(16, m / 2);
  if (g.m % 2 != 0) ++g.m;
  return g;
}

namespace detail {

int gl_order() { return kOrder; }

int panel_count(double len, const GridSpec& grid, double bandwidth) {
  const double by_density = len * grid.m / (kTwoPi * kOrder);
  const double by_frequency = len * bandwidth / kRadiansPerPanel;
  return std::max(1, static_cast<int>(std::ceil(std::max(by_density, by_frequency))));
}

double gauss_panels(const RealFn& g, double a, double b, int panels) {
  const auto& rule = gauss_rule();
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double panel = 0.0;
    for (int i = 0; i < kOrder; ++i) panel += rule.weights[i] * checked(g, mid + 0.5 * h * rule.nodes[i]);
    sum += 0.5 * h * panel;
  }
  return sum;
}

std::vector<Node> piecewise_nodes(std::span<const double> edges, const GridSpec& grid,
                                  double bandwidth) {
  const auto& rule = gauss_rule();
  std::vector<Node> out;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e];
    const double b = edges[e + 1];
    const int panels = panel_count(b - a, grid, bandwidth);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * h;
      for (int i = 0; i < kOrder; ++i) out.push_back({mid + 0.5 * h * rule.nodes[i], 0.5 * h * rule.weights[i]});
    }
  }
  return out;
}

std::vector<double> merge_edges(double a, double b, std::span<const double> breaks) {
  std::vector<double> edges{a, b};
  for (double t : breaks) {
    if (t > a && t < b) edges.push_back(t);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

double interval_value(const RealFn& g, double a, double b, const GridSpec& grid,
                      std::span<const double> breaks, double bandwidth) {
  if (b == a) return 0.0;
  if (b < a) return -interval_value(g, b, a, grid, breaks, bandwidth);
  return piecewise(g, merge_edges(a, b, breaks), grid, bandwidth);
}

double graded_value(const RealFn& g, double a, double b, const GridSpec& grid,
                    std::span<const double> breaks, double bandwidth) {
  if (b == a) return 0.0;
  return piecewise(g, graded_edges(a, b, grid.refinement, breaks), grid, bandwidth);
}

}  // namespace detail

QuadratureResult integrate_periodic(const RealFn& g, const GridSpec& grid) {
  grid.validate();
  const double fine = trapezoid(g, grid.m);
  const double coarse = trapezoid(g, grid.coarsened().m);
  return {fine, std::abs(fine - coarse)};
}

QuadratureResult integrate_interval(const RealFn& g, double a, double b, const GridSpec& grid,
                                    std::span<const double> breaks, double bandwidth) {
  grid.validate();
  const double fine = detail::interval_value(g, a, b, grid, breaks, bandwidth);
  const double coarse = detail::interval_value(g, a, b, grid.coarsened(), breaks, bandwidth / 2.0);
  return {fine, std::abs(fine - coarse)};
}

QuadratureResult integrate_graded(const RealFn& g, double a, double b, const GridSpec& grid,
                                  std::span<const double> breaks, double bandwidth) {
  grid.validate();
  if (!(a >= 0.0 && a < b && b <= kPi + 1e-15)) {
    throw DomainError("graded quadrature requires 0 <= a < b <= pi");
  }
  const double fine = detail::graded_value(g, a, b, grid, breaks, bandwidth);
  GridSpec coarse_grid = grid.coarsened();
  coarse_grid.refinement = std::max(1, grid.refinement / 2);
  const double coarse = detail::graded_value(g, a, b, coarse_grid, breaks, bandwidth / 2.0);
  return {fine, std::abs(fine - coarse)};
}

std::vector<double> sign_changes(const RealFn& g, double a, double b, int samples,
                                 double noise_floor) {
  std::vector<double> roots;
  if (!(b > a) || samples < 1) return roots;
  const double h = (b - a) / samples;
  auto node = [&](int i) { return i == samples ? b : a + i * h; };

  int last = -1;
  double last_value = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double u = node(i);
    const double v = g(u);
    if (v == 0.0 || !std::isfinite(v)) continue;
    if (last >= 0 && std::signbit(v) != std::signbit(last_value) &&
        std::max(std::abs(v), std::abs(last_value)) > noise_floor) {
      if (i == last + 1) {
        std::uintmax_t iters = 64;
        auto [lo, hi] = boost::math::tools::toms748_solve(
            g, node(last), u, last_value, v, boost::math::tools::eps_tolerance<double>(52), iters);
        roots.push_back(0.5 * (lo + hi));
      } else {
        // Exact zeros between the two samples: split at both ends of the zero run.
        roots.push_back(node(last + 1));
        roots.push_back(node(i - 1));
      }
    }
    last = i;
    last_value = v;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace conjsum
