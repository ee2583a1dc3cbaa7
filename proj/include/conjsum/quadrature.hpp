#pragma once

#include <span>
#include <vector>

#include "conjsum/functions.hpp"

namespace conjsum {

/// Mesh controls shared by every integrator.
///
/// `m` is the number of uniform nodes per period (trapezoid) and also sets the
/// node density of the Gauss-Legendre panel rules. `refinement` is the number
/// of geometric levels (ratio 1/2) used by the graded rule.
struct GridSpec {
  int m = 1024;
  int refinement = 24;

  /// Throws DomainError unless m >= 16, m even, refinement >= 1.
  void validate() const;
  /// Same grid with half as many nodes (never below 16).
  GridSpec coarsened() const;
};

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
};

/// Composite trapezoid over one full period [-pi, pi]; spectrally accurate for
/// smooth periodic integrands. est_error is the difference to the m/2 rule.
QuadratureResult integrate_periodic(const RealFn& g, const GridSpec& grid);

/// Composite Gauss-Legendre over [a, b], with panel edges forced at `breaks`.
/// `bandwidth` is the largest angular frequency in g; panels are refined so
/// that oscillatory integrands stay resolved.
QuadratureResult integrate_interval(const RealFn& g, double a, double b, const GridSpec& grid,
                                    std::span<const double> breaks = {}, double bandwidth = 0.0);

/// Gauss-Legendre on a mesh graded geometrically toward `a` (ratio 1/2,
/// grid.refinement levels). The endpoint a itself is never sampled, so g may
/// have an integrable 1/t-type singularity there. Requires 0 <= a < b <= pi.
QuadratureResult integrate_graded(const RealFn& g, double a, double b, const GridSpec& grid,
                                  std::span<const double> breaks = {}, double bandwidth = 0.0);

/// Locations in (a, b) where g changes sign, refined to machine precision.
/// Brackets whose endpoint magnitudes are both below `noise_floor` are ignored.
std::vector<double> sign_changes(const RealFn& g, double a, double b, int samples = 1024,
                                 double noise_floor = 1e-12);

namespace detail {

/// Value-only kernels behind the public integrators; they skip the
/// error estimate and are used on hot paths.
double interval_value(const RealFn& g, double a, double b, const GridSpec& grid,
                      std::span<const double> breaks, double bandwidth);
double graded_value(const RealFn& g, double a, double b, const GridSpec& grid,
                    std::span<const double> breaks, double bandwidth);

/// Gauss-Legendre rule of order gl_order() on [a, b], `panels` equal panels.
double gauss_panels(const RealFn& g, double a, double b, int panels);

/// Panel count for a smooth segment of length len.
int panel_count(double len, const GridSpec& grid, double bandwidth);

/// Sorted, deduplicated panel edges on [a, b] including both ends.
std::vector<double> merge_edges(double a, double b, std::span<const double> breaks);

int gl_order();

struct Node {
  double t;
  double w;
};

/// Nodes and weights of the composite Gauss-Legendre rule on the given edges.
std::vector<Node> piecewise_nodes(std::span<const double> edges, const GridSpec& grid, double bandwidth);

}  // namespace detail

}  // namespace conjsum
