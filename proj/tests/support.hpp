#pragma once

#include <cmath>
#include <string>

#include "conjsum/functions.hpp"

namespace testing {

inline const conjsum::PeriodicFunction& fn(const std::string& name) { return *conjsum::find_function(name); }

inline double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

// Si(x) by its power series
inline double sine_integral(double x) {
  double term = x, sum = x;
  for (int k = 1; k < 60; ++k) {
    term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term / (2.0 * k + 1.0);
  }
  return sum;
}

}  // namespace testing
