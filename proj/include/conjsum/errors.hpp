#pragma once

#include <stdexcept>
#include <string>

namespace conjsum {

/// Argument outside the mathematical domain of an operation (eps, delta, p, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A quadrature node produced a non-finite integrand value.
class SingularIntegrandError : public std::runtime_error {
public:
  SingularIntegrandError(const std::string& what, double node)
      : std::runtime_error(what), node_(node) {}
  double node() const noexcept { return node_; }

private:
  double node_;
};

/// Requested partial sum index exceeds the stored coefficient cutoff.
class CutoffError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Matrix rows violate nonnegativity, shape or row-sum rules.
class ValidationError : public std::invalid_argument {
public:
  ValidationError(const std::string& what, int row)
      : std::invalid_argument(what), row_(row) {}
  int row() const noexcept { return row_; }

private:
  int row_;
};

/// The eps-sequence was exhausted before successive estimates agreed.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}
  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

private:
  double previous_;
  double last_;
};

}  // namespace conjsum
