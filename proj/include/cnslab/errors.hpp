#pragma once

#include <stdexcept>
#include <string>

namespace cnslab {

/// Invalid input or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical fault during a run (CLI exit code 3).
class RuntimeFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density dropped to zero or below somewhere on the grid.
class PositivityFault : public RuntimeFault {
 public:
  PositivityFault(double min_density, const std::string& where)
      : RuntimeFault("density positivity fault in " + where +
                     ": min rho = " + std::to_string(min_density)),
        min_density_(min_density) {}
  double min_density() const { return min_density_; }

 private:
  double min_density_;
};

/// Fixed time step exceeds the CFL bound.
class CflFault : public RuntimeFault {
 public:
  CflFault(double dt, double dt_max)
      : RuntimeFault("CFL violation: dt = " + std::to_string(dt) +
                     " exceeds bound " + std::to_string(dt_max)),
        dt_(dt), dt_max_(dt_max) {}
  double dt() const { return dt_; }
  double dt_max() const { return dt_max_; }

 private:
  double dt_;
  double dt_max_;
};

/// Malformed or incompatible file (CSV, checkpoint).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cnslab
