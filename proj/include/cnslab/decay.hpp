#pragma once

#include <span>
#include <string>
#include <vector>

#include "cnslab/series.hpp"

namespace cnslab {

/// RMS log-space misfit above which a fit is flagged as not a power law.
inline constexpr double power_law_residual_threshold = 0.05;

struct DecayWindow {
  double t_a = 5.0;
  double t_b = 50.0;
};

/// [5, min(50, 0.5 (L/2pi)^2)], the algebraic transient of the torus.
DecayWindow default_decay_window(double box_length);

struct DecayFit {
  DecayWindow window;
  double beta_hat = 0.0;   ///< minus the slope of log y against log(1 + t)
  double prefactor = 0.0;  ///< exp(intercept)
  double residual = 0.0;   ///< RMS misfit in log space
  double target = 0.0;     ///< beta(p0) when known, NaN otherwise
  std::size_t samples = 0;
  std::string key;
  bool power_law = false;  ///< residual <= power_law_residual_threshold
};

/// Least squares of log y on log(1 + t) over samples with t in the window.
/// Throws ConfigError with fewer than 8 samples or a nonpositive value.
DecayFit fit_decay(std::span<const double> times, std::span<const double> values,
                   DecayWindow window, const std::string& key = "");
DecayFit fit_decay(const DiagnosticSeries& series, const std::string& key, DecayWindow window);

/// r(t) = E(t) + int_0^t D - E(0), relative to E(0) unless E(0) = 0.
struct EnergyBalance {
  std::vector<double> residual;
  double max_relative = 0.0;
  double max_absolute = 0.0;
  bool absolute = false;  ///< E(0) was zero; max_relative holds the absolute value
};
EnergyBalance basic_energy_balance(const DiagnosticSeries& series);

/// Running trapezoid integrals of ||grad u||_{L^inf} and its square.
struct LipschitzBudget {
  std::vector<double> integral;
  std::vector<double> integral_sq;
  double total = 0.0;
  double total_sq = 0.0;
  double last_increment = 0.0;
};
LipschitzBudget lipschitz_budget(std::span<const double> times, std::span<const double> grad_inf);
LipschitzBudget lipschitz_budget(const DiagnosticSeries& series);

}  // namespace cnslab
