#pragma once

#include <string>
#include <vector>

#include "cnslab/diagnostics.hpp"

namespace cnslab {

/// Constants for X from the linearized acoustic-viscous system. Per mode
/// with wavenumber kappa, (a, d) obeys a' = -kappa d, d' = gamma kappa a -
/// nu kappa^2 d and b = |Pu| decays at mu kappa^2. The A2, A4, A5, A6 slots
/// are quadratic forms in (a, d, b); the search keeps the weighted sum
/// positive definite with a negative definite time derivative on
/// [kappa_min, kappa_max] and picks the narrowest band against
/// (1 + kappa^2)(a^2 + d^2 + b^2) + |u_t|^2.
struct LinearCalibration {
  LyapunovConstants constants;
  double band_low = 0.0;
  double band_high = 0.0;
  double band() const { return band_high / band_low; }
};
LinearCalibration calibrate_linear(const PhysicalParams& params, double kappa_min,
                                   double kappa_max);

/// Extremes of the X / comparison ratio and the largest eigenvalue of the
/// derivative form over the sampled kappa range; negative max_rate means X
/// decays for every linear mode.
struct LinearCheck {
  bool positive = false;
  double max_rate = 0.0;
  double band_low = 0.0;
  double band_high = 0.0;
};
LinearCheck check_linear(const LyapunovConstants& c, const PhysicalParams& params,
                         double kappa_min, double kappa_max, int samples = 200);

/// Full calibration: linear constants, then A1 and A3 taken as the largest
/// entries of the ladder 1, 1/2, ..., 2^-12, 0 for which X is nonincreasing
/// step by step on a coarse reference run (equilibrium_perturbation, n = 16,
/// eps = 1e-2, p0 = 1, seed 1, T = 2) with the caller's box and parameters.
struct Calibration {
  LyapunovConstants constants;
  double linear_band = 0.0;
  int reference_n = 16;
  double reference_T = 2.0;
  std::size_t reference_steps = 0;
  std::vector<std::string> notes;
};
Calibration calibrate_lyapunov(const PhysicalParams& params, const Grid& grid,
                               const SolverConfig& solver);

}  // namespace cnslab
