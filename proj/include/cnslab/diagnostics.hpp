#pragma once

#include <array>
#include <span>
#include <vector>

#include "cnslab/cns.hpp"

namespace cnslab {

/// H(rho|1): (rho^gamma - 1 - gamma (rho - 1)) / (gamma - 1), or
/// rho ln rho - rho + 1 for gamma = 1.
double relative_entropy_density(double rho, double gamma);
/// Integral of H(rho|1) with rho = 1 + a. Throws PositivityFault if rho <= 0.
double relative_entropy(const Field& a, double gamma);
/// 1/2 int rho |u|^2.
double kinetic_energy(const Field& a, const VectorField& u);
/// int H(rho|1) + 1/2 int rho |u|^2.
double basic_energy(const FlowState& state, double gamma);

/// mu ||grad u||^2 + (lambda + mu) ||div u||^2, split into the parts carried
/// by Pu (mu |k|^2 |Pu_k|^2) and Qu (nu |k|^2 |Qu_k|^2).
struct Dissipation {
  double incompressible = 0.0;
  double compressible = 0.0;
  double total() const { return incompressible + compressible; }
};
Dissipation dissipation(const VectorField& u, const PhysicalParams& params);

/// Per-mode dissipation, the Pu parts for every half-spectrum index followed
/// by the Qu parts, with Hermitian weight and volume included.
std::vector<double> mode_dissipation(const VectorField& u, const PhysicalParams& params);
/// Time integral of the dissipation over one step of length dt from the
/// per-mode values at both ends, by the logarithmic mean per entry (exact
/// for exponential decay of each mode).
double dissipation_integral(const std::vector<double>& d0, const std::vector<double>& d1, double dt);

/// int rho |u|^4.
double l4_energy(const FlowState& state);

/// Pointwise f(rho) entering the Lyapunov functional; f(1) = f'(1) = 0 and
/// rho f''(rho) = gamma (rho^gamma - 1) rho^{gamma-1} / (lambda + 2 mu).
double f_density(double rho, double gamma, double nu);

struct LyapunovConstants {
  std::array<double, 6> A{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
};

/// The six weighted pieces of X and the comparison quantity
/// ||u||_{H^1}^2 + ||a||_{H^1}^2 + ||u_dot||_{L^2}^2.
struct LyapunovComponents {
  double l4 = 0.0;         ///< ||rho^{1/4} u||_{L^4}^4
  double gradient = 0.0;   ///< mu||grad u||^2 + (lambda+mu)||div u||^2 - (frak_a, div u) + int f
  double l6 = 0.0;         ///< ||frak_a||_{L^6}^2
  double energy = 0.0;     ///< int H(rho|1) + 1/2 ||sqrt(rho) u||^2
  double accel = 0.0;      ///< ||sqrt(rho) u_dot||^2
  double grad_frak = 0.0;  ///< ||grad frak_a||^2
  double comparison = 0.0;

  std::array<double, 6> terms() const { return {l4, gradient, l6, energy, accel, grad_frak}; }
  double value(const LyapunovConstants& c) const;
};

LyapunovComponents lyapunov_components(const FlowState& state, const Derived& derived,
                                       const PhysicalParams& params);
double lyapunov_X(const FlowState& state, const PhysicalParams& params,
                  const LyapunovConstants& constants);

/// Sum over lattice modes with |k| <= C_split (1+t)^{-1/2} of
/// gamma |a^(k)|^2 + |(rho u)^(k)|^2 times the lattice measure (2 pi/L)^dim,
/// using the continuous transform f^(k) = volume * coefficient.
double low_freq_mass(const FlowState& state, double t, double C_split, double gamma);

/// beta(p0) = 3/4 (2/p0 - 1); p0 in [1, 2].
double beta(double p0);

/// (||a0||^2_{L^p0} + ||rho0 u0||^2_{L^p0}) (1+t)^{-2 beta(p0)}
/// + (1+t)^{-3/2} int_0^t (||u||^4_{L^2} + ||a||^4_{L^2}) ds,
/// the integral by the trapezoid rule on the samples (linear interpolation
/// for t between samples). Throws ConfigError for t beyond the last sample.
double conlf_rhs(std::span<const double> times, std::span<const double> u_l2,
                 std::span<const double> a_l2, double t, double p0, double a0_lp0,
                 double m0_lp0);

struct HolderNorm {
  double seminorm = 0.0;
  double sup = 0.0;
  double total() const { return seminorm + sup; }
};
/// Max of |f(x) - f(y)| / |x - y|^alpha over grid-point pairs within
/// radius_cells grid spacings, plus ||f||_{L^inf}.
HolderNorm holder_norm(const Field& f, double alpha, int radius_cells = 4);

/// max over x of the Frobenius norm of grad u.
double grad_linf(const VectorField& u);

/// Pointwise monitors: max |f(rho)| / H(rho|1) over points with rho <= rho_bar
/// and H above round-off, and the range of frak_a / a.
struct PointwiseRatios {
  double f_over_H = 0.0;
  double frak_over_a_min = 0.0;
  double frak_over_a_max = 0.0;
};
PointwiseRatios pointwise_ratios(const Field& a, const PhysicalParams& params, double rho_bar);

}  // namespace cnslab
