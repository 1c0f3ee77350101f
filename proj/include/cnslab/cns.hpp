#pragma once

#include <string>

#include "cnslab/helmholtz.hpp"

namespace cnslab {

/// Constant viscosities and pressure P(rho) = rho^gamma.
struct PhysicalParams {
  double mu = 1.0;
  double lambda = 0.0;
  double gamma = 1.4;
  /// Additionally require mu > lambda / 2.
  bool strict = false;

  double nu() const { return lambda + 2.0 * mu; }
  /// Throws ConfigError when mu <= 0, lambda + 2 mu <= 0, gamma < 1, or
  /// (strict) mu <= lambda / 2.
  void validate() const;
};

enum class Scheme { imex1, imex2 };
Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

/// Switches for isolating parts of the dynamics in tests.
struct SolverHooks {
  bool transport = true;        ///< u.grad u and div(a u)
  bool freeze_density = false;  ///< da/dt forced to zero
};

struct SolverConfig {
  double dt = 0.01;
  double cfl = 0.5;
  Scheme scheme = Scheme::imex2;
  bool adaptive = false;  ///< shrink dt to the CFL bound instead of failing
  SolverHooks hooks;

  void validate() const;
};

/// (a, u) = (rho - 1, velocity) at time t. The solver keeps both inside the
/// two-thirds ball, in spectral representation.
struct FlowState {
  double t = 0.0;
  Field a;
  VectorField u;

  static FlowState equilibrium(const GridPtr& grid);
  const Grid& grid() const { return a.grid(); }
  const GridPtr& grid_ptr() const { return a.grid_ptr(); }
  /// Spectral copy with every mode outside the dealiasing ball removed.
  FlowState truncated() const;
};

struct Rhs {
  Field da_dt;
  VectorField du_dt;
};

/// Velocity form: da/dt = -div((1 + a) u),
/// du/dt = -u.grad u + (1/rho) V u - grad h(rho),
/// V u = mu Lap u + (lambda + mu) grad div u, h' = P'(rho) / rho.
Rhs rhs(const FlowState& state, const PhysicalParams& params, const SolverHooks& hooks = {});

/// Momentum right-hand side at t = 0; identical to rhs(state).du_dt.
VectorField admissible_ut(const Field& a0, const VectorField& u0, const PhysicalParams& params);

/// Enthalpy h(rho) = gamma/(gamma-1) (rho^{gamma-1} - 1), or ln rho for gamma = 1.
double enthalpy(double rho, double gamma);

/// Largest dt allowed by cfl * dx / (max|u| + sqrt(gamma max rho^{gamma-1})).
double cfl_bound(const FlowState& state, const PhysicalParams& params, double cfl);

/// Per-mode exponential of V over dt applied to u (exact viscous flow).
VectorField viscous_propagator(const VectorField& u, const PhysicalParams& params, double dt);

/// Advances by dt. In fixed mode a dt above the CFL bound raises CflFault;
/// the caller handles adaptive shrinking. Loss of positivity raises
/// PositivityFault.
FlowState step(const FlowState& state, const SolverConfig& config,
               const PhysicalParams& params, double dt);
inline FlowState step(const FlowState& state, const SolverConfig& config,
                      const PhysicalParams& params) {
  return step(state, config, params, config.dt);
}

/// Quantities derived from a state that diagnostics need.
struct Derived {
  Field frak_a;  ///< rho^gamma - 1
  HelmholtzSplit split;
  VectorField u_t;
  VectorField u_dot;  ///< u_t + u.grad u
};
Derived derive(const FlowState& state, const PhysicalParams& params);

}  // namespace cnslab
