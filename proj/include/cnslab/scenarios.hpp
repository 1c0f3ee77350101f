#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cnslab/cns.hpp"

namespace cnslab {

enum class ScenarioKind { equilibrium, equilibrium_perturbation, oscillating, large_vertical, stability_pair };
ScenarioKind parse_scenario_kind(const std::string& name);
std::string to_string(ScenarioKind kind);

struct ScenarioInfo {
  std::string name;
  std::string description;
};
std::vector<ScenarioInfo> scenario_catalog();

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::equilibrium_perturbation;
  double epsilon = 1e-2;     ///< amplitude (sup norm of a0 and of |u0|)
  double p0 = 1.0;           ///< integrability class of the localized data
  std::uint64_t seed = 1;
  double bump_radius = 0.0;  ///< 0 selects L/8
  double riesz_margin = 0.0; ///< subtracted from the critical potential order
  double modulation = 0.5;   ///< relative amplitude of the random cosine modulation
  // oscillating
  double eps_osc = 0.125;
  double osc_amplitude = 1.0;
  // large_vertical
  double vertical_amplitude = 1.0;
  double budget = 1e-2;
  double witness_C = 1.0;
  double p = 2.0;
  // stability_pair
  double eps_pert = 1e-3;
  std::uint64_t pert_seed = 2;
  double R0 = 1.0;

  void validate() const;
};

/// Generated initial data with the quantities the construction records.
struct ScenarioState {
  FlowState state;
  std::map<std::string, double> record;
  std::vector<std::string> notes;
};

/// Smooth compactly supported bump exp(1 - 1/(1 - r^2)) for r < 1, peak 1.
double bump(double r);

struct LocalizedOptions {
  double bump_radius = 0.0;  ///< 0 selects L/8
  double riesz_margin = 0.0;
  double modulation = 0.5;
};
/// Localized small data: a0 = eps g, u0 = eps v with g, v the potential
/// Lambda^{-s}, s = max(0, 3(1 - 1/p0) - margin), of a modulated bump,
/// mean-subtracted and normalized to sup norm eps.
ScenarioState equilibrium_perturbation(const GridPtr& grid, double eps, double p0,
                                       std::uint64_t seed, const LocalizedOptions& options = {});

/// u0 = A sin(k3 x3) (-d2 phi, d1 phi, 0), k3 = 1/eps_osc snapped to the lattice.
ScenarioState oscillating_data(const GridPtr& grid, double eps_osc, double amplitude,
                               double bump_radius = 0.0);

/// Terms of the large-vertical smallness condition.
struct SmallDataLhs {
  double low_aQ = 0.0;     ///< ||(a0, Qu0)||^l in B^{1/2}_{2,1}
  double high_Q = 0.0;     ///< ||Qu0||^H in B^{3/p-1}_{p,1}
  double high_a = 0.0;     ///< ||a0||^H in B^{3/p}_{p,1}
  double horizontal = 0.0; ///< ||(Pu0)^h|| in B^{3/p-1}_{p,1}
  double vertical = 0.0;   ///< ||(Pu0)^3|| in B^{3/p-1}_{p,1}
  double factor = 0.0;     ///< exp(C (1 + vertical))
  double total = 0.0;      ///< (first four) * factor
};
SmallDataLhs smalldata_lhs(const FlowState& state, double p, double C, double R0 = 1.0);

/// x3-independent vertical field of sup amplitude vertical_amplitude plus
/// small (a0, Qu0, (Pu0)^h) scaled so the smallness left side equals budget.
/// Throws ConfigError when the required scale drops below 1e-14.
ScenarioState large_vertical_data(const GridPtr& grid, double budget, double p,
                                  double vertical_amplitude, double witness_C,
                                  std::uint64_t seed = 1, double R0 = 1.0);

/// Perturbation norm of (delta a, delta u) with its three summands.
struct PerturbationNorm {
  double density = 0.0;         ///< hybrid B^{1/2, 3/p}_{2,p}
  double incompressible = 0.0;  ///< B^{3/p-1}_{p,1} of P delta u
  double compressible = 0.0;    ///< hybrid B^{1/2, 3/p-1}_{2,p} of Q delta u
  double total() const { return density + incompressible + compressible; }
};
PerturbationNorm perturbation_norm(const Field& da, const VectorField& du, double p,
                                   double R0 = 1.0);

/// Reference state and a perturbed copy whose difference has perturbation
/// norm eps_pert.
struct StabilityPair {
  ScenarioState reference;
  FlowState perturbed;
  PerturbationNorm difference;
};
StabilityPair stability_pair(const ScenarioState& base, double eps_pert, std::uint64_t seed,
                             double p = 2.0, double R0 = 1.0);

/// Builds the configured scenario; stability_pair builds its base as an
/// equilibrium perturbation and returns the reference half here.
ScenarioState build_scenario(const ScenarioConfig& config, const GridPtr& grid);

}  // namespace cnslab
