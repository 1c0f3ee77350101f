#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cnslab/config.hpp"
#include "cnslab/series.hpp"

namespace cnslab {

/// Running time integrals carried across steps and checkpoints.
struct Accumulators {
  double int_D = 0.0;          ///< per-mode log-mean quadrature of the dissipation
  double int_grad = 0.0;       ///< trapezoid of ||grad u||_inf over snapshots
  double int_grad_sq = 0.0;
  double int_quartic = 0.0;    ///< trapezoid of ||u||_2^4 + ||a||_2^4 over snapshots
  double last_t = 0.0;         ///< time of the previous snapshot
  double last_grad = 0.0;
  double last_quartic = 0.0;
  double E0 = 0.0;
  long snapshots = 0;
};

/// Everything needed to continue a run bit-for-bit.
struct RunState {
  FlowState state;
  long step = 0;     ///< steps taken; t = step * dt in fixed-step runs
  double dt = 0.0;
  Accumulators acc;
  LyapunovConstants constants;
  std::map<std::string, double> record;  ///< scenario record and initial norms
  std::string config_text;
};

struct FaultRecord {
  double t = 0.0;
  std::string kind;  ///< "positivity" or "cfl"
  std::string message;
};

struct RunResult {
  DiagnosticSeries series;
  RunState final_state;
  std::optional<FaultRecord> fault;
  std::vector<std::string> notes;
};

struct RunOptions {
  std::optional<double> horizon;   ///< replaces solver.T
  const RunState* resume = nullptr;
  /// Called every checkpoint_every snapshots (if positive) and at the end.
  std::function<void(const RunState&)> checkpoint;
};

/// Column names of the series produced by run() for this configuration.
std::vector<std::string> series_columns(const RunConfig& config);

/// Snapshot step indices for a fixed-step run of `steps` steps.
std::vector<long> snapshot_steps(const Cadence& cadence, double dt, long steps);

/// Initial RunState: scenario, calibration, E0 and the recorded L^p0 norms.
RunState initial_run_state(const RunConfig& config);

/// Integrates to the horizon, sampling the diagnostics at the cadence.
/// Positivity and CFL faults stop the run; the series keeps every completed
/// snapshot and the fault is reported in the result and metadata.
RunResult run(const RunConfig& config, const RunOptions& options = {});

/// Twin runs for the stability experiment: the reference and perturbed
/// states advance in lockstep and each snapshot records the perturbation
/// norm of their difference.
struct PairResult {
  DiagnosticSeries series;
  PerturbationNorm initial;
  std::optional<FaultRecord> fault;
};
PairResult run_pair(const RunConfig& config, const RunOptions& options = {});

}  // namespace cnslab
