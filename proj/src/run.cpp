#include "cnslab/run.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cnslab/errors.hpp"
#include "cnslab/lyapunov.hpp"
#include "cnslab/spectral_ops.hpp"

namespace cnslab {

namespace {

std::vector<double> lp_list(const DiagnosticsConfig& d) {
  std::vector<double> lp = d.lp;
  if (std::find(lp.begin(), lp.end(), 2.0) == lp.end()) lp.insert(lp.begin(), 2.0);
  return lp;
}

VectorField momentum(const FlowState& s) {
  const Field rho = s.a.to_spectral() + Field::constant(s.grid_ptr(), 1.0);
  std::vector<Field> m;
  for (int c = 0; c < s.u.dim(); ++c) m.push_back(dealiased_product(rho, s.u[c]));
  return VectorField(std::move(m));
}

const VectorField& target_field(const std::string& target, const VectorField& u,
                                const HelmholtzSplit& split, VectorField& scratch) {
  if (target == "u") return u;
  if (target == "Pu") return split.Pu;
  if (target == "Qu") return split.Qu;
  if (target == "Pu_h") return scratch = split.Pu.horizontal();
  if (target == "Pu3") return scratch = VectorField({split.Pu.vertical()});
  throw ConfigError("unknown norm target '" + target + "'");
}

std::string key_name(const std::string& stem, double p) { return stem + format_number(p); }

struct Clock {
  long step = 0;
  double t = 0.0;
};

// Drives a time loop over the configured cadence up to T. The schedule is
// that of a run to T_sched, so a run stopped early (or resumed) keeps the
// snapshot nodes of the full run; snapshot(on_schedule) is false for the
// extra samples at the start and end.
void drive(const SolverSection& solver, double T, double T_sched, Clock& clock,
           const std::function<double()>& cfl_limit,
           const std::function<void(double, double)>& advance,
           const std::function<void(bool)>& snapshot) {
  const double dt = solver.solver.dt;
  T_sched = std::max(T, T_sched);
  if (!solver.solver.adaptive) {
    auto count = [dt](double h) { return h > 0.0 ? static_cast<long>(std::ceil(h / dt - 1e-9)) : 0L; };
    const long K = count(T);
    const auto steps = snapshot_steps(solver.cadence, dt, count(T_sched));
    const std::set<long> snaps(steps.begin(), steps.end());
    snapshot(snaps.count(clock.step) > 0);
    while (clock.step < K) {
      advance(dt, static_cast<double>(clock.step + 1) * dt);
      ++clock.step;
      clock.t = static_cast<double>(clock.step) * dt;
      const bool on = snaps.count(clock.step) > 0;
      if (on || clock.step == K) snapshot(on);
    }
    return;
  }
  const Cadence& c = solver.cadence;
  auto schedule = [&c](double horizon) {
    std::vector<double> times;
    if (c.kind == CadenceKind::geometric) {
      for (int n = 1;; ++n) {
        const double tn = std::exp2(n / 4.0) - 1.0;
        if (tn >= horizon) break;
        times.push_back(tn);
      }
    } else if (c.kind == CadenceKind::uniform) {
      for (long m = 1; m * c.interval < horizon; ++m) times.push_back(m * c.interval);
    }
    times.push_back(horizon);
    return times;
  };
  const std::vector<double> full = schedule(T_sched);
  std::vector<double> times;
  for (double t : full)
    if (t < T) times.push_back(t);
  times.push_back(T);
  const double eps = 1e-12 * std::max(1.0, T_sched);
  auto scheduled = [&](double t) {
    if (c.kind == CadenceKind::every_step || t <= eps) return true;
    return std::any_of(full.begin(), full.end(), [&](double s) { return std::abs(s - t) <= eps; });
  };
  std::size_t next = 0;
  while (next < times.size() && times[next] <= clock.t + eps) ++next;
  snapshot(scheduled(clock.t));
  while (next < times.size()) {
    const double target = times[next];
    double h = std::min({dt, cfl_limit(), target - clock.t});
    const bool lands = clock.t + h >= target - eps;
    const double t_new = lands ? target : clock.t + h;
    h = t_new - clock.t;
    advance(h, t_new);
    ++clock.step;
    clock.t = t_new;
    if (lands) ++next;
    if (lands || c.kind == CadenceKind::every_step) snapshot(scheduled(t_new));
  }
}

FaultRecord fault_of(const RuntimeFault& e, double t) {
  FaultRecord f;
  f.t = t;
  f.kind = dynamic_cast<const PositivityFault*>(&e) ? "positivity"
           : dynamic_cast<const CflFault*>(&e)      ? "cfl"
                                                    : "runtime";
  f.message = e.what();
  return f;
}

void annotate(DiagnosticSeries& s, const FaultRecord& f) {
  s.metadata["fault_t"] = format_number(f.t);
  s.metadata["fault_kind"] = f.kind;
  s.metadata["fault_message"] = f.message;
}

void common_metadata(DiagnosticSeries& s, const RunConfig& config, const Grid& g) {
  s.metadata["config_hash"] = config.hash();
  s.metadata["scenario"] = to_string(config.scenario.kind);
  s.metadata["seed"] = std::to_string(config.scenario.seed);
  s.metadata["scheme"] = to_string(config.solver.solver.scheme);
  s.metadata["dt"] = format_number(config.solver.solver.dt);
  s.metadata["adaptive"] = config.solver.solver.adaptive ? "true" : "false";
  s.metadata["cadence"] = config.solver.cadence.to_string();
  s.metadata["grid"] = std::to_string(g.n()) + "^" + std::to_string(g.dim()) +
                       " L=" + format_number(g.box_length());
  const ScaleRange r = active_range(g);
  s.metadata["lp_active_range"] = std::to_string(r.j_min) + ".." + std::to_string(r.j_max);
  s.metadata["R0"] = format_number(config.diagnostics.R0);
  s.metadata["box_length"] = format_number(g.box_length());
}

}  // namespace

std::vector<long> snapshot_steps(const Cadence& cadence, double dt, long steps) {
  std::set<long> out{0, steps};
  switch (cadence.kind) {
    case CadenceKind::every_step:
      for (long k = 1; k < steps; ++k) out.insert(k);
      break;
    case CadenceKind::uniform:
      for (long m = 1;; ++m) {
        const long k = std::lround(m * cadence.interval / dt);
        if (k >= steps) break;
        out.insert(k);
      }
      break;
    case CadenceKind::geometric:
      for (int n = 1;; ++n) {
        const long k = std::lround((std::exp2(n / 4.0) - 1.0) / dt);
        if (k >= steps) break;
        out.insert(k);
      }
      break;
  }
  return {out.begin(), out.end()};
}

std::vector<std::string> series_columns(const RunConfig& config) {
  std::vector<std::string> c = {"t", "dt", "E", "D", "D_P", "D_Q", "int_D", "energy_residual",
                                "l4", "X", "X_l4", "X_gradient", "X_l6", "X_energy", "X_accel",
                                "X_grad_frak", "X_compare", "X_ratio", "rho_min", "rho_max",
                                "mean_a"};
  for (double p : lp_list(config.diagnostics)) {
    c.push_back(key_name("a_L", p));
    c.push_back(key_name("u_L", p));
  }
  for (const char* n : {"l2_au", "a_H1", "u_H1", "a_H2", "u_H2", "H1_au", "M_low", "G_L2", "G_H1",
                        "grad_u_inf", "int_grad_u_inf", "int_grad_u_inf_sq", "f_over_H",
                        "frak_over_a_min", "frak_over_a_max", "holder_rho"})
    c.push_back(n);
  for (double p0 : config.diagnostics.p0) c.push_back(key_name("conlf|p0=", p0));
  for (const auto& n : config.diagnostics.norms) c.push_back(n.name());
  return c;
}

RunState initial_run_state(const RunConfig& config) {
  config.validate();
  const GridPtr grid = make_grid(config.grid.n, config.grid.box_length, config.grid.dim);
  ScenarioState sc = build_scenario(config.scenario, grid);
  RunState rs;
  rs.state = sc.state.truncated();
  rs.state.t = 0.0;
  rs.dt = config.solver.solver.dt;
  rs.record = sc.record;
  rs.config_text = config.text;
  if (config.diagnostics.calibrate) {
    const Calibration cal = calibrate_lyapunov(config.params, *grid, config.solver.solver);
    rs.constants = cal.constants;
    rs.record["lyapunov_linear_band"] = cal.linear_band;
    rs.record["lyapunov_reference_steps"] = static_cast<double>(cal.reference_steps);
    rs.record["lyapunov_reference_n"] = cal.reference_n;
  } else {
    rs.constants = config.diagnostics.constants;
  }
  rs.acc.E0 = basic_energy(rs.state, config.params.gamma);
  const VectorField m = momentum(rs.state);
  for (double p0 : config.diagnostics.p0) {
    rs.record[key_name("a0_L", p0)] = lebesgue_norm(rs.state.a, p0);
    rs.record[key_name("m0_L", p0)] = lebesgue_norm(m, p0);
  }
  return rs;
}

namespace {

// Off-schedule rows report the snapshot integrals through t without
// committing t as a quadrature node.
std::vector<double> snapshot_row(const RunConfig& config, RunState& rs, double dt, bool commit) {
  const PhysicalParams& params = config.params;
  const DiagnosticsConfig& dc = config.diagnostics;
  const FlowState& s = rs.state;
  const double t = s.t;
  const Derived der = derive(s, params);
  const LyapunovComponents lc = lyapunov_components(s, der, params);
  const Dissipation D = dissipation(s.u, params);
  const double E = basic_energy(s, params.gamma);
  std::vector<double> row = {t, dt, E, D.total(), D.incompressible, D.compressible, rs.acc.int_D,
                             E + rs.acc.int_D - rs.acc.E0, l4_energy(s)};
  const double X = lc.value(rs.constants);
  row.push_back(X);
  const auto terms = lc.terms();
  for (int i = 0; i < 6; ++i) row.push_back(rs.constants.A[i] * terms[i]);
  row.push_back(lc.comparison);
  row.push_back(lc.comparison > 0.0 ? X / lc.comparison : 0.0);
  row.push_back(1.0 + s.a.min());
  row.push_back(1.0 + s.a.max());
  row.push_back(s.a.mean());
  double a2 = 0.0, u2 = 0.0;
  for (double p : lp_list(dc)) {
    const double an = lebesgue_norm(s.a, p), un = lebesgue_norm(s.u, p);
    if (p == 2.0) a2 = an, u2 = un;
    row.push_back(an);
    row.push_back(un);
  }
  row.push_back(std::hypot(a2, u2));
  const double aH1 = sobolev_norm(s.a, 1.0), uH1 = sobolev_norm(s.u, 1.0);
  row.push_back(aH1);
  row.push_back(uH1);
  row.push_back(sobolev_norm(s.a, 2.0));
  row.push_back(sobolev_norm(s.u, 2.0));
  row.push_back(aH1 + uH1);
  row.push_back(low_freq_mass(s, t, dc.C_split, params.gamma));
  const Field G = effective_flux(s.u, der.frak_a, params.lambda, params.mu);
  row.push_back(lebesgue_norm(G, 2.0));
  row.push_back(lebesgue_norm(gradient(G), 2.0));
  const double grad = grad_linf(s.u);
  const double quartic = std::pow(u2, 4) + std::pow(a2, 4);
  Accumulators scratch_acc = rs.acc;
  Accumulators& acc = commit ? rs.acc : scratch_acc;
  if (acc.snapshots > 0) {
    const double h = t - acc.last_t;
    acc.int_grad += 0.5 * h * (grad + acc.last_grad);
    acc.int_grad_sq += 0.5 * h * (grad * grad + acc.last_grad * acc.last_grad);
    acc.int_quartic += 0.5 * h * (quartic + acc.last_quartic);
  }
  acc.last_t = t;
  acc.last_grad = grad;
  acc.last_quartic = quartic;
  ++acc.snapshots;
  row.push_back(grad);
  row.push_back(acc.int_grad);
  row.push_back(acc.int_grad_sq);
  const PointwiseRatios pr = pointwise_ratios(s.a, params, dc.rho_bar);
  row.push_back(pr.f_over_H);
  row.push_back(pr.frak_over_a_min);
  row.push_back(pr.frak_over_a_max);
  const Field rho = s.a + Field::constant(s.grid_ptr(), 1.0);
  row.push_back(dc.holder_radius > 0 ? holder_norm(rho, dc.holder_alpha, dc.holder_radius).total()
                                     : 0.0);
  for (double p0 : dc.p0) {
    const double a0 = rs.record.at(key_name("a0_L", p0)), m0 = rs.record.at(key_name("m0_L", p0));
    row.push_back((a0 * a0 + m0 * m0) * std::pow(1.0 + t, -2.0 * beta(p0)) +
                  std::pow(1.0 + t, -1.5) * acc.int_quartic);
  }
  VectorField scratch;
  for (const auto& n : dc.norms) {
    if (n.target == "a") {
      row.push_back(evaluate_norm(s.a, n.key));
    } else {
      row.push_back(evaluate_norm(target_field(n.target, s.u, der.split, scratch), n.key));
    }
  }
  return row;
}

}  // namespace

RunResult run(const RunConfig& config, const RunOptions& options) {
  RunResult out;
  RunState& rs = out.final_state;
  rs = options.resume ? *options.resume : initial_run_state(config);
  const double T = options.horizon.value_or(config.solver.T);
  out.series = DiagnosticSeries(series_columns(config));
  DiagnosticSeries& series = out.series;
  common_metadata(series, config, rs.state.grid());
  for (int i = 0; i < 6; ++i)
    series.metadata["A" + std::to_string(i + 1)] = format_number(rs.constants.A[i]);
  for (const auto& [k, v] : rs.record) series.metadata["record." + k] = format_number(v);

  Clock clock{rs.step, rs.state.t};
  double last_dt = rs.dt;
  std::vector<double> d_now = mode_dissipation(rs.state.u, config.params);
  const int every = config.output.checkpoint_every;
  long taken = 0;
  auto snapshot = [&](bool on_schedule) {
    rs.step = clock.step;
    series.append(snapshot_row(config, rs, last_dt, on_schedule));
    ++taken;
    if (every > 0 && taken % every == 0 && options.checkpoint) options.checkpoint(rs);
  };
  auto advance = [&](double h, double t_new) {
    FlowState next = step(rs.state, config.solver.solver, config.params, h);
    next.t = t_new;
    std::vector<double> d_next = mode_dissipation(next.u, config.params);
    rs.acc.int_D += dissipation_integral(d_now, d_next, h);
    d_now = std::move(d_next);
    rs.state = std::move(next);
    last_dt = h;
  };
  auto cfl = [&] { return cfl_bound(rs.state, config.params, config.solver.solver.cfl); };
  try {
    drive(config.solver, T, config.solver.T, clock, cfl, advance, snapshot);
  } catch (const RuntimeFault& e) {
    out.fault = fault_of(e, clock.t);
    annotate(series, *out.fault);
  }
  rs.step = clock.step;
  const double drift = std::abs(rs.state.a.mean() - (series.empty() ? 0.0 : series.at(0, "mean_a")));
  series.metadata["mean_a_drift"] = format_number(drift);
  if (options.checkpoint && !(every > 0 && taken % every == 0)) options.checkpoint(rs);
  return out;
}

PairResult run_pair(const RunConfig& config, const RunOptions& options) {
  config.validate();
  const ScenarioConfig& sc = config.scenario;
  const GridPtr grid = make_grid(config.grid.n, config.grid.box_length, config.grid.dim);
  LocalizedOptions lo{sc.bump_radius, sc.riesz_margin, sc.modulation};
  const ScenarioState base = equilibrium_perturbation(grid, sc.epsilon, sc.p0, sc.seed, lo);
  StabilityPair pair = stability_pair(base, sc.eps_pert, sc.pert_seed, sc.p, sc.R0);
  PairResult out;
  out.initial = pair.difference;
  FlowState ref = pair.reference.state.truncated(), per = pair.perturbed.truncated();
  ref.t = per.t = 0.0;
  const double T = options.horizon.value_or(config.solver.T);
  out.series = DiagnosticSeries({"t", "diff", "diff_density", "diff_incompressible",
                                 "diff_compressible", "ref_l2_au", "pert_l2_au", "rho_min"});
  common_metadata(out.series, config, *grid);
  out.series.metadata["eps_pert"] = format_number(sc.eps_pert);
  out.series.metadata["pert_seed"] = std::to_string(sc.pert_seed);
  out.series.metadata["p"] = format_number(sc.p);
  out.series.metadata["initial_diff"] = format_number(out.initial.total());
  Clock clock;
  auto l2 = [](const FlowState& s) {
    return std::hypot(lebesgue_norm(s.a, 2.0), lebesgue_norm(s.u, 2.0));
  };
  auto snapshot = [&](bool) {
    const PerturbationNorm d = perturbation_norm(per.a - ref.a, per.u - ref.u, sc.p, sc.R0);
    out.series.append({clock.t, d.total(), d.density, d.incompressible, d.compressible, l2(ref),
                       l2(per), 1.0 + std::min(ref.a.min(), per.a.min())});
  };
  auto advance = [&](double h, double t_new) {
    FlowState r = step(ref, config.solver.solver, config.params, h);
    FlowState p = step(per, config.solver.solver, config.params, h);
    r.t = p.t = t_new;
    ref = std::move(r);
    per = std::move(p);
  };
  auto cfl = [&] {
    const double c = config.solver.solver.cfl;
    return std::min(cfl_bound(ref, config.params, c), cfl_bound(per, config.params, c));
  };
  try {
    drive(config.solver, T, config.solver.T, clock, cfl, advance, snapshot);
  } catch (const RuntimeFault& e) {
    out.fault = fault_of(e, clock.t);
    annotate(out.series, *out.fault);
  }
  return out;
}

}  // namespace cnslab
