#include "cnslab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "cnslab/besov.hpp"
#include "cnslab/bony.hpp"
#include "cnslab/decay.hpp"
#include "cnslab/errors.hpp"
#include "cnslab/spectral_ops.hpp"
#include "cnslab/diagnostics.hpp"

namespace cnslab {

namespace {

using Checks = std::vector<CheckResult>;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void expect_below(Checks& out, const std::string& suite, const std::string& name, double value,
                  double bound) {
  out.push_back({suite, name, value <= bound, sci(value) + " <= " + sci(bound)});
}

double rel_l2(const Field& x, const Field& ref) {
  const double d = std::sqrt(spectral_l2_squared(x - ref));
  const double n = std::sqrt(spectral_l2_squared(ref));
  return n > 0.0 ? d / n : d;
}

double rel_l2(const VectorField& x, const VectorField& ref) {
  double d = 0.0, n = 0.0;
  for (int c = 0; c < x.dim(); ++c) {
    d += spectral_l2_squared(x[c] - ref[c]);
    n += spectral_l2_squared(ref[c]);
  }
  return n > 0.0 ? std::sqrt(d / n) : std::sqrt(d);
}

GridPtr test_grid(int n = 32) { return make_grid(n, 2.0 * std::numbers::pi, 3); }

Checks lp_suite() {
  Checks out;
  const std::string s = "lp";
  const GridPtr g = test_grid();
  const Field f = random_band_limited(g, 11, 10.0) + Field::constant(g, 0.3);
  const DyadicDecomposition dec = DyadicDecomposition::of(f);
  const Field centered = f - Field::constant(g, f.mean());
  expect_below(out, s, "partition_of_unity", rel_l2(dec.reconstruct(), centered), 1e-10);

  double cross = 0.0;
  for (const auto& [j, bj] : dec.blocks)
    for (const auto& [k, bk] : dec.blocks)
      if (std::abs(j - k) >= 2) cross = std::max(cross, std::sqrt(spectral_l2_squared(dyadic_block(bj, k))));
  expect_below(out, s, "quasi_orthogonality", cross / std::sqrt(spectral_l2_squared(centered)), 1e-10);

  const int jm = (dec.range.j_min + dec.range.j_max) / 2;
  Field partial_sum = Field::constant(g, f.mean());
  for (const auto& [j, bj] : dec.blocks)
    if (j <= jm - 1) partial_sum = partial_sum + bj;
  expect_below(out, s, "low_pass_telescoping", rel_l2(low_pass(f, jm), partial_sum), 1e-10);

  const double b1 = besov_norm(centered, {0.5, 2.0, 1.0});
  const double b2 = besov_norm(centered, {0.5, 2.0, 2.0});
  const double binf = besov_norm(centered, {0.5, 2.0, INFINITY});
  out.push_back({s, "besov_monotone_in_r", binf <= b2 && b2 <= b1,
                 sci(binf) + " <= " + sci(b2) + " <= " + sci(b1)});

  const Field u = random_band_limited(g, 12, 10.0), v = random_band_limited(g, 13, 10.0);
  expect_below(out, s, "bony_identity", rel_l2(bony_decompose(u, v).sum(), dealiased_product(u, v)), 1e-9);

  std::vector<Field> series;
  for (int n = 0; n < 9; ++n) {
    const double w = std::exp(-0.3 * n);
    series.push_back(w * u + (1.0 - w) * v);
  }
  const NormSpec spec{0.0, 2.0, 1.0};
  const double tilde = chemin_lerner_norm(series, 2.0, spec, 1.0);
  const double plain = time_lebesgue_besov_norm(series, 2.0, spec, 1.0);
  out.push_back({s, "chemin_lerner_ordering", plain <= tilde * (1 + 1e-14),
                 sci(plain) + " <= " + sci(tilde)});
  return out;
}

Checks helmholtz_suite() {
  Checks out;
  const std::string s = "helmholtz";
  const GridPtr g = test_grid();
  const VectorField u = random_band_limited_vector(g, 21, 10.0);
  const HelmholtzSplit h = project(u);
  double un = 0.0;
  for (int c = 0; c < 3; ++c) un += spectral_l2_squared(u[c]);
  expect_below(out, s, "div_Pu", std::sqrt(spectral_l2_squared(divergence(h.Pu)) / un), 1e-10);
  expect_below(out, s, "P_idempotent", rel_l2(leray(h.Pu), h.Pu), 1e-10);
  const VectorField pq_u = leray(h.Qu);
  double pq_n = 0.0;
  for (int c = 0; c < 3; ++c) pq_n += spectral_l2_squared(pq_u[c]);
  expect_below(out, s, "PQ_zero", std::sqrt(pq_n / un), 1e-10);
  double pq = 0.0;
  for (int c = 0; c < 3; ++c) pq += spectral_l2_squared(h.Pu[c]) + spectral_l2_squared(h.Qu[c]);
  expect_below(out, s, "pythagoras", std::abs(pq - un) / un, 1e-10);
  double qn = 0.0;
  for (int c = 0; c < 3; ++c) qn += spectral_l2_squared(h.Qu[c]);
  expect_below(out, s, "Qu_equals_d", std::abs(std::sqrt(qn) - std::sqrt(spectral_l2_squared(h.d))) / std::sqrt(qn), 1e-10);
  const Field f = random_band_limited(g, 22, 10.0);
  expect_below(out, s, "lambda_inverse", rel_l2(lambda_power(lambda_power(f, 1.0), -1.0), f), 1e-12);
  expect_below(out, s, "lambda_squared", rel_l2(lambda_power(f, 2.0), -1.0 * laplacian(f)), 1e-12);
  return out;
}

Checks energy_suite() {
  Checks out;
  const std::string s = "energy";
  const GridPtr g = make_grid(16, 4.0 * std::numbers::pi, 3);
  const PhysicalParams params;
  SolverConfig cfg;
  cfg.dt = 0.02;

  FlowState eq = FlowState::equilibrium(g);
  const FlowState eq1 = step(eq, cfg, params);
  double dev = std::max({std::abs(eq1.a.min()), std::abs(eq1.a.max())});
  for (int c = 0; c < 3; ++c) dev = std::max({dev, std::abs(eq1.u[c].min()), std::abs(eq1.u[c].max())});
  expect_below(out, s, "equilibrium_fixed_point", dev, 0.0);

  // Heat surrogate: a frozen at 0, transport off; the viscous step is exact.
  SolverConfig heat = cfg;
  heat.hooks.transport = false;
  heat.hooks.freeze_density = true;
  FlowState st = FlowState::equilibrium(g);
  st.u = truncate(0.01 * random_band_limited_vector(g, 31, 4.0));
  const FlowState v1 = step(st, heat, params);
  const VectorField exact = viscous_propagator(st.u, params, cfg.dt);
  expect_below(out, s, "viscous_step_exact", rel_l2(v1.u, exact), 1e-12);

  // Energy identity on the heat surrogate: E(t) + int D = E(0).
  const double E0 = basic_energy(st, params.gamma), E1 = basic_energy(v1, params.gamma);
  const double intD = dissipation_integral(mode_dissipation(st.u, params),
                                           mode_dissipation(v1.u, params), cfg.dt);
  expect_below(out, s, "heat_energy_identity", std::abs(E1 + intD - E0) / E0, 1e-10);

  FlowState sm = FlowState::equilibrium(g);
  sm.a = truncate(0.01 * random_band_limited(g, 41, 3.0));
  sm.u = truncate(0.01 * random_band_limited_vector(g, 42, 3.0));
  const double m0 = sm.a.mean();
  FlowState cur = sm;
  for (int n = 0; n < 5; ++n) cur = step(cur, cfg, params);
  expect_below(out, s, "mass_conservation", std::abs(cur.a.mean() - m0), 5e-12);

  const double H = relative_entropy(sm.a, 2.0);
  const double a2 = lebesgue_norm(sm.a, 2.0);
  expect_below(out, s, "entropy_gamma2", std::abs(H - a2 * a2) / (a2 * a2), 1e-12);
  expect_below(out, s, "admissible_ut_matches_rhs",
               rel_l2(admissible_ut(sm.a, sm.u, params), rhs(sm, params).du_dt), 0.0);
  return out;
}

Checks decay_suite() {
  Checks out;
  const std::string s = "decay";
  std::vector<double> t, y, y3, ye;
  for (int i = 0; i <= 200; ++i) {
    const double ti = 0.25 * i;
    t.push_back(ti);
    y.push_back(std::pow(1.0 + ti, -0.75));
    y3.push_back(3.0 * std::pow(1.0 + ti, -0.5));
    ye.push_back(std::exp(-ti));
  }
  const DecayWindow w{5.0, 40.0};
  const DecayFit f1 = fit_decay(t, y, w);
  expect_below(out, s, "exact_power_law", std::abs(f1.beta_hat - 0.75) + f1.residual, 1e-12);
  const DecayFit f2 = fit_decay(t, y3, w);
  expect_below(out, s, "prefactor_invariance", std::abs(f2.beta_hat - 0.5), 1e-12);
  const DecayFit f3 = fit_decay(t, ye, w);
  out.push_back({s, "exponential_flagged", !f3.power_law, "residual " + sci(f3.residual)});
  expect_below(out, s, "beta_values",
               std::abs(beta(1.0) - 0.75) + std::abs(beta(2.0)) + std::abs(beta(1.2) - 0.5), 1e-15);
  return out;
}

}  // namespace

std::vector<std::string> verify_suites() { return {"lp", "helmholtz", "energy", "decay"}; }

std::vector<CheckResult> run_verify(const std::string& suite) {
  const std::map<std::string, std::function<Checks()>> table = {
      {"lp", lp_suite}, {"helmholtz", helmholtz_suite}, {"energy", energy_suite}, {"decay", decay_suite}};
  Checks out;
  if (suite == "all") {
    for (const auto& name : verify_suites()) {
      auto part = table.at(name)();
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  const auto it = table.find(suite);
  if (it == table.end()) throw ConfigError("unknown verify suite '" + suite + "' (all, lp, helmholtz, energy, decay)");
  return it->second();
}

}  // namespace cnslab
