#include "cnslab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cnslab/besov.hpp"
#include "cnslab/errors.hpp"
#include "cnslab/spectral_ops.hpp"

namespace cnslab {

namespace {

double uniform(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

double sup_abs(const Field& f) { return lebesgue_norm(f, std::numeric_limits<double>::infinity()); }
double sup_abs(const VectorField& v) {
  return lebesgue_norm(v, std::numeric_limits<double>::infinity());
}

double resolve_radius(const Grid& g, double radius) {
  const double limit = g.box_length() / 8.0;
  if (radius == 0.0) return limit;
  if (!(radius > 0.0) || radius > limit * (1.0 + 1e-12))
    throw ConfigError("bump radius must lie in (0, L/8]");
  return radius;
}

// bump(|x - c| / R) * (1 + m * mean of three random plane waves)
Field modulated_bump(const GridPtr& grid, double R, double modulation, std::mt19937_64& rng) {
  const int dim = grid->dim();
  const double c = 0.5 * grid->box_length();
  struct Wave {
    std::array<double, 3> k{};
    double phase = 0.0;
  };
  std::array<Wave, 3> waves;
  for (auto& w : waves) {
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (int d = 0; d < dim; ++d) {
        w.k[d] = 2.0 * uniform(rng) - 1.0;
        n2 += w.k[d] * w.k[d];
      }
    } while (n2 > 1.0 || n2 < 1e-4);
    const double kmag = (1.0 + 0.5 * uniform(rng)) / R;
    for (int d = 0; d < dim; ++d) w.k[d] *= kmag / std::sqrt(n2);
    w.phase = 2.0 * std::numbers::pi * uniform(rng);
  }
  return Field::sample(grid, [&](const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) r2 += (x[d] - c) * (x[d] - c);
    const double b = bump(std::sqrt(r2) / R);
    if (b == 0.0) return 0.0;
    double m = 0.0;
    for (const auto& w : waves) {
      double arg = w.phase;
      for (int d = 0; d < dim; ++d) arg += w.k[d] * (x[d] - c);
      m += std::cos(arg);
    }
    return b * (1.0 + modulation * m / 3.0);
  });
}

Field riesz(const Field& f, double s) {
  if (s == 0.0) return f.to_spectral();
  const Grid& g = f.grid();
  return apply_multiplier(f, [&](std::size_t i) {
    return g.k2(i) == 0.0 ? 0.0 : std::pow(g.k2(i), -0.5 * s);
  });
}

Field minus_mean(const Field& f) {
  Field s = f.to_spectral();
  s.spectral_mut()[0] = 0.0;
  return s;
}

Field bump_field(const GridPtr& grid, double R, bool horizontal_only) {
  const double c = 0.5 * grid->box_length();
  const int dim = horizontal_only ? 2 : grid->dim();
  return Field::sample(grid, [&](const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) r2 += (x[d] - c) * (x[d] - c);
    return bump(std::sqrt(r2) / R);
  });
}

void require_positive_density(const Field& a, const char* what) {
  const double m = 1.0 + a.min();
  if (!(m > 0.0))
    throw ConfigError(std::string(what) + ": amplitude too large, min density " + std::to_string(m));
}

}  // namespace

ScenarioKind parse_scenario_kind(const std::string& name) {
  if (name == "equilibrium") return ScenarioKind::equilibrium;
  if (name == "equilibrium_perturbation") return ScenarioKind::equilibrium_perturbation;
  if (name == "oscillating") return ScenarioKind::oscillating;
  if (name == "large_vertical") return ScenarioKind::large_vertical;
  if (name == "stability_pair") return ScenarioKind::stability_pair;
  throw ConfigError("unknown scenario kind '" + name + "'");
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::equilibrium: return "equilibrium";
    case ScenarioKind::equilibrium_perturbation: return "equilibrium_perturbation";
    case ScenarioKind::oscillating: return "oscillating";
    case ScenarioKind::large_vertical: return "large_vertical";
    case ScenarioKind::stability_pair: return "stability_pair";
  }
  return "?";
}

std::vector<ScenarioInfo> scenario_catalog() {
  return {
      {"equilibrium", "rho = 1, u = 0"},
      {"equilibrium_perturbation", "localized small data of integrability class p0 (keys: epsilon, p0, seed, bump_radius, modulation, riesz_margin)"},
      {"oscillating", "a0 = 0, u0 = A sin(x3/eps)(-d2 phi, d1 phi, 0) (keys: eps_osc, osc_amplitude, bump_radius)"},
      {"large_vertical", "O(1) x3-independent vertical velocity plus small data (keys: vertical_amplitude, budget, witness_C, p, seed, R0)"},
      {"stability_pair", "twin runs: equilibrium_perturbation base and a perturbation of size eps_pert (keys: eps_pert, pert_seed, p, R0)"},
  };
}

void ScenarioConfig::validate() const {
  if (!(epsilon >= 0.0)) throw ConfigError("scenario epsilon must be nonnegative");
  if (!(p0 >= 1.0 && p0 <= 2.0)) throw ConfigError("p0 must lie in [1, 2]");
  if (!(modulation >= 0.0 && modulation < 1.0)) throw ConfigError("modulation must lie in [0, 1)");
  if (!(riesz_margin >= 0.0)) throw ConfigError("riesz_margin must be nonnegative");
  if (!(eps_osc > 0.0)) throw ConfigError("eps_osc must be positive");
  if (!(vertical_amplitude >= 0.0)) throw ConfigError("vertical_amplitude must be nonnegative");
  if (!(budget > 0.0)) throw ConfigError("smallness budget must be positive");
  if (!(witness_C >= 0.0)) throw ConfigError("witness_C must be nonnegative");
  if (!(p >= 2.0 && p <= 4.0)) throw ConfigError("p must lie in [2, 4]");
  if (!(eps_pert >= 0.0)) throw ConfigError("eps_pert must be nonnegative");
  split_index(R0);
}

double bump(double r) {
  if (!(std::abs(r) < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

ScenarioState equilibrium_perturbation(const GridPtr& grid, double eps, double p0,
                                       std::uint64_t seed, const LocalizedOptions& o) {
  if (!(eps >= 0.0)) throw ConfigError("amplitude must be nonnegative");
  if (!(p0 >= 1.0 && p0 <= 2.0)) throw ConfigError("p0 must lie in [1, 2]");
  const double R = resolve_radius(*grid, o.bump_radius);
  const double s = std::max(0.0, 3.0 * (1.0 - 1.0 / p0) - o.riesz_margin);
  std::mt19937_64 rng(seed);

  ScenarioState out;
  const int dim = grid->dim();
  // a: profile, then potential, then mean removal and sup normalization
  const Field ga = modulated_bump(grid, R, o.modulation, rng);
  const Field pa = riesz(ga, s);
  Field a = truncate(minus_mean(pa));
  const double sa = sup_abs(a);
  const double scale_a = sa > 0.0 ? eps / sa : 0.0;
  a *= scale_a;

  std::vector<Field> comps, pre;
  for (int d = 0; d < dim; ++d) {
    const Field g = riesz(modulated_bump(grid, R, o.modulation, rng), s);
    pre.push_back(g);
    comps.push_back(truncate(minus_mean(g)));
  }
  VectorField u(std::move(comps));
  const double su = sup_abs(u);
  const double scale_u = su > 0.0 ? eps / su : 0.0;
  u *= scale_u;
  require_positive_density(a, "equilibrium_perturbation");

  out.state = FlowState{0.0, a, u};
  auto& rec = out.record;
  rec["p0"] = p0;
  rec["potential_order"] = s;
  rec["bump_radius"] = R;
  rec["profile_Lp0"] = lebesgue_norm(ga, p0);
  rec["a0_Lp0_localized"] = scale_a * lebesgue_norm(pa, p0);
  rec["u0_Lp0_localized"] = scale_u * lebesgue_norm(VectorField(pre), p0);
  rec["a0_Lp0"] = lebesgue_norm(a, p0);
  rec["u0_Lp0"] = lebesgue_norm(u, p0);
  std::vector<Field> m;
  const Field rho = a + Field::constant(grid, 1.0);
  for (int d = 0; d < dim; ++d) m.push_back(dealiased_product(rho, u[d]));
  rec["m0_Lp0"] = lebesgue_norm(VectorField(std::move(m)), p0);
  rec["a0_H2"] = sobolev_norm(a, 2.0);
  rec["u0_H2"] = sobolev_norm(u, 2.0);
  if (p0 == 2.0 && s == 1.5)
    out.notes.push_back("p0 = 2 potential is the critical order; its L^2(R^3) norm is log-divergent, finite on the torus");
  return out;
}

ScenarioState oscillating_data(const GridPtr& grid, double eps_osc, double amplitude,
                               double bump_radius) {
  if (grid->dim() != 3) throw ConfigError("oscillating data needs dim = 3");
  if (!(eps_osc > 0.0)) throw ConfigError("eps_osc must be positive");
  const double R = resolve_radius(*grid, bump_radius);
  const double k0 = grid->k0();
  const long m3 = std::lround(1.0 / (eps_osc * k0));
  if (m3 < 1 || m3 * k0 >= grid->dealias_radius())
    throw ConfigError("eps_osc below grid resolution: frequency 1/eps_osc = " +
                      std::to_string(1.0 / eps_osc) + " not representable inside the dealiasing ball");
  const double k3 = m3 * k0;

  const Field phi = bump_field(grid, R, false).to_spectral();
  const Field d1 = partial(phi, 0).to_physical();
  const Field d2 = partial(phi, 1).to_physical();
  const double c = 0.5 * grid->box_length();
  std::vector<double> u1(grid->physical_size()), u2(grid->physical_size());
  for (std::size_t i = 0; i < u1.size(); ++i) {
    const double s = amplitude * std::sin(k3 * (grid->x(i, 2) - c));
    u1[i] = -s * d2.physical()[i];
    u2[i] = s * d1.physical()[i];
  }
  ScenarioState out;
  out.state.a = Field::zeros(grid);
  out.state.u = VectorField({truncate(Field::from_physical(grid, std::move(u1))),
                             truncate(Field::from_physical(grid, std::move(u2))),
                             Field::zeros(grid)});
  out.record["k3"] = k3;
  out.record["eps_osc"] = 1.0 / k3;
  out.record["bump_radius"] = R;
  if (std::abs(1.0 / k3 - eps_osc) > 1e-12 * eps_osc)
    out.notes.push_back("eps_osc snapped from " + format_number(eps_osc) + " to " +
                        format_number(1.0 / k3));
  return out;
}

SmallDataLhs smalldata_lhs(const FlowState& state, double p, double C, double R0) {
  const HelmholtzSplit hs = project(state.u);
  const double s = 3.0 / p - 1.0;
  SmallDataLhs l;
  l.low_aQ = besov_low(state.a, 0.5, 2.0, R0) + besov_low(hs.Qu, 0.5, 2.0, R0);
  l.high_Q = besov_high(hs.Qu, s, p, R0);
  l.high_a = besov_high(state.a, 3.0 / p, p, R0);
  l.horizontal = besov_norm(hs.Pu.horizontal(), NormSpec{s, p, 1.0});
  l.vertical = besov_norm(hs.Pu.vertical(), NormSpec{s, p, 1.0});
  l.factor = std::exp(C * (1.0 + l.vertical));
  l.total = (l.low_aQ + l.high_Q + l.high_a + l.horizontal) * l.factor;
  return l;
}

ScenarioState large_vertical_data(const GridPtr& grid, double budget, double p,
                                  double vertical_amplitude, double witness_C,
                                  std::uint64_t seed, double R0) {
  if (grid->dim() != 3) throw ConfigError("large vertical data needs dim = 3");
  if (!(p >= 2.0 && p <= 4.0)) throw ConfigError("p must lie in [2, 4]");
  const double R = grid->box_length() / 8.0;

  Field w = minus_mean(bump_field(grid, R, true));
  const double sw = sup_abs(w);
  w *= sw > 0.0 ? vertical_amplitude / sw : 0.0;
  w = truncate(w);

  // unit-size small parts
  const LocalizedOptions lo{R, 0.0, 0.5};
  const ScenarioState base = equilibrium_perturbation(grid, 1.0, 1.0, seed, lo);
  const Field a_b = base.state.a;
  VectorField q_b = gradient(minus_mean(bump_field(grid, R, false)));
  q_b = truncate(q_b);
  q_b *= 1.0 / sup_abs(q_b);
  const Field phi = bump_field(grid, R, false).to_spectral();
  VectorField h_b({-1.0 * partial(phi, 1), partial(phi, 0), Field::zeros(grid)});
  h_b = truncate(h_b);
  h_b *= 1.0 / sup_abs(h_b);

  FlowState unit{0.0, a_b, q_b + h_b};
  unit.u[2] += w;
  const SmallDataLhs l1 = smalldata_lhs(unit, p, witness_C, R0);
  const double small = l1.low_aQ + l1.high_Q + l1.high_a + l1.horizontal;
  const double scale = budget / (small * l1.factor);
  if (!(scale >= 1e-14))
    throw ConfigError("smallness budget infeasible: exp(C(1 + " + format_number(l1.vertical) +
                      ")) = " + format_number(l1.factor) + " needs small-part scale " +
                      format_number(scale) + " < 1e-14");

  ScenarioState out;
  out.state.a = scale * a_b;
  out.state.u = scale * (q_b + h_b);
  out.state.u[2] += w;
  require_positive_density(out.state.a, "large_vertical_data");
  const SmallDataLhs l = smalldata_lhs(out.state, p, witness_C, R0);
  auto& rec = out.record;
  rec["small_scale"] = scale;
  rec["lhs_low_aQ"] = l.low_aQ;
  rec["lhs_high_Q"] = l.high_Q;
  rec["lhs_high_a"] = l.high_a;
  rec["lhs_horizontal"] = l.horizontal;
  rec["lhs_vertical"] = l.vertical;
  rec["lhs_factor"] = l.factor;
  rec["lhs_total"] = l.total;
  rec["witness_C"] = witness_C;
  rec["p"] = p;
  rec["R0"] = R0;
  return out;
}

PerturbationNorm perturbation_norm(const Field& da, const VectorField& du, double p, double R0) {
  const HelmholtzSplit hs = project(du);
  PerturbationNorm n;
  n.density = hybrid_norm(da, HybridSpec{0.5, 3.0 / p, 2.0, p, R0});
  n.incompressible = besov_norm(hs.Pu, NormSpec{3.0 / p - 1.0, p, 1.0});
  n.compressible = hybrid_norm(hs.Qu, HybridSpec{0.5, 3.0 / p - 1.0, 2.0, p, R0});
  return n;
}

StabilityPair stability_pair(const ScenarioState& base, double eps_pert, std::uint64_t seed,
                             double p, double R0) {
  if (!base.state.a.valid()) throw ConfigError("stability pair needs a valid base state");
  if (!(eps_pert >= 0.0)) throw ConfigError("eps_pert must be nonnegative");
  const GridPtr& grid = base.state.grid_ptr();
  const ScenarioState shape = equilibrium_perturbation(grid, 1.0, 1.0, seed);
  const PerturbationNorm unit = perturbation_norm(shape.state.a, shape.state.u, p, R0);
  const double scale = eps_pert / unit.total();

  StabilityPair pair;
  pair.reference = base;
  pair.perturbed = base.state;
  pair.perturbed.a = base.state.a + scale * shape.state.a;
  pair.perturbed.u = base.state.u + scale * shape.state.u;
  require_positive_density(pair.perturbed.a, "stability_pair");
  pair.difference = perturbation_norm(pair.perturbed.a - base.state.a,
                                      pair.perturbed.u - base.state.u, p, R0);
  return pair;
}

ScenarioState build_scenario(const ScenarioConfig& c, const GridPtr& grid) {
  c.validate();
  switch (c.kind) {
    case ScenarioKind::equilibrium: {
      ScenarioState s;
      s.state = FlowState::equilibrium(grid);
      return s;
    }
    case ScenarioKind::equilibrium_perturbation:
    case ScenarioKind::stability_pair:
      return equilibrium_perturbation(grid, c.epsilon, c.p0, c.seed,
                                      {c.bump_radius, c.riesz_margin, c.modulation});
    case ScenarioKind::oscillating:
      return oscillating_data(grid, c.eps_osc, c.osc_amplitude, c.bump_radius);
    case ScenarioKind::large_vertical:
      return large_vertical_data(grid, c.budget, c.p, c.vertical_amplitude, c.witness_C, c.seed,
                                 c.R0);
  }
  throw ConfigError("unknown scenario kind");
}

}  // namespace cnslab
