#include "cnslab/cns.hpp"

#include <algorithm>
#include <cmath>

#include "cnslab/errors.hpp"
#include "cnslab/spectral_ops.hpp"

namespace cnslab {

void PhysicalParams::validate() const {
  if (!(mu > 0.0)) throw ConfigError("viscosity mu must be positive");
  if (!(lambda + 2.0 * mu > 0.0)) throw ConfigError("lambda + 2 mu must be positive");
  if (!(gamma >= 1.0)) throw ConfigError("adiabatic exponent gamma must be >= 1");
  if (strict && !(mu > 0.5 * lambda))
    throw ConfigError("strict mode requires mu > lambda/2 (mu = " + std::to_string(mu) +
                      ", lambda = " + std::to_string(lambda) + ")");
}

Scheme parse_scheme(const std::string& name) {
  if (name == "imex1") return Scheme::imex1;
  if (name == "imex2") return Scheme::imex2;
  throw ConfigError("unknown scheme '" + name + "' (expected imex1 or imex2)");
}

std::string to_string(Scheme s) { return s == Scheme::imex1 ? "imex1" : "imex2"; }

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (!(cfl > 0.0 && cfl <= 0.5)) throw ConfigError("cfl target must lie in (0, 0.5]");
}

FlowState FlowState::equilibrium(const GridPtr& grid) {
  return {0.0, Field::zeros(grid), VectorField::zeros(grid)};
}

FlowState FlowState::truncated() const { return {t, truncate(a), truncate(u)}; }

double enthalpy(double rho, double gamma) {
  if (gamma == 1.0) return std::log(rho);
  return gamma / (gamma - 1.0) * (std::pow(rho, gamma - 1.0) - 1.0);
}

namespace {

using Samples = std::vector<double>;

Samples to_samples(const Field& f) {
  const Field p = f.to_physical();
  const auto s = p.physical();
  return Samples(s.begin(), s.end());
}

// forward transform of samples followed by two-thirds truncation
Field from_samples(const GridPtr& grid, Samples s) {
  return truncate(Field::from_physical(grid, std::move(s)));
}

// V u per mode: -mu |k|^2 u - (lambda + mu) k (k . u)
VectorField viscous_operator(const VectorField& u, const PhysicalParams& params) {
  const Grid& g = u.grid();
  const int dim = u.dim();
  VectorField out = VectorField::zeros(u.grid_ptr());
  std::vector<std::span<const complex>> in;
  std::vector<Field> s;
  for (int c = 0; c < dim; ++c) s.push_back(u[c].to_spectral());
  for (int c = 0; c < dim; ++c) in.push_back(s[c].spectral());
  std::vector<std::span<complex>> o;
  for (int c = 0; c < dim; ++c) o.push_back(out[c].spectral_mut());
  const double bulk = params.lambda + params.mu;
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    complex kdotu = 0.0;
    for (int c = 0; c < dim; ++c) kdotu += g.k(i, c) * in[c][i];
    for (int c = 0; c < dim; ++c)
      o[c][i] = -params.mu * g.k2(i) * in[c][i] - bulk * g.k(i, c) * kdotu;
  }
  return out;
}

// Right-hand side, optionally without the constant-coefficient viscous term.
Rhs evaluate(const FlowState& state, const PhysicalParams& params, const SolverHooks& hooks,
             bool with_viscous_linear) {
  const GridPtr& grid = state.grid_ptr();
  const Grid& g = *grid;
  const int dim = g.dim();
  const std::size_t np = g.physical_size();

  const Field a = state.a.to_spectral();
  const VectorField u = state.u.to_spectral();
  const Samples a_p = to_samples(a);
  std::vector<Samples> u_p;
  for (int c = 0; c < dim; ++c) u_p.push_back(to_samples(u[c]));

  double rho_min = 1.0 + a_p[0];
  for (double v : a_p) rho_min = std::min(rho_min, 1.0 + v);
  if (!(rho_min > 0.0)) throw PositivityFault(rho_min, "rhs");

  Rhs r;
  // mass
  const Field div_u = divergence(u);
  if (hooks.freeze_density) {
    r.da_dt = Field::zeros(grid);
  } else {
    r.da_dt = -1.0 * div_u;
    if (hooks.transport) {
      std::vector<Field> flux;
      for (int c = 0; c < dim; ++c) {
        Samples f(np);
        for (std::size_t i = 0; i < np; ++i) f[i] = a_p[i] * u_p[c][i];
        flux.push_back(from_samples(grid, std::move(f)));
      }
      r.da_dt -= divergence(VectorField(std::move(flux)));
    }
  }

  // momentum
  const VectorField Vu = viscous_operator(u, params);
  Samples h(np), inv(np);
  for (std::size_t i = 0; i < np; ++i) {
    const double rho = 1.0 + a_p[i];
    h[i] = enthalpy(rho, params.gamma);
    inv[i] = 1.0 / rho - 1.0;
  }
  const Field h_s = from_samples(grid, std::move(h));
  const Samples inv_p = to_samples(from_samples(grid, std::move(inv)));

  std::vector<Field> du;
  for (int c = 0; c < dim; ++c) {
    const Samples vu_p = to_samples(Vu[c]);
    Samples nl(np);
    for (std::size_t i = 0; i < np; ++i) nl[i] = inv_p[i] * vu_p[i];
    if (hooks.transport) {
      for (int j = 0; j < dim; ++j) {
        const Samples d = to_samples(partial(u[c], j));
        for (std::size_t i = 0; i < np; ++i) nl[i] -= u_p[j][i] * d[i];
      }
    }
    Field out = from_samples(grid, std::move(nl));
    out -= partial(h_s, c);
    if (with_viscous_linear) out += Vu[c];
    du.push_back(std::move(out));
  }
  r.du_dt = VectorField(std::move(du));
  return r;
}

double min_density(const Field& a) {
  const Field p = a.to_physical();
  const auto s = p.physical();
  return 1.0 + *std::min_element(s.begin(), s.end());
}

}  // namespace

Rhs rhs(const FlowState& state, const PhysicalParams& params, const SolverHooks& hooks) {
  return evaluate(state, params, hooks, true);
}

VectorField admissible_ut(const Field& a0, const VectorField& u0, const PhysicalParams& params) {
  return rhs(FlowState{0.0, a0, u0}, params).du_dt;
}

double cfl_bound(const FlowState& state, const PhysicalParams& params, double cfl) {
  const Grid& g = state.grid();
  const std::size_t np = g.physical_size();
  Samples speed2(np, 0.0);
  for (int c = 0; c < state.u.dim(); ++c) {
    const Samples s = to_samples(state.u[c]);
    for (std::size_t i = 0; i < np; ++i) speed2[i] += s[i] * s[i];
  }
  const double umax = std::sqrt(*std::max_element(speed2.begin(), speed2.end()));
  const Samples a = to_samples(state.a);
  double cmax = 0.0;
  for (double v : a) cmax = std::max(cmax, std::pow(std::max(1.0 + v, 0.0), params.gamma - 1.0));
  const double sound = std::sqrt(params.gamma * cmax);
  return cfl * g.dx() / (umax + sound);
}

VectorField viscous_propagator(const VectorField& u, const PhysicalParams& params, double dt) {
  const Grid& g = u.grid();
  const int dim = u.dim();
  std::vector<Field> s;
  for (int c = 0; c < dim; ++c) s.push_back(u[c].to_spectral());
  VectorField out = VectorField::zeros(u.grid_ptr());
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    const double k2 = g.k2(i);
    const double ep = std::exp(-params.mu * k2 * dt);
    double kk = 0.0;
    complex kdotu = 0.0;
    for (int c = 0; c < dim; ++c) {
      kk += g.k(i, c) * g.k(i, c);
      kdotu += g.k(i, c) * s[c].spectral()[i];
    }
    if (kk == 0.0) {
      for (int c = 0; c < dim; ++c) out[c].spectral_mut()[i] = ep * s[c].spectral()[i];
      continue;
    }
    const double eq = std::exp(-params.nu() * k2 * dt);
    for (int c = 0; c < dim; ++c) {
      const complex q = g.k(i, c) * kdotu / kk;
      out[c].spectral_mut()[i] = ep * (s[c].spectral()[i] - q) + eq * q;
    }
  }
  return out;
}

FlowState step(const FlowState& state, const SolverConfig& config,
               const PhysicalParams& params, double dt) {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  const double bound = cfl_bound(state, params, config.cfl);
  if (dt > bound) throw CflFault(dt, bound);

  const FlowState s0 = state.truncated();
  const Rhs n0 = evaluate(s0, params, config.hooks, false);

  FlowState s1;
  s1.a = s0.a + dt * n0.da_dt;
  s1.u = viscous_propagator(s0.u + dt * n0.du_dt, params, dt);
  s1.t = s0.t + dt;

  if (config.scheme == Scheme::imex2) {
    const Rhs n1 = evaluate(s1, params, config.hooks, false);
    FlowState s2;
    s2.t = s0.t + dt;
    s2.a = 0.5 * s0.a + 0.5 * (s1.a + dt * n1.da_dt);
    s2.u = 0.5 * viscous_propagator(s0.u, params, dt) + 0.5 * (s1.u + dt * n1.du_dt);
    s1 = std::move(s2);
  }
  const double rho_min = min_density(s1.a);
  if (!(rho_min > 0.0) || !std::isfinite(rho_min)) throw PositivityFault(rho_min, "step");
  return s1;
}

Derived derive(const FlowState& state, const PhysicalParams& params) {
  Derived d;
  const double gamma = params.gamma;
  d.frak_a = nonlinear_map(
      state.a.to_physical() + Field::constant(state.grid_ptr(), 1.0).to_physical(),
      [gamma](double rho) { return std::pow(rho, gamma) - 1.0; }, Domain::positive);
  d.split = project(state.u);
  d.u_t = rhs(state, params).du_dt;
  d.u_dot = material_derivative(state.u, d.u_t);
  return d;
}

}  // namespace cnslab
