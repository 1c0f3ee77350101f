#include "cnslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cnslab/errors.hpp"
#include "cnslab/spectral_ops.hpp"

namespace cnslab {

namespace {

std::vector<double> samples(const Field& f) {
  const Field p = f.to_physical();
  const auto s = p.physical();
  return {s.begin(), s.end()};
}

std::vector<double> density_samples(const Field& a, const char* where) {
  auto rho = samples(a);
  for (auto& v : rho) v += 1.0;
  const double m = *std::min_element(rho.begin(), rho.end());
  if (!(m > 0.0)) throw PositivityFault(m, where);
  return rho;
}

std::vector<double> speed_squared(const VectorField& u) {
  std::vector<double> s(u.grid().physical_size(), 0.0);
  for (int c = 0; c < u.dim(); ++c) {
    const auto v = samples(u[c]);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += v[i] * v[i];
  }
  return s;
}

// sum_k w |k|^2 |f_k|^2 * volume = ||grad f||^2
double gradient_l2_squared(const Field& f) {
  const Field s = f.to_spectral();
  const Grid& g = s.grid();
  const auto c = s.spectral();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += g.hermitian_weight(i) * g.k2(i) * std::norm(c[i]);
  return sum * g.volume();
}

}  // namespace

double relative_entropy_density(double rho, double gamma) {
  const double a = rho - 1.0;
  if (gamma == 1.0) return rho * std::log1p(a) - a;
  return (std::expm1(gamma * std::log1p(a)) - gamma * a) / (gamma - 1.0);
}

double relative_entropy(const Field& a, double gamma) {
  const auto rho = density_samples(a, "relative_entropy");
  double s = 0.0;
  for (double r : rho) s += relative_entropy_density(r, gamma);
  return s * a.grid().cell_volume();
}

double kinetic_energy(const Field& a, const VectorField& u) {
  const auto rho = density_samples(a, "kinetic_energy");
  const auto s2 = speed_squared(u);
  double s = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) s += rho[i] * s2[i];
  return 0.5 * s * a.grid().cell_volume();
}

double basic_energy(const FlowState& state, double gamma) {
  return relative_entropy(state.a, gamma) + kinetic_energy(state.a, state.u);
}

Dissipation dissipation(const VectorField& u, const PhysicalParams& params) {
  const Grid& g = u.grid();
  const int dim = u.dim();
  std::vector<Field> s;
  for (int c = 0; c < dim; ++c) s.push_back(u[c].to_spectral());
  Dissipation d;
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    double kk = 0.0, uu = 0.0;
    complex kdotu = 0.0;
    for (int c = 0; c < dim; ++c) {
      const complex v = s[c].spectral()[i];
      kk += g.k(i, c) * g.k(i, c);
      kdotu += g.k(i, c) * v;
      uu += std::norm(v);
    }
    const double w = g.hermitian_weight(i);
    const double q2 = kk > 0.0 ? std::norm(kdotu) / kk : 0.0;  // |Qu_k|^2
    d.incompressible += w * params.mu * g.k2(i) * (uu - q2);
    d.compressible += w * (params.mu * g.k2(i) * q2 + (params.lambda + params.mu) * std::norm(kdotu));
  }
  d.incompressible *= g.volume();
  d.compressible *= g.volume();
  return d;
}

// Per-mode dissipation densities, P parts then Q parts, including the
// Hermitian weight and the volume factor.
std::vector<double> mode_dissipation(const VectorField& u, const PhysicalParams& params) {
  const Grid& g = u.grid();
  const std::size_t n = g.spectral_size();
  std::vector<Field> s;
  for (int c = 0; c < u.dim(); ++c) s.push_back(u[c].to_spectral());
  std::vector<double> out(2 * n);
  const double vol = g.volume();
  for (std::size_t i = 0; i < n; ++i) {
    double kk = 0.0, uu = 0.0;
    complex kdotu = 0.0;
    for (int c = 0; c < u.dim(); ++c) {
      const complex v = s[c].spectral()[i];
      kk += g.k(i, c) * g.k(i, c);
      kdotu += g.k(i, c) * v;
      uu += std::norm(v);
    }
    const double w = g.hermitian_weight(i) * vol;
    const double q2 = kk > 0.0 ? std::norm(kdotu) / kk : 0.0;
    out[i] = w * params.mu * g.k2(i) * (uu - q2);
    out[n + i] = w * (params.mu * g.k2(i) * q2 + (params.lambda + params.mu) * std::norm(kdotu));
  }
  return out;
}

namespace {

// Integral over a step of a quantity moving from x to y, exact for
// exponential behaviour.
double log_mean(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) return 0.5 * (x + y);
  const double r = (y - x) / x;
  if (std::abs(r) < 1e-8) return 0.5 * (x + y);
  return (y - x) / std::log1p(r);
}

}  // namespace

double dissipation_integral(const std::vector<double>& d0, const std::vector<double>& d1, double dt) {
  double s = 0.0;
  for (std::size_t i = 0; i < d0.size(); ++i) s += log_mean(d0[i], d1[i]);
  return s * dt;
}

double l4_energy(const FlowState& state) {
  const auto rho = density_samples(state.a, "l4_energy");
  const auto s2 = speed_squared(state.u);
  double s = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) s += rho[i] * s2[i] * s2[i];
  return s * state.grid().cell_volume();
}

double f_density(double rho, double gamma, double nu) {
  const double a = rho - 1.0;
  if (gamma == 1.0) return (0.5 * a * a - relative_entropy_density(rho, 1.0)) / nu;
  const double den = 2.0 * (2.0 * gamma - 1.0);
  const double q = ((gamma - 1.0) * std::pow(rho, gamma) + gamma * (gamma - 1.0) * rho -
                    (gamma * gamma + 2.0 * gamma - 1.0)) / den;
  return (gamma * gamma / den * a * a + q * relative_entropy_density(rho, gamma)) / nu;
}

double LyapunovComponents::value(const LyapunovConstants& c) const {
  const auto t = terms();
  double x = 0.0;
  for (int i = 0; i < 6; ++i) x += c.A[i] * t[i];
  return x;
}

LyapunovComponents lyapunov_components(const FlowState& state, const Derived& derived,
                                       const PhysicalParams& params) {
  const Grid& g = state.grid();
  const double cell = g.cell_volume();
  const auto rho = density_samples(state.a, "lyapunov_components");
  const auto s2 = speed_squared(state.u);
  const auto frak = samples(derived.frak_a);
  const auto div = samples(divergence(state.u));
  const auto udot2 = speed_squared(derived.u_dot);

  LyapunovComponents c;
  double l4 = 0.0, cross = 0.0, fint = 0.0, l6 = 0.0, H = 0.0, kin = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    l4 += rho[i] * s2[i] * s2[i];
    cross += frak[i] * div[i];
    fint += f_density(rho[i], params.gamma, params.nu());
    l6 += std::pow(frak[i], 6);
    H += relative_entropy_density(rho[i], params.gamma);
    kin += rho[i] * s2[i];
    acc += rho[i] * udot2[i];
  }
  c.l4 = l4 * cell;
  c.gradient = dissipation(state.u, params).total() - cross * cell + fint * cell;
  c.l6 = std::cbrt(l6 * cell);
  c.energy = H * cell + 0.5 * kin * cell;
  c.accel = acc * cell;
  c.grad_frak = gradient_l2_squared(derived.frak_a);
  const double u1 = sobolev_norm(state.u, 1.0);
  const double a1 = sobolev_norm(state.a, 1.0);
  const double ud = lebesgue_norm(derived.u_dot, 2.0);
  c.comparison = u1 * u1 + a1 * a1 + ud * ud;
  return c;
}

double lyapunov_X(const FlowState& state, const PhysicalParams& params,
                  const LyapunovConstants& constants) {
  return lyapunov_components(state, derive(state, params), params).value(constants);
}

double low_freq_mass(const FlowState& state, double t, double C_split, double gamma) {
  if (!(t >= 0.0)) throw ConfigError("low_freq_mass requires t >= 0");
  const Grid& g = state.grid();
  const double radius = C_split / std::sqrt(1.0 + t);
  const Field rho = state.a.to_spectral() + Field::constant(state.grid_ptr(), 1.0);
  const Field a = state.a.to_spectral();
  std::vector<Field> m;
  for (int c = 0; c < state.u.dim(); ++c) m.push_back(dealiased_product(rho, state.u[c]));
  const double V = g.volume();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.spectral_size(); ++i) {
    if (g.k2(i) > radius * radius) continue;
    double v = gamma * std::norm(a.spectral()[i]);
    for (const auto& f : m) v += std::norm(f.spectral()[i]);
    sum += g.hermitian_weight(i) * v;
  }
  return sum * V * V * std::pow(g.k0(), g.dim());
}

double beta(double p0) {
  if (!(p0 >= 1.0 && p0 <= 2.0)) throw ConfigError("beta(p0) requires p0 in [1, 2]");
  return 0.75 * (2.0 / p0 - 1.0);
}

double conlf_rhs(std::span<const double> times, std::span<const double> u_l2,
                 std::span<const double> a_l2, double t, double p0, double a0_lp0,
                 double m0_lp0) {
  if (times.empty()) throw ConfigError("conlf_rhs needs a nonempty series");
  if (t < times.front() || t > times.back() * (1.0 + 1e-12) + 1e-300)
    throw ConfigError("conlf_rhs: t = " + std::to_string(t) + " outside the series range");
  auto g = [&](std::size_t i) {
    return std::pow(u_l2[i], 4) + std::pow(a_l2[i], 4);
  };
  double integral = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i - 1] >= t) break;
    const double t1 = std::min(times[i], t);
    const double w = (t1 - times[i - 1]) / (times[i] - times[i - 1]);
    const double g1 = g(i - 1) + w * (g(i) - g(i - 1));
    integral += 0.5 * (t1 - times[i - 1]) * (g(i - 1) + g1);
  }
  const double b = beta(p0);
  return (a0_lp0 * a0_lp0 + m0_lp0 * m0_lp0) * std::pow(1.0 + t, -2.0 * b) +
         std::pow(1.0 + t, -1.5) * integral;
}

HolderNorm holder_norm(const Field& f, double alpha, int radius_cells) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("Holder exponent must lie in (0, 1)");
  if (radius_cells < 1) throw ConfigError("Holder neighborhood radius must be >= 1 cell");
  const Grid& g = f.grid();
  const auto v = samples(f);
  const int n = g.n();
  const int dim = g.dim();
  HolderNorm h;
  for (double x : v) h.sup = std::max(h.sup, std::abs(x));

  const int R = radius_cells;
  std::vector<std::array<int, 3>> offsets;
  for (int i = -R; i <= R; ++i)
    for (int j = -R; j <= R; ++j)
      for (int k = (dim == 3 ? -R : 0); k <= (dim == 3 ? R : 0); ++k) {
        const int r2 = i * i + j * j + k * k;
        if (r2 == 0 || r2 > R * R) continue;
        // keep one of each +/- pair
        if (i < 0 || (i == 0 && j < 0) || (i == 0 && j == 0 && k < 0)) continue;
        offsets.push_back({i, j, k});
      }
  auto wrap = [n](int i) { return (i % n + n) % n; };
  const int n3 = dim == 3 ? n : 1;
  for (const auto& o : offsets) {
    const double dist = g.dx() * std::sqrt(double(o[0] * o[0] + o[1] * o[1] + o[2] * o[2]));
    const double scale = std::pow(dist, -alpha);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n3; ++k) {
          const std::size_t p = (std::size_t(i) * n + j) * n3 + k;
          const std::size_t q =
              (std::size_t(wrap(i + o[0])) * n + wrap(j + o[1])) * n3 + (dim == 3 ? wrap(k + o[2]) : 0);
          h.seminorm = std::max(h.seminorm, std::abs(v[p] - v[q]) * scale);
        }
  }
  return h;
}

double grad_linf(const VectorField& u) {
  const int dim = u.dim();
  std::vector<double> s(u.grid().physical_size(), 0.0);
  for (int c = 0; c < dim; ++c)
    for (int d = 0; d < dim; ++d) {
      const auto v = samples(partial(u[c], d));
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += v[i] * v[i];
    }
  return std::sqrt(*std::max_element(s.begin(), s.end()));
}

PointwiseRatios pointwise_ratios(const Field& a, const PhysicalParams& params, double rho_bar) {
  const auto av = samples(a);
  PointwiseRatios r;
  r.frak_over_a_min = std::numeric_limits<double>::infinity();
  r.frak_over_a_max = -std::numeric_limits<double>::infinity();
  for (double x : av) {
    const double rho = 1.0 + x;
    if (!(rho > 0.0)) throw PositivityFault(rho, "pointwise_ratios");
    const double H = relative_entropy_density(rho, params.gamma);
    if (rho <= rho_bar && H > 1e-13)
      r.f_over_H = std::max(r.f_over_H, std::abs(f_density(rho, params.gamma, params.nu())) / H);
    if (std::abs(x) > 1e-10) {
      const double q = std::expm1(params.gamma * std::log1p(x)) / x;
      r.frak_over_a_min = std::min(r.frak_over_a_min, q);
      r.frak_over_a_max = std::max(r.frak_over_a_max, q);
    }
  }
  if (!std::isfinite(r.frak_over_a_min)) r.frak_over_a_min = r.frak_over_a_max = params.gamma;
  return r;
}

}  // namespace cnslab
