#include "cnslab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cnslab/errors.hpp"
#include "cnslab/spectral_ops.hpp"

namespace cnslab {

namespace {

double uniform(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double bernstein_ratio(const Field& f, double p, double q, int order, int j) {
  if (q < p) throw ConfigError("Bernstein witness requires p <= q");
  if (order < 0) throw ConfigError("derivative order must be nonnegative");
  Field df = f.to_spectral();
  for (int i = 0; i < order; ++i) df = partial(df, 0);
  const int dim = f.grid().dim();
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double scale = std::exp2(j * (order + dim * (1.0 / p - inv_q)));
  return lebesgue_norm(df, q) / (scale * lebesgue_norm(f, p));
}

BernsteinReport bernstein_witness(double p, double q, int order, int j_first, int j_last,
                                  const BernsteinOptions& o) {
  if (q < p) throw ConfigError("Bernstein witness requires p <= q");
  if (j_last < j_first) throw ConfigError("empty scale interval");
  const GridPtr grid = make_grid(o.n, o.box_length, o.dim);

  std::mt19937_64 rng(o.seed);
  struct Wave {
    std::array<double, 3> k{};
    double phase = 0.0;
    double amp = 0.0;
  };
  std::vector<Wave> waves(o.modes);
  for (auto& w : waves) {
    // direction uniform on the sphere (circle in 2D), |k| in [1, 1.5]
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (int d = 0; d < o.dim; ++d) {
        w.k[d] = 2.0 * uniform(rng) - 1.0;
        norm2 += w.k[d] * w.k[d];
      }
    } while (norm2 > 1.0 || norm2 < 1e-4);
    const double radius = 1.0 + 0.5 * uniform(rng);
    for (int d = 0; d < o.dim; ++d) w.k[d] *= radius / std::sqrt(norm2);
    w.phase = 2.0 * std::numbers::pi * uniform(rng);
    w.amp = 0.5 + uniform(rng);
  }
  const double L = o.box_length;
  const double width = 1.0;

  BernsteinReport rep;
  for (int j = j_first; j <= j_last; ++j) {
    const double a = std::exp2(j);
    const Field h = Field::sample(grid, [&](const std::array<double, 3>& x) {
      std::array<double, 3> y{};
      double r2 = 0.0;
      for (int d = 0; d < o.dim; ++d) {
        double dx = x[d] - 0.5 * L;
        y[d] = a * dx;
        r2 += y[d] * y[d];
      }
      double sum = 0.0;
      for (const auto& w : waves) {
        double arg = w.phase;
        for (int d = 0; d < o.dim; ++d) arg += w.k[d] * y[d];
        sum += w.amp * std::cos(arg);
      }
      return std::exp(-r2 / (2.0 * width * width)) * sum;
    });
    const Field f = dyadic_block(h, j);
    rep.scales.push_back(j);
    rep.ratios.push_back(bernstein_ratio(f, p, q, order, j));
  }
  const auto [lo, hi] = std::minmax_element(rep.ratios.begin(), rep.ratios.end());
  rep.spread = *hi / *lo;
  return rep;
}

Field heat_solution(const Field& z0, const Field& forcing, double mu, double t) {
  require_same_grid(z0.grid(), forcing.grid(), "heat_solution");
  const Field a = z0.to_spectral();
  const Field f = forcing.to_spectral();
  const Grid& g = a.grid();
  Field out = Field::zeros(a.grid_ptr());
  auto c = out.spectral_mut();
  const auto ca = a.spectral();
  const auto cf = f.spectral();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = mu * g.k2(i);
    const double decay = std::exp(-x * t);
    // (1 - e^{-x t}) / x, with the x -> 0 limit t
    const double gain = x * t < 1e-8 ? t * (1.0 - 0.5 * x * t) : -std::expm1(-x * t) / x;
    c[i] = decay * ca[i] + gain * cf[i];
  }
  return out;
}

HeatReport heat_estimate_witness(const Field& z0, const Field& forcing, double m, double s,
                                 double p, double r, double mu, double T, int time_samples) {
  if (!(T > 0.0)) throw ConfigError("heat witness requires T > 0");
  if (!(mu > 0.0)) throw ConfigError("heat witness requires mu > 0");
  if (time_samples < 2) throw ConfigError("heat witness needs at least two time samples");
  std::vector<Field> series;
  for (int i = 0; i < time_samples; ++i)
    series.push_back(heat_solution(z0, forcing, mu, T * i / double(time_samples - 1)));
  const double lift = std::isinf(m) ? 0.0 : 2.0 / m;
  HeatReport rep;
  rep.lhs = chemin_lerner_norm(series, m, NormSpec{s + lift, p, r}, T);
  const NormSpec base{s, p, r};
  // constant forcing: L~^1_T norm is T times the snapshot norm
  rep.rhs = besov_norm(z0, base) + T * besov_norm(forcing, base);
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

}  // namespace cnslab
