#include "cnslab/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cnslab/errors.hpp"

namespace cnslab {

Field apply_multiplier(const Field& f, const std::function<double(std::size_t)>& m) {
  Field out = f.to_spectral();
  auto c = out.spectral_mut();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m(i);
  return out;
}

Field truncate(const Field& f) {
  Field out = f.to_spectral();
  const Grid& g = out.grid();
  auto c = out.spectral_mut();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!g.inside_dealias_ball(i)) c[i] = 0.0;
  return out;
}

VectorField truncate(const VectorField& v) {
  std::vector<Field> c;
  for (const auto& f : v.components()) c.push_back(truncate(f));
  return VectorField(std::move(c));
}

Field partial(const Field& f, int d) {
  Field out = f.to_spectral();
  const Grid& g = out.grid();
  auto c = out.spectral_mut();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= complex(0.0, g.k(i, d));
  return out;
}

Field gradient_component(const Field& f, int d) { return partial(f, d); }

VectorField gradient(const Field& f) {
  const Field s = f.to_spectral();
  std::vector<Field> c;
  for (int d = 0; d < s.grid().dim(); ++d) c.push_back(partial(s, d));
  return VectorField(std::move(c));
}

Field divergence(const VectorField& v) {
  const Grid& g = v.grid();
  Field out = Field::zeros(v.grid_ptr());
  auto c = out.spectral_mut();
  for (int d = 0; d < v.dim(); ++d) {
    const Field s = v[d].to_spectral();
    const auto sc = s.spectral();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += complex(0.0, g.k(i, d)) * sc[i];
  }
  return out;
}

Field laplacian(const Field& f) {
  const Grid& g = f.grid();
  return apply_multiplier(f, [&g](std::size_t i) { return -g.k2(i); });
}

VectorField laplacian(const VectorField& v) {
  std::vector<Field> c;
  for (const auto& f : v.components()) c.push_back(laplacian(f));
  return VectorField(std::move(c));
}

Field dealiased_product(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "dealiased_product");
  const Field fp = truncate(f).to_physical();
  const Field gp = truncate(g).to_physical();
  std::vector<double> prod(fp.physical().size());
  const auto a = fp.physical();
  const auto b = gp.physical();
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = a[i] * b[i];
  return truncate(Field::from_physical(f.grid_ptr(), std::move(prod)));
}

Field nonlinear_map(const Field& f, const std::function<double(double)>& phi,
                    Domain domain) {
  const Field fp = f.to_physical();
  const auto x = fp.physical();
  std::vector<double> y(x.size());
  const double xmin = *std::min_element(x.begin(), x.end());
  if (domain == Domain::positive && !(xmin > 0.0))
    throw PositivityFault(xmin, "nonlinear_map");
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = phi(x[i]);
    if (!std::isfinite(y[i])) throw PositivityFault(xmin, "nonlinear_map (non-finite value)");
  }
  return truncate(Field::from_physical(f.grid_ptr(), std::move(y)));
}

double lebesgue_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw ConfigError("L^p norm requires p >= 1");
  const Field fp = f.to_physical();
  const auto x = fp.physical();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  if (p == 2.0) {
    for (double v : x) s += v * v;
  } else if (p == 1.0) {
    for (double v : x) s += std::abs(v);
  } else {
    for (double v : x) s += std::pow(std::abs(v), p);
  }
  return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

double lebesgue_norm(const VectorField& v, double p) {
  if (!(p >= 1.0)) throw ConfigError("L^p norm requires p >= 1");
  const VectorField vp = v.to_physical();
  const std::size_t n = v.grid().physical_size();
  std::vector<double> mag(n, 0.0);
  for (int d = 0; d < v.dim(); ++d) {
    const auto c = vp[d].physical();
    for (std::size_t i = 0; i < n; ++i) mag[i] += c[i] * c[i];
  }
  for (auto& m : mag) m = std::sqrt(m);
  return lebesgue_norm(Field::from_physical(v.grid_ptr(), std::move(mag)), p);
}

double spectral_l2_squared(const Field& f) {
  const Field s = f.to_spectral();
  const Grid& g = s.grid();
  const auto c = s.spectral();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += g.hermitian_weight(i) * std::norm(c[i]);
  return sum * g.volume();
}

double sobolev_norm(const Field& f, double s) {
  const Field sp = f.to_spectral();
  const Grid& g = sp.grid();
  const auto c = sp.spectral();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    sum += g.hermitian_weight(i) * std::pow(1.0 + g.k2(i), s) * std::norm(c[i]);
  return std::sqrt(sum * g.volume());
}

double sobolev_norm(const VectorField& v, double s) {
  double sum = 0.0;
  for (const auto& f : v.components()) {
    const double n = sobolev_norm(f, s);
    sum += n * n;
  }
  return std::sqrt(sum);
}

double integrate(const Field& f) { return f.mean() * f.grid().volume(); }

double inner(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid(), "inner");
  const Field fp = f.to_physical();
  const Field gp = g.to_physical();
  const auto a = fp.physical();
  const auto b = gp.physical();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * f.grid().cell_volume();
}

Field random_band_limited(const GridPtr& grid, std::uint64_t seed, double radius) {
  // Sample in physical space so Hermitian symmetry holds by construction.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> x(grid->physical_size());
  for (double& v : x) v = normal(rng);
  Field f = Field::from_physical(grid, std::move(x)).to_spectral();
  auto c = f.spectral_mut();
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto m = grid->mode(i);
    const double m2 = double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2];
    if (m2 == 0.0 || m2 > r2 || grid->any_nyquist(i)) c[i] = 0.0;
  }
  return f;
}

VectorField random_band_limited_vector(const GridPtr& grid, std::uint64_t seed, double radius) {
  std::vector<Field> c;
  for (int d = 0; d < grid->dim(); ++d)
    c.push_back(random_band_limited(grid, seed * 7919 + 101 * (d + 1), radius));
  return VectorField(std::move(c));
}

}  // namespace cnslab
