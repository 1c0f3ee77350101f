#include "cnslab/helmholtz.hpp"

#include <cmath>

#include "cnslab/errors.hpp"
#include "cnslab/spectral_ops.hpp"

namespace cnslab {

HelmholtzSplit project(const VectorField& u) {
  const VectorField s = u.to_spectral();
  const Grid& g = s.grid();
  const int dim = s.dim();
  const std::size_t n = g.spectral_size();

  HelmholtzSplit out{VectorField::zeros(s.grid_ptr()), VectorField::zeros(s.grid_ptr()),
                     Field::zeros(s.grid_ptr())};
  std::vector<std::span<const complex>> in;
  std::vector<std::span<complex>> pu, qu;
  for (int c = 0; c < dim; ++c) {
    in.push_back(s[c].spectral());
    pu.push_back(out.Pu[c].spectral_mut());
    qu.push_back(out.Qu[c].spectral_mut());
  }
  auto d = out.d.spectral_mut();
  for (std::size_t i = 0; i < n; ++i) {
    double kk = 0.0;
    complex kdotu = 0.0;
    for (int c = 0; c < dim; ++c) {
      kk += g.k(i, c) * g.k(i, c);
      kdotu += g.k(i, c) * in[c][i];
    }
    if (kk == 0.0) {
      // mean mode, and pure-Nyquist modes whose derivative wavevector is zero
      for (int c = 0; c < dim; ++c) pu[c][i] = in[c][i];
      continue;
    }
    for (int c = 0; c < dim; ++c) {
      qu[c][i] = g.k(i, c) * kdotu / kk;
      pu[c][i] = in[c][i] - qu[c][i];
    }
    d[i] = complex(0.0, 1.0) * kdotu / std::sqrt(kk);
  }
  return out;
}

VectorField leray(const VectorField& u) { return project(u).Pu; }
VectorField gradient_part(const VectorField& u) { return project(u).Qu; }

Field lambda_power(const Field& f, double alpha) {
  if (alpha == 0.0) return f.to_spectral();
  const Field s = f.to_spectral();
  if (alpha < 0.0) {
    const double m = std::abs(s.mean());
    if (m > 1e-13 * std::max(1.0, std::sqrt(spectral_l2_squared(s) / s.grid().volume())))
      throw ConfigError("negative power of Lambda applied to a field with nonzero mean");
  }
  const Grid& g = s.grid();
  return apply_multiplier(s, [&](std::size_t i) {
    const double k2 = g.k2(i);
    return k2 == 0.0 ? 0.0 : std::pow(k2, 0.5 * alpha);
  });
}

Field effective_flux(const VectorField& u, const Field& frak_a, double lambda, double mu) {
  const double nu = lambda + 2.0 * mu;
  if (!(nu > 0.0)) throw ConfigError("effective flux requires lambda + 2 mu > 0");
  return divergence(u) - (1.0 / nu) * frak_a.to_spectral();
}

Field auxiliary_w(const Field& a, const Field& d, double lambda, double mu) {
  return (2.0 * mu + lambda) * lambda_power(a, 1.0) - d.to_spectral();
}

Field convection(const VectorField& u, const Field& f) {
  require_same_grid(u.grid(), f.grid(), "convection");
  Field out = Field::zeros(u.grid_ptr());
  for (int j = 0; j < u.dim(); ++j) out += dealiased_product(u[j], partial(f, j));
  return out;
}

VectorField convection(const VectorField& u) {
  std::vector<Field> c;
  for (int i = 0; i < u.dim(); ++i) c.push_back(convection(u, u[i]));
  return VectorField(std::move(c));
}

VectorField material_derivative(const VectorField& u, const VectorField& u_t) {
  require_same_grid(u.grid(), u_t.grid(), "material_derivative");
  return u_t.to_spectral() + convection(u);
}

}  // namespace cnslab
