#pragma once

#include "cnslab/field.hpp"

namespace cnslab {

/// u = Pu + Qu with div Pu = 0 and Qu a gradient. The mean velocity is
/// assigned to Pu. d = Lambda^{-1} div u, so ||d||_{L^2} = ||Qu||_{L^2}.
struct HelmholtzSplit {
  VectorField Pu;
  VectorField Qu;
  Field d;
};

HelmholtzSplit project(const VectorField& u);
VectorField leray(const VectorField& u);
VectorField gradient_part(const VectorField& u);

/// Multiplier |k|^alpha (Lambda^2 = -Lap). alpha < 0 requires a mean-zero
/// field and throws ConfigError otherwise; the k = 0 mode maps to zero for
/// alpha != 0.
Field lambda_power(const Field& f, double alpha);

/// G = div u - frak_a / (lambda + 2 mu).
Field effective_flux(const VectorField& u, const Field& frak_a, double lambda, double mu);

/// w = (2 mu + lambda) Lambda a - d.
Field auxiliary_w(const Field& a, const Field& d, double lambda, double mu);

/// (u . grad) u with dealiased products.
VectorField convection(const VectorField& u);
/// (u . grad) f with dealiased products.
Field convection(const VectorField& u, const Field& f);

/// u_t + (u . grad) u.
VectorField material_derivative(const VectorField& u, const VectorField& u_t);

}  // namespace cnslab
