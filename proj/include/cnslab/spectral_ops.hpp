#pragma once

#include <cstdint>
#include <functional>

#include "cnslab/field.hpp"

namespace cnslab {

/// Multiply each coefficient by m(idx). Real m keeps real fields real.
Field apply_multiplier(const Field& f, const std::function<double(std::size_t)>& m);

/// Zero every mode outside the two-thirds dealiasing ball.
Field truncate(const Field& f);
VectorField truncate(const VectorField& v);

/// i k_d f, Nyquist component zeroed.
Field partial(const Field& f, int d);
Field gradient_component(const Field& f, int d);
VectorField gradient(const Field& f);
Field divergence(const VectorField& v);
Field laplacian(const Field& f);
VectorField laplacian(const VectorField& v);

/// Two-thirds-rule product: inputs truncated, pointwise product, output
/// truncated. Symmetric and bilinear.
Field dealiased_product(const Field& f, const Field& g);

enum class Domain { any, positive };

/// phi applied pointwise in physical space, then truncated. With
/// Domain::positive every sample must be > 0; violations (and non-finite
/// results) raise PositivityFault carrying the minimum sample.
Field nonlinear_map(const Field& f, const std::function<double(double)>& phi,
                    Domain domain = Domain::any);

/// Rectangle-rule L^p norm; p = +infinity gives the max norm. Throws
/// ConfigError for p < 1.
double lebesgue_norm(const Field& f, double p);
/// L^p norm of the pointwise Euclidean magnitude.
double lebesgue_norm(const VectorField& v, double p);

/// Parseval-weighted squared L^2 norm computed from spectral coefficients.
double spectral_l2_squared(const Field& f);
/// (sum_k (1 + |k|^2)^s |f_k|^2 * volume)^{1/2}.
double sobolev_norm(const Field& f, double s);
double sobolev_norm(const VectorField& v, double s);

/// Rectangle-rule integral of the pointwise values of f.
double integrate(const Field& f);
/// Integral of f*g evaluated pointwise (not dealiased).
double inner(const Field& f, const Field& g);

/// Seeded unit-variance white noise restricted to the modes with
/// 0 < |m| <= radius (lattice units); mean zero, no Nyquist content.
Field random_band_limited(const GridPtr& grid, std::uint64_t seed, double radius);
VectorField random_band_limited_vector(const GridPtr& grid, std::uint64_t seed, double radius);

}  // namespace cnslab
