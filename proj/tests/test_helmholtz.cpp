#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cnslab/errors.hpp"
#include "cnslab/helmholtz.hpp"
#include "cnslab/spectral_ops.hpp"

using namespace cnslab;
constexpr double pi = std::numbers::pi;

namespace {

double l2(const Field& f) { return std::sqrt(spectral_l2_squared(f)); }
double l2(const VectorField& v) {
  double s = 0.0;
  for (const auto& c : v.components()) s += spectral_l2_squared(c);
  return std::sqrt(s);
}

using Fn = std::function<double(const std::array<double, 3>&)>;
Field sample(const GridPtr& g, Fn fn) { return Field::sample(g, std::move(fn)); }

VectorField vec(const GridPtr& g, Fn f0, Fn f1, Fn f2) {
  return VectorField({sample(g, f0), sample(g, f1), sample(g, f2)});
}

// Smooth periodic scalar with several modes and no mean.
double psi(const std::array<double, 3>& x) {
  return std::sin(x[0]) * std::cos(2 * x[1]) + 0.5 * std::cos(x[2] + x[0]) + 0.3 * std::sin(3 * x[1]);
}

}  // namespace

TEST(Project, GradientFieldIsPureQ) {
  const auto g = make_grid(16, 2 * pi, 3);
  const VectorField u = gradient(sample(g, psi));
  const HelmholtzSplit h = project(u);
  EXPECT_LT(l2(h.Pu), 1e-13 * l2(u));
  EXPECT_LT(l2(h.Qu - u), 1e-13 * l2(u));
}

TEST(Project, RotatedGradientIsPureP) {
  const auto g = make_grid(16, 2 * pi, 3);
  const Field p = sample(g, psi);
  const VectorField u({-1.0 * partial(p, 1), partial(p, 0), Field::zeros(g)});
  const HelmholtzSplit h = project(u);
  EXPECT_LT(l2(h.Qu), 1e-13 * l2(u));
  EXPECT_LT(l2(h.Pu - u), 1e-13 * l2(u));
}

TEST(Project, MeanGoesToP) {
  const auto g = make_grid(8, 2 * pi, 3);
  VectorField u = random_band_limited_vector(g, 3, 3.0);
  u[1] += Field::constant(g, 0.7);
  const HelmholtzSplit h = project(u);
  EXPECT_NEAR(h.Pu.mean()[1], 0.7, 1e-14);
  EXPECT_NEAR(h.Qu.mean()[1], 0.0, 1e-14);
  EXPECT_LT(l2(h.Pu + h.Qu - u), 1e-14 * l2(u));
}

TEST(Project, RandomFieldProperties) {
  const auto g = make_grid(16, 5.0, 3);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const VectorField u = random_band_limited_vector(g, seed, 6.0);
    const HelmholtzSplit h = project(u);
    const double nu = l2(u);
    EXPECT_LT(l2(divergence(h.Pu)), 1e-12 * l2(divergence(u)));
    EXPECT_LT(l2(leray(h.Pu) - h.Pu), 1e-14 * nu);
    EXPECT_LT(l2(leray(h.Qu)), 1e-14 * nu);
    EXPECT_NEAR((spectral_l2_squared(h.Pu[0]) + spectral_l2_squared(h.Pu[1]) + spectral_l2_squared(h.Pu[2]) +
                 spectral_l2_squared(h.Qu[0]) + spectral_l2_squared(h.Qu[1]) + spectral_l2_squared(h.Qu[2])) /
                    (nu * nu),
                1.0, 1e-12);
    // Qu = grad Lap^{-1} div u, built from primitives.
    const Field phi = lambda_power(divergence(u), -2.0);
    EXPECT_LT(l2(h.Qu + gradient(phi)), 1e-12 * nu);
    EXPECT_NEAR(l2(h.d), l2(h.Qu), 1e-12 * nu);
    EXPECT_LT(l2(gradient_part(u) - h.Qu), 1e-15 * nu);
  }
}

TEST(Project, WorksInTwoDimensions) {
  const auto g = make_grid(32, 2 * pi, 2);
  const VectorField u = random_band_limited_vector(g, 9, 8.0);
  const HelmholtzSplit h = project(u);
  EXPECT_LT(l2(divergence(h.Pu)), 1e-12 * l2(u));
  EXPECT_LT(l2(h.Pu + h.Qu - u), 1e-14 * l2(u));
}

TEST(LambdaPower, SingleModeValues) {
  const auto g = make_grid(16, 2 * pi, 3);
  const Field s1 = sample(g, [](const auto& x) { return std::sin(x[0]); });
  EXPECT_LT(l2(lambda_power(s1, 2.0) - s1), 1e-14 * l2(s1));
  const Field s3 = sample(g, [](const auto& x) { return std::sin(3 * x[1]); });
  EXPECT_LT(l2(lambda_power(s3, 0.5) - std::sqrt(3.0) * s3), 1e-14 * l2(s3));
  EXPECT_LT(l2(lambda_power(s3, -1.0) - (1.0 / 3.0) * s3), 1e-14 * l2(s3));
}

TEST(LambdaPower, SquareIsMinusLaplacian) {
  const auto g = make_grid(16, 3.0, 3);
  const Field f = random_band_limited(g, 2, 6.0);
  EXPECT_LT(l2(lambda_power(f, 2.0) + laplacian(f)), 1e-12 * l2(laplacian(f)));
}

TEST(LambdaPower, Semigroup) {
  const auto g = make_grid(16, 3.0, 3);
  const Field f = random_band_limited(g, 5, 6.0);
  EXPECT_LT(l2(lambda_power(lambda_power(f, 0.7), -0.7) - f), 1e-13 * l2(f));
  EXPECT_LT(l2(lambda_power(lambda_power(f, 0.4), 0.6) - lambda_power(f, 1.0)), 1e-13 * l2(f));
}

TEST(LambdaPower, NegativeOrderNeedsMeanFree) {
  const auto g = make_grid(8, 2 * pi, 3);
  EXPECT_THROW(lambda_power(Field::constant(g, 1.0), -1.0), ConfigError);
  EXPECT_LT(l2(lambda_power(Field::constant(g, 1.0), 1.0)), 1e-15);
  EXPECT_LT(l2(lambda_power(Field::constant(g, 1.0), 0.0) - Field::constant(g, 1.0)), 1e-15);
}

TEST(LambdaPower, DFromGradientOfSine) {
  // u = grad sin(x1) = (cos x1, 0, 0): div u = -sin x1, |k| = 1, so d = -sin x1.
  const auto g = make_grid(16, 2 * pi, 3);
  const VectorField u = vec(g, [](const auto& x) { return std::cos(x[0]); },
                            [](const auto&) { return 0.0; }, [](const auto&) { return 0.0; });
  const Field expected = sample(g, [](const auto& x) { return -std::sin(x[0]); });
  EXPECT_LT(l2(project(u).d - expected), 1e-13);
  EXPECT_LT(l2(lambda_power(divergence(u), -1.0) - expected), 1e-13);
}

TEST(EffectiveFlux, Examples) {
  const auto g = make_grid(8, 2 * pi, 3);
  const VectorField zero = VectorField::zeros(g);
  EXPECT_EQ(l2(effective_flux(zero, Field::zeros(g), 0.0, 1.0)), 0.0);
  EXPECT_LT(l2(effective_flux(zero, Field::constant(g, 0.3), -1.0, 1.0) + Field::constant(g, 0.3)), 1e-15);
  // Manufactured: frak = nu div u.
  const auto g16 = make_grid(16, 4.0, 3);
  const VectorField u = random_band_limited_vector(g16, 4, 6.0);
  const double lambda = 0.5, mu = 0.8;
  const Field frak = (lambda + 2 * mu) * divergence(u);
  EXPECT_LT(l2(effective_flux(u, frak, lambda, mu)), 1e-12 * l2(frak));
}

TEST(AuxiliaryW, Examples) {
  const auto g = make_grid(16, 2 * pi, 3);
  const Field d = random_band_limited(g, 7, 5.0);
  EXPECT_LT(l2(auxiliary_w(Field::zeros(g), d, 0.0, 1.0) + d), 1e-15 * l2(d));
  // Single mode |k| = 2: w = nu * 2 * a.
  const Field a = sample(g, [](const auto& x) { return std::cos(2 * x[2]); });
  const double lambda = 0.4, mu = 1.3;
  EXPECT_LT(l2(auxiliary_w(a, Field::zeros(g), lambda, mu) - (2 * (lambda + 2 * mu)) * a), 1e-13);
  // Linearity.
  const Field a2 = random_band_limited(g, 8, 5.0), d2 = random_band_limited(g, 9, 5.0);
  const Field lhs = auxiliary_w(2.0 * a2 + a, 2.0 * d2 - d, lambda, mu);
  const Field rhs = 2.0 * auxiliary_w(a2, d2, lambda, mu) + auxiliary_w(a, -1.0 * d, lambda, mu);
  EXPECT_LT(l2(lhs - rhs), 1e-13 * l2(lhs));
}

TEST(MaterialDerivative, Examples) {
  const auto g = make_grid(16, 2 * pi, 3);
  const VectorField ut = random_band_limited_vector(g, 1, 5.0);
  EXPECT_LT(l2(material_derivative(VectorField::zeros(g), ut) - ut), 1e-15 * l2(ut));

  const VectorField u = 0.1 * random_band_limited_vector(g, 2, 4.0);
  EXPECT_LT(l2(material_derivative(u, -1.0 * convection(u))), 1e-14 * l2(convection(u)));

  const VectorField shear = vec(g, [](const auto& x) { return std::sin(x[1]); },
                                [](const auto&) { return 0.0; }, [](const auto&) { return 0.0; });
  EXPECT_LT(l2(material_derivative(shear, VectorField::zeros(g))), 1e-14);
}

TEST(Convection, MatchesPointwiseFormula) {
  // u = (sin x2, cos x1, 0): (u.grad) u = (cos x1 cos x2, -sin x2 sin x1, 0).
  const auto g = make_grid(16, 2 * pi, 3);
  const VectorField u = vec(g, [](const auto& x) { return std::sin(x[1]); },
                            [](const auto& x) { return std::cos(x[0]); }, [](const auto&) { return 0.0; });
  const VectorField expected = vec(g, [](const auto& x) { return std::cos(x[0]) * std::cos(x[1]); },
                                   [](const auto& x) { return -std::sin(x[1]) * std::sin(x[0]); },
                                   [](const auto&) { return 0.0; });
  EXPECT_LT(l2(convection(u) - expected), 1e-13);
  const Field f = sample(g, [](const auto& x) { return std::sin(x[0]); });
  const Field uf = sample(g, [](const auto& x) { return std::sin(x[1]) * std::cos(x[0]); });
  EXPECT_LT(l2(convection(u, f) - uf), 1e-13);
}
