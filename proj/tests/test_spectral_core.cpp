#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "cnslab/errors.hpp"
#include "cnslab/littlewood_paley.hpp"
#include "cnslab/spectral_ops.hpp"

using namespace cnslab;
constexpr double pi = std::numbers::pi;

namespace {

Field sine(const GridPtr& g, double k, int d = 0) {
  return Field::sample(g, [=](const std::array<double, 3>& x) { return std::sin(k * x[d]); });
}

double max_abs_diff(const Field& a, const Field& b) {
  const Field pa = a.to_physical(), pb = b.to_physical();
  double m = 0.0;
  for (std::size_t i = 0; i < pa.physical().size(); ++i)
    m = std::max(m, std::abs(pa.physical()[i] - pb.physical()[i]));
  return m;
}

double l2(const Field& f) { return std::sqrt(spectral_l2_squared(f)); }

}  // namespace

TEST(Grid, SmallestWavenumber) {
  EXPECT_DOUBLE_EQ(make_grid(8, 2 * pi, 3)->k0(), 1.0);
  EXPECT_DOUBLE_EQ(make_grid(16, 4 * pi, 2)->k0(), 0.5);
}

TEST(Grid, WavenumberComponentsOfSmallGrid) {
  const auto g = make_grid(8, 2 * pi, 3);
  std::set<int> values;
  for (std::size_t i = 0; i < g->spectral_size(); ++i) {
    const int m = g->mode(i)[0];
    values.insert(m);
    // The shared +-4 row is the Nyquist frequency.
    EXPECT_EQ(std::abs(m) == 4, g->nyquist(i, 0));
  }
  EXPECT_EQ(values.size(), 8u);
  EXPECT_EQ(*values.rbegin() - *values.begin(), 7);
}

TEST(Grid, RejectsInvalidShapes) {
  EXPECT_THROW(make_grid(10, 1.0, 3), ConfigError);
  EXPECT_THROW(make_grid(4, 1.0, 3), ConfigError);
  EXPECT_THROW(make_grid(16, 0.0, 3), ConfigError);
  EXPECT_THROW(make_grid(16, 1.0, 4), ConfigError);
  EXPECT_NO_THROW(make_grid(48, 1.0, 3));
  EXPECT_NO_THROW(make_grid(24, 1.0, 2));
}

TEST(Transform, ConstantLivesAtZeroMode) {
  const auto g = make_grid(8, 2 * pi, 3);
  const Field f = Field::constant(g, 2.5).to_spectral();
  EXPECT_NEAR(std::abs(f.spectral()[0] - complex(2.5, 0.0)), 0.0, 1e-15);
  for (std::size_t i = 1; i < g->spectral_size(); ++i) EXPECT_LT(std::abs(f.spectral()[i]), 1e-15);
}

TEST(Transform, SineMatchesDirectDft) {
  const auto g = make_grid(8, 2 * pi, 3);
  const Field f = sine(g, 1.0);
  // Direct evaluation of the normalized DFT sum at m = (1,0,0) and (-1,0,0).
  const Field p = f.to_physical();
  complex plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < g->physical_size(); ++i) {
    const double x = g->x(i, 0);
    plus += p.physical()[i] * std::exp(complex(0.0, -x));
    minus += p.physical()[i] * std::exp(complex(0.0, x));
  }
  plus /= double(g->physical_size());
  minus /= double(g->physical_size());
  EXPECT_NEAR(std::abs(plus), 0.5, 1e-14);
  EXPECT_NEAR(std::abs(plus - std::conj(minus)), 0.0, 1e-14);
  const Field s = f.to_spectral();
  for (std::size_t i = 0; i < g->spectral_size(); ++i) {
    const auto m = g->mode(i);
    if (m[0] == 1 && m[1] == 0 && m[2] == 0) EXPECT_NEAR(std::abs(s.spectral()[i] - plus), 0.0, 1e-14);
    else if (m[0] == -1 && m[1] == 0 && m[2] == 0) EXPECT_NEAR(std::abs(s.spectral()[i] - minus), 0.0, 1e-14);
    else EXPECT_LT(std::abs(s.spectral()[i]), 1e-14);
  }
}

TEST(Transform, RoundTripAndIdempotence) {
  const auto g = make_grid(16, 3.0, 3);
  const Field f = (random_band_limited(g, 3, 20.0) + Field::constant(g, 0.7)).to_physical();
  const Field back = f.to_spectral().to_physical();
  double scale = 0.0;
  for (double v : f.physical()) scale = std::max(scale, std::abs(v));
  EXPECT_LT(max_abs_diff(back, f) / scale, 1e-12);
  EXPECT_EQ(f.to_physical().representation(), Representation::physical);
  const Field s = f.to_spectral();
  const Field s2 = s.to_spectral();
  for (std::size_t i = 0; i < s.spectral().size(); ++i) EXPECT_EQ(s.spectral()[i], s2.spectral()[i]);
}

TEST(Transform, HermitianSymmetryOnSelfConjugatePlane) {
  const auto g = make_grid(16, 2 * pi, 3);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  std::vector<double> x(g->physical_size());
  for (auto& v : x) v = n(rng);
  const Field s = Field::from_physical(g, x).to_spectral();
  // On the m3 = 0 plane both m and -m are stored.
  auto index = [&](int m1, int m2) {
    auto w = [&](int m) { return std::size_t((m + 16) % 16); };
    return (w(m1) * 16 + w(m2)) * g->half_n();
  };
  double scale = 0.0;
  for (auto c : s.spectral()) scale = std::max(scale, std::abs(c));
  for (int m1 = -7; m1 <= 7; ++m1)
    for (int m2 = -7; m2 <= 7; ++m2)
      EXPECT_LT(std::abs(s.spectral()[index(m1, m2)] - std::conj(s.spectral()[index(-m1, -m2)])),
                1e-12 * scale);
}

TEST(Operators, GradientOfConstantVanishes) {
  const auto g = make_grid(8, 2 * pi, 3);
  const VectorField v = gradient(Field::constant(g, 3.0));
  for (int c = 0; c < 3; ++c) EXPECT_EQ(l2(v[c]), 0.0);
}

TEST(Operators, DivergenceOfGradientIsLaplacian) {
  const auto g = make_grid(16, 5.0, 3);
  const Field f = random_band_limited(g, 9, 6.0);
  EXPECT_LT(l2(divergence(gradient(f)) - laplacian(f)) / l2(laplacian(f)), 1e-12);
}

TEST(Operators, LaplacianOfSine) {
  const auto g = make_grid(16, 2 * pi, 3);
  const Field lap = laplacian(sine(g, 2.0));
  const Field expected = Field::sample(g, [](const auto& x) { return -4.0 * std::sin(2.0 * x[0]); });
  EXPECT_LT(max_abs_diff(lap, expected), 1e-12);
}

TEST(Operators, OddDerivativeDropsNyquist) {
  const auto g = make_grid(8, 2 * pi, 3);
  // cos(4 x1) lives only on the Nyquist row.
  const Field f = Field::sample(g, [](const auto& x) { return std::cos(4.0 * x[0]); });
  EXPECT_LT(l2(partial(f, 0)), 1e-14);
  EXPECT_GT(l2(laplacian(f)), 1.0);
}

TEST(Operators, DifferentiationCommutesWithBlocks) {
  const auto g = make_grid(16, 2 * pi, 3);
  const Field f = random_band_limited(g, 4, 8.0);
  for (int j = -1; j <= 3; ++j) {
    const Field a = dyadic_block(partial(f, 1), j), b = partial(dyadic_block(f, j), 1);
    EXPECT_LT(l2(a - b), 1e-14 * (1.0 + l2(a)));
  }
}

TEST(DealiasedProduct, IdentityFactorTruncates) {
  const auto g = make_grid(16, 2 * pi, 3);
  const Field f = random_band_limited(g, 1, 8.0);
  EXPECT_LT(l2(dealiased_product(f, Field::constant(g, 1.0)) - truncate(f)), 1e-14);
}

TEST(DealiasedProduct, SineSquaredIdentity) {
  const auto g = make_grid(8, 2 * pi, 3);
  const Field s = sine(g, 1.0);
  const Field expected = Field::sample(g, [](const auto& x) { return 0.5 - 0.5 * std::cos(2.0 * x[0]); });
  EXPECT_LT(max_abs_diff(dealiased_product(s, s), expected), 1e-14);
}

TEST(DealiasedProduct, HighModesAreRemoved) {
  const auto g = make_grid(16, 2 * pi, 3);
  // |k| = 7 > 16/3, outside the two-thirds ball.
  const Field a = sine(g, 7.0, 0), b = sine(g, 7.0, 1);
  EXPECT_LT(l2(dealiased_product(a, b)), 1e-14);
}

TEST(DealiasedProduct, SymmetricAndBilinear) {
  const auto g = make_grid(16, 2 * pi, 3);
  const Field f = random_band_limited(g, 1, 8.0), h = random_band_limited(g, 2, 8.0),
              k = random_band_limited(g, 3, 8.0);
  EXPECT_LT(l2(dealiased_product(f, h) - dealiased_product(h, f)), 1e-14);
  const Field lhs = dealiased_product(2.0 * f + k, h);
  const Field rhs = 2.0 * dealiased_product(f, h) + dealiased_product(k, h);
  EXPECT_LT(l2(lhs - rhs), 1e-13 * l2(rhs));
}

TEST(NonlinearMap, IdentityTruncates) {
  const auto g = make_grid(16, 2 * pi, 3);
  const Field f = random_band_limited(g, 8, 8.0);
  EXPECT_LT(l2(nonlinear_map(f, [](double v) { return v; }) - truncate(f)), 1e-14);
}

TEST(NonlinearMap, PowerOfEquilibriumIsOne) {
  const auto g = make_grid(8, 2 * pi, 3);
  const Field r = nonlinear_map(Field::constant(g, 1.0), [](double v) { return std::pow(v, 1.4); },
                                Domain::positive);
  EXPECT_NEAR(r.mean(), 1.0, 1e-15);
  EXPECT_NEAR(r.min(), 1.0, 1e-15);
  EXPECT_NEAR(r.max(), 1.0, 1e-15);
}

TEST(NonlinearMap, SquareExpansion) {
  const auto g = make_grid(16, 2 * pi, 3);
  const Field rho = Field::sample(g, [](const auto& x) { return 1.0 + 0.1 * std::cos(x[0]); });
  const Field expected = Field::sample(
      g, [](const auto& x) { return 1.005 + 0.2 * std::cos(x[0]) + 0.005 * std::cos(2.0 * x[0]); });
  EXPECT_LT(max_abs_diff(nonlinear_map(rho, [](double r) { return r * r; }), expected), 1e-14);
}

TEST(NonlinearMap, DomainViolationReportsMinimum) {
  const auto g = make_grid(8, 2 * pi, 3);
  const Field rho = Field::sample(g, [](const auto& x) { return 0.5 + std::cos(x[0]); });
  try {
    nonlinear_map(rho, [](double r) { return std::log(r); }, Domain::positive);
    FAIL() << "expected a positivity fault";
  } catch (const PositivityFault& e) {
    EXPECT_NEAR(e.min_density(), -0.5, 1e-14);
  }
}

TEST(LebesgueNorm, Constant) {
  const auto g = make_grid(8, 3.0, 3);
  const double V = 27.0;
  for (double p : {1.0, 2.0, 3.5})
    EXPECT_NEAR(lebesgue_norm(Field::constant(g, -2.0), p), 2.0 * std::pow(V, 1.0 / p), 1e-12);
  EXPECT_DOUBLE_EQ(lebesgue_norm(Field::constant(g, -2.0), INFINITY), 2.0);
}

TEST(LebesgueNorm, SineOnCube) {
  const auto g = make_grid(16, 2 * pi, 3);
  EXPECT_NEAR(lebesgue_norm(sine(g, 1.0), 2.0), 2.0 * pi * std::sqrt(pi), 1e-12);
}

TEST(LebesgueNorm, MaxNormOfTwoValues) {
  const auto g = make_grid(8, 1.0, 2);
  std::vector<double> x(g->physical_size(), 2.0);
  x[5] = -3.0;
  EXPECT_DOUBLE_EQ(lebesgue_norm(Field::from_physical(g, x), INFINITY), 3.0);
  EXPECT_THROW(lebesgue_norm(Field::from_physical(g, x), 0.5), ConfigError);
}

TEST(Properties, Parseval) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto g = make_grid(16, 2.0 + seed, 3);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    std::vector<double> x(g->physical_size());
    for (auto& v : x) v = n(rng);
    const Field f = Field::from_physical(g, x);
    const double direct = std::pow(lebesgue_norm(f, 2.0), 2);
    EXPECT_NEAR(spectral_l2_squared(f) / direct, 1.0, 1e-10);
  }
}
