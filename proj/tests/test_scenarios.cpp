#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "cnslab/besov.hpp"
#include "cnslab/errors.hpp"
#include "cnslab/scenarios.hpp"
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

bool bit_equal(const Field& x, const Field& y) {
  const Field xs = x.to_spectral(), ys = y.to_spectral();
  const auto a = xs.spectral(), b = ys.spectral();
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

TEST(Bump, ShapeAndSupport) {
  EXPECT_EQ(bump(0.0), 1.0);
  EXPECT_EQ(bump(1.0), 0.0);
  EXPECT_EQ(bump(1.5), 0.0);
  EXPECT_NEAR(bump(0.5), std::exp(1.0 - 1.0 / 0.75), 1e-15);
}

TEST(EquilibriumPerturbation, ZeroAmplitudeIsEquilibrium) {
  const auto g = make_grid(16, 2 * pi, 3);
  const ScenarioState s = equilibrium_perturbation(g, 0.0, 1.0, 3);
  EXPECT_EQ(l2(s.state.a), 0.0);
  EXPECT_EQ(l2(s.state.u), 0.0);
}

TEST(EquilibriumPerturbation, LinearInAmplitude) {
  const auto g = make_grid(16, 2 * pi, 3);
  for (double p0 : {1.0, 1.5, 2.0}) {
    const ScenarioState s1 = equilibrium_perturbation(g, 2e-2, p0, 5);
    const ScenarioState s2 = equilibrium_perturbation(g, 1e-2, p0, 5);
    for (const char* key : {"a0_Lp0", "u0_Lp0", "a0_H2", "u0_H2", "a0_Lp0_localized", "u0_Lp0_localized"})
      EXPECT_NEAR(s2.record.at(key) / s1.record.at(key), 0.5, 1e-12) << key << " p0=" << p0;
    EXPECT_EQ(s1.record.at("potential_order"), std::max(0.0, 3.0 * (1.0 - 1.0 / p0)));
  }
}

TEST(EquilibriumPerturbation, InvariantsAndDeterminism) {
  const auto g = make_grid(16, 8 * pi, 3);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const ScenarioState s = equilibrium_perturbation(g, 0.1, 1.0, seed);
    EXPECT_LT(std::abs(s.state.a.mean()), 1e-15);
    EXPECT_GT(s.state.a.to_physical().min(), -1.0);
    EXPECT_NEAR(lebesgue_norm(s.state.a, INFINITY), 0.1, 1e-12);
    const ScenarioState again = equilibrium_perturbation(g, 0.1, 1.0, seed);
    EXPECT_TRUE(bit_equal(s.state.a, again.state.a));
    for (int c = 0; c < 3; ++c) EXPECT_TRUE(bit_equal(s.state.u[c], again.state.u[c]));
  }
  EXPECT_FALSE(bit_equal(equilibrium_perturbation(g, 0.1, 1.0, 1).state.a,
                         equilibrium_perturbation(g, 0.1, 1.0, 2).state.a));
}

double radial_moment(int power) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [power](double r) { return std::pow(r, power) * bump(r); }, 0.0, 1.0, 15, 1e-14);
}

TEST(EquilibriumPerturbation, ProfileNormMatchesRadialQuadrature) {
  // Unmodulated bump of radius R: ||b||_{L^1} = 2 pi R^2 int_0^1 r bump(r) dr in 2D.
  // 64 points per radius resolve the profile to the quadrature tolerance.
  const auto g = make_grid(512, 2 * pi, 2);
  const double R = g->box_length() / 8.0;
  const ScenarioState s = equilibrium_perturbation(g, 1e-2, 1.0, 1, {R, 0.0, 0.0});
  EXPECT_NEAR(s.record.at("profile_Lp0") / (2 * pi * R * R * radial_moment(1)), 1.0, 1e-6);
}

TEST(EquilibriumPerturbation, ProfileNormMatchesRadialQuadrature3D) {
  // 16 points per radius; the sampling error is a few 1e-6.
  const auto g = make_grid(128, 2 * pi, 3);
  const double R = g->box_length() / 8.0;
  const ScenarioState s = equilibrium_perturbation(g, 1e-2, 1.0, 1, {R, 0.0, 0.0});
  EXPECT_NEAR(s.record.at("profile_Lp0") / (4 * pi * R * R * R * radial_moment(2)), 1.0, 1e-5);
}

TEST(EquilibriumPerturbation, Errors) {
  const auto g = make_grid(16, 2 * pi, 3);
  EXPECT_THROW(equilibrium_perturbation(g, 1e-2, 0.5, 1), ConfigError);
  EXPECT_THROW(equilibrium_perturbation(g, 1e-2, 1.0, 1, {g->box_length(), 0.0, 0.5}), ConfigError);
  EXPECT_THROW(equilibrium_perturbation(g, 1e4, 1.0, 1), ConfigError);  // rho <= 0 in the mean-removed tail
}

TEST(Oscillating, DivergenceFreeAndSnapped) {
  const auto g = make_grid(32, 8 * pi, 3);  // k0 = 1/4
  const ScenarioState s = oscillating_data(g, 0.45, 1.0);
  EXPECT_EQ(l2(s.state.a), 0.0);
  EXPECT_LT(l2(project(s.state.u).Qu), 1e-10 * l2(s.state.u));
  EXPECT_EQ(l2(s.state.u[2]), 0.0);
  EXPECT_NEAR(s.record.at("k3"), 2.25, 1e-15);  // 1/0.45 snapped to 9 * 1/4
  EXPECT_FALSE(s.notes.empty());
  const ScenarioState exact = oscillating_data(g, 0.5, 1.0);
  EXPECT_NEAR(exact.record.at("k3"), 2.0, 1e-15);
  EXPECT_TRUE(exact.notes.empty());
}

TEST(Oscillating, AmplitudeIsLinear) {
  const auto g = make_grid(32, 8 * pi, 3);
  const ScenarioState a = oscillating_data(g, 0.5, 1.0), b = oscillating_data(g, 0.5, 3.0);
  EXPECT_LT(l2(b.state.u - 3.0 * a.state.u), 1e-14 * l2(b.state.u));
}

TEST(Oscillating, Errors) {
  EXPECT_THROW(oscillating_data(make_grid(16, 8 * pi, 3), 0.1, 1.0), ConfigError);   // 10 > n/3 k0
  EXPECT_THROW(oscillating_data(make_grid(16, 8 * pi, 2), 0.5, 1.0), ConfigError);   // dim
  EXPECT_THROW(oscillating_data(make_grid(16, 8 * pi, 3), 100.0, 1.0), ConfigError); // rounds to 0
}

TEST(LargeVertical, BudgetAndReproducibility) {
  const auto g = make_grid(24, 8 * pi, 3);
  const double budget = 1e-2, p = 2.0, C = 0.5;
  const ScenarioState s = large_vertical_data(g, budget, p, 1.0, C);
  const SmallDataLhs l = smalldata_lhs(s.state, p, C, 1.0);
  EXPECT_EQ(l.total, s.record.at("lhs_total"));
  EXPECT_EQ(l.vertical, s.record.at("lhs_vertical"));
  EXPECT_NEAR(l.total / budget, 1.0, 1e-10);
  EXPECT_NEAR(l.factor, std::exp(C * (1.0 + l.vertical)), 1e-12 * l.factor);
  // Vertical part: x3-independent, sup amplitude 1.
  const Field w = s.state.u[2] - project(s.state.u).Qu[2];
  EXPECT_LT(l2(partial(s.state.u[2], 2)), 1e-10 * l2(s.state.u[2]) + l2(partial(project(s.state.u).Qu[2], 2)) * 1.01);
  EXPECT_GT(lebesgue_norm(w, INFINITY), 0.5);
  EXPECT_GT(s.state.a.to_physical().min(), -1.0);
  const ScenarioState again = large_vertical_data(g, budget, p, 1.0, C);
  EXPECT_TRUE(bit_equal(s.state.u[2], again.state.u[2]));
}

TEST(LargeVertical, InfeasibleBudget) {
  const auto g = make_grid(16, 8 * pi, 3);
  EXPECT_THROW(large_vertical_data(g, 1e-2, 2.0, 1.0, 200.0), ConfigError);
  EXPECT_THROW(large_vertical_data(g, 1e-2, 5.0, 1.0, 1.0), ConfigError);
}

TEST(StabilityPair, ZeroPerturbationIsIdentical) {
  const auto g = make_grid(16, 8 * pi, 3);
  const ScenarioState base = equilibrium_perturbation(g, 1e-2, 1.0, 1);
  const StabilityPair pair = stability_pair(base, 0.0, 2);
  EXPECT_TRUE(bit_equal(pair.perturbed.a, base.state.a));
  EXPECT_EQ(pair.difference.total(), 0.0);
}

TEST(StabilityPair, DifferenceNormMatchesTarget) {
  const auto g = make_grid(16, 8 * pi, 3);
  const ScenarioState base = equilibrium_perturbation(g, 1e-2, 1.0, 1);
  const double eps = 1e-3, p = 2.0, R0 = 1.0;
  const StabilityPair pair = stability_pair(base, eps, 2, p, R0);
  EXPECT_NEAR(pair.difference.total() / eps, 1.0, 0.05);
  // Summands recomputed from low/high Besov pieces and the Leray projector.
  const Field da = pair.perturbed.a - base.state.a;
  const VectorField du = pair.perturbed.u - base.state.u;
  const VectorField Pdu = leray(du), Qdu = du - Pdu;
  const double density = besov_low(da, 0.5, 2.0, R0) + besov_high(da, 3.0 / p, p, R0);
  const double incompressible = besov_norm(Pdu, {3.0 / p - 1.0, p, 1.0});
  const double compressible = besov_low(Qdu, 0.5, 2.0, R0) + besov_high(Qdu, 3.0 / p - 1.0, p, R0);
  EXPECT_NEAR(pair.difference.density, density, 1e-10 * density);
  EXPECT_NEAR(pair.difference.incompressible, incompressible, 1e-10 * incompressible);
  EXPECT_NEAR(pair.difference.compressible, compressible, 1e-10 * compressible);
  EXPECT_NEAR(pair.difference.total(), density + incompressible + compressible, 1e-10 * eps);
}

TEST(Catalog, KindsRoundTrip) {
  const auto cat = scenario_catalog();
  EXPECT_GE(cat.size(), 4u);
  for (const auto& info : cat) EXPECT_EQ(to_string(parse_scenario_kind(info.name)), info.name);
  EXPECT_THROW(parse_scenario_kind("vortex"), ConfigError);
}

TEST(BuildScenario, DispatchesOnKind) {
  const auto g = make_grid(16, 8 * pi, 3);
  ScenarioConfig c;
  c.kind = ScenarioKind::equilibrium;
  EXPECT_EQ(l2(build_scenario(c, g).state.u), 0.0);
  c.kind = ScenarioKind::oscillating;
  c.eps_osc = 1.0;
  EXPECT_GT(l2(build_scenario(c, g).state.u), 0.0);
  c = {};
  c.p0 = 3.0;
  EXPECT_THROW(c.validate(), ConfigError);
}
