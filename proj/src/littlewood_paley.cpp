#include "cnslab/littlewood_paley.hpp"

#include <cmath>

#include "cnslab/spectral_ops.hpp"

namespace cnslab {

namespace {

double smooth_step_kernel(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// psi(s) = g(s) / (g(s) + g(1 - s)): 0 for s <= 0, 1 for s >= 1, C^infinity.
double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = smooth_step_kernel(s);
  const double b = smooth_step_kernel(1.0 - s);
  return a / (a + b);
}

}  // namespace

double CutoffProfile::chi(double r) const {
  return smooth_step((outer_radius - r) / (outer_radius - inner_radius));
}

ScaleRange active_range(const Grid& grid) {
  return {int(std::floor(std::log2(grid.k0()))) - 1,
          int(std::ceil(std::log2(grid.k_max()))) + 1};
}

Field dyadic_block(const Field& f, int j, const CutoffProfile& profile,
                   Warnings* warnings) {
  const Grid& g = f.grid();
  if (!active_range(g).contains(j)) {
    if (warnings) warnings->push_back("dyadic block j = " + std::to_string(j) +
                                      " outside active range; returning zero");
    return Field::zeros(f.grid_ptr());
  }
  const double scale = std::ldexp(1.0, -j);
  return apply_multiplier(f, [&](std::size_t i) {
    return i == 0 ? 0.0 : profile.phi(scale * std::sqrt(g.k2(i)));
  });
}

VectorField dyadic_block(const VectorField& v, int j, const CutoffProfile& profile,
                         Warnings* warnings) {
  std::vector<Field> c;
  for (const auto& f : v.components()) c.push_back(dyadic_block(f, j, profile, warnings));
  return VectorField(std::move(c));
}

Field low_pass(const Field& f, int j, const CutoffProfile& profile) {
  const Grid& g = f.grid();
  const double scale = std::ldexp(1.0, -j);
  return apply_multiplier(
      f, [&](std::size_t i) { return profile.chi(scale * std::sqrt(g.k2(i))); });
}

DyadicDecomposition DyadicDecomposition::of(const Field& f, const CutoffProfile& profile) {
  DyadicDecomposition d;
  d.range = active_range(f.grid());
  const Field s = f.to_spectral();
  for (int j = d.range.j_min; j <= d.range.j_max; ++j)
    d.blocks.emplace(j, dyadic_block(s, j, profile));
  return d;
}

Field DyadicDecomposition::reconstruct() const {
  Field sum = Field::zeros(blocks.begin()->second.grid_ptr());
  for (const auto& [j, b] : blocks) sum += b;
  return sum;
}

}  // namespace cnslab
