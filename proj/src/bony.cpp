#include "cnslab/bony.hpp"

#include "cnslab/spectral_ops.hpp"

namespace cnslab {

namespace {

struct Blocks {
  ScaleRange range;
  std::vector<Field> delta;  // index j - j_min
  std::vector<Field> low;    // S_{j-1}, index j - j_min

  const Field& at(int j) const { return delta[j - range.j_min]; }
};

Blocks blocks_of(const Field& f, const CutoffProfile& profile, bool with_low) {
  Blocks b;
  b.range = active_range(f.grid());
  const Field s = f.to_spectral();
  for (int j = b.range.j_min; j <= b.range.j_max; ++j) {
    b.delta.push_back(dyadic_block(s, j, profile));
    if (with_low) b.low.push_back(low_pass(s, j - 1, profile));
  }
  return b;
}

Field paraproduct_from(const Blocks& low_side, const Blocks& high_side, const GridPtr& grid) {
  Field out = Field::zeros(grid);
  for (std::size_t i = 0; i < high_side.delta.size(); ++i)
    out += dealiased_product(low_side.low[i], high_side.delta[i]);
  return out;
}

}  // namespace

BonyDecomposition bony_decompose(const Field& u, const Field& v, const CutoffProfile& profile) {
  require_same_grid(u.grid(), v.grid(), "bony_decompose");
  const Blocks bu = blocks_of(u, profile, true);
  const Blocks bv = blocks_of(v, profile, true);
  BonyDecomposition d;
  d.Tuv = paraproduct_from(bu, bv, u.grid_ptr());
  d.Tvu = paraproduct_from(bv, bu, u.grid_ptr());
  d.R = Field::zeros(u.grid_ptr());
  for (int j = bu.range.j_min; j <= bu.range.j_max; ++j) {
    Field tilde = Field::zeros(u.grid_ptr());
    for (int k = j - 1; k <= j + 1; ++k)
      if (bv.range.contains(k)) tilde += bv.at(k);
    d.R += dealiased_product(bu.at(j), tilde);
  }
  return d;
}

Field paraproduct(const Field& u, const Field& v, const CutoffProfile& profile) {
  require_same_grid(u.grid(), v.grid(), "paraproduct");
  return paraproduct_from(blocks_of(u, profile, true), blocks_of(v, profile, false),
                          u.grid_ptr());
}

}  // namespace cnslab
