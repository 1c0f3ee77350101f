#pragma once

#include <map>
#include <string>
#include <vector>

#include "cnslab/field.hpp"

namespace cnslab {

/// Smooth radial cutoff chi: equal to 1 on [0, 3/4], 0 on [4/3, inf),
/// non-increasing in between. The dyadic profile is phi(r) = chi(r/2) - chi(r),
/// supported in [3/4, 8/3].
class CutoffProfile {
 public:
  static constexpr double inner_radius = 3.0 / 4.0;
  static constexpr double outer_radius = 4.0 / 3.0;

  double chi(double r) const;
  double phi(double r) const { return chi(0.5 * r) - chi(r); }
};

/// Inclusive range of dyadic indices whose blocks can be nonzero on a grid.
struct ScaleRange {
  int j_min = 0;
  int j_max = 0;
  bool contains(int j) const { return j >= j_min && j <= j_max; }
};

/// [floor(log2 k0) - 1, ceil(log2 k_max) + 1]; blocks outside vanish.
ScaleRange active_range(const Grid& grid);

/// Collects non-fatal notices (out-of-range block, mean subtracted, ...).
using Warnings = std::vector<std::string>;

/// phi(2^-j |D|) f. Outside the active range returns zero and records a warning.
Field dyadic_block(const Field& f, int j, const CutoffProfile& profile = {},
                   Warnings* warnings = nullptr);
VectorField dyadic_block(const VectorField& v, int j, const CutoffProfile& profile = {},
                         Warnings* warnings = nullptr);

/// chi(2^-j |D|) f; keeps the mean mode.
Field low_pass(const Field& f, int j, const CutoffProfile& profile = {});

/// All blocks of a field over the active range.
struct DyadicDecomposition {
  ScaleRange range;
  std::map<int, Field> blocks;

  static DyadicDecomposition of(const Field& f, const CutoffProfile& profile = {});
  /// Sum of all blocks; equals f minus its mean.
  Field reconstruct() const;
};

}  // namespace cnslab
