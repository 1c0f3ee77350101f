#pragma once

#include "cnslab/littlewood_paley.hpp"

namespace cnslab {

struct BonyDecomposition {
  Field Tuv;  ///< sum_j S_{j-1}u Delta_j v
  Field Tvu;  ///< sum_j S_{j-1}v Delta_j u
  Field R;    ///< sum_j Delta_j u (Delta_{j-1} + Delta_j + Delta_{j+1}) v

  Field sum() const { return Tuv + Tvu + R; }
};

/// Paraproducts and remainder, every pair product dealiased. For mean-zero
/// u, v the three parts add up to dealiased_product(u, v).
BonyDecomposition bony_decompose(const Field& u, const Field& v,
                                 const CutoffProfile& profile = {});

/// T_u v alone.
Field paraproduct(const Field& u, const Field& v, const CutoffProfile& profile = {});

}  // namespace cnslab
