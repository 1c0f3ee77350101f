#pragma once

#include <cstdint>
#include <vector>

#include "cnslab/besov.hpp"

namespace cnslab {

/// ||d_1^order f||_q / (2^{j(order + dim(1/p - 1/q))} ||f||_p).
double bernstein_ratio(const Field& f, double p, double q, int order, int j);

struct BernsteinOptions {
  int n = 128;
  double box_length = 8.0 * 3.14159265358979323846;
  int dim = 3;
  std::uint64_t seed = 7;
  int modes = 6;  ///< cosines in the generating profile
};

struct BernsteinReport {
  std::vector<int> scales;
  std::vector<double> ratios;
  double spread = 0.0;  ///< max / min ratio
};

/// Runs the ratio over the scale-covariant family
/// f_j = Delta_j[h(2^j (x - x_c))], h a Gaussian-windowed random cosine sum.
BernsteinReport bernstein_witness(double p, double q, int order, int j_first, int j_last,
                                  const BernsteinOptions& options = {});

struct HeatReport {
  double lhs = 0.0;  ///< ||z||_{L~^m_T(B^{s+2/m}_{p,r})}
  double rhs = 0.0;  ///< ||z0||_{B^s_{p,r}} + ||f||_{L~^1_T(B^s_{p,r})}
  double ratio = 0.0;
};

/// Heat equation z_t - mu Lap z = f with time-constant forcing, solved
/// exactly per mode and sampled at time_samples uniform instants on [0, T].
HeatReport heat_estimate_witness(const Field& z0, const Field& forcing, double m, double s,
                                 double p, double r, double mu, double T,
                                 int time_samples = 129);

/// Exact heat solution at time t for time-constant forcing.
Field heat_solution(const Field& z0, const Field& forcing, double mu, double t);

}  // namespace cnslab
