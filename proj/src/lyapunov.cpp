#include "cnslab/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cnslab/errors.hpp"
#include "cnslab/scenarios.hpp"

namespace cnslab {

namespace {

struct Sym2 {
  double xx, xy, yy;
};

// Roots of det(M - l C) = 0 for symmetric M and positive definite C.
std::pair<double, double> generalized_eigs(const Sym2& m, const Sym2& c) {
  const double A = c.xx * c.yy - c.xy * c.xy;
  const double B = -(m.xx * c.yy + m.yy * c.xx - 2.0 * m.xy * c.xy);
  const double C = m.xx * m.yy - m.xy * m.xy;
  const double disc = std::sqrt(std::max(0.0, B * B - 4.0 * A * C));
  const double q = -0.5 * (B + std::copysign(disc, B));
  double l1 = q / A, l2 = q != 0.0 ? C / q : 0.0;
  if (l1 > l2) std::swap(l1, l2);
  return {l1, l2};
}

struct ModeForms {
  Sym2 m;       // X restricted to (a, d)
  Sym2 s;       // d/dt X on (a, d)
  Sym2 c;       // comparison on (a, d)
  double mb, sb, cb;  // the decoupled b mode
};

ModeForms forms(const LyapunovConstants& k, const PhysicalParams& p, double kap) {
  const double g = p.gamma, nu = p.nu(), mu = p.mu;
  const double k2 = kap * kap;
  const auto& A = k.A;
  ModeForms f{};
  // d_t = g kap a - nu kap^2 d
  const double ra = g * kap, rd = -nu * k2;
  f.m.xx = A[3] * 0.5 * g + A[4] * ra * ra + A[5] * g * g * k2;
  f.m.xy = -A[1] * 0.5 * g * kap + A[4] * ra * rd;
  f.m.yy = A[1] * nu * k2 + A[3] * 0.5 + A[4] * rd * rd;
  // G = [[0, -kap], [ra, rd]]; S = G^T M + M G
  const double g11 = 0.0, g12 = -kap, g21 = ra, g22 = rd;
  const double m11 = f.m.xx, m12 = f.m.xy, m22 = f.m.yy;
  f.s.xx = 2.0 * (g11 * m11 + g21 * m12);
  f.s.xy = g11 * m12 + g21 * m22 + m11 * g12 + m12 * g22;
  f.s.yy = 2.0 * (g12 * m12 + g22 * m22);
  f.c.xx = 1.0 + k2 + ra * ra;
  f.c.xy = ra * rd;
  f.c.yy = 1.0 + k2 + rd * rd;
  const double rb = -mu * k2;
  f.mb = A[1] * mu * k2 + A[3] * 0.5 + A[4] * rb * rb;
  f.sb = 2.0 * rb * f.mb;
  f.cb = 1.0 + k2 + rb * rb;
  return f;
}

std::vector<double> kappa_samples(double lo, double hi, int n) {
  std::vector<double> out;
  if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError("calibration needs 0 < kappa_min <= kappa_max");
  for (int i = 0; i < n; ++i)
    out.push_back(n == 1 ? lo : lo * std::pow(hi / lo, double(i) / (n - 1)));
  return out;
}

bool monotone(const std::vector<std::array<double, 6>>& terms, const LyapunovConstants& c) {
  auto value = [&](const std::array<double, 6>& t) {
    double x = 0.0;
    for (int i = 0; i < 6; ++i) x += c.A[i] * t[i];
    return x;
  };
  const double tol = 1e-9 * std::abs(value(terms.front()));
  for (std::size_t n = 1; n < terms.size(); ++n)
    if (value(terms[n]) > value(terms[n - 1]) + tol) return false;
  return true;
}

// Largest ladder value for one slot keeping the sequence nonincreasing.
double ladder_pick(const std::vector<std::array<double, 6>>& terms, LyapunovConstants c, int slot) {
  for (int e = 0; e <= 12; ++e) {
    c.A[slot] = std::ldexp(1.0, -e);
    if (monotone(terms, c)) return c.A[slot];
  }
  return 0.0;
}

}  // namespace

LinearCheck check_linear(const LyapunovConstants& c, const PhysicalParams& params,
                         double kappa_min, double kappa_max, int samples) {
  LinearCheck r;
  r.positive = true;
  r.max_rate = -std::numeric_limits<double>::infinity();
  r.band_low = std::numeric_limits<double>::infinity();
  r.band_high = 0.0;
  for (double kap : kappa_samples(kappa_min, kappa_max, samples)) {
    const ModeForms f = forms(c, params, kap);
    const auto [m_lo, m_hi] = generalized_eigs(f.m, f.c);
    const auto [s_lo, s_hi] = generalized_eigs(f.s, f.c);
    (void)s_lo;
    if (!(m_lo > 0.0) || !(f.mb > 0.0)) r.positive = false;
    r.max_rate = std::max({r.max_rate, s_hi, f.sb / f.cb});
    r.band_low = std::min({r.band_low, m_lo, f.mb / f.cb});
    r.band_high = std::max({r.band_high, m_hi, f.mb / f.cb});
  }
  return r;
}

LinearCalibration calibrate_linear(const PhysicalParams& params, double kappa_min,
                                   double kappa_max) {
  params.validate();
  LinearCalibration best;
  double best_band = std::numeric_limits<double>::infinity();
  for (int e2 = -4; e2 <= 2; ++e2)
    for (int e5 = -4; e5 <= 2; ++e5)
      for (int e6 = -4; e6 <= 2; ++e6) {
        LyapunovConstants c;
        c.A = {0.0, std::ldexp(1.0, e2), 0.0, 1.0, std::ldexp(1.0, e5), std::ldexp(1.0, e6)};
        if (!(c.A[3] * params.nu() > c.A[1] * params.gamma)) continue;
        const LinearCheck chk = check_linear(c, params, kappa_min, kappa_max);
        if (!chk.positive || !(chk.max_rate < 0.0)) continue;
        const double band = chk.band_high / chk.band_low;
        if (band < best_band) {
          best_band = band;
          best.constants = c;
          best.band_low = chk.band_low;
          best.band_high = chk.band_high;
        }
      }
  if (!std::isfinite(best_band))
    throw ConfigError("Lyapunov calibration found no admissible constants for these parameters");
  return best;
}

Calibration calibrate_lyapunov(const PhysicalParams& params, const Grid& grid,
                               const SolverConfig& solver) {
  Calibration cal;
  const LinearCalibration lin = calibrate_linear(params, grid.k0(), grid.dealias_radius());
  cal.constants = lin.constants;
  cal.linear_band = lin.band();

  const GridPtr ref = make_grid(cal.reference_n, grid.box_length(), grid.dim());
  FlowState s = equilibrium_perturbation(ref, 1e-2, 1.0, 1).state;
  SolverConfig sc = solver;
  sc.adaptive = false;
  std::vector<std::array<double, 6>> terms;
  auto record = [&] { terms.push_back(lyapunov_components(s, derive(s, params), params).terms()); };
  record();
  const double base_dt = solver.dt;
  const long steps = std::max(1L, std::lround(cal.reference_T / base_dt));
  for (long n = 0; n < steps; ++n) {
    const double dt = std::min(base_dt, cfl_bound(s, params, solver.cfl));
    s = step(s, sc, params, dt);
    record();
  }
  cal.reference_steps = terms.size() - 1;

  LyapunovConstants probe = cal.constants;
  probe.A[0] = probe.A[2] = 0.0;
  if (!monotone(terms, probe)) {
    cal.notes.push_back("linear constants alone are not monotone on the reference run; A1 = A3 = 0");
    cal.constants.A[0] = cal.constants.A[2] = 0.0;
    return cal;
  }
  probe.A[0] = ladder_pick(terms, probe, 0);
  probe.A[2] = ladder_pick(terms, probe, 2);
  cal.constants = probe;
  return cal;
}

}  // namespace cnslab
