#include "cnslab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cnslab/errors.hpp"

namespace cnslab {

DecayWindow default_decay_window(double box_length) {
  const double scale = box_length / (2.0 * std::numbers::pi);
  return {5.0, std::min(50.0, 0.5 * scale * scale)};
}

DecayFit fit_decay(std::span<const double> times, std::span<const double> values,
                   DecayWindow window, const std::string& key) {
  if (!(window.t_b > window.t_a && window.t_a > 0.0))
    throw ConfigError("decay window needs t_b > t_a > 0");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.t_a || times[i] > window.t_b) continue;
    if (!(values[i] > 0.0))
      throw ConfigError("decay fit: nonpositive value " + std::to_string(values[i]) +
                        " at t = " + std::to_string(times[i]));
    x.push_back(std::log1p(times[i]));
    y.push_back(std::log(values[i]));
  }
  if (x.size() < 8)
    throw ConfigError("decay fit needs at least 8 samples in the window, got " +
                      std::to_string(x.size()));
  const double n = double(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ConfigError("decay fit: window holds a single distinct time");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (intercept + slope * x[i]);
    ss += e * e;
  }
  DecayFit f;
  f.window = window;
  f.beta_hat = -slope;
  f.prefactor = std::exp(intercept);
  f.residual = std::sqrt(ss / n);
  f.target = std::numeric_limits<double>::quiet_NaN();
  f.samples = x.size();
  f.key = key;
  f.power_law = f.residual <= power_law_residual_threshold;
  return f;
}

DecayFit fit_decay(const DiagnosticSeries& series, const std::string& key, DecayWindow window) {
  if (!series.has(key)) throw ConfigError("series has no column '" + key + "'");
  const auto t = series.times();
  const auto v = series.column(key);
  return fit_decay(t, v, window, key);
}

EnergyBalance basic_energy_balance(const DiagnosticSeries& series) {
  if (!series.has("E") || !series.has("int_D"))
    throw ConfigError("energy balance needs E and int_D columns");
  const auto E = series.column("E");
  const auto D = series.column("int_D");
  EnergyBalance b;
  if (E.empty()) return b;
  for (std::size_t i = 0; i < E.size(); ++i) {
    const double r = E[i] + D[i] - E[0];
    b.residual.push_back(r);
    b.max_absolute = std::max(b.max_absolute, std::abs(r));
  }
  b.absolute = E[0] == 0.0;
  b.max_relative = b.absolute ? b.max_absolute : b.max_absolute / E[0];
  return b;
}

LipschitzBudget lipschitz_budget(std::span<const double> times, std::span<const double> g) {
  LipschitzBudget b;
  if (times.empty()) return b;
  b.integral.push_back(0.0);
  b.integral_sq.push_back(0.0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double h = times[i] - times[i - 1];
    b.last_increment = 0.5 * h * (g[i] + g[i - 1]);
    b.integral.push_back(b.integral.back() + b.last_increment);
    b.integral_sq.push_back(b.integral_sq.back() + 0.5 * h * (g[i] * g[i] + g[i - 1] * g[i - 1]));
  }
  b.total = b.integral.back();
  b.total_sq = b.integral_sq.back();
  return b;
}

LipschitzBudget lipschitz_budget(const DiagnosticSeries& series) {
  if (!series.has("grad_u_inf")) throw ConfigError("series has no grad_u_inf column");
  const auto t = series.times();
  const auto g = series.column("grad_u_inf");
  return lipschitz_budget(t, g);
}

}  // namespace cnslab
