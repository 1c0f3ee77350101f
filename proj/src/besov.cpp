#include "cnslab/besov.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "cnslab/errors.hpp"
#include "cnslab/spectral_ops.hpp"

namespace cnslab {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double parse_number(const std::string& text, const std::string& key) {
  if (text == "inf" || text == "infinity" || text == "+inf") return inf;
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("norm key: bad value '" + text + "' for " + key);
  return v;
}

std::map<std::string, double> parse_fields(const std::string& body) {
  std::map<std::string, double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("norm key: expected name=value in '" + item + "'");
    const std::string name = item.substr(0, eq);
    if (out.count(name)) throw ConfigError("norm key: duplicate field " + name);
    out[name] = parse_number(item.substr(eq + 1), name);
  }
  return out;
}

double take(std::map<std::string, double>& fields, const std::string& name) {
  auto it = fields.find(name);
  if (it == fields.end()) throw ConfigError("norm key: missing field " + name);
  const double v = it->second;
  fields.erase(it);
  return v;
}

bool is_zero_mean(const Field& f) {
  const double m = std::abs(f.mean());
  return m == 0.0 || m <= 1e-14 * lebesgue_norm(f, inf);
}

double sum_range(std::span<const double> blocks, int j_min, int j_lo, int j_hi, double s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int j = j_min + int(i);
    if (j < j_lo || j > j_hi) continue;
    sum += std::exp2(j * s) * blocks[i];
  }
  return sum;
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

NormKey parse_norm_key(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("norm key: missing kind in '" + text + "'");
  const std::string kind = text.substr(0, colon);
  auto fields = parse_fields(text.substr(colon + 1));
  NormKey key;
  if (kind == "besov") {
    NormSpec s;
    s.s = take(fields, "s");
    s.p = take(fields, "p");
    s.r = take(fields, "r");
    validate(s);
    key = s;
  } else if (kind == "hybrid") {
    HybridSpec h;
    h.s = take(fields, "s");
    h.t = take(fields, "t");
    h.r_low = take(fields, "r");
    h.p_high = take(fields, "p");
    h.R0 = take(fields, "R0");
    validate(h);
    key = h;
  } else {
    throw ConfigError("norm key: unknown kind '" + kind + "'");
  }
  if (!fields.empty())
    throw ConfigError("norm key: unknown field '" + fields.begin()->first + "'");
  return key;
}

std::string to_string(const NormKey& key) {
  if (const auto* b = std::get_if<NormSpec>(&key))
    return "besov:s=" + format_number(b->s) + ",p=" + format_number(b->p) +
           ",r=" + format_number(b->r);
  const auto& h = std::get<HybridSpec>(key);
  return "hybrid:s=" + format_number(h.s) + ",t=" + format_number(h.t) +
         ",r=" + format_number(h.r_low) + ",p=" + format_number(h.p_high) +
         ",R0=" + format_number(h.R0);
}

void validate(const NormSpec& spec) {
  if (!(spec.p >= 1.0)) throw ConfigError("Besov norm requires p >= 1");
  if (!(spec.r >= 1.0)) throw ConfigError("Besov norm requires r >= 1");
  if (!std::isfinite(spec.s)) throw ConfigError("Besov norm requires finite s");
}

void validate(const HybridSpec& spec) {
  if (!(spec.r_low >= 1.0) || !(spec.p_high >= 1.0))
    throw ConfigError("hybrid norm requires integrability indices >= 1");
  if (!std::isfinite(spec.s) || !std::isfinite(spec.t))
    throw ConfigError("hybrid norm requires finite regularity indices");
  split_index(spec.R0);
}

int split_index(double R0) {
  if (!(R0 > 0.0) || !std::isfinite(R0)) throw ConfigError("R0 must be a positive power of two");
  const double j0 = std::log2(R0);
  const double rounded = std::round(j0);
  if (std::abs(j0 - rounded) > 1e-12) throw ConfigError("R0 must be a power of two");
  return int(rounded);
}

std::vector<double> block_lp_norms(const Field& f, double p, const CutoffProfile& profile) {
  const auto range = active_range(f.grid());
  const Field s = f.to_spectral();
  std::vector<double> out;
  for (int j = range.j_min; j <= range.j_max; ++j)
    out.push_back(lebesgue_norm(dyadic_block(s, j, profile), p));
  return out;
}

std::vector<double> block_lp_norms(const VectorField& v, double p,
                                   const CutoffProfile& profile) {
  const auto range = active_range(v.grid());
  const VectorField s = v.to_spectral();
  std::vector<double> out;
  for (int j = range.j_min; j <= range.j_max; ++j)
    out.push_back(lebesgue_norm(dyadic_block(s, j, profile), p));
  return out;
}

double weighted_sequence_norm(std::span<const double> blocks, int j_min, double s, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      m = std::max(m, std::exp2((j_min + int(i)) * s) * blocks[i]);
    return m;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double w = std::exp2((j_min + int(i)) * s) * blocks[i];
    sum += r == 1.0 ? w : std::pow(w, r);
  }
  return r == 1.0 ? sum : std::pow(sum, 1.0 / r);
}

double besov_norm(const Field& f, const NormSpec& spec, Warnings* warnings) {
  validate(spec);
  if (warnings && !is_zero_mean(f))
    warnings->push_back("Besov norm input has nonzero mean; mean mode dropped");
  const auto blocks = block_lp_norms(f, spec.p);
  return weighted_sequence_norm(blocks, active_range(f.grid()).j_min, spec.s, spec.r);
}

double besov_norm(const VectorField& v, const NormSpec& spec, Warnings* warnings) {
  validate(spec);
  if (warnings)
    for (const auto& c : v.components())
      if (!is_zero_mean(c)) {
        warnings->push_back("Besov norm input has nonzero mean; mean mode dropped");
        break;
      }
  const auto blocks = block_lp_norms(v, spec.p);
  return weighted_sequence_norm(blocks, active_range(v.grid()).j_min, spec.s, spec.r);
}

double besov_low(const Field& f, double s, double p, double R0) {
  const int j0 = split_index(R0);
  const auto blocks = block_lp_norms(f, p);
  return sum_range(blocks, active_range(f.grid()).j_min, std::numeric_limits<int>::min(), j0, s);
}

double besov_high(const Field& f, double s, double p, double R0) {
  const int j0 = split_index(R0);
  const auto blocks = block_lp_norms(f, p);
  return sum_range(blocks, active_range(f.grid()).j_min, j0 + 1, std::numeric_limits<int>::max(), s);
}

double besov_low(const VectorField& v, double s, double p, double R0) {
  const int j0 = split_index(R0);
  const auto blocks = block_lp_norms(v, p);
  return sum_range(blocks, active_range(v.grid()).j_min, std::numeric_limits<int>::min(), j0, s);
}

double besov_high(const VectorField& v, double s, double p, double R0) {
  const int j0 = split_index(R0);
  const auto blocks = block_lp_norms(v, p);
  return sum_range(blocks, active_range(v.grid()).j_min, j0 + 1, std::numeric_limits<int>::max(), s);
}

std::pair<Field, Field> split_low_high(const Field& f, double R0) {
  const int j0 = split_index(R0);
  const auto range = active_range(f.grid());
  const Field s = f.to_spectral();
  Field low = Field::zeros(f.grid_ptr());
  Field high = Field::zeros(f.grid_ptr());
  for (int j = range.j_min; j <= range.j_max; ++j) {
    if (j <= j0)
      low += dyadic_block(s, j);
    else
      high += dyadic_block(s, j);
  }
  return {std::move(low), std::move(high)};
}

double hybrid_norm(const Field& f, const HybridSpec& spec) {
  validate(spec);
  return besov_low(f, spec.s, spec.r_low, spec.R0) + besov_high(f, spec.t, spec.p_high, spec.R0);
}

double hybrid_norm(const VectorField& v, const HybridSpec& spec) {
  validate(spec);
  return besov_low(v, spec.s, spec.r_low, spec.R0) + besov_high(v, spec.t, spec.p_high, spec.R0);
}

double hybrid_norm(const Field& f, double s, double t, double r, double p, double R0) {
  return hybrid_norm(f, HybridSpec{s, t, r, p, R0});
}

double evaluate_norm(const Field& f, const NormKey& key) {
  if (const auto* b = std::get_if<NormSpec>(&key)) return besov_norm(f, *b);
  return hybrid_norm(f, std::get<HybridSpec>(key));
}

double evaluate_norm(const VectorField& v, const NormKey& key) {
  if (const auto* b = std::get_if<NormSpec>(&key)) return besov_norm(v, *b);
  return hybrid_norm(v, std::get<HybridSpec>(key));
}

std::vector<double> trapezoid_weights(std::size_t n, double T) {
  if (n == 0) throw ConfigError("time series is empty");
  if (n == 1) return {T};
  const double h = T / double(n - 1);
  std::vector<double> w(n, h);
  w.front() = w.back() = 0.5 * h;
  return w;
}

double time_lq(std::span<const double> values, std::span<const double> weights, double q) {
  if (!(q >= 1.0)) throw ConfigError("time Lebesgue norm requires q >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    sum += weights[i] * std::pow(std::abs(values[i]), q);
  return std::pow(sum, 1.0 / q);
}

double chemin_lerner_norm(std::span<const Field> series, double q, const NormSpec& spec,
                          double T) {
  if (series.empty()) throw ConfigError("Chemin-Lerner norm of an empty series");
  validate(spec);
  const auto w = trapezoid_weights(series.size(), T);
  std::vector<std::vector<double>> per_time;
  for (const auto& f : series) per_time.push_back(block_lp_norms(f, spec.p));
  const std::size_t nb = per_time.front().size();
  std::vector<double> blocks(nb), column(series.size());
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t i = 0; i < series.size(); ++i) column[i] = per_time[i][b];
    blocks[b] = time_lq(column, w, q);
  }
  return weighted_sequence_norm(blocks, active_range(series.front().grid()).j_min, spec.s, spec.r);
}

double time_lebesgue_besov_norm(std::span<const Field> series, double q,
                                const NormSpec& spec, double T) {
  if (series.empty()) throw ConfigError("mixed norm of an empty series");
  const auto w = trapezoid_weights(series.size(), T);
  std::vector<double> values;
  for (const auto& f : series) values.push_back(besov_norm(f, spec));
  return time_lq(values, w, q);
}

}  // namespace cnslab
