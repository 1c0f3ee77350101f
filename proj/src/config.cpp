#include "cnslab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "cnslab/errors.hpp"

namespace cnslab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

int parse_int(const std::string& v) {
  int x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("expected an integer, got '" + v + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& v) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("expected a nonnegative integer, got '" + v + "'");
  return x;
}

std::vector<double> parse_list(const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split(v, ',')) out.push_back(parse_real(s));
  return out;
}

const std::vector<std::string> targets = {"a", "u", "Pu", "Qu", "Pu_h", "Pu3"};

}  // namespace

double parse_real(const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "inf") return std::numeric_limits<double>::infinity();
  std::string num = text;
  double factor = 1.0;
  if (num.size() >= 2 && num.compare(num.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    num = trim(num.substr(0, num.size() - 2));
    if (!num.empty() && num.back() == '*') num = trim(num.substr(0, num.size() - 1));
    if (num.empty()) return factor;
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
  if (ec != std::errc() || ptr != num.data() + num.size())
    throw ConfigError("expected a number, got '" + text + "'");
  return v * factor;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Cadence Cadence::parse(const std::string& text) {
  Cadence c;
  if (text == "geometric") return c;
  if (text == "every_step") {
    c.kind = CadenceKind::every_step;
    return c;
  }
  if (text.rfind("uniform:", 0) == 0) {
    c.kind = CadenceKind::uniform;
    c.interval = parse_real(text.substr(8));
    if (!(c.interval > 0.0)) throw ConfigError("uniform cadence interval must be positive");
    return c;
  }
  throw ConfigError("unknown cadence '" + text + "' (geometric, every_step, uniform:<dt>)");
}

std::string Cadence::to_string() const {
  switch (kind) {
    case CadenceKind::geometric: return "geometric";
    case CadenceKind::every_step: return "every_step";
    case CadenceKind::uniform: return "uniform:" + format_number(interval);
  }
  return "?";
}

std::vector<NormColumn> parse_norm_columns(const std::string& text) {
  std::vector<NormColumn> out;
  for (const auto& item : split(text, ';')) {
    const auto colon = item.find(':');
    const std::string head = colon == std::string::npos ? item : item.substr(0, colon);
    if (std::find(targets.begin(), targets.end(), head) != targets.end()) {
      out.push_back({head, parse_norm_key(item.substr(colon + 1))});
    } else {
      const NormKey key = parse_norm_key(item);
      out.push_back({"a", key});
      out.push_back({"u", key});
    }
  }
  return out;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  c.text = text;
  using Setter = std::function<void(const std::string&)>;
  auto& g = c.grid;
  auto& p = c.params;
  auto& s = c.solver;
  auto& sc = c.scenario;
  auto& d = c.diagnostics;
  auto& o = c.output;
  const std::map<std::string, Setter> setters = {
      {"grid.n", [&](const std::string& v) { g.n = parse_int(v); }},
      {"grid.L", [&](const std::string& v) { g.box_length = parse_real(v); }},
      {"grid.dim", [&](const std::string& v) { g.dim = parse_int(v); }},
      {"params.mu", [&](const std::string& v) { p.mu = parse_real(v); }},
      {"params.lambda", [&](const std::string& v) { p.lambda = parse_real(v); }},
      {"params.gamma", [&](const std::string& v) { p.gamma = parse_real(v); }},
      {"params.strict", [&](const std::string& v) { p.strict = parse_bool(v); }},
      {"solver.dt", [&](const std::string& v) { s.solver.dt = parse_real(v); }},
      {"solver.cfl", [&](const std::string& v) { s.solver.cfl = parse_real(v); }},
      {"solver.scheme", [&](const std::string& v) { s.solver.scheme = parse_scheme(v); }},
      {"solver.adaptive", [&](const std::string& v) { s.solver.adaptive = parse_bool(v); }},
      {"solver.T", [&](const std::string& v) { s.T = parse_real(v); }},
      {"solver.cadence", [&](const std::string& v) { s.cadence = Cadence::parse(v); }},
      {"scenario.kind", [&](const std::string& v) { sc.kind = parse_scenario_kind(v); }},
      {"scenario.epsilon", [&](const std::string& v) { sc.epsilon = parse_real(v); }},
      {"scenario.p0", [&](const std::string& v) { sc.p0 = parse_real(v); }},
      {"scenario.seed", [&](const std::string& v) { sc.seed = parse_u64(v); }},
      {"scenario.bump_radius", [&](const std::string& v) { sc.bump_radius = parse_real(v); }},
      {"scenario.riesz_margin", [&](const std::string& v) { sc.riesz_margin = parse_real(v); }},
      {"scenario.modulation", [&](const std::string& v) { sc.modulation = parse_real(v); }},
      {"scenario.eps_osc", [&](const std::string& v) { sc.eps_osc = parse_real(v); }},
      {"scenario.osc_amplitude", [&](const std::string& v) { sc.osc_amplitude = parse_real(v); }},
      {"scenario.vertical_amplitude",
       [&](const std::string& v) { sc.vertical_amplitude = parse_real(v); }},
      {"scenario.budget", [&](const std::string& v) { sc.budget = parse_real(v); }},
      {"scenario.witness_C", [&](const std::string& v) { sc.witness_C = parse_real(v); }},
      {"scenario.p", [&](const std::string& v) { sc.p = parse_real(v); }},
      {"scenario.eps_pert", [&](const std::string& v) { sc.eps_pert = parse_real(v); }},
      {"scenario.pert_seed", [&](const std::string& v) { sc.pert_seed = parse_u64(v); }},
      {"scenario.R0", [&](const std::string& v) { sc.R0 = parse_real(v); }},
      {"diagnostics.norms", [&](const std::string& v) { d.norms = parse_norm_columns(v); }},
      {"diagnostics.lp", [&](const std::string& v) { d.lp = parse_list(v); }},
      {"diagnostics.p0", [&](const std::string& v) { d.p0 = parse_list(v); }},
      {"diagnostics.C_split", [&](const std::string& v) { d.C_split = parse_real(v); }},
      {"diagnostics.R0", [&](const std::string& v) { d.R0 = parse_real(v); }},
      {"diagnostics.lyapunov",
       [&](const std::string& v) {
         if (v == "calibrate") {
           d.calibrate = true;
           return;
         }
         const auto a = parse_list(v);
         if (a.size() != 6) throw ConfigError("lyapunov expects 'calibrate' or six constants");
         d.calibrate = false;
         for (int i = 0; i < 6; ++i) d.constants.A[i] = a[i];
       }},
      {"diagnostics.rho_bar", [&](const std::string& v) { d.rho_bar = parse_real(v); }},
      {"diagnostics.holder_alpha", [&](const std::string& v) { d.holder_alpha = parse_real(v); }},
      {"diagnostics.holder_radius", [&](const std::string& v) { d.holder_radius = parse_int(v); }},
      {"diagnostics.fit_window",
       [&](const std::string& v) {
         const auto w = parse_list(v);
         if (w.size() != 2) throw ConfigError("fit_window expects t_a, t_b");
         d.fit_window = DecayWindow{w[0], w[1]};
       }},
      {"diagnostics.fit", [&](const std::string& v) { d.fit = split(v, ','); }},
      {"output.directory", [&](const std::string& v) { o.directory = v; }},
      {"output.formats",
       [&](const std::string& v) {
         o.csv = o.json = o.plot = false;
         for (const auto& f : split(v, ',')) {
           if (f == "csv") o.csv = true;
           else if (f == "json") o.json = true;
           else if (f == "plot") o.plot = true;
           else throw ConfigError("unknown output format '" + f + "'");
         }
       }},
      {"output.checkpoint_every", [&](const std::string& v) { o.checkpoint_every = parse_int(v); }},
  };

  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      static const std::vector<std::string> sections = {"grid", "params", "solver", "scenario",
                                                        "diagnostics", "output"};
      if (std::find(sections.begin(), sections.end(), section) == sections.end())
        throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    if (section.empty()) throw ConfigError(where + "key outside any section");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + "unknown key " + key);
    if (seen.count(key))
      throw ConfigError(where + "duplicate key " + key + " (first on line " +
                        std::to_string(seen[key]) + ")");
    seen[key] = lineno;
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + key + ": " + e.what());
    }
    c.entries.emplace_back(key, value);
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

void RunConfig::validate() const {
  if (!is_admissible_resolution(grid.n))
    throw ConfigError("grid.n must be >= 8 and of the form 2^k or 3*2^k");
  if (!(grid.box_length > 0.0)) throw ConfigError("grid.L must be positive");
  if (grid.dim != 2 && grid.dim != 3) throw ConfigError("grid.dim must be 2 or 3");
  params.validate();
  solver.solver.validate();
  if (!(solver.T >= 0.0)) throw ConfigError("solver.T must be nonnegative");
  scenario.validate();
  const bool needs_3d = scenario.kind == ScenarioKind::oscillating ||
                        scenario.kind == ScenarioKind::large_vertical;
  if (needs_3d && grid.dim != 3) throw ConfigError("scenario " + to_string(scenario.kind) + " needs dim = 3");
  for (double p : diagnostics.lp)
    if (!(p >= 1.0)) throw ConfigError("diagnostics.lp entries must be >= 1");
  for (double p : diagnostics.p0) beta(p);
  if (!(diagnostics.C_split > 0.0)) throw ConfigError("diagnostics.C_split must be positive");
  split_index(diagnostics.R0);
  if (!(diagnostics.rho_bar > 1.0)) throw ConfigError("diagnostics.rho_bar must exceed 1");
  if (!(diagnostics.holder_alpha > 0.0 && diagnostics.holder_alpha < 1.0))
    throw ConfigError("diagnostics.holder_alpha must lie in (0, 1)");
  if (diagnostics.holder_radius < 0) throw ConfigError("diagnostics.holder_radius must be >= 0");
  for (double a : diagnostics.constants.A)
    if (!(a >= 0.0)) throw ConfigError("Lyapunov constants must be nonnegative");
  if (diagnostics.fit_window &&
      !(diagnostics.fit_window->t_b > diagnostics.fit_window->t_a && diagnostics.fit_window->t_a > 0.0))
    throw ConfigError("diagnostics.fit_window needs t_b > t_a > 0");
  if (output.directory.empty()) throw ConfigError("output.directory must not be empty");
  if (output.checkpoint_every < 0) throw ConfigError("output.checkpoint_every must be >= 0");
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
  return buf;
}

}  // namespace cnslab
