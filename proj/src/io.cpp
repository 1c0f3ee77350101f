#include "cnslab/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "cnslab/decay.hpp"
#include "cnslab/errors.hpp"
#include "json.hpp"

namespace cnslab {

using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Splits one CSV record starting at pos; advances pos past the line end.
std::vector<std::string> csv_record(const std::string& text, std::size_t& pos, int line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, was_quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cur += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '"') {
      if (!cur.empty()) throw FormatError("CSV line " + std::to_string(line) + ": stray quote");
      quoted = was_quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      if (was_quoted) throw FormatError("CSV line " + std::to_string(line) + ": text after quoted field");
      cur += c;
    }
  }
  if (quoted) throw FormatError("CSV line " + std::to_string(line) + ": unterminated quote");
  out.push_back(std::move(cur));
  return out;
}

double parse_number(const std::string& s, int line) {
  if (s.empty()) throw FormatError("CSV line " + std::to_string(line) + ": empty field");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw FormatError("CSV line " + std::to_string(line) + ": not a number '" + s + "'");
  return v;
}

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { out_.append(static_cast<const char*>(p), n); }
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  const std::string& data() const { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(const std::string& data, std::string source) : d_(data), src_(std::move(source)) {}
  void need(std::size_t n, const std::string& what) const {
    if (pos_ + n > d_.size())
      throw FormatError("truncated checkpoint " + src_ + ": expected " + std::to_string(pos_ + n) +
                        " bytes through " + what + ", file has " + std::to_string(d_.size()));
  }
  std::uint8_t u8(const std::string& what) {
    need(1, what);
    return static_cast<std::uint8_t>(d_[pos_++]);
  }
  std::uint32_t u32(const std::string& what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<std::uint8_t>(d_[pos_++])) << (8 * i);
    return v;
  }
  std::uint64_t u64(const std::string& what) {
    need(8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<std::uint8_t>(d_[pos_++])) << (8 * i);
    return v;
  }
  double f64(const std::string& what) { return std::bit_cast<double>(u64(what)); }
  std::string bytes(std::size_t n, const std::string& what) {
    need(n, what);
    std::string s = d_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t pos() const { return pos_; }
  std::size_t size() const { return d_.size(); }

 private:
  const std::string& d_;
  std::string src_;
  std::size_t pos_ = 0;
};

void put_field(Writer& w, const Field& f) {
  const Field s = f.to_spectral();
  for (const complex& c : s.spectral()) {
    w.f64(c.real());
    w.f64(c.imag());
  }
}

Field get_field(Reader& r, const GridPtr& g, const std::string& what) {
  r.need(16 * g->spectral_size(), what);
  std::vector<complex> c(g->spectral_size());
  for (auto& z : c) {
    const double re = r.f64(what);
    z = complex(re, r.f64(what));
  }
  return Field::from_spectral(g, std::move(c));
}

json fit_json(const DecayFit& f) {
  return json{{"key", f.key},
              {"window", {f.window.t_a, f.window.t_b}},
              {"beta_hat", f.beta_hat},
              {"prefactor", f.prefactor},
              {"residual", f.residual},
              {"target", std::isnan(f.target) ? json(nullptr) : json(f.target)},
              {"samples", f.samples},
              {"power_law", f.power_law}};
}

json config_json(const RunConfig& config) {
  json entries = json::object();
  for (const auto& [k, v] : config.entries) entries[k] = v;
  return json{{"hash", config.hash()}, {"entries", entries}, {"text", config.text}};
}

json fault_json(const std::optional<FaultRecord>& f) {
  if (!f) return nullptr;
  return json{{"t", f->t}, {"kind", f->kind}, {"message", f->message}};
}

double column_max(const DiagnosticSeries& s, const std::string& c) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : s.column(c)) m = std::max(m, v);
  return m;
}
double column_min(const DiagnosticSeries& s, const std::string& c) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : s.column(c)) m = std::min(m, v);
  return m;
}

}  // namespace

std::string series_to_csv(const DiagnosticSeries& series) {
  std::string out;
  for (const auto& [k, v] : series.metadata) {
    std::string clean = v;
    for (char& c : clean)
      if (c == '\n' || c == '\r') c = ' ';
    out += "# " + k + "=" + clean + "\n";
  }
  const auto& cols = series.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_field(cols[i]);
  out += "\n";
  for (const auto& row : series.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + number(row[i]);
    out += "\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw RuntimeFault("cannot write " + path);
  f << text;
  if (!f) throw RuntimeFault("write failed for " + path);
}

void write_series(const std::string& path, const DiagnosticSeries& series) {
  write_text(path, series_to_csv(series));
}

DiagnosticSeries series_from_csv(const std::string& text) {
  std::size_t pos = 0;
  int line = 0;
  std::map<std::string, std::string> meta;
  while (pos < text.size() && text[pos] == '#') {
    ++line;
    const auto end = text.find('\n', pos);
    std::string l = text.substr(pos + 1, end == std::string::npos ? std::string::npos : end - pos - 1);
    pos = end == std::string::npos ? text.size() : end + 1;
    if (!l.empty() && l.back() == '\r') l.pop_back();
    if (!l.empty() && l.front() == ' ') l.erase(0, 1);
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw FormatError("CSV line " + std::to_string(line) + ": metadata without '='");
    meta[l.substr(0, eq)] = l.substr(eq + 1);
  }
  if (pos >= text.size()) throw FormatError("CSV has no header line");
  ++line;
  const auto header = csv_record(text, pos, line);
  if (header.empty() || header[0] != "t") throw FormatError("CSV header must start with column t");
  DiagnosticSeries s(header);
  while (pos < text.size()) {
    ++line;
    const auto rec = csv_record(text, pos, line);
    if (rec.size() == 1 && rec[0].empty()) continue;
    if (rec.size() != header.size())
      throw FormatError("CSV line " + std::to_string(line) + ": expected " +
                        std::to_string(header.size()) + " fields, got " + std::to_string(rec.size()));
    std::vector<double> row;
    for (const auto& f : rec) row.push_back(parse_number(f, line));
    try {
      s.append(std::move(row));
    } catch (const std::invalid_argument& e) {
      throw FormatError("CSV line " + std::to_string(line) + ": " + e.what());
    }
  }
  s.metadata = std::move(meta);
  return s;
}

DiagnosticSeries read_series(const std::string& path) { return series_from_csv(read_file(path)); }

std::string checkpoint_bytes(const RunState& rs, const PhysicalParams& params) {
  Writer w;
  const FlowState& s = rs.state;
  const Grid& g = s.grid();
  w.bytes("CNSLABCK", 8);
  w.u32(checkpoint_version);
  w.u32(static_cast<std::uint32_t>(g.dim()));
  w.u32(static_cast<std::uint32_t>(g.n()));
  w.f64(g.box_length());
  w.f64(s.t);
  w.f64(params.mu);
  w.f64(params.lambda);
  w.f64(params.gamma);
  put_field(w, s.a);
  for (int c = 0; c < s.u.dim(); ++c) put_field(w, s.u[c]);
  w.u64(static_cast<std::uint64_t>(rs.step));
  w.f64(rs.dt);
  const Accumulators& a = rs.acc;
  for (double v : {a.int_D, a.int_grad, a.int_grad_sq, a.int_quartic, a.last_t, a.last_grad,
                   a.last_quartic, a.E0})
    w.f64(v);
  w.u64(static_cast<std::uint64_t>(a.snapshots));
  w.u8(params.strict ? 1 : 0);
  for (double v : rs.constants.A) w.f64(v);
  w.u32(static_cast<std::uint32_t>(rs.record.size()));
  for (const auto& [k, v] : rs.record) {
    w.str(k);
    w.f64(v);
  }
  w.u64(rs.config_text.size());
  w.bytes(rs.config_text.data(), rs.config_text.size());
  return w.data();
}

void write_checkpoint(const std::string& path, const RunState& rs, const PhysicalParams& params) {
  write_text(path, checkpoint_bytes(rs, params));
}

Checkpoint checkpoint_from_bytes(const std::string& bytes, const std::string& source) {
  Reader r(bytes, source);
  if (r.bytes(8, "magic") != "CNSLABCK") throw FormatError(source + " is not a cnslab checkpoint");
  const std::uint32_t version = r.u32("version");
  if (version != checkpoint_version)
    throw FormatError(source + ": checkpoint version " + std::to_string(version) +
                      " unsupported (expected " + std::to_string(checkpoint_version) + ")");
  const int dim = static_cast<int>(r.u32("dim"));
  const int n = static_cast<int>(r.u32("n"));
  const double L = r.f64("L");
  Checkpoint cp;
  const double t = r.f64("t");
  cp.params.mu = r.f64("mu");
  cp.params.lambda = r.f64("lambda");
  cp.params.gamma = r.f64("gamma");
  GridPtr g;
  try {
    g = make_grid(n, L, dim);
  } catch (const ConfigError& e) {
    throw FormatError(source + ": invalid grid in header: " + e.what());
  }
  // Fail early with the full size of the field block.
  r.need(16 * g->spectral_size() * static_cast<std::size_t>(dim + 1), "field data");
  FlowState s;
  s.t = t;
  s.a = get_field(r, g, "a-hat");
  std::vector<Field> u;
  for (int c = 0; c < dim; ++c) u.push_back(get_field(r, g, "u-hat"));
  s.u = VectorField(std::move(u));
  RunState& rs = cp.run;
  rs.state = std::move(s);
  rs.step = static_cast<long>(r.u64("step"));
  rs.dt = r.f64("dt");
  Accumulators& a = rs.acc;
  for (double* v : {&a.int_D, &a.int_grad, &a.int_grad_sq, &a.int_quartic, &a.last_t, &a.last_grad,
                    &a.last_quartic, &a.E0})
    *v = r.f64("accumulators");
  a.snapshots = static_cast<long>(r.u64("accumulators"));
  cp.params.strict = r.u8("strict flag") != 0;
  for (double& v : rs.constants.A) v = r.f64("Lyapunov constants");
  const std::uint32_t count = r.u32("record count");
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t len = r.u32("record name");
    const std::string k = r.bytes(len, "record name");
    rs.record[k] = r.f64("record value");
  }
  const std::uint64_t len = r.u64("config length");
  rs.config_text = r.bytes(len, "config text");
  if (r.pos() != r.size())
    throw FormatError(source + ": " + std::to_string(r.size() - r.pos()) + " trailing bytes");
  return cp;
}

Checkpoint read_checkpoint(const std::string& path) {
  return checkpoint_from_bytes(read_file(path), path);
}

std::string summary_json(const RunConfig& config, const RunResult& result) {
  const DiagnosticSeries& s = result.series;
  const RunState& rs = result.final_state;
  json j;
  j["config_hash"] = config.hash();
  j["config"] = config_json(config);
  json record = json::object();
  for (const auto& [k, v] : rs.record) record[k] = v;
  j["scenario"] = {{"kind", to_string(config.scenario.kind)}, {"seed", config.scenario.seed},
                   {"record", record}};
  j["lyapunov_constants"] = rs.constants.A;
  j["lyapunov_calibrated"] = config.diagnostics.calibrate;
  j["fault"] = fault_json(result.fault);
  j["snapshots"] = s.size();
  j["final_t"] = rs.state.t;
  j["steps"] = rs.step;
  json meta = json::object();
  for (const auto& [k, v] : s.metadata) meta[k] = v;
  j["metadata"] = meta;
  j["notes"] = result.notes;
  if (!s.empty()) {
    const EnergyBalance eb = basic_energy_balance(s);
    j["energy_balance"] = {{"max_relative", eb.max_relative}, {"max_absolute", eb.max_absolute},
                           {"absolute", eb.absolute}};
    const LipschitzBudget lb = lipschitz_budget(s);
    j["lipschitz"] = {{"int_grad_u_inf", lb.total}, {"int_grad_u_inf_sq", lb.total_sq},
                      {"last_increment", lb.last_increment}};
    const auto X = s.column("X");
    double worst = 0.0;
    for (std::size_t n = 1; n < X.size(); ++n) worst = std::max(worst, X[n] - X[n - 1]);
    const double rmin = column_min(s, "X_ratio"), rmax = column_max(s, "X_ratio");
    j["lyapunov"] = {{"X0", X.front()},
                     {"max_step_increase", worst},
                     {"max_step_increase_relative", X.front() > 0 ? worst / X.front() : 0.0},
                     {"ratio_min", rmin},
                     {"ratio_max", rmax},
                     {"equivalence_band", rmin > 0 ? rmax / rmin : std::numeric_limits<double>::infinity()}};
    j["rho_min"] = column_min(s, "rho_min");
    j["rho_max"] = column_max(s, "rho_max");
    json witness = json::object();
    for (double p0 : config.diagnostics.p0) {
      const std::string col = "conlf|p0=" + format_number(p0);
      const auto m = s.column("M_low"), c = s.column(col);
      double C = 0.0;
      for (std::size_t n = 0; n < m.size(); ++n)
        if (c[n] > 0) C = std::max(C, m[n] / c[n]);
      witness[col] = C;
    }
    j["witness_constants"] = witness;
    json fits = json::array();
    const DecayWindow w = config.diagnostics.fit_window.value_or(default_decay_window(config.grid.box_length));
    for (const auto& key : config.diagnostics.fit) {
      try {
        DecayFit f = fit_decay(s, key, w);
        if (config.scenario.kind == ScenarioKind::equilibrium_perturbation) f.target = beta(config.scenario.p0);
        fits.push_back(fit_json(f));
      } catch (const std::exception& e) {
        fits.push_back({{"key", key}, {"error", e.what()}});
      }
    }
    j["fits"] = fits;
  }
  return j.dump(2) + "\n";
}

std::string pair_summary_json(const RunConfig& config, const PairResult& result) {
  const DiagnosticSeries& s = result.series;
  json j;
  j["config_hash"] = config.hash();
  j["config"] = config_json(config);
  j["initial_difference"] = {{"total", result.initial.total()},
                             {"density", result.initial.density},
                             {"incompressible", result.initial.incompressible},
                             {"compressible", result.initial.compressible}};
  j["fault"] = fault_json(result.fault);
  j["snapshots"] = s.size();
  if (!s.empty()) {
    const double mx = column_max(s, "diff");
    j["difference"] = {{"max", mx},
                       {"final", s.column("diff").back()},
                       {"max_over_eps", mx / config.scenario.eps_pert}};
    j["rho_min"] = column_min(s, "rho_min");
  }
  json meta = json::object();
  for (const auto& [k, v] : s.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j.dump(2) + "\n";
}

void write_plot_data(const std::string& directory, const DiagnosticSeries& series) {
  const auto t = series.times();
  const std::string hash =
      series.metadata.count("config_hash") ? series.metadata.at("config_hash") : "none";
  for (const auto& c : series.columns()) {
    if (c == "t") continue;
    std::string name = c;
    for (char& ch : name)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '.') ch = '_';
    std::string text = "# config_hash=" + hash + "\n# t " + c + "\n";
    const auto v = series.column(c);
    for (std::size_t i = 0; i < t.size(); ++i) text += number(t[i]) + " " + number(v[i]) + "\n";
    write_text((std::filesystem::path(directory) / ("plot_" + name + ".dat")).string(), text);
  }
}

}  // namespace cnslab
