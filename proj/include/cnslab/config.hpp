#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cnslab/besov.hpp"
#include "cnslab/decay.hpp"
#include "cnslab/diagnostics.hpp"
#include "cnslab/scenarios.hpp"

namespace cnslab {

enum class CadenceKind { geometric, every_step, uniform };

/// Snapshot times: geometric t_n = 2^{n/4} - 1, every step, or a uniform
/// interval. All are rounded to the dt grid in fixed-step runs.
struct Cadence {
  CadenceKind kind = CadenceKind::geometric;
  double interval = 0.0;

  static Cadence parse(const std::string& text);
  std::string to_string() const;
};

struct GridConfig {
  int n = 32;
  double box_length = 8.0 * 3.14159265358979323846;
  int dim = 3;
};

struct SolverSection {
  SolverConfig solver;
  double T = 1.0;
  Cadence cadence;
};

/// A norm column: target field and norm key. Targets: a, u, Pu, Qu, Pu_h, Pu3.
struct NormColumn {
  std::string target;
  NormKey key;
  std::string name() const { return target + "|" + to_string(key); }
};

struct DiagnosticsConfig {
  std::vector<NormColumn> norms;
  std::vector<double> lp{2.0};
  std::vector<double> p0{};
  double C_split = 1.0;
  double R0 = 1.0;
  bool calibrate = true;
  LyapunovConstants constants;
  double rho_bar = 2.0;
  double holder_alpha = 0.5;
  int holder_radius = 4;
  std::optional<DecayWindow> fit_window;
  std::vector<std::string> fit;
};

struct OutputConfig {
  std::string directory = "cnslab_out";
  bool csv = true;
  bool json = true;
  bool plot = false;
  int checkpoint_every = 0;  ///< snapshots between checkpoints; 0 = final only
};

struct RunConfig {
  GridConfig grid;
  PhysicalParams params;
  SolverSection solver;
  ScenarioConfig scenario;
  DiagnosticsConfig diagnostics;
  OutputConfig output;

  std::string text;  ///< source text, embedded in outputs
  std::vector<std::pair<std::string, std::string>> entries;  ///< "section.key" -> value

  /// Parses and validates the whole file. Unknown sections or keys, bad
  /// values and inconsistent combinations throw ConfigError.
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
  void validate() const;

  /// FNV-1a 64 of the source text, as 16 hex digits.
  std::string hash() const;
};

std::uint64_t fnv1a64(const std::string& data);
/// Accepts plain numbers, "pi", "<x>pi" and "inf".
double parse_real(const std::string& text);
std::vector<NormColumn> parse_norm_columns(const std::string& text);

}  // namespace cnslab
