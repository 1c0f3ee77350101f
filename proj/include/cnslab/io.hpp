#pragma once

#include <string>

#include "cnslab/run.hpp"

namespace cnslab {

/// CSV with RFC 4180 quoting and numbers at 17 significant digits.
/// Metadata is written first as "# key=value" lines; the reader restores it.
void write_series(const std::string& path, const DiagnosticSeries& series);
std::string series_to_csv(const DiagnosticSeries& series);
/// Throws FormatError naming the line for malformed input.
DiagnosticSeries read_series(const std::string& path);
DiagnosticSeries series_from_csv(const std::string& text);

/// Binary checkpoint, little endian:
///   "CNSLABCK", u32 version, u32 dim, u32 n, f64 L, f64 t, f64 mu,
///   f64 lambda, f64 gamma, complex f64 a-hat[half spectrum],
///   complex f64 u-hat[dim][half spectrum],
/// then the trailer: i64 step, f64 dt, accumulators, u8 strict,
/// f64 A1..A6, u32 record count + (u32 len, name, f64) entries,
/// u64 len + config text.
inline constexpr std::uint32_t checkpoint_version = 1;
struct Checkpoint {
  RunState run;
  PhysicalParams params;
};
void write_checkpoint(const std::string& path, const RunState& state, const PhysicalParams& params);
std::string checkpoint_bytes(const RunState& state, const PhysicalParams& params);
/// Throws FormatError on bad magic, version mismatch or truncation (the
/// message names the expected byte count).
Checkpoint read_checkpoint(const std::string& path);
Checkpoint checkpoint_from_bytes(const std::string& bytes, const std::string& source = "checkpoint");

/// JSON summary: config echo and hash, scenario record, Lyapunov constants,
/// fits, energy residual, Lipschitz budget, witness constants, faults.
std::string summary_json(const RunConfig& config, const RunResult& result);
std::string pair_summary_json(const RunConfig& config, const PairResult& result);

/// One two-column (t, value) gnuplot data file per series column.
void write_plot_data(const std::string& directory, const DiagnosticSeries& series);

void write_text(const std::string& path, const std::string& text);

}  // namespace cnslab
