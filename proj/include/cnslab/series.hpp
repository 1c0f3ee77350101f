#pragma once

#include <map>
#include <string>
#include <vector>

namespace cnslab {

/// Time-indexed table of diagnostics. Column 0 is "t"; every row carries
/// the full column set and times are strictly increasing.
class DiagnosticSeries {
 public:
  DiagnosticSeries() = default;
  explicit DiagnosticSeries(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Throws std::invalid_argument on width mismatch or non-increasing time.
  void append(std::vector<double> row);

  bool has(const std::string& column) const;
  std::size_t index(const std::string& column) const;
  std::vector<double> column(const std::string& name) const;
  std::vector<double> times() const { return column("t"); }
  double at(std::size_t row, const std::string& column) const;

  /// Free-form key/value record (config hash, seeds, calibration, faults).
  std::map<std::string, std::string> metadata;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace cnslab
