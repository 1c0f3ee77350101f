#include "cnslab/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace cnslab {

DiagnosticSeries::DiagnosticSeries(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty() || columns_.front() != "t")
    throw std::invalid_argument("series must start with column t");
  for (std::size_t i = 0; i < columns_.size(); ++i)
    for (std::size_t j = i + 1; j < columns_.size(); ++j)
      if (columns_[i] == columns_[j])
        throw std::invalid_argument("duplicate series column " + columns_[i]);
}

void DiagnosticSeries::append(std::vector<double> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("series row has " + std::to_string(row.size()) +
                                " values, expected " + std::to_string(columns_.size()));
  if (!rows_.empty() && !(row[0] > rows_.back()[0]))
    throw std::invalid_argument("series times must be strictly increasing");
  rows_.push_back(std::move(row));
}

bool DiagnosticSeries::has(const std::string& column) const {
  return std::find(columns_.begin(), columns_.end(), column) != columns_.end();
}

std::size_t DiagnosticSeries::index(const std::string& column) const {
  const auto it = std::find(columns_.begin(), columns_.end(), column);
  if (it == columns_.end()) throw std::out_of_range("no series column " + column);
  return std::size_t(it - columns_.begin());
}

std::vector<double> DiagnosticSeries::column(const std::string& name) const {
  const std::size_t i = index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[i]);
  return out;
}

double DiagnosticSeries::at(std::size_t row, const std::string& column) const {
  return rows_.at(row)[index(column)];
}

}  // namespace cnslab
