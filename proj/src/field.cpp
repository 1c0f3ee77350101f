#include "cnslab/field.hpp"

#include <algorithm>
#include <stdexcept>

#include "cnslab/errors.hpp"

namespace cnslab {

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!a.same_as(b)) throw ConfigError(std::string("grid mismatch in ") + where);
}

Field Field::zeros(GridPtr grid, Representation rep) {
  Field f;
  f.rep_ = rep;
  if (rep == Representation::physical)
    f.physical_.assign(grid->physical_size(), 0.0);
  else
    f.spectral_.assign(grid->spectral_size(), complex(0.0, 0.0));
  f.grid_ = std::move(grid);
  return f;
}

Field Field::constant(GridPtr grid, double value) {
  Field f = zeros(std::move(grid));
  f.spectral_[0] = value;
  return f;
}

Field Field::from_physical(GridPtr grid, std::vector<double> samples) {
  if (samples.size() != grid->physical_size())
    throw std::invalid_argument("physical sample count does not match grid");
  Field f;
  f.rep_ = Representation::physical;
  f.physical_ = std::move(samples);
  f.grid_ = std::move(grid);
  return f;
}

Field Field::from_spectral(GridPtr grid, std::vector<complex> coefficients) {
  if (coefficients.size() != grid->spectral_size())
    throw std::invalid_argument("spectral coefficient count does not match grid");
  Field f;
  f.rep_ = Representation::spectral;
  f.spectral_ = std::move(coefficients);
  f.grid_ = std::move(grid);
  return f;
}

Field Field::sample(GridPtr grid,
                    const std::function<double(const std::array<double, 3>&)>& fn) {
  std::vector<double> v(grid->physical_size());
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const int dim = grid->dim();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (int d = 0; d < dim; ++d) x[d] = grid->x(i, d);
    v[i] = fn(x);
  }
  return from_physical(std::move(grid), std::move(v));
}

Field Field::to_spectral() const {
  if (rep_ == Representation::spectral) return *this;
  Field f;
  f.grid_ = grid_;
  f.rep_ = Representation::spectral;
  f.spectral_.resize(grid_->spectral_size());
  grid_->forward(physical_, f.spectral_);
  return f;
}

Field Field::to_physical() const {
  if (rep_ == Representation::physical) return *this;
  Field f;
  f.grid_ = grid_;
  f.rep_ = Representation::physical;
  f.physical_.resize(grid_->physical_size());
  grid_->inverse(spectral_, f.physical_);
  return f;
}

std::span<const double> Field::physical() const {
  if (rep_ != Representation::physical)
    throw std::logic_error("field is not in physical representation");
  return physical_;
}

std::span<const complex> Field::spectral() const {
  if (rep_ != Representation::spectral)
    throw std::logic_error("field is not in spectral representation");
  return spectral_;
}

std::span<double> Field::physical_mut() {
  if (rep_ != Representation::physical)
    throw std::logic_error("field is not in physical representation");
  return physical_;
}

std::span<complex> Field::spectral_mut() {
  if (rep_ != Representation::spectral)
    throw std::logic_error("field is not in spectral representation");
  return spectral_;
}

double Field::mean() const {
  if (rep_ == Representation::spectral) return spectral_[0].real();
  double s = 0.0;
  for (double v : physical_) s += v;
  return s / double(physical_.size());
}

double Field::min() const {
  const Field p = to_physical();
  return *std::min_element(p.physical_.begin(), p.physical_.end());
}

double Field::max() const {
  const Field p = to_physical();
  return *std::max_element(p.physical_.begin(), p.physical_.end());
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*grid_, *other.grid_, "Field::operator+=");
  if (rep_ == Representation::physical && other.rep_ == Representation::physical) {
    for (std::size_t i = 0; i < physical_.size(); ++i) physical_[i] += other.physical_[i];
    return *this;
  }
  if (rep_ == Representation::physical) *this = to_spectral();
  const Field o = other.to_spectral();
  for (std::size_t i = 0; i < spectral_.size(); ++i) spectral_[i] += o.spectral_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  Field neg = other;
  neg *= -1.0;
  return *this += neg;
}

Field& Field::operator*=(double s) {
  for (auto& v : physical_) v *= s;
  for (auto& c : spectral_) c *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator*(Field a, double s) { return a *= s; }

VectorField::VectorField(std::vector<Field> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("empty vector field");
  for (const auto& c : components_)
    require_same_grid(components_.front().grid(), c.grid(), "VectorField");
}

VectorField VectorField::zeros(GridPtr grid, Representation rep) {
  std::vector<Field> comps;
  for (int d = 0; d < grid->dim(); ++d) comps.push_back(Field::zeros(grid, rep));
  return VectorField(std::move(comps));
}

VectorField VectorField::horizontal() const {
  return VectorField({components_[0], components_[1]});
}

VectorField VectorField::to_spectral() const {
  std::vector<Field> c;
  for (const auto& f : components_) c.push_back(f.to_spectral());
  return VectorField(std::move(c));
}

VectorField VectorField::to_physical() const {
  std::vector<Field> c;
  for (const auto& f : components_) c.push_back(f.to_physical());
  return VectorField(std::move(c));
}

std::array<double, 3> VectorField::mean() const {
  std::array<double, 3> m{0.0, 0.0, 0.0};
  for (int d = 0; d < dim(); ++d) m[d] = components_[d].mean();
  return m;
}

VectorField& VectorField::operator+=(const VectorField& other) {
  for (int d = 0; d < dim(); ++d) components_[d] += other.components_[d];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  for (int d = 0; d < dim(); ++d) components_[d] -= other.components_[d];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : components_) c *= s;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

}  // namespace cnslab
