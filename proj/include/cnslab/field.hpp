#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "cnslab/grid.hpp"

namespace cnslab {

enum class Representation { physical, spectral };

/// Real scalar field on a periodic grid, held either as physical samples or
/// as half-spectrum Fourier coefficients. Spectral is canonical; operators
/// accept either and convert as needed. Values are immutable once shared:
/// mutating accessors only exist for building a field you own.
class Field {
 public:
  Field() = default;

  static Field zeros(GridPtr grid, Representation rep = Representation::spectral);
  static Field constant(GridPtr grid, double value);
  static Field from_physical(GridPtr grid, std::vector<double> samples);
  static Field from_spectral(GridPtr grid, std::vector<complex> coefficients);
  /// Samples fn(x) at every grid point (x has dim meaningful entries).
  static Field sample(GridPtr grid,
                      const std::function<double(const std::array<double, 3>&)>& fn);

  bool valid() const { return grid_ != nullptr; }
  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Representation representation() const { return rep_; }

  /// Idempotent if already in the target representation.
  Field to_spectral() const;
  Field to_physical() const;

  /// Throw std::logic_error if the field is in the other representation.
  std::span<const double> physical() const;
  std::span<const complex> spectral() const;
  std::span<double> physical_mut();
  std::span<complex> spectral_mut();

  /// Mean value (the k = 0 coefficient).
  double mean() const;
  double min() const;
  double max() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

 private:
  GridPtr grid_;
  Representation rep_ = Representation::spectral;
  std::vector<double> physical_;
  std::vector<complex> spectral_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator*(Field a, double s);

/// dim-tuple of fields on one grid. For dim = 3, horizontal part is (u1,u2)
/// and vertical part is u3.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Field> components);
  static VectorField zeros(GridPtr grid, Representation rep = Representation::spectral);

  int dim() const { return int(components_.size()); }
  const Grid& grid() const { return components_.front().grid(); }
  const GridPtr& grid_ptr() const { return components_.front().grid_ptr(); }

  const Field& operator[](int i) const { return components_[i]; }
  Field& operator[](int i) { return components_[i]; }
  const std::vector<Field>& components() const { return components_; }

  /// Horizontal components (u1, u2) as a two-component field.
  VectorField horizontal() const;
  /// Last component.
  const Field& vertical() const { return components_.back(); }

  VectorField to_spectral() const;
  VectorField to_physical() const;
  std::array<double, 3> mean() const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double s);

 private:
  std::vector<Field> components_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Throws ConfigError when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace cnslab
