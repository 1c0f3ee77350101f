#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace cnslab {

using complex = std::complex<double>;

/// Periodic box [0, L)^dim sampled on n points per dimension.
///
/// The spectral lattice is stored in real-to-complex half form: the last
/// dimension keeps the non-negative modes 0..n/2 only, the others are full.
/// Spectral index order is row-major over (m_1, ..., m_dim), physical index
/// order is row-major over (x_1, ..., x_dim).
class Grid {
 public:
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n() const { return n_; }
  int dim() const { return dim_; }
  double box_length() const { return length_; }
  /// Lattice spacing 2*pi/L, the smallest nonzero |k|.
  double k0() const { return k0_; }
  double dx() const { return length_ / n_; }
  double volume() const;
  double cell_volume() const;

  std::size_t physical_size() const { return physical_size_; }
  std::size_t spectral_size() const { return spectral_size_; }
  /// Number of stored modes in the last (halved) dimension.
  int half_n() const { return n_ / 2 + 1; }

  /// Component d of the derivative wavevector at spectral index idx. The
  /// Nyquist component is stored as zero so odd multipliers keep real
  /// fields real.
  double k(std::size_t idx, int d) const { return kvec_[d][idx]; }
  std::array<double, 3> wavevector(std::size_t idx) const;
  /// True |k|^2 (Nyquist components included).
  double k2(std::size_t idx) const { return k2_[idx]; }
  /// Integer multi-index m with k = k0 * m.
  std::array<int, 3> mode(std::size_t idx) const;
  /// Multiplicity of a half-spectrum entry in the full lattice (1 or 2).
  double hermitian_weight(std::size_t idx) const { return weight_[idx]; }
  /// True if component d of the mode is the Nyquist frequency n/2.
  bool nyquist(std::size_t idx, int d) const { return (nyq_[idx] >> d) & 1u; }
  bool any_nyquist(std::size_t idx) const { return nyq_[idx] != 0; }
  /// Largest |k| present on the lattice (corner of the box).
  double k_max() const;
  /// Radius of the two-thirds dealiasing ball, (n/3) * k0.
  double dealias_radius() const { return k0_ * n_ / 3.0; }
  /// Modes strictly inside the dealiasing ball survive truncation.
  bool inside_dealias_ball(std::size_t idx) const { return keep_[idx] != 0; }

  /// Physical coordinate component d of sample index i.
  double x(std::size_t i, int d) const;

  /// Forward transform, normalized so coefficients are Fourier-series
  /// coefficients (a constant c maps to c at k = 0).
  void forward(std::span<const double> in, std::span<complex> out) const;
  /// Inverse transform; exact inverse of forward().
  void inverse(std::span<const complex> in, std::span<double> out) const;

  bool same_as(const Grid& other) const {
    return n_ == other.n_ && dim_ == other.dim_ && length_ == other.length_;
  }

 private:
  Grid(int n, double box_length, int dim);
  friend std::shared_ptr<const Grid> make_grid(int, double, int);

  int n_;
  int dim_;
  double length_;
  double k0_;
  std::size_t physical_size_;
  std::size_t spectral_size_;
  std::array<std::vector<double>, 3> kvec_;
  std::vector<double> k2_;
  std::vector<std::uint8_t> weight_;
  std::vector<std::uint8_t> nyq_;
  std::vector<std::uint8_t> keep_;

  struct Plans;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// n must be >= 8 and of the form 2^k or 3*2^k; box_length > 0; dim in {2,3}.
GridPtr make_grid(int n_per_dim, double box_length, int dim);

bool is_admissible_resolution(int n);

}  // namespace cnslab
