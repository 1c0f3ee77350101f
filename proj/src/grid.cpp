#include "cnslab/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "cnslab/errors.hpp"

namespace cnslab {

namespace {

// The FFTW planner is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int signed_mode(int i, int n) { return i <= n / 2 ? i : i - n; }

}  // namespace

struct Grid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

bool is_admissible_resolution(int n) {
  if (n < 8) return false;
  int m = n;
  while (m % 2 == 0) m /= 2;
  return m == 1 || m == 3;
}

GridPtr make_grid(int n_per_dim, double box_length, int dim) {
  if (!is_admissible_resolution(n_per_dim))
    throw ConfigError("grid resolution n = " + std::to_string(n_per_dim) +
                      " must be >= 8 and a power of two (or 3 times one)");
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw ConfigError("box length must be positive");
  if (dim != 2 && dim != 3)
    throw ConfigError("dim must be 2 or 3, got " + std::to_string(dim));
  return GridPtr(new Grid(n_per_dim, box_length, dim));
}

Grid::Grid(int n, double box_length, int dim)
    : n_(n), dim_(dim), length_(box_length),
      k0_(2.0 * std::numbers::pi / box_length) {
  const int h = n / 2 + 1;
  physical_size_ = dim == 3 ? std::size_t(n) * n * n : std::size_t(n) * n;
  spectral_size_ = dim == 3 ? std::size_t(n) * n * h : std::size_t(n) * h;

  for (int d = 0; d < dim; ++d) kvec_[d].resize(spectral_size_);
  k2_.resize(spectral_size_);
  weight_.resize(spectral_size_);
  nyq_.resize(spectral_size_);
  keep_.resize(spectral_size_);

  const double cut2 = (n / 3.0) * (n / 3.0);
  for (std::size_t idx = 0; idx < spectral_size_; ++idx) {
    const auto m = mode(idx);
    double kk = 0.0;
    double mm = 0.0;
    std::uint8_t flags = 0;
    for (int d = 0; d < dim; ++d) {
      const double kd = k0_ * m[d];
      const bool is_nyquist = std::abs(m[d]) == n / 2;
      kvec_[d][idx] = is_nyquist ? 0.0 : kd;
      kk += kd * kd;
      mm += double(m[d]) * m[d];
      if (is_nyquist) flags |= std::uint8_t(1u << d);
    }
    k2_[idx] = kk;
    nyq_[idx] = flags;
    keep_[idx] = mm < cut2 ? 1 : 0;
    const int last = m[dim - 1];
    weight_[idx] = (last == 0 || last == n / 2) ? 1 : 2;
  }

  plans_ = std::make_unique<Plans>();
  std::vector<int> dims(dim, n);
  double* rbuf = fftw_alloc_real(physical_size_);
  fftw_complex* cbuf = fftw_alloc_complex(spectral_size_);
  {
    std::lock_guard lock(planner_mutex());
    plans_->r2c = fftw_plan_dft_r2c(
        dim, dims.data(), rbuf, cbuf,
        FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    plans_->c2r = fftw_plan_dft_c2r(dim, dims.data(), cbuf, rbuf,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_free(rbuf);
  fftw_free(cbuf);
}

Grid::~Grid() = default;

double Grid::volume() const { return std::pow(length_, dim_); }

double Grid::cell_volume() const { return std::pow(dx(), dim_); }

std::array<double, 3> Grid::wavevector(std::size_t idx) const {
  std::array<double, 3> k{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) k[d] = kvec_[d][idx];
  return k;
}

std::array<int, 3> Grid::mode(std::size_t idx) const {
  const int h = n_ / 2 + 1;
  std::array<int, 3> m{0, 0, 0};
  const int last = int(idx % h);
  std::size_t rest = idx / h;
  m[dim_ - 1] = last;
  for (int d = dim_ - 2; d >= 0; --d) {
    m[d] = signed_mode(int(rest % n_), n_);
    rest /= n_;
  }
  return m;
}

double Grid::k_max() const {
  return k0_ * (n_ / 2) * std::sqrt(double(dim_));
}

double Grid::x(std::size_t i, int d) const {
  std::size_t stride = 1;
  for (int e = dim_ - 1; e > d; --e) stride *= n_;
  return dx() * double((i / stride) % n_);
}

void Grid::forward(std::span<const double> in, std::span<complex> out) const {
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / double(physical_size_);
  for (auto& c : out) c *= scale;
}

void Grid::inverse(std::span<const complex> in, std::span<double> out) const {
  // c2r overwrites its input.
  std::vector<complex> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(plans_->c2r,
                       reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
}

}  // namespace cnslab
