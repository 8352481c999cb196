#ifndef FOCKBENCH_GRID_HPP
#define FOCKBENCH_GRID_HPP

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fockbench/error.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench {

/// Uniform 1-D grid x_i = x_min + i*dx, i = 0..n_points-1.
struct Grid {
  double x_min = -10.0;
  double dx = 0.01;
  std::size_t n_points = 2001;

  static Grid uniform(double x_min, double x_max, std::size_t n_points) {
    require(n_points >= 3, ErrorKind::invalid_parameter, "grid needs at least 3 points");
    require(x_max > x_min, ErrorKind::invalid_parameter, "grid needs x_max > x_min");
    return Grid{x_min, (x_max - x_min) / static_cast<double>(n_points - 1), n_points};
  }

  double x(std::size_t i) const { return x_min + dx * static_cast<double>(i); }
  double x_max() const { return x(n_points - 1); }

  RVector points() const {
    RVector xs(static_cast<Eigen::Index>(n_points));
    for (std::size_t i = 0; i < n_points; ++i) xs(static_cast<Eigen::Index>(i)) = x(i);
    return xs;
  }
};

/// Trapezoidal integral of uniformly sampled values.
template <class Derived>
auto trapezoid(const Eigen::MatrixBase<Derived>& f, double dx) {
  using Scalar = typename Derived::Scalar;
  const auto n = f.size();
  if (n < 2) return Scalar(0);
  return dx * (f.sum() - Scalar(0.5) * (f(0) + f(n - 1)));
}

/// Running trapezoidal integral, out(0) = 0.
inline RVector cumulative_trapezoid(const RVector& f, double dx) {
  RVector out(f.size());
  if (f.size() == 0) return out;
  out(0) = 0.0;
  for (Eigen::Index i = 1; i < f.size(); ++i) out(i) = out(i - 1) + 0.5 * dx * (f(i - 1) + f(i));
  return out;
}

/// Three-point centered derivative; one-sided second-order stencils at the ends.
template <class Vec>
Vec centered_derivative(const Vec& f, double dx) {
  const auto n = f.size();
  Vec d(n);
  for (Eigen::Index i = 1; i + 1 < n; ++i) d(i) = (f(i + 1) - f(i - 1)) / (2.0 * dx);
  d(0) = (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * dx);
  d(n - 1) = (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * dx);
  return d;
}

/// Spectral derivative of samples treated as periodic on the grid.
inline CVector spectral_derivative(const CVector& f, double dx, int order = 1) {
  const auto n = f.size();
  Eigen::FFT<double> fft;
  std::vector<Complex> in(f.data(), f.data() + n), spec;
  fft.fwd(spec, in);
  const double dk = 2.0 * kPi / (dx * static_cast<double>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index shifted = j <= n / 2 ? j : j - n;
    double k = dk * static_cast<double>(shifted);
    if (order % 2 == 1 && n % 2 == 0 && j == n / 2) k = 0.0;  // Nyquist mode has no odd derivative
    spec[static_cast<std::size_t>(j)] *= std::pow(kI * k, order);
  }
  std::vector<Complex> out;
  fft.inv(out, spec);
  return Eigen::Map<CVector>(out.data(), n);
}

/// Complex wavefunction sampled on a uniform grid.
class GridWavefunction {
 public:
  GridWavefunction(Grid grid, CVector values) : grid_(grid), values_(std::move(values)) {
    require(static_cast<std::size_t>(values_.size()) == grid_.n_points, ErrorKind::shape,
            "GridWavefunction: sample count does not match the grid");
  }

  const Grid& grid() const { return grid_; }
  const CVector& values() const { return values_; }

  /// Discrete L2 norm squared, sum |psi_i|^2 dx.
  double norm_squared() const { return values_.squaredNorm() * grid_.dx; }

  GridWavefunction normalized() const {
    const double n2 = norm_squared();
    require(n2 > 0.0, ErrorKind::numeric, "cannot normalize a zero wavefunction");
    return GridWavefunction(grid_, values_ / std::sqrt(n2));
  }

  Complex inner(const GridWavefunction& other) const {
    require(other.values_.size() == values_.size(), ErrorKind::shape, "grid mismatch");
    return values_.dot(other.values_) * grid_.dx;
  }

  double mean_x() const {
    double s = 0.0;
    for (std::size_t i = 0; i < grid_.n_points; ++i) s += grid_.x(i) * std::norm(values_(static_cast<Eigen::Index>(i)));
    return s * grid_.dx / norm_squared();
  }

  double var_x() const {
    const double m = mean_x();
    double s = 0.0;
    for (std::size_t i = 0; i < grid_.n_points; ++i) {
      const double d = grid_.x(i) - m;
      s += d * d * std::norm(values_(static_cast<Eigen::Index>(i)));
    }
    return s * grid_.dx / norm_squared();
  }

  /// <p> = -i <psi|psi'> with the derivative taken spectrally.
  double mean_p() const {
    const CVector d = spectral_derivative(values_, grid_.dx, 1);
    return (values_.dot(-kI * d) * grid_.dx).real() / norm_squared();
  }

  double var_p() const {
    const CVector d = spectral_derivative(values_, grid_.dx, 1);
    const double p2 = d.squaredNorm() * grid_.dx / norm_squared();
    const double m = mean_p();
    return p2 - m * m;
  }

  /// L2 distance to another wavefunction on the same grid.
  double distance(const GridWavefunction& other) const {
    require(other.values_.size() == values_.size(), ErrorKind::shape, "grid mismatch");
    return std::sqrt((values_ - other.values_).squaredNorm() * grid_.dx);
  }

 private:
  Grid grid_;
  CVector values_;
};

}  // namespace fockbench

#endif  // FOCKBENCH_GRID_HPP
