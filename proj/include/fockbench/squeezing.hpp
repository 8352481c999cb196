#ifndef FOCKBENCH_SQUEEZING_HPP
#define FOCKBENCH_SQUEEZING_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "fockbench/config.hpp"
#include "fockbench/error.hpp"
#include "fockbench/expm.hpp"
#include "fockbench/fock.hpp"
#include "fockbench/grid.hpp"
#include "fockbench/linalg.hpp"
#include "fockbench/phase.hpp"

namespace fockbench::squeezing {

/// xi = r e^{i phi}, S(xi) = exp((xi a^dag^2 - xi^* a^2) / 2).
struct SqueezeSpec {
  double r = 0.0;
  double phi = 0.0;
  std::size_t dim = kDefaultDim;

  Complex xi() const { return std::polar(r, phi); }

  bool is_tight() const {
    const double s = std::sinh(r);
    return static_cast<double>(dim) >= std::ceil(8.0 * s * s + 16.0);
  }
};

namespace detail {

inline void check_squeeze_magnitude(double r) {
  require(std::isfinite(r), ErrorKind::invalid_parameter, "squeeze magnitude must be finite");
  require(std::abs(r) < 350.0, ErrorKind::range, "squeeze magnitude too large: cosh overflows");
}

}  // namespace detail

inline OperatorMatrix squeeze_generator(Complex xi, std::size_t dim) {
  const auto [a, adag] = build_ladder(dim);
  return 0.5 * (xi * (adag * adag) - std::conj(xi) * (a * a));
}

inline OperatorMatrix squeeze_operator(const SqueezeSpec& spec) {
  require(spec.r >= 0.0, ErrorKind::invalid_parameter, "squeeze magnitude r must be >= 0");
  detail::check_squeeze_magnitude(spec.r);
  return matrix_exponential(squeeze_generator(spec.xi(), spec.dim));
}

/// S(xi)|0> = cosh(r)^{-1/2} sum_j (e^{i phi} tanh(r) / 2)^j sqrt((2j)!) / j! |2j>,
/// renormalized on the truncated basis.
inline FockState squeezed_vacuum_from_xi(Complex xi, std::size_t dim) {
  require_dim(dim);
  const double r = std::abs(xi);
  detail::check_squeeze_magnitude(r);
  const auto d = static_cast<Eigen::Index>(dim);
  CVector amps = CVector::Zero(d);
  amps(0) = 1.0;
  if (r == 0.0) return FockState(std::move(amps));
  const double log_t = std::log(0.5 * std::tanh(r));
  const double log_c = -0.5 * std::log(std::cosh(r));
  const double phase = std::arg(xi);
  for (Eigen::Index j = 0; 2 * j < d; ++j) {
    const double dj = static_cast<double>(j);
    const double log_mag = log_c + dj * log_t + 0.5 * std::lgamma(2.0 * dj + 1.0) - std::lgamma(dj + 1.0);
    amps(2 * j) = std::polar(std::exp(log_mag), dj * phase);
  }
  return FockState(std::move(amps)).normalized();
}

inline FockState squeezed_vacuum_closed_form(const SqueezeSpec& spec) {
  require(spec.r >= 0.0, ErrorKind::invalid_parameter, "squeeze magnitude r must be >= 0");
  return squeezed_vacuum_from_xi(spec.xi(), spec.dim);
}

/// S(xi)|0> by matrix exponential.
inline FockState squeezed_vacuum(const SqueezeSpec& spec) {
  const OperatorMatrix s = squeeze_operator(spec);
  return FockState(s.col(0));
}

/// exp(-(x - x0)^2 / (2 s^2) + i p0 x), normalized on the grid.
inline GridWavefunction squeezed_wavefunction(double s, double x0, double p0, const Grid& grid) {
  require(s > 0.0 && std::isfinite(s), ErrorKind::invalid_parameter, "invalid width: s must be > 0");
  require(grid.x_min <= x0 - 8.0 * s && grid.x_max() >= x0 + 8.0 * s, ErrorKind::truncation,
          "squeezed_wavefunction: grid must cover x0 +/- 8s");
  CVector v(static_cast<Eigen::Index>(grid.n_points));
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    const double u = (x - x0) / s;
    v(static_cast<Eigen::Index>(i)) = std::exp(Complex(-0.5 * u * u, p0 * x));
  }
  return GridWavefunction(grid, std::move(v)).normalized();
}

/// |0_theta> = cosh(theta)^{-1/2} exp(a^dag^2 tanh(theta) / 2)|0>, the vacuum of
/// a_theta = a cosh(theta) - a^dag sinh(theta).
inline FockState theta_vacuum(double theta, std::size_t dim) {
  require(std::isfinite(theta), ErrorKind::invalid_parameter, "theta must be finite");
  return squeezed_vacuum_from_xi(Complex(theta, 0.0), dim);
}

/// ||a_theta |psi>|| with the ladder padded by one level.
inline double theta_annihilation_residual(const FockState& s, double theta) {
  const std::size_t d = s.dim() + 1;
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
  v.head(s.amps().size()) = s.amps() / s.amps().norm();
  const auto [a, adag] = build_ladder(d);
  return ((std::cosh(theta) * a - std::sinh(theta) * adag) * v).norm();
}

struct VacuumMoment {
  Complex numeric;       // <0|a^{2n} S_theta|0> from the matrix exponential
  double closed_form;    // k_n cosh(theta)^{-1/2} tanh(theta)^n
  double recurrence;     // |du_n/dtheta + u_{n+1}/2 - n(2n-1) u_{n-1}| by central differences
};

/// k_n = (2n)! / (2^n n!) = (2n-1)!!.
inline double moment_coefficient(int n) {
  double k = 1.0;
  for (int j = 1; j <= n; ++j) k *= 2.0 * j - 1.0;
  return k;
}

namespace detail {

/// u_m = sqrt((2m)!) <2m|S_theta|0> for m = 0..count-1.
inline std::vector<Complex> vacuum_moments(double theta, int count, std::size_t dim) {
  const OperatorMatrix s = matrix_exponential(squeeze_generator(Complex(theta, 0.0), dim));
  std::vector<Complex> u;
  for (int m = 0; m < count; ++m) u.push_back(std::exp(0.5 * std::lgamma(2.0 * m + 1.0)) * s(2 * m, 0));
  return u;
}

}  // namespace detail

inline VacuumMoment vacuum_moment_u(double theta, int n, std::size_t dim, double step = 1e-4) {
  require(n >= 1, ErrorKind::invalid_parameter, "moment order n must be >= 1");
  require(std::isfinite(theta), ErrorKind::invalid_parameter, "theta must be finite");
  require(4 * static_cast<std::size_t>(n + 1) < dim, ErrorKind::truncation,
          "moment order too large for dim: need 2(n+1) < dim/2");
  const auto u = detail::vacuum_moments(theta, n + 2, dim);
  const auto up = detail::vacuum_moments(theta + step, n + 1, dim);
  const auto dn = detail::vacuum_moments(theta - step, n + 1, dim);
  const Complex deriv = (up[n] - dn[n]) / (2.0 * step);
  const double closed =
      moment_coefficient(n) * std::pow(std::cosh(theta), -0.5) * std::pow(std::tanh(theta), n);
  const Complex rhs = -0.5 * u[n + 1] + static_cast<double>(n) * (2.0 * n - 1.0) * u[n - 1];
  return {u[n], closed, std::abs(deriv - rhs)};
}

/// beta = e^{i nu} tanh r.
inline Complex beta_from(double r, double nu) { return std::polar(std::tanh(r), nu); }

/// exp(zeta R+ - zeta^* R-)|0> with zeta = e^{i arg beta} artanh|beta|, so that
/// beta is the ratio of successive amplitudes.
inline FockState phase_squeezed_state_SR(Complex beta, std::size_t dim) {
  const double b = std::abs(beta);
  require(b < 1.0, ErrorKind::range, "divergence: |beta| must be < 1");
  const auto r = phase::build_R_ops(dim);
  const Complex zeta = b == 0.0 ? Complex(0.0) : (beta / b) * std::atanh(b);
  const OperatorMatrix u = matrix_exponential(zeta * r.r_plus - std::conj(zeta) * r.r_minus);
  return FockState(u.col(0));
}

/// sqrt(1 - |beta|^2) sum_n beta^n |n>, renormalized.
inline FockState geometric_state(Complex beta, std::size_t dim) {
  require_dim(dim);
  require(std::abs(beta) < 1.0, ErrorKind::range, "divergence: |beta| must be < 1");
  CVector amps(static_cast<Eigen::Index>(dim));
  Complex c = std::sqrt(1.0 - std::norm(beta));
  for (Eigen::Index n = 0; n < amps.size(); ++n) {
    amps(n) = c;
    c *= beta;
  }
  return FockState(std::move(amps)).normalized();
}

/// (a, a^dag) -> (a cosh t - a^dag sinh t, a^dag cosh t - a sinh t).
struct BogoliubovMap {
  double theta = 0.0;

  Eigen::Matrix2d matrix() const {
    const double c = std::cosh(theta), s = std::sinh(theta);
    Eigen::Matrix2d m;
    m << c, -s, -s, c;
    return m;
  }

  double determinant() const { return matrix().determinant(); }

  BogoliubovMap then(const BogoliubovMap& next) const { return {theta + next.theta}; }
};

struct LadderPair {
  OperatorMatrix a;
  OperatorMatrix adag;
};

inline LadderPair bogoliubov_apply(const BogoliubovMap& map, const OperatorMatrix& a, const OperatorMatrix& adag) {
  require(a.rows() == adag.rows() && a.cols() == adag.cols() && a.rows() == a.cols(), ErrorKind::shape,
          "bogoliubov_apply: ladder shapes differ");
  const Eigen::Matrix2d m = map.matrix();
  return {m(0, 0) * a + m(0, 1) * adag, m(1, 0) * a + m(1, 1) * adag};
}

}  // namespace fockbench::squeezing

#endif  // FOCKBENCH_SQUEEZING_HPP
