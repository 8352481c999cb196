#ifndef FOCKBENCH_PAIR_HPP
#define FOCKBENCH_PAIR_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>

#include "fockbench/error.hpp"
#include "fockbench/expm.hpp"
#include "fockbench/linalg.hpp"
#include "fockbench/su11.hpp"
#include "fockbench/two_mode.hpp"

namespace fockbench::pair {

/// Rectangular truncation dim_a x dim_b for charge sector q; dim_a = dim_b + q
/// keeps every ket |n+q, n> with n < dim_b.
struct SectorDims {
  std::size_t dim_a;
  std::size_t dim_b;

  static SectorDims for_charge(int q, std::size_t dim_b) {
    require(q >= 0, ErrorKind::invalid_parameter, "charge q must be >= 0");
    return {dim_b + static_cast<std::size_t>(q), dim_b};
  }
};

struct PairCoherentSpec {
  Complex zeta{0.0, 0.0};
  int q = 0;
  SectorDims dims{32, 32};

  bool is_tight() const { return std::abs(zeta) <= static_cast<double>(dims.dim_b) / 4.0; }
};

namespace detail {

inline void validate_sector(int q, const SectorDims& dims) {
  require(q >= 0, ErrorKind::invalid_parameter, "invalid charge: q must be >= 0, got " + std::to_string(q));
  require_dim(dims.dim_a);
  require_dim(dims.dim_b);
  require(static_cast<std::size_t>(q) < dims.dim_a, ErrorKind::invalid_dimension,
          "dim_a must exceed the charge q");
}

inline std::size_t sector_length(int q, const SectorDims& dims) {
  return std::min(dims.dim_a - static_cast<std::size_t>(q), dims.dim_b);
}

/// Places c_n on |n+q, n>.
inline TwoModeState place_in_sector(const CVector& c, int q, const SectorDims& dims) {
  OperatorMatrix m = OperatorMatrix::Zero(static_cast<Eigen::Index>(dims.dim_a), static_cast<Eigen::Index>(dims.dim_b));
  for (Eigen::Index n = 0; n < c.size(); ++n) m(n + q, n) = c(n);
  return TwoModeState(std::move(m));
}

/// zeta^n / sqrt(n! (n+q)!) in log space, scaled by sqrt(q!) when `with_q_factorial`.
inline CVector pair_coefficients(Complex zeta, int q, std::size_t length, bool with_q_factorial) {
  CVector c = CVector::Zero(static_cast<Eigen::Index>(length));
  const double dq = static_cast<double>(q);
  const double shift = with_q_factorial ? 0.5 * std::lgamma(dq + 1.0) : 0.0;
  if (zeta == Complex(0.0)) {
    c(0) = std::exp(shift - 0.5 * std::lgamma(dq + 1.0));
    return c;
  }
  const double lr = std::log(std::abs(zeta));
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    const double dn = static_cast<double>(n);
    const double log_mag = shift + dn * lr - 0.5 * (std::lgamma(dn + 1.0) + std::lgamma(dn + dq + 1.0));
    c(n) = std::polar(std::exp(log_mag), dn * std::arg(zeta));
  }
  return c;
}

}  // namespace detail

/// Simultaneous eigenstate of ab (eigenvalue zeta) and a^dag a - b^dag b
/// (eigenvalue q): N_q sum_n zeta^n / sqrt(n!(n+q)!) |n+q, n>.
inline TwoModeState pair_coherent(const PairCoherentSpec& spec) {
  detail::validate_sector(spec.q, spec.dims);
  const CVector c = detail::pair_coefficients(spec.zeta, spec.q, detail::sector_length(spec.q, spec.dims), false);
  return detail::place_in_sector(c, spec.q, spec.dims).normalized();
}

struct PairResiduals {
  double eigen = 0.0;   // ||(ab - zeta)|psi>||
  double charge = 0.0;  // ||(N_a - N_b - q)|psi>||
};

inline PairResiduals pair_residuals(const TwoModeState& s, Complex zeta, int q) {
  const auto ops = build_two_mode_ops(s.dim_a(), s.dim_b());
  const CVector v = s.flat();
  const SparseOperator ab = ops.a1 * ops.a2;
  const SparseOperator charge = ops.n1 - ops.n2;
  return {(ab * v - zeta * v).norm(), (charge * v - static_cast<double>(q) * v).norm()};
}

/// exp(xi a^dag b^dag - xi^* ab)|q,0> by exponential action on the product space.
inline TwoModeState two_mode_perelomov(Complex xi, int q, const SectorDims& dims) {
  detail::validate_sector(q, dims);
  require(std::abs(xi) < 350.0, ErrorKind::range, "|xi| too large: cosh overflows");
  const auto ops = build_two_mode_ops(dims.dim_a, dims.dim_b);
  const SparseOperator gen = xi * (ops.a1dag * ops.a2dag) - std::conj(xi) * (ops.a1 * ops.a2);
  const CVector start = TwoModeState::basis(dims.dim_a, dims.dim_b, static_cast<std::size_t>(q), 0).flat();
  return TwoModeState::from_flat(expm_apply(gen, start), dims.dim_a, dims.dim_b);
}

/// exp[(xi tanh|xi| / |xi|) a^dag b^dag]|q,0>, normalized; series expansion
/// t^n sqrt((n+q)! / (q! n!)) on |n+q, n>.
inline TwoModeState two_mode_perelomov_closed_form(Complex xi, int q, const SectorDims& dims) {
  detail::validate_sector(q, dims);
  const Complex t = su11::kappa_of(xi);
  const std::size_t len = detail::sector_length(q, dims);
  CVector c = CVector::Zero(static_cast<Eigen::Index>(len));
  c(0) = 1.0;
  for (Eigen::Index n = 1; n < c.size(); ++n) {
    c(n) = c(n - 1) * t * std::sqrt(static_cast<double>(n + q) / static_cast<double>(n));
  }
  return detail::place_in_sector(c, q, dims).normalized();
}

/// Residual of [2 / (2 + q + N_a + N_b)] ab |psi> = (xi tanh|xi| / |xi|) |psi>.
inline double two_mode_perelomov_residual(const TwoModeState& s, Complex xi, int q) {
  const auto ops = build_two_mode_ops(s.dim_a(), s.dim_b());
  const CVector v = s.flat() / s.flat().norm();
  CVector w = ops.a1 * (ops.a2 * v);
  for (std::size_t na = 0; na < s.dim_a(); ++na) {
    for (std::size_t nb = 0; nb < s.dim_b(); ++nb) {
      w(static_cast<Eigen::Index>(na * s.dim_b() + nb)) *= 2.0 / (2.0 + q + static_cast<double>(na + nb));
    }
  }
  return (w - su11::kappa_of(xi) * v).norm();
}

using NonlinearFunction = std::function<double(std::size_t na, std::size_t nb)>;

/// Solves f(N_a, N_b) ab |psi> = zeta |psi> in charge sector q. On |n+q, n>
/// the equation reduces to f(n+q-1, n-1) sqrt(n(n+q)) c_n = zeta c_{n-1}.
inline TwoModeState nonlinear_pair_coherent(const NonlinearFunction& f, Complex zeta, int q, const SectorDims& dims) {
  detail::validate_sector(q, dims);
  const std::size_t len = detail::sector_length(q, dims);
  CVector c = CVector::Zero(static_cast<Eigen::Index>(len));
  c(0) = 1.0;
  if (zeta != Complex(0.0)) {
    for (std::size_t n = 1; n < len; ++n) {
      const std::size_t na = n + static_cast<std::size_t>(q) - 1, nb = n - 1;
      const double fv = f(na, nb);
      require(fv != 0.0 && std::isfinite(fv), ErrorKind::singularity,
              "nonlinear function vanishes at (na, nb) = (" + std::to_string(na) + ", " + std::to_string(nb) + ")");
      const double dn = static_cast<double>(n);
      c(static_cast<Eigen::Index>(n)) = zeta * c(static_cast<Eigen::Index>(n - 1)) / (fv * std::sqrt(dn * (dn + q)));
    }
  }
  return detail::place_in_sector(c, q, dims).normalized();
}

/// ||f(N_a, N_b) ab |psi> - zeta |psi>|| for a normalized state.
inline double nonlinear_residual(const NonlinearFunction& f, const TwoModeState& s, Complex zeta) {
  const auto ops = build_two_mode_ops(s.dim_a(), s.dim_b());
  const CVector v = s.flat() / s.flat().norm();
  CVector w = ops.a1 * (ops.a2 * v);
  for (std::size_t na = 0; na < s.dim_a(); ++na) {
    for (std::size_t nb = 0; nb < s.dim_b(); ++nb) {
      const auto idx = static_cast<Eigen::Index>(na * s.dim_b() + nb);
      if (w(idx) != Complex(0.0)) w(idx) *= f(na, nb);
    }
  }
  return (w - zeta * v).norm();
}

/// sum_n sqrt(q! / (n!(n+q)!)) zeta^n (-1)^{n(n-1)/2} |n+q, n>, normalized.
inline TwoModeState parity_pair_state(Complex zeta, int q, const SectorDims& dims) {
  detail::validate_sector(q, dims);
  CVector c = detail::pair_coefficients(zeta, q, detail::sector_length(q, dims), true);
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    if (((n * (n - 1)) / 2) % 2 != 0) c(n) = -c(n);
  }
  return detail::place_in_sector(c, q, dims).normalized();
}

/// (e^{-i pi/4} |i zeta, q> + e^{i pi/4} |-i zeta, q>) / sqrt(2), both
/// components carrying the unnormalized coefficients sqrt(q!) zeta^n / sqrt(n!(n+q)!),
/// normalized at the end.
inline TwoModeState parity_pair_superposition(Complex zeta, int q, const SectorDims& dims) {
  detail::validate_sector(q, dims);
  const std::size_t len = detail::sector_length(q, dims);
  const CVector plus = detail::pair_coefficients(kI * zeta, q, len, true);
  const CVector minus = detail::pair_coefficients(-kI * zeta, q, len, true);
  const CVector c = (std::polar(1.0, -kPi / 4) * plus + std::polar(1.0, kPi / 4) * minus) / std::sqrt(2.0);
  return detail::place_in_sector(c, q, dims).normalized();
}

}  // namespace fockbench::pair

#endif  // FOCKBENCH_PAIR_HPP
