#ifndef FOCKBENCH_SU11_HPP
#define FOCKBENCH_SU11_HPP

#include <cmath>
#include <cstddef>
#include <string>

#include "fockbench/error.hpp"
#include "fockbench/expm.hpp"
#include "fockbench/fock.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench::su11 {

/// Discrete-series representation with Bargmann index k on |k,0>..|k,dim-1>.
struct SU11Rep {
  double k = 0.5;
  std::size_t dim = 48;
};

struct Generators {
  OperatorMatrix k_plus;
  OperatorMatrix k_minus;
  OperatorMatrix k_zero;
};

inline void validate(const SU11Rep& rep) {
  require(rep.k > 0.0 && std::isfinite(rep.k), ErrorKind::invalid_parameter,
          "SU(1,1) representation needs k > 0, got " + std::to_string(rep.k));
  require_dim(rep.dim);
}

/// K+|k,n> = sqrt((n+1)(2k+n))|k,n+1>, K-|k,n> = sqrt(n(2k+n-1))|k,n-1>,
/// K0|k,n> = (k+n)|k,n>.
inline Generators su11_generators(const SU11Rep& rep) {
  validate(rep);
  const auto d = static_cast<Eigen::Index>(rep.dim);
  Generators g{OperatorMatrix::Zero(d, d), OperatorMatrix::Zero(d, d), OperatorMatrix::Zero(d, d)};
  for (Eigen::Index n = 0; n < d; ++n) {
    const double dn = static_cast<double>(n);
    g.k_zero(n, n) = rep.k + dn;
    if (n + 1 < d) g.k_plus(n + 1, n) = std::sqrt((dn + 1.0) * (2.0 * rep.k + dn));
  }
  g.k_minus = g.k_plus.adjoint();
  return g;
}

/// K0^2 - (K+K- + K-K+)/2.
inline OperatorMatrix casimir(const Generators& g) {
  return g.k_zero * g.k_zero - 0.5 * (g.k_plus * g.k_minus + g.k_minus * g.k_plus);
}

/// xi = -(r/2) e^{-i phi}.
inline Complex xi_from_polar(double r, double phi) { return -0.5 * r * std::polar(1.0, -phi); }

/// kappa = xi tanh|xi| / |xi|, the disentangled raising coefficient.
inline Complex kappa_of(Complex xi) {
  const double m = std::abs(xi);
  require(m < 350.0, ErrorKind::range, "|xi| too large for tanh/cosh evaluation");
  if (m == 0.0) return 0.0;
  return xi * (std::tanh(m) / m);
}

inline bool near_boundary(Complex xi) { return std::abs(kappa_of(xi)) >= 1.0 - 1e-6; }

/// (1 - |kappa|^2)^k sum_j sqrt(Gamma(j+2k) / (j! Gamma(2k))) kappa^j |k,j>,
/// renormalized over the truncated basis.
inline FockState perelomov_state(const SU11Rep& rep, Complex xi) {
  validate(rep);
  const Complex kappa = kappa_of(xi);
  const auto d = static_cast<Eigen::Index>(rep.dim);
  CVector amps = CVector::Zero(d);
  const double mod = std::abs(kappa);
  if (mod == 0.0) {
    amps(0) = 1.0;
    return FockState(std::move(amps));
  }
  const double twok = 2.0 * rep.k;
  const double log_pref = rep.k * std::log1p(-mod * mod);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double dj = static_cast<double>(j);
    const double log_mag =
        log_pref + 0.5 * (std::lgamma(dj + twok) - std::lgamma(dj + 1.0) - std::lgamma(twok)) + dj * std::log(mod);
    amps(j) = std::polar(std::exp(log_mag), dj * std::arg(kappa));
  }
  return FockState(std::move(amps)).normalized();
}

/// exp(xi K+ - xi^* K-)|k,0> by matrix exponential.
inline FockState perelomov_by_exponential(const SU11Rep& rep, Complex xi) {
  const Generators g = su11_generators(rep);
  const OperatorMatrix u = matrix_exponential(xi * g.k_plus - std::conj(xi) * g.k_minus);
  return FockState(u.col(0));
}

}  // namespace fockbench::su11

#endif  // FOCKBENCH_SU11_HPP
