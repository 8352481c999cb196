#ifndef FOCKBENCH_PHASE_HPP
#define FOCKBENCH_PHASE_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fockbench/config.hpp"
#include "fockbench/error.hpp"
#include "fockbench/expm.hpp"
#include "fockbench/fock.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench::phase {

/// Susskind-Glogower exponential-phase operators and their Hermitian parts.
struct PhaseOperatorSet {
  std::size_t dim = 0;
  OperatorMatrix gamma_minus;  // (N+1)^{-1/2} a, shifts |n> -> |n-1>
  OperatorMatrix gamma_plus;   // a^dag (N+1)^{-1/2}, shifts |n> -> |n+1>
  OperatorMatrix cos_phi;
  OperatorMatrix sin_phi;
};

inline void require_phase_dim(std::size_t dim) {
  require(dim >= 3, ErrorKind::invalid_dimension, "phase operators need dim >= 3, got " + std::to_string(dim));
}

inline PhaseOperatorSet build_phase_set(std::size_t dim) {
  require_phase_dim(dim);
  const auto [a, adag] = build_ladder(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::VectorXd inv_sqrt(d);
  for (Eigen::Index n = 0; n < d; ++n) inv_sqrt(n) = 1.0 / std::sqrt(static_cast<double>(n) + 1.0);
  PhaseOperatorSet s;
  s.dim = dim;
  s.gamma_minus = inv_sqrt.asDiagonal() * a;
  s.gamma_plus = adag * inv_sqrt.asDiagonal();
  s.cos_phi = 0.5 * (s.gamma_plus + s.gamma_minus);
  // (G+ - G-)/(2i) keeps sin Hermitian.
  s.sin_phi = (s.gamma_plus - s.gamma_minus) / (2.0 * kI);
  return s;
}

struct NumberPhaseUncertainty {
  double dcos_dn = 0.0;    // (d cos) (d N)
  double bound_sin = 0.0;  // |<sin>| / 2
  double dsin_dn = 0.0;    // (d sin) (d N)
  double bound_cos = 0.0;  // |<cos>| / 2

  bool holds(double slack = 1e-12) const {
    return dcos_dn + slack >= bound_sin && dsin_dn + slack >= bound_cos;
  }
};

/// Both number-phase inequalities for a normalized state. Moments are taken
/// with one padding level so the second moments of cos and sin are untruncated.
inline NumberPhaseUncertainty number_phase_uncertainty(const FockState& s, const Tolerances& tol = {}) {
  require_normalized(s.norm_squared(), tol);
  CVector v = CVector::Zero(static_cast<Eigen::Index>(s.dim() + 1));
  v.head(s.amps().size()) = s.amps();
  const auto set = build_phase_set(s.dim() + 1);
  const OperatorMatrix n = number_operator(s.dim() + 1);
  const auto moments = [&v](const OperatorMatrix& op) {
    const CVector w = op * v;
    const double mean = v.dot(w).real();
    return std::pair{mean, std::max(0.0, w.squaredNorm() - mean * mean)};
  };
  const auto [mean_c, var_c] = moments(set.cos_phi);
  const auto [mean_s, var_s] = moments(set.sin_phi);
  const auto [mean_n, var_n] = moments(n);
  (void)mean_n;
  const double dn = std::sqrt(var_n);
  return {std::sqrt(var_c) * dn, 0.5 * std::abs(mean_s), std::sqrt(var_s) * dn, 0.5 * std::abs(mean_c)};
}

struct ROps {
  OperatorMatrix r_plus;   // |n> -> (n+1)|n+1>
  OperatorMatrix r_minus;  // |n> -> n|n-1>
};

/// R+ = N G+ and R- = G- N. The mirrored factorizations G+(N+1) and (N+1)G-
/// are checked to agree.
inline ROps build_R_ops(std::size_t dim) {
  const auto set = build_phase_set(dim);
  const OperatorMatrix n = number_operator(dim);
  const OperatorMatrix id = OperatorMatrix::Identity(n.rows(), n.cols());
  ROps r{n * set.gamma_plus, set.gamma_minus * n};
  require((r.r_plus - set.gamma_plus * (n + id)).cwiseAbs().maxCoeff() <= 1e-12 &&
              (r.r_minus - (n + id) * set.gamma_minus).cwiseAbs().maxCoeff() <= 1e-12,
          ErrorKind::numeric, "R factorizations disagree");
  return r;
}

struct OmegaLadder {
  int m = 1;
  std::size_t dim = 0;
  OperatorMatrix omega_minus;  // |n> -> n|n-m>
  OperatorMatrix omega_plus;   // |n> -> (n+m)|n+m>
};

/// Omega- = (G-)^m N with Omega+ its adjoint. The factorization (N+m)(G-)^m is
/// checked to agree.
inline OmegaLadder build_omega_ops(int m, std::size_t dim) {
  require_phase_dim(dim);
  require(m >= 1 && static_cast<std::size_t>(m) <= dim / 4, ErrorKind::invalid_parameter,
          "invalid order: m must lie in [1, dim/4], got " + std::to_string(m));
  const auto set = build_phase_set(dim);
  const OperatorMatrix n = number_operator(dim);
  const OperatorMatrix id = OperatorMatrix::Identity(n.rows(), n.cols());
  OperatorMatrix gm = id;
  for (int i = 0; i < m; ++i) gm = gm * set.gamma_minus;
  OmegaLadder o{m, dim, gm * n, OperatorMatrix()};
  o.omega_plus = o.omega_minus.adjoint();
  require((o.omega_minus - (n + static_cast<double>(m) * id) * gm).cwiseAbs().maxCoeff() <= 1e-12,
          ErrorKind::numeric, "Omega factorizations disagree");
  return o;
}

/// Rows clear of the m-step truncation edge.
inline Eigen::Index ladder_interior(int m, std::size_t dim) {
  return static_cast<Eigen::Index>(dim) - static_cast<Eigen::Index>(m);
}

/// Basis kets on which [Omega-, Omega+] = m(2N + m) holds: |0> and m <= n < dim - m.
/// Kets 0 < n < m are extra lowest weights (Omega- kills them), where the
/// commutator is (n+m)^2 instead; see omega_commutator_defect.
inline std::vector<Eigen::Index> omega_algebra_rows(int m, std::size_t dim) {
  std::vector<Eigen::Index> rows{0};
  for (Eigen::Index n = m; n < ladder_interior(m, dim); ++n) rows.push_back(n);
  return rows;
}

/// [Omega-, Omega+] - m(2N + m) restricted to the low kets: n^2 on 0 < n < m.
inline RVector omega_commutator_defect(const OmegaLadder& o) {
  const auto d = static_cast<Eigen::Index>(o.dim);
  const OperatorMatrix n = number_operator(o.dim);
  const OperatorMatrix id = OperatorMatrix::Identity(d, d);
  const OperatorMatrix c = commutator(o.omega_minus, o.omega_plus) - o.m * (2.0 * n + o.m * id);
  return c.diagonal().head(o.m).real();
}

/// Kets m*j below dim/4: the sublattice reached from the vacuum, away from the edge.
inline std::vector<Eigen::Index> vacuum_sublattice(int m, std::size_t dim) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index n = 0; n < static_cast<Eigen::Index>(dim / 4); n += m) rows.push_back(n);
  return rows;
}

struct PhaseSqueeze {
  OperatorMatrix unitary;
  FockState state;
};

/// U = exp(alpha Omega+ - alpha^* Omega-) with alpha = (r/m) e^{i phi}; the
/// state is U|0>.
inline PhaseSqueeze phase_squeeze_unitary(double r, double phi, int m, std::size_t dim) {
  require(std::isfinite(r) && std::isfinite(phi), ErrorKind::invalid_parameter, "r and phi must be finite");
  require(std::abs(r) < 350.0, ErrorKind::range, "r too large: cosh overflows");
  const OmegaLadder o = build_omega_ops(m, dim);
  const Complex alpha = std::polar(r / static_cast<double>(m), phi);
  OperatorMatrix u = matrix_exponential(alpha * o.omega_plus - std::conj(alpha) * o.omega_minus);
  CVector v = u.col(0);
  return {std::move(u), FockState(std::move(v))};
}

/// (1 - beta^2)^{1/2} sum_n (beta e^{i phi})^n |m n>, beta = tanh r.
inline FockState phase_squeezed_closed_form(double r, double phi, int m, std::size_t dim) {
  require_phase_dim(dim);
  require(m >= 1, ErrorKind::invalid_parameter, "invalid order: m must be >= 1");
  const double beta = std::tanh(r);
  const Complex step = std::polar(beta, phi);
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(dim));
  Complex c = std::sqrt(1.0 - beta * beta);
  for (std::size_t k = 0; k < dim; k += static_cast<std::size_t>(m)) {
    amps(static_cast<Eigen::Index>(k)) = c;
    c *= step;
  }
  return FockState(std::move(amps)).normalized();
}

/// Disentangled form exp(kappa Omega+/m) (1 - beta^2)^{N/m + 1/2} exp(-kappa^* Omega-/m),
/// kappa = beta e^{i phi}. The middle factor is diagonal in the number basis.
inline OperatorMatrix phase_squeeze_disentangled(double r, double phi, int m, std::size_t dim) {
  const OmegaLadder o = build_omega_ops(m, dim);
  const double beta = std::tanh(r);
  const Complex kappa = std::polar(beta, phi);
  const double dm = static_cast<double>(m);
  const auto d = static_cast<Eigen::Index>(dim);
  CVector middle(d);
  const double log_c = std::log1p(-beta * beta);
  for (Eigen::Index n = 0; n < d; ++n) middle(n) = std::exp(log_c * (static_cast<double>(n) / dm + 0.5));
  return matrix_exponential((kappa / dm) * o.omega_plus) * middle.asDiagonal() *
         matrix_exponential((-std::conj(kappa) / dm) * o.omega_minus);
}

}  // namespace fockbench::phase

#endif  // FOCKBENCH_PHASE_HPP
