#ifndef FOCKBENCH_TWO_MODE_SQUEEZING_HPP
#define FOCKBENCH_TWO_MODE_SQUEEZING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "fockbench/error.hpp"
#include "fockbench/expm.hpp"
#include "fockbench/grid.hpp"
#include "fockbench/linalg.hpp"
#include "fockbench/two_mode.hpp"

namespace fockbench::squeezing {

/// exp(z0 K0 + z+ K+ + z- K-) = exp(g+ K+) exp(ln(g0) K0) exp(g- K-).
struct DisentangleCoeffs {
  Complex gamma0;
  Complex gamma_plus;
  Complex gamma_minus;
  Complex theta_sq;  // z0^2/4 - z+ z-
  Complex base;      // cosh t - z0 sinh(t) / (2t); g0 = base^{-2}
};

namespace detail {

/// cosh(t) and sinh(t)/t as functions of t^2, so that neither the branch of
/// sqrt(t^2) nor t -> 0 matters.
inline std::pair<Complex, Complex> even_cosh_sinhc(Complex t2) {
  if (std::abs(t2) < 1e-6) {
    Complex c = 1.0, s = 1.0, term_c = 1.0, term_s = 1.0;
    for (int k = 1; k < 8; ++k) {
      term_c *= t2 / static_cast<double>((2 * k - 1) * (2 * k));
      term_s *= t2 / static_cast<double>((2 * k) * (2 * k + 1));
      c += term_c;
      s += term_s;
    }
    return {c, s};
  }
  const Complex t = std::sqrt(t2);
  return {std::cosh(t), std::sinh(t) / t};
}

}  // namespace detail

inline DisentangleCoeffs su11_disentangle_general(Complex zeta0, Complex zeta_plus, Complex zeta_minus) {
  const Complex t2 = 0.25 * zeta0 * zeta0 - zeta_plus * zeta_minus;
  const auto [c, s] = detail::even_cosh_sinhc(t2);
  const Complex base = c - 0.5 * zeta0 * s;
  if (!(std::abs(base) > 1e-12) || !std::isfinite(std::abs(base))) {
    std::ostringstream msg;
    msg << "disentanglement singularity: 2t cosh t - z0 sinh t vanishes at t = " << std::sqrt(t2);
    throw Error(ErrorKind::singularity, msg.str());
  }
  return {1.0 / (base * base), zeta_plus * s / base, zeta_minus * s / base, t2, base};
}

/// Two-boson realization K+ = a1^dag a2^dag, K- = a1 a2, K0 = (N1 + N2 + 1)/2.
struct PairGenerators {
  SparseOperator k_plus, k_minus, k_zero;
};

inline PairGenerators pair_generators(std::size_t dim_a, std::size_t dim_b) {
  const auto ops = build_two_mode_ops(dim_a, dim_b);
  return {ops.a1dag * ops.a2dag, ops.a1 * ops.a2, 0.5 * (ops.n1 + ops.n2 + ops.identity)};
}

/// Kets |n1, n2> with n1 < dim_a/4 and n2 < dim_b/4, as flat indices.
inline std::vector<Eigen::Index> low_occupation_window(std::size_t dim_a, std::size_t dim_b) {
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < dim_a / 4; ++i)
    for (std::size_t j = 0; j < dim_b / 4; ++j) idx.push_back(static_cast<Eigen::Index>(i * dim_b + j));
  return idx;
}

/// Max entry difference between the two sides of the disentangling identity
/// on the low-occupation window, with the left side by exponential action.
inline double disentangle_residual(Complex zeta0, Complex zeta_plus, Complex zeta_minus, std::size_t dim) {
  const auto g = pair_generators(dim, dim);
  const auto coeffs = su11_disentangle_general(zeta0, zeta_plus, zeta_minus);
  const auto window = low_occupation_window(dim, dim);
  const auto n = static_cast<Eigen::Index>(dim * dim);
  Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(n, static_cast<Eigen::Index>(window.size()));
  for (std::size_t k = 0; k < window.size(); ++k) cols(window[k], static_cast<Eigen::Index>(k)) = 1.0;

  const SparseOperator gen = zeta0 * g.k_zero + zeta_plus * g.k_plus + zeta_minus * g.k_minus;
  const Eigen::MatrixXcd lhs = expm_apply(gen, cols);

  // base^{-2 K0} = base^{-(N1 + N2 + 1)} is diagonal.
  Eigen::MatrixXcd rhs = expm_apply(SparseOperator(coeffs.gamma_minus * g.k_minus), cols);
  const Complex log_base = std::log(coeffs.base);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double occupancy = 2.0 * g.k_zero.coeff(i, i).real();
    rhs.row(i) *= std::exp(-occupancy * log_base);
  }
  rhs = expm_apply(SparseOperator(coeffs.gamma_plus * g.k_plus), rhs);

  double worst = 0.0;
  for (Eigen::Index r : window)
    for (Eigen::Index c = 0; c < cols.cols(); ++c) worst = std::max(worst, std::abs(lhs(r, c) - rhs(r, c)));
  return worst;
}

/// exp((s/2)(a1 a2 - a1^dag a2^dag))|0,0> by exponential action.
inline TwoModeState two_mode_squeezed_vacuum(double s, std::size_t dim_a, std::size_t dim_b) {
  require(std::isfinite(s), ErrorKind::invalid_parameter, "s must be finite");
  require(std::abs(s) < 700.0, ErrorKind::range, "s too large: cosh overflows");
  const auto ops = build_two_mode_ops(dim_a, dim_b);
  const SparseOperator gen = (0.5 * s) * (ops.a1 * ops.a2 - ops.a1dag * ops.a2dag);
  const CVector start = TwoModeState::basis(dim_a, dim_b, 0, 0).flat();
  return TwoModeState::from_flat(expm_apply(gen, start), dim_a, dim_b);
}

struct SchmidtProfile {
  double off_diagonal_mass = 0.0;
  std::vector<double> ratios;  // |amps(n+1,n+1) / amps(n,n)| for n below the window edge
  double ratio_spread = 0.0;   // max - min over `ratios`
};

/// Schmidt structure of a pair state on |n, n>; ratios are taken for n < min(dims)/2.
inline SchmidtProfile schmidt_profile(const TwoModeState& st) {
  SchmidtProfile p;
  const auto& m = st.amps();
  const double total = m.squaredNorm();
  const Eigen::Index k = std::min(m.rows(), m.cols());
  double diag = 0.0;
  for (Eigen::Index n = 0; n < k; ++n) diag += std::norm(m(n, n));
  p.off_diagonal_mass = std::max(0.0, total - diag) / total;
  for (Eigen::Index n = 0; n + 1 < k / 2; ++n) {
    if (std::abs(m(n, n)) == 0.0) break;
    p.ratios.push_back(std::abs(m(n + 1, n + 1) / m(n, n)));
  }
  if (!p.ratios.empty()) {
    const auto [lo, hi] = std::minmax_element(p.ratios.begin(), p.ratios.end());
    p.ratio_spread = *hi - *lo;
  }
  return p;
}

/// |0_Theta> = exp(a1^dag a2^dag tanh Theta)|0,0> / cosh Theta, renormalized.
inline TwoModeState two_mode_theta_vacuum(double big_theta, std::size_t dim_a, std::size_t dim_b) {
  require(std::isfinite(big_theta), ErrorKind::invalid_parameter, "Theta must be finite");
  require(std::abs(big_theta) < 350.0, ErrorKind::range, "Theta too large: cosh overflows");
  OperatorMatrix m = OperatorMatrix::Zero(static_cast<Eigen::Index>(dim_a), static_cast<Eigen::Index>(dim_b));
  const double t = std::tanh(big_theta);
  double c = 1.0 / std::cosh(big_theta);
  for (Eigen::Index n = 0; n < std::min(m.rows(), m.cols()); ++n) {
    m(n, n) = c;
    c *= t;
  }
  return TwoModeState(std::move(m)).normalized();
}

struct NoiseReport {
  TwoModeReport moments;
  double cross = 0.0;             // <dx1 dx2><dp1 dp2>, signed
  double margin_signed = 0.0;     // min_k var_xk var_pk - 1/4 - cross
  double margin_magnitude = 0.0;  // same with |cross|
};

/// Per-mode uncertainty against the two-mode noise term.
inline NoiseReport noise_report(const TwoModeState& s) {
  NoiseReport r;
  r.moments = two_mode_report(s);
  r.cross = r.moments.noise_term();
  const double prod = std::min(r.moments.var_x1 * r.moments.var_p1, r.moments.var_x2 * r.moments.var_p2);
  r.margin_signed = prod - 0.25 - r.cross;
  r.margin_magnitude = prod - 0.25 - std::abs(r.cross);
  return r;
}

struct LambdaOps {
  SparseOperator plus, minus, plus_dag, minus_dag;
};

/// Lambda_pm = (a1 pm i a2) / sqrt(2).
inline LambdaOps lambda_ops(std::size_t dim_a, std::size_t dim_b) {
  const auto ops = build_two_mode_ops(dim_a, dim_b);
  const double c = std::sqrt(0.5);
  LambdaOps l;
  l.plus = c * (ops.a1 + kI * ops.a2);
  l.minus = c * (ops.a1 - kI * ops.a2);
  l.plus_dag = SparseOperator(l.plus.adjoint());
  l.minus_dag = SparseOperator(l.minus.adjoint());
  return l;
}

struct LambdaFactorization {
  double commutator_residual = 0.0;  // [L+, L-^dag] = 0 and [L_pm, L_pm^dag] = I on the window
  double vacuum_residual = 0.0;      // ||L_pm |0,0>||
  double fidelity_defect = 0.0;      // 1 - F(theta vacuum, product of single-mode squeezes)
};

/// The theta vacuum rebuilt as exp((i/2) t L+^dag^2) exp(-(i/2) t L-^dag^2)|0,0>,
/// a product of two single-mode squeezes in the Lambda modes.
inline TwoModeState lambda_product_state(double big_theta, std::size_t dim_a, std::size_t dim_b) {
  const auto l = lambda_ops(dim_a, dim_b);
  const double t = std::tanh(big_theta);
  const SparseOperator sq_plus = (0.5 * kI * t) * (l.plus_dag * l.plus_dag);
  const SparseOperator sq_minus = (-0.5 * kI * t) * (l.minus_dag * l.minus_dag);
  CVector v = TwoModeState::basis(dim_a, dim_b, 0, 0).flat();
  v = expm_apply(sq_minus, v);
  v = expm_apply(sq_plus, v);
  return TwoModeState::from_flat(v, dim_a, dim_b).normalized();
}

inline LambdaFactorization lambda_mode_factorization(double big_theta, std::size_t dim_a, std::size_t dim_b) {
  const auto l = lambda_ops(dim_a, dim_b);
  // Commutators are checked on kets with n < dim/2 in each mode, clear of the edge.
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < dim_a / 2; ++i)
    for (std::size_t j = 0; j < dim_b / 2; ++j) rows.push_back(static_cast<Eigen::Index>(i * dim_b + j));
  const auto id = sparse_identity(static_cast<Eigen::Index>(dim_a * dim_b));
  const OperatorMatrix c1 = OperatorMatrix(l.plus * l.minus_dag - l.minus_dag * l.plus);
  const OperatorMatrix c2 = OperatorMatrix(l.plus * l.plus_dag - l.plus_dag * l.plus - id);
  const OperatorMatrix c3 = OperatorMatrix(l.minus * l.minus_dag - l.minus_dag * l.minus - id);
  LambdaFactorization f;
  f.commutator_residual = std::max({block_max_abs(c1, rows), block_max_abs(c2, rows), block_max_abs(c3, rows)});
  const CVector vac = TwoModeState::basis(dim_a, dim_b, 0, 0).flat();
  f.vacuum_residual = std::max((l.plus * vac).norm(), (l.minus * vac).norm());
  f.fidelity_defect =
      1.0 - fidelity(two_mode_theta_vacuum(big_theta, dim_a, dim_b), lambda_product_state(big_theta, dim_a, dim_b));
  return f;
}

/// Separated solutions of the first-order two-mode condition with
/// f(x1) = -x1 and g(x2) = -x2.
struct GeneralizedFactorSolution {
  double mu = 1.0;  // cosh Theta
  double nu = 0.0;  // -sinh Theta
  double c = 0.0;
  GridWavefunction phi_part;
  GridWavefunction chi_part;
  bool phi_normalizable = false;
  bool chi_normalizable = false;
  double pde_residual = 0.0;  // max |L psi| / |psi| over interior grid points
};

namespace detail {

/// Fourth-order centered first derivative; the two points at each end are left at zero.
inline CVector five_point_derivative(const CVector& f, double dx) {
  CVector d = CVector::Zero(f.size());
  for (Eigen::Index i = 2; i + 2 < f.size(); ++i)
    d(i) = (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) / (12.0 * dx);
  return d;
}

/// A Gaussian factor decays iff log|f| is concave; sampled at the grid center.
inline bool decays(const CVector& f, double dx) {
  const Eigen::Index m = f.size() / 2;
  const double curv =
      (std::log(std::abs(f(m + 1))) - 2.0 * std::log(std::abs(f(m))) + std::log(std::abs(f(m - 1)))) / (dx * dx);
  return curv < 0.0;
}

}  // namespace detail

inline GeneralizedFactorSolution generalized_condition_solution(double big_theta, double c, const Grid& g1,
                                                                const Grid& g2) {
  require(std::isfinite(big_theta) && std::isfinite(c), ErrorKind::invalid_parameter, "Theta and c must be finite");
  require(std::abs(big_theta) >= 0.1, ErrorKind::invalid_parameter,
          "|Theta| must be >= 0.1: the chi equation degenerates as Theta -> 0");
  const double mu = std::cosh(big_theta), nu = -std::sinh(big_theta);
  require(mu + nu > 0.0, ErrorKind::invalid_parameter, "mu + nu must be positive");

  CVector phi(static_cast<Eigen::Index>(g1.n_points)), chi(static_cast<Eigen::Index>(g2.n_points));
  for (std::size_t i = 0; i < g1.n_points; ++i) {
    const double x = g1.x(i);
    phi(static_cast<Eigen::Index>(i)) = std::exp((c * x - (mu + nu) * x * x / 2.0) / mu);
  }
  for (std::size_t i = 0; i < g2.n_points; ++i) {
    const double x = g2.x(i);
    chi(static_cast<Eigen::Index>(i)) = std::exp((c * x - (mu - nu) * x * x / 2.0) / nu);
  }

  // L = mu (x1 + d1 - x2) + nu (x2 - d2 + x1); on psi = phi chi,
  // L psi / psi = mu (x1 + phi'/phi - x2) + nu (x2 - chi'/chi + x1).
  const CVector dphi = detail::five_point_derivative(phi, g1.dx);
  const CVector dchi = detail::five_point_derivative(chi, g2.dx);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < g1.n_points; ++i) {
    const double x1 = g1.x(i);
    const Complex a = mu * (x1 + dphi(static_cast<Eigen::Index>(i)) / phi(static_cast<Eigen::Index>(i))) + nu * x1;
    for (std::size_t j = 2; j + 2 < g2.n_points; ++j) {
      const double x2 = g2.x(j);
      const Complex b = -mu * x2 + nu * (x2 - dchi(static_cast<Eigen::Index>(j)) / chi(static_cast<Eigen::Index>(j)));
      worst = std::max(worst, std::abs(a + b));
    }
  }

  GeneralizedFactorSolution s{mu,
                              nu,
                              c,
                              GridWavefunction(g1, phi),
                              GridWavefunction(g2, chi),
                              detail::decays(phi, g1.dx),
                              detail::decays(chi, g2.dx),
                              worst};
  return s;
}

}  // namespace fockbench::squeezing

#endif  // FOCKBENCH_TWO_MODE_SQUEEZING_HPP
