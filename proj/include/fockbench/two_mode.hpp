#ifndef FOCKBENCH_TWO_MODE_HPP
#define FOCKBENCH_TWO_MODE_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fockbench/config.hpp"
#include "fockbench/error.hpp"
#include "fockbench/fock.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench {

/// Pure state of two modes; amps(na, nb) is the amplitude of |na, nb>.
/// Flattened vectors use row-major order, index na * dim_b + nb.
class TwoModeState {
 public:
  explicit TwoModeState(OperatorMatrix amps) : amps_(std::move(amps)) {
    require(amps_.rows() >= 2 && amps_.cols() >= 2, ErrorKind::invalid_dimension,
            "TwoModeState needs both dims >= 2");
    require(amps_.allFinite(), ErrorKind::numeric, "TwoModeState amplitudes are not finite");
  }

  static TwoModeState from_flat(const CVector& flat, std::size_t dim_a, std::size_t dim_b) {
    require(static_cast<std::size_t>(flat.size()) == dim_a * dim_b, ErrorKind::shape,
            "TwoModeState::from_flat: size mismatch");
    OperatorMatrix m(static_cast<Eigen::Index>(dim_a), static_cast<Eigen::Index>(dim_b));
    for (std::size_t i = 0; i < dim_a; ++i)
      for (std::size_t j = 0; j < dim_b; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = flat(static_cast<Eigen::Index>(i * dim_b + j));
    return TwoModeState(std::move(m));
  }

  static TwoModeState basis(std::size_t dim_a, std::size_t dim_b, std::size_t na, std::size_t nb) {
    require(na < dim_a && nb < dim_b, ErrorKind::invalid_parameter, "basis ket outside the truncation");
    OperatorMatrix m = OperatorMatrix::Zero(static_cast<Eigen::Index>(dim_a), static_cast<Eigen::Index>(dim_b));
    m(static_cast<Eigen::Index>(na), static_cast<Eigen::Index>(nb)) = 1.0;
    return TwoModeState(std::move(m));
  }

  std::size_t dim_a() const { return static_cast<std::size_t>(amps_.rows()); }
  std::size_t dim_b() const { return static_cast<std::size_t>(amps_.cols()); }
  const OperatorMatrix& amps() const { return amps_; }
  Complex operator()(std::size_t na, std::size_t nb) const {
    return amps_(static_cast<Eigen::Index>(na), static_cast<Eigen::Index>(nb));
  }

  CVector flat() const {
    CVector v(amps_.size());
    for (Eigen::Index i = 0; i < amps_.rows(); ++i)
      for (Eigen::Index j = 0; j < amps_.cols(); ++j) v(i * amps_.cols() + j) = amps_(i, j);
    return v;
  }

  double norm_squared() const { return amps_.squaredNorm(); }

  TwoModeState normalized() const {
    const double n = amps_.norm();
    require(n > 0.0, ErrorKind::numeric, "cannot normalize the zero state");
    return TwoModeState(amps_ / n);
  }

  /// Joint photon-number distribution P(na, nb).
  Eigen::MatrixXd joint_distribution() const { return amps_.cwiseAbs2() / norm_squared(); }

  /// Mass in the top `fraction` of either mode's basis.
  double tail_mass(double fraction = Tolerances{}.tail_fraction) const {
    const auto cut_a = amps_.rows() - std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(fraction * amps_.rows())));
    const auto cut_b = amps_.cols() - std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(fraction * amps_.cols())));
    return 1.0 - amps_.topLeftCorner(cut_a, cut_b).squaredNorm() / norm_squared();
  }

 private:
  OperatorMatrix amps_;
};

inline double fidelity(const TwoModeState& u, const TwoModeState& v) {
  require(u.dim_a() == v.dim_a() && u.dim_b() == v.dim_b(), ErrorKind::shape, "two-mode shapes differ");
  return fidelity(u.flat(), v.flat());
}

/// Mode operators on the product space, a1 = a (x) I and a2 = I (x) a.
struct TwoModeOps {
  SparseOperator a1, a1dag, a2, a2dag, n1, n2, identity;
};

inline TwoModeOps build_two_mode_ops(std::size_t dim_a, std::size_t dim_b) {
  require_dim(dim_a);
  require_dim(dim_b);
  const SparseOperator la = build_ladder(dim_a).a.sparseView();
  const SparseOperator lb = build_ladder(dim_b).a.sparseView();
  const SparseOperator ia = sparse_identity(static_cast<Eigen::Index>(dim_a));
  const SparseOperator ib = sparse_identity(static_cast<Eigen::Index>(dim_b));
  TwoModeOps ops;
  ops.a1 = kron(la, ib);
  ops.a2 = kron(ia, lb);
  ops.a1dag = SparseOperator(ops.a1.adjoint());
  ops.a2dag = SparseOperator(ops.a2.adjoint());
  ops.n1 = ops.a1dag * ops.a1;
  ops.n2 = ops.a2dag * ops.a2;
  ops.identity = sparse_identity(static_cast<Eigen::Index>(dim_a * dim_b));
  return ops;
}

/// Per-mode quadrature moments and inter-mode correlations.
struct TwoModeReport {
  double mean_x1 = 0, mean_p1 = 0, mean_x2 = 0, mean_p2 = 0;
  double var_x1 = 0, var_p1 = 0, var_x2 = 0, var_p2 = 0;
  double cov_x1x2 = 0;  // <dx1 dx2>
  double cov_p1p2 = 0;  // <dp1 dp2>
  double mean_n1 = 0, mean_n2 = 0;

  /// <dx1 dx2><dp1 dp2>, the two-mode noise term.
  double noise_term() const { return cov_x1x2 * cov_p1p2; }
};

/// Moments are taken on a space padded by one level per mode so that the
/// second moments see the untruncated a a^dag contribution.
inline TwoModeReport two_mode_report(const TwoModeState& s) {
  const std::size_t da = s.dim_a() + 1, db = s.dim_b() + 1;
  OperatorMatrix padded = OperatorMatrix::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
  padded.topLeftCorner(s.amps().rows(), s.amps().cols()) = s.amps() / s.amps().norm();
  const CVector v = TwoModeState(padded).flat();
  const auto ops = build_two_mode_ops(da, db);
  const double c = std::sqrt(0.5);
  const SparseOperator x1 = c * (ops.a1 + ops.a1dag);
  const SparseOperator x2 = c * (ops.a2 + ops.a2dag);
  const SparseOperator p1 = (-kI * c) * (ops.a1 - ops.a1dag);
  const SparseOperator p2 = (-kI * c) * (ops.a2 - ops.a2dag);
  const CVector x1v = x1 * v, x2v = x2 * v, p1v = p1 * v, p2v = p2 * v;
  TwoModeReport r;
  r.mean_x1 = v.dot(x1v).real();
  r.mean_x2 = v.dot(x2v).real();
  r.mean_p1 = v.dot(p1v).real();
  r.mean_p2 = v.dot(p2v).real();
  r.var_x1 = x1v.squaredNorm() - r.mean_x1 * r.mean_x1;
  r.var_x2 = x2v.squaredNorm() - r.mean_x2 * r.mean_x2;
  r.var_p1 = p1v.squaredNorm() - r.mean_p1 * r.mean_p1;
  r.var_p2 = p2v.squaredNorm() - r.mean_p2 * r.mean_p2;
  r.cov_x1x2 = x1v.dot(x2v).real() - r.mean_x1 * r.mean_x2;
  r.cov_p1p2 = p1v.dot(p2v).real() - r.mean_p1 * r.mean_p2;
  r.mean_n1 = v.dot(ops.n1 * v).real();
  r.mean_n2 = v.dot(ops.n2 * v).real();
  return r;
}

}  // namespace fockbench

#endif  // FOCKBENCH_TWO_MODE_HPP
