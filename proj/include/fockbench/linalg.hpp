#ifndef FOCKBENCH_LINALG_HPP
#define FOCKBENCH_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "fockbench/error.hpp"

namespace fockbench {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Dense complex matrix acting on a truncated Fock space.
using OperatorMatrix = Eigen::MatrixXcd;

/// Sparse operator, used for two-mode spaces where dense storage is wasteful.
using SparseOperator = Eigen::SparseMatrix<Complex>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

template <class A, class B>
auto commutator(const A& lhs, const B& rhs) {
  return (lhs * rhs - rhs * lhs).eval();
}

/// Largest entry modulus of the leading `interior` x `interior` block.
template <class Derived>
double interior_max_abs(const Eigen::MatrixBase<Derived>& m, Eigen::Index interior) {
  interior = std::min({interior, m.rows(), m.cols()});
  if (interior <= 0) return 0.0;
  return m.topLeftCorner(interior, interior).cwiseAbs().maxCoeff();
}

/// Largest entry modulus over the index set `keep` (rows and columns).
inline double block_max_abs(const OperatorMatrix& m, const std::vector<Eigen::Index>& keep) {
  double worst = 0.0;
  for (Eigen::Index r : keep) {
    for (Eigen::Index c : keep) worst = std::max(worst, std::abs(m(r, c)));
  }
  return worst;
}

/// |<u|v>|^2 / (<u|u><v|v>), insensitive to global phase and scale.
inline double fidelity(const CVector& u, const CVector& v) {
  require(u.size() == v.size(), ErrorKind::shape, "fidelity: vector sizes differ");
  const double nu = u.squaredNorm();
  const double nv = v.squaredNorm();
  require(nu > 0.0 && nv > 0.0, ErrorKind::numeric, "fidelity: zero vector");
  return std::norm(u.dot(v)) / (nu * nv);
}

/// Kronecker product of two sparse operators, row-major on (i, j) -> i * dim_b + j.
inline SparseOperator kron(const SparseOperator& lhs, const SparseOperator& rhs) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(lhs.nonZeros() * rhs.nonZeros()));
  for (int ka = 0; ka < lhs.outerSize(); ++ka) {
    for (SparseOperator::InnerIterator ia(lhs, ka); ia; ++ia) {
      for (int kb = 0; kb < rhs.outerSize(); ++kb) {
        for (SparseOperator::InnerIterator ib(rhs, kb); ib; ++ib) {
          triplets.emplace_back(ia.row() * rhs.rows() + ib.row(), ia.col() * rhs.cols() + ib.col(),
                                ia.value() * ib.value());
        }
      }
    }
  }
  SparseOperator out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

inline SparseOperator sparse_identity(Eigen::Index dim) {
  SparseOperator id(dim, dim);
  id.setIdentity();
  return id;
}

inline bool all_finite(const OperatorMatrix& m) { return m.allFinite(); }

}  // namespace fockbench

#endif  // FOCKBENCH_LINALG_HPP
