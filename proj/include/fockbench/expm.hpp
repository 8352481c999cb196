#ifndef FOCKBENCH_EXPM_HPP
#define FOCKBENCH_EXPM_HPP

#include <array>
#include <cmath>
#include <limits>

#include "fockbench/error.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench {

namespace detail {

inline double one_norm(const OperatorMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

inline double one_norm(const SparseOperator& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    double col = 0.0;
    for (SparseOperator::InnerIterator it(m, k); it; ++it) col += std::abs(it.value());
    worst = std::max(worst, col);
  }
  // Column-major storage: outer index is the column, so `worst` is the 1-norm.
  return worst;
}

// Pade numerators/denominators, Higham (2005) coefficient tables.
inline void pade_terms(const OperatorMatrix& a, int degree, OperatorMatrix& u, OperatorMatrix& v) {
  const auto id = OperatorMatrix::Identity(a.rows(), a.cols());
  const OperatorMatrix a2 = a * a;
  switch (degree) {
    case 3: {
      constexpr std::array<double, 4> b{120., 60., 12., 1.};
      u = a * (b[3] * a2 + b[1] * id);
      v = b[2] * a2 + b[0] * id;
      return;
    }
    case 5: {
      constexpr std::array<double, 6> b{30240., 15120., 3360., 420., 30., 1.};
      const OperatorMatrix a4 = a2 * a2;
      u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
      v = b[4] * a4 + b[2] * a2 + b[0] * id;
      return;
    }
    case 7: {
      constexpr std::array<double, 8> b{17297280., 8648640., 1995840., 277200.,
                                        25200.,    1512.,    56.,      1.};
      const OperatorMatrix a4 = a2 * a2;
      const OperatorMatrix a6 = a4 * a2;
      u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
      v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
      return;
    }
    case 9: {
      constexpr std::array<double, 10> b{17643225600., 8821612800., 2075673600., 302702400.,
                                         30270240.,    2162160.,    110880.,     3960.,
                                         90.,          1.};
      const OperatorMatrix a4 = a2 * a2;
      const OperatorMatrix a6 = a4 * a2;
      const OperatorMatrix a8 = a6 * a2;
      u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
      v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
      return;
    }
    default: {
      constexpr std::array<double, 14> b{
          64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
          129060195264000.,   10559470521600.,    670442572800.,    33522128640.,
          1323241920.,        40840800.,          960960.,          16380.,
          182.,               1.};
      const OperatorMatrix a4 = a2 * a2;
      const OperatorMatrix a6 = a4 * a2;
      OperatorMatrix tmp = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
      tmp += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
      u = a * tmp;
      v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
      v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
      return;
    }
  }
}

}  // namespace detail

/// exp(M) by Pade scaling-and-squaring. The Pade degree and the number of
/// squarings follow the 1-norm thresholds of Higham's 2005 algorithm.
inline OperatorMatrix matrix_exponential(const OperatorMatrix& m) {
  require(m.rows() == m.cols(), ErrorKind::shape, "matrix_exponential: matrix is not square");
  require(m.allFinite(), ErrorKind::numeric, "matrix_exponential: non-finite entries");
  if (m.size() == 0) return m;

  constexpr std::array<std::pair<int, double>, 4> small{{
      {3, 1.495585217958292e-2},
      {5, 2.539398330063230e-1},
      {7, 9.504178996162932e-1},
      {9, 2.097847961257068e0},
  }};
  constexpr double theta13 = 5.371920351148152;

  const double norm = detail::one_norm(m);
  OperatorMatrix u, v;
  for (const auto& [degree, theta] : small) {
    if (norm <= theta) {
      detail::pade_terms(m, degree, u, v);
      return (v - u).partialPivLu().solve(v + u);
    }
  }

  int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
  const OperatorMatrix scaled = m / std::ldexp(1.0, squarings);
  detail::pade_terms(scaled, 13, u, v);
  OperatorMatrix result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = (result * result).eval();
  require(result.allFinite(), ErrorKind::range, "matrix_exponential: overflow");
  return result;
}

/// exp(M) * B without forming exp(M). Truncated Taylor series applied in
/// steps of 1-norm at most one; M may be dense or sparse.
template <class Op>
Eigen::MatrixXcd expm_apply(const Op& m, Eigen::MatrixXcd block) {
  require(m.rows() == m.cols() && m.cols() == block.rows(), ErrorKind::shape,
          "expm_apply: operator and block shapes differ");
  const double norm = detail::one_norm(m);
  if (norm == 0.0) return block;
  const int steps = std::max(1, static_cast<int>(std::ceil(norm)));
  const double eps = std::numeric_limits<double>::epsilon();
  for (int s = 0; s < steps; ++s) {
    Eigen::MatrixXcd term = block;
    Eigen::MatrixXcd sum = block;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 64; ++k) {
      term = (m * term).eval() / (static_cast<double>(steps) * k);
      sum += term;
      const double tn = term.cwiseAbs().maxCoeff();
      const double sn = sum.cwiseAbs().maxCoeff();
      if (tn + prev <= eps * sn) break;
      prev = tn;
    }
    block = std::move(sum);
    require(block.allFinite(), ErrorKind::range, "expm_apply: overflow");
  }
  return block;
}

template <class Op>
CVector expm_apply(const Op& m, const CVector& v) {
  Eigen::MatrixXcd block = v;
  return expm_apply(m, std::move(block)).col(0);
}

}  // namespace fockbench

#endif  // FOCKBENCH_EXPM_HPP
