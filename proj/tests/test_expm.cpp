#include <gtest/gtest.h>

#include <random>

#include "fockbench/expm.hpp"
#include "fockbench/fock.hpp"
#include "oracles.hpp"

using namespace fockbench;

namespace {

double rel_err(const OperatorMatrix& got, const OperatorMatrix& want) {
  return (got - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff();
}

OperatorMatrix random_matrix(std::mt19937_64& rng, int dim, double norm) {
  std::normal_distribution<double> g(0.0, 1.0);
  OperatorMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m * (norm / m.cwiseAbs().colwise().sum().maxCoeff());
}

}  // namespace

TEST(MatrixExponential, ZeroGivesIdentity) {
  const OperatorMatrix e = matrix_exponential(OperatorMatrix::Zero(6, 6));
  EXPECT_EQ((e - OperatorMatrix::Identity(6, 6)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MatrixExponential, Diagonal) {
  CVector d(5);
  d << Complex(0.3, 0.0), Complex(-2.0, 1.0), Complex(0.0, 3.0), Complex(5.0, 0.0), Complex(-7.5, -0.5);
  const OperatorMatrix e = matrix_exponential(d.asDiagonal());
  for (int i = 0; i < 5; ++i) EXPECT_LE(std::abs(e(i, i) - std::exp(d(i))), 1e-12 * std::abs(std::exp(d(i))));
  EXPECT_LE((e - OperatorMatrix(e.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
}

// Norms spanning every Pade branch, checked against the Taylor reference.
TEST(MatrixExponential, MatchesTaylorReference) {
  std::mt19937_64 rng(5);
  for (double norm : {0.01, 0.2, 0.9, 2.0, 5.0, 12.0}) {
    const OperatorMatrix m = random_matrix(rng, 12, norm);
    EXPECT_LE(rel_err(matrix_exponential(m), oracle::taylor_expm(m)), 1e-10) << "norm " << norm;
  }
}

TEST(MatrixExponential, LargeNormAntiHermitian) {
  // Unitary evolution generators of norm up to 50; reference is the
  // eigen-decomposition of the Hermitian part.
  std::mt19937_64 rng(9);
  OperatorMatrix h = random_matrix(rng, 16, 1.0);
  h = (h + h.adjoint()).eval();
  h *= 50.0 / h.cwiseAbs().colwise().sum().maxCoeff();
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(h);
  const OperatorMatrix ref =
      es.eigenvectors() * (kI * es.eigenvalues().cast<Complex>()).array().exp().matrix().asDiagonal() *
      es.eigenvectors().adjoint();
  EXPECT_LE(rel_err(matrix_exponential(kI * h), ref), 1e-10);
  EXPECT_LE(rel_err(matrix_exponential(kI * h), oracle::taylor_expm(kI * h, 60)), 1e-10);
}

TEST(MatrixExponential, InverseIdentity) {
  const auto [x, p] = build_quadratures(16);
  const OperatorMatrix m = kI * kPi * x;
  const OperatorMatrix prod = matrix_exponential(m) * matrix_exponential(-m);
  EXPECT_LE(interior_max_abs(prod - OperatorMatrix::Identity(16, 16), 15), 1e-10);
}

TEST(MatrixExponential, CommutingGroupLaw) {
  const auto [a, adag] = build_ladder(20);
  const OperatorMatrix n = adag * a;
  const OperatorMatrix A = Complex(0.3, 1.1) * n;
  const OperatorMatrix B = Complex(-0.2, 0.4) * n * n / 10.0;
  ASSERT_LE(commutator(A, B).cwiseAbs().maxCoeff(), 1e-12);
  const OperatorMatrix lhs = matrix_exponential(A) * matrix_exponential(B);
  EXPECT_LE(rel_err(lhs, matrix_exponential(A + B)), 1e-10);
}

TEST(MatrixExponential, NonFiniteRejected) {
  OperatorMatrix m = OperatorMatrix::Zero(3, 3);
  m(1, 2) = std::numeric_limits<double>::quiet_NaN();
  try {
    matrix_exponential(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::numeric);
  }
}

TEST(ExpmApply, AgreesWithDenseExponential) {
  std::mt19937_64 rng(17);
  for (double norm : {0.5, 4.0, 30.0}) {
    const OperatorMatrix m = random_matrix(rng, 14, norm);
    const Eigen::MatrixXcd block = random_matrix(rng, 14, 1.0).leftCols(3);
    const Eigen::MatrixXcd got = expm_apply(m, block);
    const Eigen::MatrixXcd want = oracle::taylor_expm(m) * block;
    EXPECT_LE((got - want).cwiseAbs().maxCoeff() / want.cwiseAbs().maxCoeff(), 1e-10) << norm;
  }
}

TEST(ExpmApply, SparseOperator) {
  const auto [a, adag] = build_ladder(30);
  const OperatorMatrix g = Complex(0.8, 0.1) * adag - Complex(0.8, -0.1) * a;
  const SparseOperator gs = g.sparseView();
  const CVector v = FockState::number(30, 0).amps();
  EXPECT_LE((expm_apply(gs, v) - matrix_exponential(g) * v).norm(), 1e-12);
}
