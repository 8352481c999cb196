#include <gtest/gtest.h>

#include <random>

#include "fockbench/coherent.hpp"
#include "fockbench/fock.hpp"
#include "oracles.hpp"

using namespace fockbench;

TEST(Ladder, RejectsTinyDimension) {
  EXPECT_THROW(build_ladder(1), Error);
  try {
    build_ladder(0);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_dimension);
  }
}

TEST(Ladder, DimTwoHasSingleEntry) {
  const auto [a, adag] = build_ladder(2);
  EXPECT_EQ(a(0, 1), Complex(1.0, 0.0));
  EXPECT_EQ(a(0, 0), Complex(0.0));
  EXPECT_EQ(a(1, 0), Complex(0.0));
  EXPECT_EQ(a(1, 1), Complex(0.0));
  EXPECT_TRUE(adag.isApprox(a.adjoint()));
}

TEST(Ladder, LowersNumberThree) {
  const auto [a, adag] = build_ladder(4);
  const CVector out = a * FockState::number(4, 3).amps();
  CVector expected = CVector::Zero(4);
  expected(2) = std::sqrt(3.0);
  EXPECT_LT((out - expected).norm(), 1e-15);
}

TEST(Ladder, MatchesEntrywiseOracle) {
  const auto [a, adag] = build_ladder(12);
  EXPECT_EQ((a - oracle::annihilator(12)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Ladder, CanonicalCommutatorOnInterior) {
  for (std::size_t dim : {8u, 16u, 32u, 64u}) {
    const auto [a, adag] = build_ladder(dim);
    const OperatorMatrix c = commutator(a, adag) - OperatorMatrix::Identity(dim, dim);
    EXPECT_LE(interior_max_abs(c, dim - 1), 1e-12) << "dim " << dim;
    // The truncation row is where [a, a^dag] = 1 breaks: entry equals -dim.
    EXPECT_NEAR(c(dim - 1, dim - 1).real(), -static_cast<double>(dim), 1e-12);
  }
}

TEST(Ladder, NumberAlgebra) {
  const std::size_t dim = 24;
  const auto [a, adag] = build_ladder(dim);
  const OperatorMatrix n = number_operator(dim);
  EXPECT_LE(interior_max_abs(commutator(n, a) + a, dim - 1), 1e-14);
  EXPECT_LE(interior_max_abs(commutator(n, adag) - adag, dim - 1), 1e-14);
  EXPECT_TRUE(n.isApprox(adag * a, 1e-15));
}

TEST(Quadratures, Hermitian) {
  const auto [x, p] = build_quadratures(40);
  EXPECT_LE((x - x.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((p - p.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  const OperatorMatrix n = number_operator(40);
  EXPECT_LE((n - n.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Quadratures, NumberStatesHaveZeroMeans) {
  const std::size_t dim = 20;
  const auto [x, p] = build_quadratures(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    const FockState s = FockState::number(dim, n);
    EXPECT_EQ(std::abs(expectation(x, s)), 0.0);
    EXPECT_EQ(std::abs(expectation(p, s)), 0.0);
  }
}

TEST(Quadratures, CanonicalCommutatorOnInterior) {
  const std::size_t dim = 32;
  const auto [x, p] = build_quadratures(dim);
  const OperatorMatrix c = commutator(x, p) - kI * OperatorMatrix::Identity(dim, dim);
  EXPECT_LE(interior_max_abs(c, dim - 1), 1e-12);
}

TEST(Expectation, NumberAndIdentity) {
  const std::size_t dim = 16;
  const OperatorMatrix n = number_operator(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    EXPECT_DOUBLE_EQ(expectation(n, FockState::number(dim, k)).real(), static_cast<double>(k));
  }
  std::mt19937_64 rng(11);
  const FockState s(oracle::random_state(rng, dim, dim));
  EXPECT_NEAR(expectation(OperatorMatrix::Identity(dim, dim), s).real(), 1.0, 1e-14);
}

TEST(Expectation, ShapeMismatchThrows) {
  try {
    expectation(number_operator(8), FockState::number(9, 0));
    FAIL() << "expected a shape error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::shape);
  }
}

TEST(Expectation, CoherentMeanNumber) {
  const auto s = coherent::coherent_ladder({Complex(2.0, 0.0), 64});
  const auto [a, adag] = build_ladder(64);
  EXPECT_NEAR(expectation(adag * a, s).real(), 4.0, 1e-9);
}

TEST(QuadratureReport, NumberStates) {
  for (std::size_t n = 0; n <= 10; ++n) {
    const auto r = quadrature_report(FockState::number(64, n));
    const double expected = (2.0 * n + 1.0) * (2.0 * n + 1.0) / 4.0;
    EXPECT_NEAR(r.product, expected, 1e-10) << "n = " << n;
    EXPECT_FALSE(r.tail_warning);
  }
}

TEST(QuadratureReport, CoherentOnePlusI) {
  const auto r = quadrature_report(coherent::coherent_ladder({Complex(1.0, 1.0), 64}));
  EXPECT_NEAR(r.mean_x, std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(r.mean_p, std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(r.product, 0.25, 1e-8);
}

TEST(QuadratureReport, RejectsUnnormalized) {
  CVector v = CVector::Zero(8);
  v(0) = 0.5;
  try {
    quadrature_report(FockState(v));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_normalized);
  }
}

TEST(QuadratureReport, FlagsTopHeavyState) {
  const auto r = quadrature_report(FockState::number(20, 19));
  EXPECT_TRUE(r.tail_warning);
}

// Heisenberg floor over random states with no weight near the truncation edge.
TEST(QuadratureReport, HeisenbergFloorProperty) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> support(1, 40);
  for (int trial = 0; trial < 1000; ++trial) {
    const FockState s(oracle::random_state(rng, 48, support(rng)));
    const auto r = quadrature_report(s);
    ASSERT_GE(r.product, 0.25 - 1e-9) << "trial " << trial;
  }
}

TEST(PhotonStatistics, NumberStateHasNoVariance) {
  const auto st = photon_statistics(FockState::number(10, 4));
  EXPECT_DOUBLE_EQ(st.mean, 4.0);
  EXPECT_DOUBLE_EQ(st.variance, 0.0);
}
