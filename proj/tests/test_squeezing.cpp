#include <gtest/gtest.h>

#include "fockbench/coherent.hpp"
#include "fockbench/squeezing.hpp"
#include "oracles.hpp"

using namespace fockbench;
using namespace fockbench::squeezing;

namespace {

// Even-ket amplitudes of S|0> by the two-term recurrence that a S|0> = -e^{i phi} tanh(r) a^dag S|0>
// forces: c_{2j+2} sqrt((2j+1)(2j+2)) = e^{i phi} tanh(r) sqrt(2j+1) c_{2j}.
CVector recurrence_squeezed(double r, double phi, int dim) {
  CVector v = CVector::Zero(dim);
  v(0) = 1.0;
  const Complex t = std::polar(std::tanh(r), phi);
  for (int n = 0; n + 2 < dim; n += 2) v(n + 2) = v(n) * t * std::sqrt((n + 1.0) / (n + 2.0));
  return v / v.norm();
}

}  // namespace

TEST(SqueezeOperator, ZeroIsIdentity) {
  EXPECT_LE((squeeze_operator({0.0, 0.0, 16}) - OperatorMatrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SqueezeOperator, RejectsNegativeMagnitude) { EXPECT_THROW(squeeze_operator({-0.1, 0.0, 16}), Error); }

TEST(SqueezeOperator, TightRule) {
  EXPECT_TRUE(SqueezeSpec({1.0, 0.0, 32}).is_tight());
  EXPECT_FALSE(SqueezeSpec({2.0, 0.0, 64}).is_tight());
}

TEST(SqueezeOperator, MeanPhotonNumber) {
  const FockState s = squeezed_vacuum({1.0, 0.0, 96});
  EXPECT_NEAR(photon_statistics(s).mean, std::sinh(1.0) * std::sinh(1.0), 1e-6);
  EXPECT_NEAR(photon_statistics(s).mean, 1.381098, 1e-6);
}

TEST(SqueezeOperator, VariancePair) {
  const auto q = quadrature_report(squeezed_vacuum({0.5, 0.0, 96}));
  const double lo = std::min(q.var_x, q.var_p), hi = std::max(q.var_x, q.var_p);
  EXPECT_NEAR(lo, std::exp(-1.0) / 2.0, 1e-8);
  EXPECT_NEAR(hi, std::exp(1.0) / 2.0, 1e-8);
  EXPECT_NEAR(q.product, 0.25, 1e-8);
}

TEST(SqueezeOperator, SaturatesAcrossPhases) {
  for (double phi : {0.0, 0.7, kPi / 2, 2.5}) {
    const auto q = quadrature_report(squeezed_vacuum({0.6, phi, 96}));
    // At phi != 0 the squeezed axis is rotated; only phi = 0 saturates in x, p.
    if (phi == 0.0) EXPECT_NEAR(q.product, 0.25, 1e-8);
    EXPECT_GE(q.product, 0.25 - 1e-10);
  }
}

TEST(SqueezeOperator, UnitaryOnInterior) {
  for (double r : {0.5, 1.0, 1.5}) {
    const OperatorMatrix s = squeeze_operator({r, 0.3, 96});
    const OperatorMatrix err = s.adjoint() * s - OperatorMatrix::Identity(96, 96);
    EXPECT_LE(interior_max_abs(err, coherent::exponential_interior(96)), 1e-8) << r;
  }
}

TEST(SqueezeOperator, AgreesWithTaylorOracle) {
  const OperatorMatrix g = squeeze_generator(std::polar(0.8, 0.4), 64);
  EXPECT_LE((oracle::taylor_expm(g) - matrix_exponential(g)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SqueezedVacuum, ZeroIsVacuum) {
  const FockState s = squeezed_vacuum_closed_form({0.0, 0.0, 16});
  EXPECT_EQ(s[0], Complex(1.0));
}

TEST(SqueezedVacuum, OddAmplitudesVanish) {
  const FockState s = squeezed_vacuum_closed_form({0.9, 1.2, 64});
  for (Eigen::Index n = 1; n < 64; n += 2) EXPECT_EQ(s[n], Complex(0.0));
}

TEST(SqueezedVacuum, ClosedFormMatchesExponential) {
  for (double r : {0.3, 0.8, 1.2}) {
    for (double phi : {0.0, kPi / 2, 2.0}) {
      const SqueezeSpec spec{r, phi, 96};
      EXPECT_GE(fidelity(squeezed_vacuum_closed_form(spec).amps(), squeezed_vacuum(spec).amps()), 1.0 - 1e-8)
          << r << " " << phi;
    }
  }
}

TEST(SqueezedVacuum, ClosedFormMatchesRecurrenceOracle) {
  const FockState s = squeezed_vacuum_closed_form({0.8, kPi / 2, 96});
  EXPECT_LE((s.amps() - recurrence_squeezed(0.8, kPi / 2, 96)).norm(), 1e-13);
}

TEST(SqueezedWavefunction, GroundState) {
  const Grid g = Grid::uniform(-12.0, 12.0, 2001);
  const auto psi = squeezed_wavefunction(1.0, 0.0, 0.0, g);
  const auto ho = coherent::coherent_wavefunction(0.0, g);
  EXPECT_LE(psi.distance(ho), 1e-12);
}

TEST(SqueezedWavefunction, VarianceRatio) {
  const Grid g = Grid::uniform(-20.0, 20.0, 4001);
  const auto psi = squeezed_wavefunction(2.0, 0.0, 0.0, g);
  EXPECT_NEAR(psi.var_x(), 2.0, 1e-6);
  EXPECT_NEAR(psi.var_p(), 0.125, 1e-6);
  EXPECT_NEAR(psi.var_x() / psi.var_p(), 16.0, 1e-4);
}

TEST(SqueezedWavefunction, ProductIsMinimal) {
  const Grid g = Grid::uniform(-20.0, 20.0, 4001);
  for (auto [s, x0, p0] : {std::tuple{0.5, 1.0, -2.0}, std::tuple{1.7, -3.0, 0.5}, std::tuple{1.0, 2.0, 1.0}}) {
    const auto psi = squeezed_wavefunction(s, x0, p0, g);
    EXPECT_NEAR(psi.var_x() * psi.var_p(), 0.25, 1e-6) << s;
    EXPECT_NEAR(psi.mean_x(), x0, 1e-9);
    EXPECT_NEAR(psi.mean_p(), p0, 1e-6);
  }
}

TEST(SqueezedWavefunction, Errors) {
  const Grid g = Grid::uniform(-5.0, 5.0, 501);
  EXPECT_THROW(squeezed_wavefunction(0.0, 0.0, 0.0, g), Error);
  EXPECT_THROW(squeezed_wavefunction(1.0, 0.0, 0.0, g), Error);
}

TEST(ThetaVacuum, ZeroIsVacuum) { EXPECT_EQ(theta_vacuum(0.0, 16)[0], Complex(1.0)); }

TEST(ThetaVacuum, Annihilated) {
  for (double t : {0.6, -0.4}) EXPECT_LE(theta_annihilation_residual(theta_vacuum(t, 96), t), 1e-8) << t;
}

TEST(ThetaVacuum, Variances) {
  const auto q = quadrature_report(theta_vacuum(0.5, 96));
  EXPECT_NEAR(q.var_x, std::exp(1.0) / 2.0, 1e-8);
  EXPECT_NEAR(q.var_p, std::exp(-1.0) / 2.0, 1e-8);
  EXPECT_NEAR(q.product, 0.25, 1e-8);
}

TEST(ThetaVacuum, IsRealSqueeze) {
  EXPECT_GE(fidelity(theta_vacuum(0.7, 64).amps(), squeezed_vacuum({0.7, 0.0, 64}).amps()), 1.0 - 1e-10);
}

TEST(VacuumMoment, FirstOrderClosedForm) {
  const auto u = vacuum_moment_u(0.3, 1, 64);
  EXPECT_NEAR(u.closed_form, std::tanh(0.3) / std::sqrt(std::cosh(0.3)), 1e-15);
  EXPECT_NEAR(std::abs(u.numeric - u.closed_form), 0.0, 1e-7);
}

TEST(VacuumMoment, CoefficientValues) {
  EXPECT_EQ(moment_coefficient(1), 1.0);
  EXPECT_EQ(moment_coefficient(2), 3.0);
  EXPECT_EQ(moment_coefficient(3), 15.0);
}

TEST(VacuumMoment, ZeroTheta) {
  for (int n : {1, 2, 3}) EXPECT_NEAR(std::abs(vacuum_moment_u(0.0, n, 64).numeric), 0.0, 1e-15);
}

TEST(VacuumMoment, ClosedFormAndRecurrence) {
  for (double theta : {0.2, 0.4, 0.9}) {
    for (int n : {1, 2, 3}) {
      const auto u = vacuum_moment_u(theta, n, 64);
      EXPECT_NEAR(std::abs(u.numeric - u.closed_form), 0.0, 1e-7) << theta << " " << n;
      EXPECT_LE(u.recurrence, 1e-5) << theta << " " << n;
    }
  }
}

TEST(VacuumMoment, TruncationGuard) { EXPECT_THROW(vacuum_moment_u(0.3, 8, 32), Error); }

TEST(PhaseSqueezedSR, ZeroIsVacuum) { EXPECT_NEAR(std::abs(phase_squeezed_state_SR(0.0, 16)[0]), 1.0, 1e-15); }

TEST(PhaseSqueezedSR, GeometricDistribution) {
  const FockState s = phase_squeezed_state_SR(0.5, 64);
  const auto p = s.photon_distribution();
  for (int n = 0; n < 12; ++n) EXPECT_NEAR(p[n], 0.75 * std::pow(0.25, n), 1e-10) << n;
}

TEST(PhaseSqueezedSR, MatchesGeometricProfile) {
  for (Complex beta : {Complex(0.5), beta_from(0.6, kPi / 4), Complex(-0.3, 0.6)}) {
    EXPECT_GE(fidelity(phase_squeezed_state_SR(beta, 64).amps(), geometric_state(beta, 64).amps()), 1.0 - 1e-7)
        << beta;
  }
}

TEST(PhaseSqueezedSR, Divergence) {
  EXPECT_THROW(phase_squeezed_state_SR(1.0, 16), Error);
  EXPECT_THROW(geometric_state(Complex(0.8, 0.8), 16), Error);
}

TEST(Bogoliubov, Determinant) {
  for (double t : {0.0, 0.3, 1.7, -2.2}) EXPECT_NEAR(BogoliubovMap{t}.determinant(), 1.0, 1e-14) << t;
}

TEST(Bogoliubov, IdentityAtZero) {
  const auto [a, adag] = build_ladder(12);
  const auto m = bogoliubov_apply({0.0}, a, adag);
  EXPECT_EQ((m.a - a).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((m.adag - adag).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Bogoliubov, Composition) {
  const auto [a, adag] = build_ladder(24);
  const BogoliubovMap m1{0.4}, m2{-1.1};
  const auto step = bogoliubov_apply(m1, a, adag);
  const auto twice = bogoliubov_apply(m2, step.a, step.adag);
  const auto once = bogoliubov_apply(m1.then(m2), a, adag);
  EXPECT_LE((twice.a - once.a).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((twice.adag - once.adag).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((m1.matrix() * m2.matrix() - m1.then(m2).matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Bogoliubov, PreservesCommutator) {
  const auto [a, adag] = build_ladder(64);
  const auto m = bogoliubov_apply({0.7}, a, adag);
  EXPECT_LE(interior_max_abs(commutator(m.a, m.adag) - OperatorMatrix::Identity(64, 64), 63), 1e-10);
}

TEST(Bogoliubov, ThetaVacuumIsItsVacuum) {
  const auto [a, adag] = build_ladder(97);
  const auto m = bogoliubov_apply({0.6}, a, adag);
  CVector v = CVector::Zero(97);
  v.head(96) = theta_vacuum(0.6, 96).amps();
  EXPECT_LE((m.a * v).norm(), 1e-8);
}
