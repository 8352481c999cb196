#ifndef FOCKBENCH_ISOSPECTRAL_HPP
#define FOCKBENCH_ISOSPECTRAL_HPP

#include <Eigen/SparseLU>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fockbench/error.hpp"
#include "fockbench/expm.hpp"
#include "fockbench/fock.hpp"
#include "fockbench/grid.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench::sqm {

inline Grid default_grid() { return Grid::uniform(-10.0, 10.0, 2001); }

inline constexpr std::size_t kMaxLevels = 40;

/// Strictly isospectral deformation of the oscillator: W_hat = W + phi_lambda with
/// phi_lambda = psi0^2 / (lambda + int_{-inf}^x psi0^2).
struct IsospectralFamily {
  double lambda = 1.0;
  Grid grid;
  RVector w;          // W(x) = x
  RVector psi0_sq;    // psi0(x)^2
  RVector integral;   // int_{-inf}^x psi0^2, trapezoidal with end correction
  RVector phi;        // phi_lambda
  double e0 = 0.5;

  RVector w_hat() const { return w + phi; }
};

inline IsospectralFamily build_family(double lambda, const Grid& grid = default_grid()) {
  require(std::isfinite(lambda), ErrorKind::invalid_parameter, "lambda must be finite");
  require(lambda > 0.0 || lambda < -1.0, ErrorKind::singularity,
          "lambda in [-1, 0] puts a pole on the real line, got " + std::to_string(lambda));
  require(grid.x_min <= -10.0 + 1e-12 && grid.x_max() >= 10.0 - 1e-12 && grid.n_points >= 2001,
          ErrorKind::truncation, "grid must span [-10, 10] with at least 2001 points");
  IsospectralFamily f;
  f.lambda = lambda;
  f.grid = grid;
  const RVector xs = grid.points();
  f.w = xs;
  f.psi0_sq = (-xs.array().square()).exp() / std::sqrt(kPi);
  // Euler-Maclaurin correction lifts the running trapezoid to fourth order.
  const RVector slope = centered_derivative(f.psi0_sq, grid.dx);
  f.integral = cumulative_trapezoid(f.psi0_sq, grid.dx).array() -
               grid.dx * grid.dx / 12.0 * (slope.array() - slope(0));
  f.phi = f.psi0_sq.array() / (lambda + f.integral.array());
  require(f.phi.allFinite(), ErrorKind::numeric, "phi_lambda is not finite on the grid");
  return f;
}

/// Oscillator eigenfunctions psi_0..psi_{n-1} by the normalized Hermite recurrence.
inline std::vector<RVector> hermite_functions(const Grid& grid, std::size_t n_levels) {
  const RVector xs = grid.points();
  std::vector<RVector> psi;
  psi.push_back(std::pow(kPi, -0.25) * (-0.5 * xs.array().square()).exp());
  if (n_levels > 1) psi.push_back(std::sqrt(2.0) * xs.cwiseProduct(psi[0]));
  for (std::size_t n = 1; n + 1 < n_levels; ++n) {
    const double dn = static_cast<double>(n);
    psi.push_back(std::sqrt(2.0 / (dn + 1.0)) * xs.cwiseProduct(psi[n]) - std::sqrt(dn / (dn + 1.0)) * psi[n - 1]);
  }
  psi.resize(n_levels);
  return psi;
}

namespace detail {

inline void require_levels(std::size_t n_levels) {
  require(n_levels >= 1 && n_levels <= kMaxLevels, ErrorKind::invalid_parameter,
          "n_levels must lie in [1, " + std::to_string(kMaxLevels) + "]");
}

inline GridWavefunction as_wave(const Grid& g, const RVector& v) { return GridWavefunction(g, v.cast<Complex>()); }

}  // namespace detail

/// chi_0 = sqrt(lambda(lambda+1)) psi0 / (lambda + int psi0^2) and
/// chi_n = psi_n + phi (d/dx + W) psi_n / (2n), n >= 1, each renormalized on the grid.
/// (d/dx + x) psi_n = sqrt(2n) psi_{n-1} is used in place of a stencil.
inline std::vector<GridWavefunction> chi_states(const IsospectralFamily& f, std::size_t n_levels) {
  detail::require_levels(n_levels);
  const auto psi = hermite_functions(f.grid, n_levels);
  std::vector<GridWavefunction> chi;
  const double pref = std::sqrt(f.lambda * (f.lambda + 1.0));
  chi.push_back(detail::as_wave(f.grid, pref * psi[0].array() / (f.lambda + f.integral.array())));
  for (std::size_t n = 1; n < n_levels; ++n) {
    const double dn = static_cast<double>(n);
    const RVector ladder = std::sqrt(2.0 * dn) * psi[n - 1];
    chi.push_back(detail::as_wave(f.grid, psi[n] + f.phi.cwiseProduct(ladder) / (2.0 * dn)));
  }
  for (auto& c : chi) c = c.normalized();
  return chi;
}

/// chi_0 before renormalization; its grid norm tests the sqrt(lambda(lambda+1)) prefactor.
inline double chi0_raw_norm(const IsospectralFamily& f) {
  const auto psi = hermite_functions(f.grid, 1);
  const double pref = std::sqrt(f.lambda * (f.lambda + 1.0));
  return std::sqrt(detail::as_wave(f.grid, pref * psi[0].array() / (f.lambda + f.integral.array())).norm_squared());
}

/// Gram matrix <chi_m|chi_n> on the grid.
inline OperatorMatrix gram_matrix(const std::vector<GridWavefunction>& states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  OperatorMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = states[i].inner(states[j]);
  return g;
}

/// Symmetric tridiagonal matrix: diag and off-diagonal.
struct Tridiagonal {
  RVector diag;
  RVector off;

  /// Number of eigenvalues strictly below x (Sturm count).
  Eigen::Index count_below(double x) const {
    Eigen::Index count = 0;
    double q = diag(0) - x;
    if (q < 0) ++count;
    for (Eigen::Index i = 1; i < diag.size(); ++i) {
      if (q == 0.0) q = 1e-300;
      q = diag(i) - x - off(i - 1) * off(i - 1) / q;
      if (q < 0) ++count;
    }
    return count;
  }
};

/// Lowest `count` eigenpairs by bisection and inverse iteration.
inline std::pair<RVector, std::vector<RVector>> lowest_eigenpairs(const Tridiagonal& t, std::size_t count) {
  const Eigen::Index n = t.diag.size();
  require(static_cast<Eigen::Index>(count) <= n, ErrorKind::invalid_parameter, "more eigenpairs than rows");
  double lo = t.diag(0), hi = t.diag(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off(i - 1)) : 0.0) + (i + 1 < n ? std::abs(t.off(i)) : 0.0);
    lo = std::min(lo, t.diag(i) - r);
    hi = std::max(hi, t.diag(i) + r);
  }
  RVector values(static_cast<Eigen::Index>(count));
  for (std::size_t k = 0; k < count; ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      if (t.count_below(mid) > static_cast<Eigen::Index>(k)) b = mid; else a = mid;
    }
    values(static_cast<Eigen::Index>(k)) = 0.5 * (a + b);
  }

  std::vector<RVector> vectors;
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t k = 0; k < count; ++k) {
    const double shift = values(static_cast<Eigen::Index>(k)) + 1e-10;
    trips.clear();
    for (Eigen::Index i = 0; i < n; ++i) {
      trips.emplace_back(i, i, t.diag(i) - shift);
      if (i + 1 < n) {
        trips.emplace_back(i, i + 1, t.off(i));
        trips.emplace_back(i + 1, i, t.off(i));
      }
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(m);
    require(lu.info() == Eigen::Success, ErrorKind::numeric, "eigen-solver: factorization failed");
    RVector v = RVector::Ones(n) / std::sqrt(static_cast<double>(n));
    for (int it = 0; it < 3; ++it) {
      v = lu.solve(v);
      require(v.allFinite(), ErrorKind::numeric, "eigen-solver: inverse iteration diverged");
      v.normalize();
    }
    vectors.push_back(std::move(v));
  }
  return {values, vectors};
}

/// -1/2 d^2/dx^2 + V with Dirichlet ends, on the interior grid points.
inline Tridiagonal finite_difference_hamiltonian(const Grid& g, const RVector& potential) {
  const Eigen::Index n = static_cast<Eigen::Index>(g.n_points) - 2;
  const double h2 = g.dx * g.dx;
  Tridiagonal t{potential.segment(1, n).array() + 1.0 / h2, RVector::Constant(n - 1, -0.5 / h2)};
  return t;
}

/// V_lambda = (W_hat^2 - W_hat')/2 + E0, W_hat' by centered differences.
inline RVector deformed_potential(const IsospectralFamily& f) {
  const RVector wh = f.w_hat();
  const RVector dwh = centered_derivative(wh, f.grid.dx);
  return 0.5 * (wh.array().square() - dwh.array()) + f.e0;
}

struct SpectralReport {
  RVector ho;          // eigenvalues of the oscillator
  RVector deformed;    // eigenvalues of H_lambda
  RVector residuals;   // |E_n(H_lambda) - (n + 1/2)|
  RVector fidelities;  // |<eigvec_n | chi_n>|^2
  double max_residual = 0.0;
  double max_gap = 0.0;  // max |E_n(H) - E_n(H_lambda)|
};

inline SpectralReport spectral_check(const IsospectralFamily& f, std::size_t n_levels) {
  detail::require_levels(n_levels);
  const RVector xs = f.grid.points();
  const auto [ev_ho, vec_ho] =
      lowest_eigenpairs(finite_difference_hamiltonian(f.grid, 0.5 * xs.array().square()), n_levels);
  const auto [ev, vec] = lowest_eigenpairs(finite_difference_hamiltonian(f.grid, deformed_potential(f)), n_levels);
  (void)vec_ho;
  const auto chi = chi_states(f, n_levels);
  SpectralReport r;
  r.ho = ev_ho;
  r.deformed = ev;
  r.residuals.resize(static_cast<Eigen::Index>(n_levels));
  r.fidelities.resize(static_cast<Eigen::Index>(n_levels));
  const Eigen::Index inner = static_cast<Eigen::Index>(f.grid.n_points) - 2;
  for (std::size_t k = 0; k < n_levels; ++k) {
    const auto ki = static_cast<Eigen::Index>(k);
    r.residuals(ki) = std::abs(ev(ki) - (static_cast<double>(k) + 0.5));
    const CVector c = chi[k].values().segment(1, inner);
    r.fidelities(ki) = fidelity(c, vec[k].cast<Complex>());
    r.max_residual = std::max(r.max_residual, r.residuals(ki));
    r.max_gap = std::max(r.max_gap, std::abs(ev(ki) - ev_ho(ki)));
  }
  return r;
}

/// Modal coefficients <chi_m|psi> for m < basis size.
inline CVector project(const std::vector<GridWavefunction>& basis, const GridWavefunction& psi) {
  CVector c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t m = 0; m < basis.size(); ++m) c(static_cast<Eigen::Index>(m)) = basis[m].inner(psi);
  return c;
}

inline GridWavefunction synthesize(const std::vector<GridWavefunction>& basis, const CVector& coeffs) {
  CVector v = CVector::Zero(basis.front().values().size());
  for (std::size_t m = 0; m < basis.size(); ++m) v += coeffs(static_cast<Eigen::Index>(m)) * basis[m].values();
  return GridWavefunction(basis.front().grid(), std::move(v));
}

/// A state of the lambda family in the chi basis.
struct LambdaState {
  GridWavefunction wave;
  CVector modal;  // coefficients on chi_0..chi_{n-1}
};

inline bool coherent_fits(Complex z, std::size_t n_levels) {
  const double r = std::abs(z);
  return r * r + 6.0 * r <= static_cast<double>(n_levels);
}

/// sum_n e^{-|z|^2/2} z^n / sqrt(n!) chi_n.
inline LambdaState lambda_coherent(Complex z, const IsospectralFamily& f, std::size_t n_levels) {
  detail::require_levels(n_levels);
  require(coherent_fits(z, n_levels), ErrorKind::truncation, "n_levels too small for |z|: need |z|^2 + 6|z| <= n_levels");
  const auto chi = chi_states(f, n_levels);
  CVector c = CVector::Zero(static_cast<Eigen::Index>(n_levels));
  const double r = std::abs(z);
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    const double dn = static_cast<double>(n);
    c(n) = r == 0.0 ? (n == 0 ? 1.0 : 0.0)
                    : std::polar(std::exp(-0.5 * r * r + dn * std::log(r) - 0.5 * std::lgamma(dn + 1.0)), dn * std::arg(z));
  }
  return {synthesize(chi, c), c};
}

/// Modal dimension used to build squeezed coefficients before truncation to n_levels.
inline constexpr std::size_t kModalDim = 64;

/// S(xi) D(z) chi_0 with S, D built from the oscillator ladder acting on chi-basis coefficients.
inline LambdaState lambda_squeezed(Complex xi, Complex z, const IsospectralFamily& f, std::size_t n_levels) {
  detail::require_levels(n_levels);
  require(std::abs(xi) <= 0.75, ErrorKind::invalid_parameter, "|xi| must be <= 0.75");
  const auto [a, adag] = build_ladder(kModalDim);
  const OperatorMatrix d = matrix_exponential(z * adag - std::conj(z) * a);
  const OperatorMatrix s = matrix_exponential(0.5 * (xi * adag * adag - std::conj(xi) * a * a));
  const CVector full = s * d.col(0);
  const CVector c = full.head(static_cast<Eigen::Index>(n_levels));
  require(1.0 - c.squaredNorm() <= 1e-8, ErrorKind::truncation, "n_levels too small for (xi, z): tail mass above 1e-8");
  const auto chi = chi_states(f, n_levels);
  return {synthesize(chi, c), c};
}

struct ModalReport {
  double eigen_residual = 0.0;  // ||(a - z) c|| on modal rows 0..n-2
  double var_x = 0.0, var_p = 0.0, product = 0.0;
};

/// Projects the grid state back onto chi_m, then applies the oscillator ladder
/// to the coefficients (a~ = U a U^dag has the oscillator matrix in the chi basis).
inline ModalReport modal_report(const LambdaState& s, const IsospectralFamily& f, Complex z) {
  const auto n_levels = static_cast<std::size_t>(s.modal.size());
  const auto chi = chi_states(f, n_levels);
  const CVector c = project(chi, s.wave);
  const auto [a, adag] = build_ladder(n_levels);
  ModalReport r;
  r.eigen_residual = (a * c - z * c).head(c.size() - 1).norm();
  const auto q = quadrature_report(FockState(c / c.norm()));
  r.var_x = q.var_x;
  r.var_p = q.var_p;
  r.product = q.product;
  return r;
}

/// Oscillator squeezed-coherent wavefunction S(r) D(z)|0> for real r:
/// D(gamma) S(r)|0> with gamma = z cosh r + z^* sinh r.
inline GridWavefunction ho_squeezed_coherent(double r, Complex z, const Grid& g) {
  const Complex gamma = z * std::cosh(r) + std::conj(z) * std::sinh(r);
  const double x0 = std::sqrt(2.0) * gamma.real(), p0 = std::sqrt(2.0) * gamma.imag();
  CVector v(static_cast<Eigen::Index>(g.n_points));
  const double pref = std::pow(kPi, -0.25) * std::exp(-0.5 * r);
  for (std::size_t i = 0; i < g.n_points; ++i) {
    const double x = g.x(i), u = x - x0;
    v(static_cast<Eigen::Index>(i)) =
        pref * std::exp(Complex(-0.5 * u * u * std::exp(-2.0 * r), p0 * x - 0.5 * x0 * p0));
  }
  return GridWavefunction(g, std::move(v));
}

}  // namespace fockbench::sqm

#endif  // FOCKBENCH_ISOSPECTRAL_HPP
