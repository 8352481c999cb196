#ifndef FOCKBENCH_COHERENT_HPP
#define FOCKBENCH_COHERENT_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "fockbench/config.hpp"
#include "fockbench/error.hpp"
#include "fockbench/expm.hpp"
#include "fockbench/fock.hpp"
#include "fockbench/grid.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench::coherent {

struct CoherentSpec {
  Complex alpha{0.0, 0.0};
  std::size_t dim = kDefaultDim;

  /// Truncation keeps the tail mass below ~1e-10.
  bool is_tight() const {
    const double r = std::abs(alpha);
    return r * r + 6.0 * r + 10.0 <= static_cast<double>(dim);
  }
};

/// Amplitudes e^{-|a|^2/2} a^n / sqrt(n!) of the untruncated coherent state,
/// projected onto the first `dim` kets (not renormalized).
inline CVector coherent_amplitudes(Complex alpha, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  CVector amps = CVector::Zero(d);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    amps(0) = 1.0;
    return amps;
  }
  const double log_r = std::log(r);
  const double phase = std::arg(alpha);
  for (Eigen::Index n = 0; n < d; ++n) {
    const double dn = static_cast<double>(n);
    const double log_mag = -0.5 * r * r + dn * log_r - 0.5 * std::lgamma(dn + 1.0);
    amps(n) = std::polar(std::exp(log_mag), dn * phase);
  }
  return amps;
}

/// Eigenstate of a with eigenvalue alpha, renormalized over the truncated
/// basis. <0|alpha> is real and positive.
inline FockState coherent_ladder(const CoherentSpec& spec) {
  require_dim(spec.dim);
  return FockState(coherent_amplitudes(spec.alpha, spec.dim)).normalized();
}

/// D(alpha) = exp(alpha a^dag - alpha^* a).
inline OperatorMatrix displacement_operator(Complex alpha, std::size_t dim) {
  const auto [a, adag] = build_ladder(dim);
  return matrix_exponential(alpha * adag - std::conj(alpha) * a);
}

/// Basis window where exponentials of ladder generators agree with their
/// untruncated counterparts.
inline Eigen::Index exponential_interior(std::size_t dim) { return static_cast<Eigen::Index>(dim / 2); }

struct Composition {
  Complex phase;
  double residual = 0.0;
};

/// D(alpha + beta) = exp((alpha^* beta - alpha beta^*)/2) D(alpha) D(beta).
/// Returns that phase and the interior residual of the identity.
inline Composition displacement_compose(Complex alpha, Complex beta, std::size_t dim) {
  const Complex phase = std::exp(0.5 * (std::conj(alpha) * beta - alpha * std::conj(beta)));
  const OperatorMatrix lhs = displacement_operator(alpha + beta, dim);
  const OperatorMatrix rhs = phase * displacement_operator(alpha, dim) * displacement_operator(beta, dim);
  return {phase, interior_max_abs(lhs - rhs, exponential_interior(dim))};
}

/// Full complex overlap <alpha|alpha'>.
inline Complex overlap_analytic(Complex alpha, Complex alpha_p) {
  return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(alpha_p) + std::conj(alpha) * alpha_p);
}

struct Completeness {
  OperatorMatrix resolution;
  bool underresolved = false;
};

/// (1/pi) * integral over the disc |alpha| <= radius of |alpha><alpha| d^2 alpha,
/// midpoint rule in the radius and a uniform periodic rule in the angle.
inline Completeness completeness_quadrature(double radius, std::size_t n_r, std::size_t n_phi, std::size_t dim) {
  require_dim(dim);
  require(radius > 0.0 && n_r > 0 && n_phi > 0, ErrorKind::invalid_parameter,
          "completeness_quadrature: radius and grid sizes must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  OperatorMatrix res = OperatorMatrix::Zero(d, d);
  const double dr = radius / static_cast<double>(n_r);
  const double dphi = 2.0 * kPi / static_cast<double>(n_phi);
  for (std::size_t i = 0; i < n_r; ++i) {
    const double r = (static_cast<double>(i) + 0.5) * dr;
    OperatorMatrix ring = OperatorMatrix::Zero(d, d);
    for (std::size_t j = 0; j < n_phi; ++j) {
      const CVector v = coherent_amplitudes(std::polar(r, dphi * static_cast<double>(j)), dim);
      ring.noalias() += v * v.adjoint();
    }
    res += (r * dr * dphi / kPi) * ring;
  }
  const bool under = radius < 6.0 || n_r < 64 || n_phi < 64;
  return {std::move(res), under};
}

/// psi(x) = pi^{-1/4} exp(-x^2/2 + sqrt(2) alpha x - alpha^2/2 - |alpha|^2/2),
/// normalized on the grid.
inline GridWavefunction coherent_wavefunction(Complex alpha, const Grid& grid) {
  const double center = std::sqrt(2.0) * alpha.real();
  require(grid.x_min <= center - 8.0 && grid.x_max() >= center + 8.0, ErrorKind::truncation,
          "coherent_wavefunction: grid must cover <x> +/- 8");
  CVector v(static_cast<Eigen::Index>(grid.n_points));
  const double pref = std::pow(kPi, -0.25);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    v(static_cast<Eigen::Index>(i)) =
        pref * std::exp(-0.5 * x * x + std::sqrt(2.0) * alpha * x - 0.5 * alpha * alpha - 0.5 * std::norm(alpha));
  }
  GridWavefunction psi(grid, std::move(v));
  const double n2 = psi.norm_squared();
  require(std::abs(n2 - 1.0) <= 1e-6, ErrorKind::truncation,
          "coherent_wavefunction: normalization deficit on the grid");
  return psi.normalized();
}

struct EvolutionSpec {
  Complex alpha0{0.0, 0.0};
  double t = 0.0;
};

/// exp(-iHt)|alpha0> = e^{-i w t/2} |e^{-i w t} alpha0>.
inline FockState evolve_coherent(const EvolutionSpec& spec, std::size_t dim) {
  require(std::isfinite(spec.t), ErrorKind::invalid_parameter, "evolve_coherent: t must be finite");
  const double wt = NaturalUnits::omega * spec.t;
  const FockState moved = coherent_ladder({spec.alpha0 * std::polar(1.0, -wt), dim});
  return FockState(std::polar(1.0, -0.5 * wt) * moved.amps());
}

/// H = hbar w (N + 1/2).
inline OperatorMatrix hamiltonian(std::size_t dim) {
  return NaturalUnits::hbar * NaturalUnits::omega *
         (number_operator(dim) + 0.5 * OperatorMatrix::Identity(static_cast<Eigen::Index>(dim),
                                                                static_cast<Eigen::Index>(dim)));
}

/// Applies exp(-iHt/hbar) by matrix exponential.
inline FockState evolve(const FockState& s, double t) {
  const OperatorMatrix u = matrix_exponential(-kI * t / NaturalUnits::hbar * hamiltonian(s.dim()));
  return FockState(u * s.amps());
}

struct Trajectory {
  std::vector<double> mean_x;
  double shm_residual = 0.0;  // max |x'' + w^2 x| from second differences
};

/// <x>(t) = sqrt(2)|alpha0| cos(w t - arg alpha0) on a uniform time grid.
inline Trajectory classical_trajectory(Complex alpha0, const std::vector<double>& ts) {
  require(ts.size() >= 3, ErrorKind::invalid_parameter,
          "classical_trajectory: need at least 3 samples for a second difference");
  const double dt = ts[1] - ts[0];
  require(dt > 0.0, ErrorKind::invalid_parameter, "classical_trajectory: times must increase");
  for (std::size_t i = 1; i < ts.size(); ++i) {
    require(std::abs((ts[i] - ts[i - 1]) - dt) <= 1e-9 * std::max(1.0, std::abs(dt)),
            ErrorKind::invalid_parameter, "classical_trajectory: times must be uniform");
  }
  const double w = NaturalUnits::omega;
  const double amp = 2.0 * std::sqrt(NaturalUnits::hbar / (2.0 * NaturalUnits::mass * w)) * std::abs(alpha0);
  const double phi = std::arg(alpha0);
  Trajectory tr;
  tr.mean_x.reserve(ts.size());
  for (double t : ts) tr.mean_x.push_back(amp * std::cos(w * t - phi));
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const double acc = (tr.mean_x[i + 1] - 2.0 * tr.mean_x[i] + tr.mean_x[i - 1]) / (dt * dt);
    tr.shm_residual = std::max(tr.shm_residual, std::abs(acc + w * w * tr.mean_x[i]));
  }
  return tr;
}

}  // namespace fockbench::coherent

#endif  // FOCKBENCH_COHERENT_HPP
