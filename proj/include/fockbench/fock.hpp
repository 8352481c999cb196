#ifndef FOCKBENCH_FOCK_HPP
#define FOCKBENCH_FOCK_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fockbench/config.hpp"
#include "fockbench/error.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench {

/// Pure state of one bosonic mode over the truncated basis |0>..|dim-1>.
class FockState {
 public:
  explicit FockState(CVector amps) : amps_(std::move(amps)) {
    require(amps_.size() >= 2, ErrorKind::invalid_dimension,
            "FockState needs dim >= 2, got " + std::to_string(amps_.size()));
    require(amps_.allFinite(), ErrorKind::numeric, "FockState amplitudes are not finite");
  }

  static FockState number(std::size_t dim, std::size_t n) {
    require(n < dim, ErrorKind::invalid_parameter, "number state index outside the basis");
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(dim));
    amps(static_cast<Eigen::Index>(n)) = 1.0;
    return FockState(std::move(amps));
  }

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amps() const { return amps_; }
  Complex operator[](std::size_t n) const { return amps_(static_cast<Eigen::Index>(n)); }

  double norm_squared() const { return amps_.squaredNorm(); }

  FockState normalized() const {
    const double n = amps_.norm();
    require(n > 0.0, ErrorKind::numeric, "cannot normalize the zero vector");
    return FockState(amps_ / n);
  }

  /// Probability mass in the top `fraction` of the basis.
  double tail_mass(double fraction = Tolerances{}.tail_fraction) const {
    const auto n = amps_.size();
    const auto start = n - std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(fraction * n)));
    return amps_.tail(n - start).squaredNorm() / norm_squared();
  }

  std::vector<double> photon_distribution() const {
    std::vector<double> p(dim());
    const double total = norm_squared();
    for (std::size_t n = 0; n < dim(); ++n) p[n] = std::norm((*this)[n]) / total;
    return p;
  }

 private:
  CVector amps_;
};

struct Ladder {
  OperatorMatrix a;
  OperatorMatrix adag;
};

inline void require_dim(std::size_t dim, std::size_t minimum = 2) {
  require(dim >= minimum, ErrorKind::invalid_dimension,
          "dimension must be >= " + std::to_string(minimum) + ", got " + std::to_string(dim));
}

/// a|n> = sqrt(n)|n-1>, a^dag|n> = sqrt(n+1)|n+1>, cut at |dim-1>.
inline Ladder build_ladder(std::size_t dim) {
  require_dim(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  OperatorMatrix a = OperatorMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  OperatorMatrix adag = a.adjoint();
  return {std::move(a), std::move(adag)};
}

inline OperatorMatrix number_operator(std::size_t dim) {
  require_dim(dim);
  RVector diag = RVector::LinSpaced(static_cast<Eigen::Index>(dim), 0.0, static_cast<double>(dim - 1));
  return diag.cast<Complex>().asDiagonal();
}

struct Quadratures {
  OperatorMatrix x;
  OperatorMatrix p;
};

/// x = (a + a^dag)/sqrt(2), p = -i(a - a^dag)/sqrt(2).
inline Quadratures build_quadratures(std::size_t dim) {
  const auto [a, adag] = build_ladder(dim);
  const double s = std::sqrt(NaturalUnits::hbar / (2.0 * NaturalUnits::mass * NaturalUnits::omega));
  const double t = std::sqrt(NaturalUnits::mass * NaturalUnits::hbar * NaturalUnits::omega / 2.0);
  return {s * (a + adag), -kI * t * (a - adag)};
}

inline Complex expectation(const OperatorMatrix& m, const CVector& v) {
  require(m.rows() == m.cols() && m.cols() == v.size(), ErrorKind::shape,
          "expectation: operator is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
              ", state has dim " + std::to_string(v.size()));
  return v.dot(m * v);
}

inline Complex expectation(const OperatorMatrix& m, const FockState& s) { return expectation(m, s.amps()); }

struct QuadratureReport {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  double product = 0.0;
  bool tail_warning = false;
};

inline void require_normalized(double norm_squared, const Tolerances& tol) {
  require(norm_squared >= 1.0 - tol.tail && norm_squared <= 1.0 + 1e-12, ErrorKind::not_normalized,
          "state norm^2 = " + std::to_string(norm_squared) + " outside [1 - tail_tol, 1 + 1e-12]");
}

/// Quadrature means and variances. x and p are built one size larger than
/// the state so that <x^2> and <p^2> see the full a a^dag term.
inline QuadratureReport quadrature_report(const FockState& s, const Tolerances& tol = {}) {
  require_normalized(s.norm_squared(), tol);
  const std::size_t padded = s.dim() + 1;
  CVector v = CVector::Zero(static_cast<Eigen::Index>(padded));
  v.head(s.amps().size()) = s.amps();
  const auto [x, p] = build_quadratures(padded);
  QuadratureReport r;
  r.mean_x = expectation(x, v).real();
  r.mean_p = expectation(p, v).real();
  const CVector xv = x * v;
  const CVector pv = p * v;
  r.var_x = std::max(0.0, xv.squaredNorm() - r.mean_x * r.mean_x);
  r.var_p = std::max(0.0, pv.squaredNorm() - r.mean_p * r.mean_p);
  r.product = r.var_x * r.var_p;
  r.tail_warning = s.tail_mass(tol.tail_fraction) > tol.tail;
  return r;
}

struct PhotonStatistics {
  double mean = 0.0;
  double variance = 0.0;
  double mandel_q = 0.0;
};

inline PhotonStatistics photon_statistics(const FockState& s) {
  const auto p = s.photon_distribution();
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    m1 += n * p[n];
    m2 += static_cast<double>(n) * n * p[n];
  }
  PhotonStatistics st{m1, m2 - m1 * m1, 0.0};
  st.mandel_q = m1 > 0.0 ? (st.variance - m1) / m1 : 0.0;
  return st;
}

}  // namespace fockbench

#endif  // FOCKBENCH_FOCK_HPP
