#ifndef FOCKBENCH_SUITES_HPP
#define FOCKBENCH_SUITES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fockbench/coherent.hpp"
#include "fockbench/fock.hpp"
#include "fockbench/isospectral.hpp"
#include "fockbench/pair.hpp"
#include "fockbench/phase.hpp"
#include "fockbench/squeezing.hpp"
#include "fockbench/su11.hpp"
#include "fockbench/two_mode_squeezing.hpp"

namespace fockbench::verify {

/// Physical parameters shared by state builders and suites. Unset values fall
/// back to per-suite defaults.
struct Params {
  std::optional<Complex> alpha, zeta, xi, z;
  std::optional<double> r, phi, theta, s, lambda, k, t, c;
  std::optional<int> q, m;
  std::size_t dim = kDefaultDim;
  std::size_t levels = 30;
  Grid grid = sqm::default_grid();
};

enum class Compare { at_most, at_least };

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  Compare compare = Compare::at_most;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<Check> checks;
  double wall_seconds = 0.0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  /// `value <= bound`; these are the tolerances a caller may override.
  void at_most(std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, bound, Compare::at_most, false});
  }
  /// `value >= bound` for signed margins and flags; never overridden.
  void at_least(std::string name, double value, double bound) {
    checks.push_back({std::move(name), value, bound, Compare::at_least, false});
  }

  void finalize(std::optional<double> tol_override) {
    for (auto& c : checks) {
      if (c.compare == Compare::at_most) {
        if (tol_override) c.bound = *tol_override;
        c.pass = std::isfinite(c.value) && c.value <= c.bound;
      } else {
        c.pass = std::isfinite(c.value) && c.value >= c.bound;
      }
    }
  }
};

namespace detail {

inline double infidelity(const CVector& u, const CVector& v) { return std::max(0.0, 1.0 - fidelity(u, v)); }

}  // namespace detail

inline void ho_algebra(const Params& p, VerifyReport& out) {
  const std::size_t d = p.dim;
  const auto di = static_cast<Eigen::Index>(d);
  const auto [a, adag] = build_ladder(d);
  const OperatorMatrix id = OperatorMatrix::Identity(di, di);
  const OperatorMatrix n = number_operator(d);
  out.at_most("canonical_commutator", interior_max_abs(commutator(a, adag) - id, di - 1), 1e-12);
  out.at_most("number_lowers", interior_max_abs(commutator(n, a) + a, di - 1), 1e-12);
  out.at_most("number_raises", interior_max_abs(commutator(n, adag) - adag, di - 1), 1e-12);
  const auto [x, pp] = build_quadratures(d);
  out.at_most("x_hermitian", (x - x.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  out.at_most("p_hermitian", (pp - pp.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  out.at_most("position_momentum", interior_max_abs(commutator(x, pp) - kI * id, di - 1), 1e-12);
  for (std::size_t k = 0; k <= std::min<std::size_t>(10, d - 2); ++k) {
    const double want = std::pow(2.0 * static_cast<double>(k) + 1.0, 2) / 4.0;
    out.at_most("fock_uncertainty_n" + std::to_string(k),
                std::abs(quadrature_report(FockState::number(d, k)).product - want), 1e-10);
  }
}

inline void coherent_suite(const Params& p, VerifyReport& out) {
  const Complex alpha = p.alpha.value_or(Complex(1.0, 1.0));
  const std::size_t d = p.dim;
  const auto [a, adag] = build_ladder(d);
  const FockState s = coherent::coherent_ladder({alpha, d});
  out.at_most("eigen_residual", (a * s.amps() - alpha * s.amps()).norm(), 1e-8);
  const auto st = photon_statistics(s);
  out.at_most("photon_mean", std::abs(st.mean - std::norm(alpha)), 1e-8);
  out.at_most("photon_variance", std::abs(st.variance - std::norm(alpha)), 1e-8);
  out.at_most("uncertainty_product", std::abs(quadrature_report(s).product - 0.25), 1e-8);
  const CVector displaced = coherent::displacement_operator(alpha, d).col(0);
  out.at_most("displacement_infidelity", detail::infidelity(displaced, s.amps()), 1e-8);
  int pair_index = 0;
  for (Complex delta : {Complex(0.5, 0.0), Complex(0.0, -0.7), Complex(1.0, 1.0)}) {
    const FockState t = coherent::coherent_ladder({alpha + delta, d});
    out.at_most("overlap_law_" + std::to_string(++pair_index),
                std::abs(std::norm(s.amps().dot(t.amps())) - std::exp(-std::norm(delta))), 1e-9);
  }
  out.at_most("composition", coherent::displacement_compose(alpha, Complex(0.3, 0.2), d).residual, 1e-8);
}

inline void time_evolution(const Params& p, VerifyReport& out) {
  const Complex alpha = p.alpha.value_or(Complex(1.0, 0.0));
  const std::size_t d = p.dim;
  const FockState s = coherent::coherent_ladder({alpha, d});
  const char* names[] = {"quarter", "half", "full"};
  const double times[] = {kPi / 4, kPi, 2 * kPi};
  for (int i = 0; i < 3; ++i) {
    const FockState numeric = coherent::evolve(s, times[i]);
    const FockState closed = coherent::evolve_coherent({alpha, times[i]}, d);
    out.at_most(std::string("evolution_infidelity_") + names[i], detail::infidelity(numeric.amps(), closed.amps()),
                1e-9);
    out.at_most(std::string("evolution_phase_") + names[i], (numeric.amps() - closed.amps()).norm(), 1e-9);
  }
  std::vector<double> ts(1001);
  for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = 2 * kPi * static_cast<double>(i) / 1000.0;
  const auto tr = coherent::classical_trajectory(alpha, ts);
  out.at_most("shm_residual", tr.shm_residual, 1e-4);
  const double mean_x = quadrature_report(coherent::evolve(s, ts[125])).mean_x;
  out.at_most("mean_x_tracks_orbit", std::abs(mean_x - tr.mean_x[125]), 1e-8);
}

inline void pair_suite(const Params& p, VerifyReport& out) {
  using namespace pair;
  const Complex zeta = p.zeta.value_or(1.0);
  const int q = p.q.value_or(0);
  const std::size_t d = p.dim;
  const auto st = pair_coherent({zeta, q, SectorDims::for_charge(q, d)});
  const auto res = pair_residuals(st, zeta, q);
  out.at_most("pair_eigen_residual", res.eigen, 1e-8);
  out.at_most("pair_charge_residual", res.charge, 1e-10);
  const Complex xi = p.xi.value_or(0.5);
  const auto wide = SectorDims::for_charge(q, std::max<std::size_t>(d, 40));
  out.at_most("two_mode_perelomov_relation", two_mode_perelomov_residual(two_mode_perelomov(xi, q, wide), xi, q),
              1e-7);
  out.at_most("two_mode_perelomov_dual",
              1.0 - fidelity(two_mode_perelomov(xi, q, wide), two_mode_perelomov_closed_form(xi, q, wide)), 1e-8);
  const auto dims = SectorDims::for_charge(q, d);
  out.at_most("parity_pair_superposition",
              1.0 - fidelity(parity_pair_state(zeta, q, dims), parity_pair_superposition(zeta, q, dims)), 1e-8);
  const su11::SU11Rep rep{p.k.value_or(0.5), 48};
  out.at_most("perelomov_closed_form",
              detail::infidelity(su11::perelomov_state(rep, xi).amps(), su11::perelomov_by_exponential(rep, xi).amps()),
              1e-8);
}

inline void phase_suite(const Params& p, VerifyReport& out) {
  using namespace phase;
  const std::size_t d = p.dim;
  const auto di = static_cast<Eigen::Index>(d);
  const OperatorMatrix id = OperatorMatrix::Identity(di, di);
  const OperatorMatrix n = number_operator(d);
  const auto set = build_phase_set(d);
  out.at_most("one_sided_unitarity", interior_max_abs(set.gamma_minus * set.gamma_plus - id, di - 1), 1e-12);
  const auto r = build_R_ops(d);
  out.at_most("R_lowers", interior_max_abs(commutator(r.r_minus, n) - r.r_minus, di - 1), 1e-12);
  out.at_most("R_raises", interior_max_abs(commutator(r.r_plus, n) + r.r_plus, di - 1), 1e-12);
  out.at_most("R_closure", interior_max_abs(commutator(r.r_minus, r.r_plus) - (2.0 * n + id), di - 2), 1e-12);
  std::vector<int> orders;
  if (p.m) orders = {*p.m}; else orders = {1, 2, 3};
  const double rr = p.r.value_or(0.5), phi = p.phi.value_or(0.0);
  for (int m : orders) {
    const auto o = build_omega_ops(m, d);
    const Eigen::Index in = ladder_interior(m, d);
    const std::string tag = "_m" + std::to_string(m);
    out.at_most("omega_lowers" + tag, interior_max_abs(commutator(o.omega_minus, n) - m * o.omega_minus, in), 1e-12);
    out.at_most("omega_raises" + tag, interior_max_abs(commutator(o.omega_plus, n) + m * o.omega_plus, in), 1e-12);
    const OperatorMatrix c = commutator(o.omega_minus, o.omega_plus) - m * (2.0 * n + m * id);
    out.at_most("omega_closure" + tag, block_max_abs(c, omega_algebra_rows(m, d)), 1e-12);
    const auto ps = phase_squeeze_unitary(rr, phi, m, d);
    out.at_most("phase_squeeze_closed_form" + tag,
                detail::infidelity(ps.state.amps(), phase_squeezed_closed_form(rr, phi, m, d).amps()), 1e-7);
  }
  const auto u = number_phase_uncertainty(coherent::coherent_ladder({p.alpha.value_or(1.0), d}));
  out.at_least("number_phase_margin_cos", u.dcos_dn - u.bound_sin, -1e-12);
  out.at_least("number_phase_margin_sin", u.dsin_dn - u.bound_cos, -1e-12);
}

inline void single_squeeze(const Params& p, VerifyReport& out) {
  using namespace squeezing;
  const double r = p.r.value_or(0.8), phi = p.phi.value_or(0.0);
  const SqueezeSpec spec{r, phi, p.dim};
  const FockState s = squeezed_vacuum(spec);
  const double sh = std::sinh(r);
  out.at_most("mean_photon_number", std::abs(photon_statistics(s).mean - sh * sh), 1e-6);
  const auto q = quadrature_report(s);
  const double c2 = std::cosh(2 * r), s2 = std::sinh(2 * r) * std::cos(phi);
  out.at_most("var_x", std::abs(q.var_x - 0.5 * (c2 + s2)), 1e-7);
  out.at_most("var_p", std::abs(q.var_p - 0.5 * (c2 - s2)), 1e-7);
  out.at_most("closed_form", detail::infidelity(s.amps(), squeezed_vacuum_closed_form(spec).amps()), 1e-8);
  const double theta = p.theta.value_or(0.6);
  out.at_most("theta_vacuum_annihilated", theta_annihilation_residual(theta_vacuum(theta, p.dim), theta), 1e-8);
  for (int n : {1, 2, 3}) {
    const auto u = vacuum_moment_u(theta, n, p.dim);
    out.at_most("moment_closed_form_n" + std::to_string(n), std::abs(u.numeric - u.closed_form), 1e-7);
    out.at_most("moment_recurrence_n" + std::to_string(n), u.recurrence, 1e-5);
  }
}

inline void two_squeeze(const Params& p, VerifyReport& out) {
  using namespace squeezing;
  const double theta = p.theta.value_or(0.5);
  const std::size_t d = p.dim;
  const auto st = two_mode_theta_vacuum(theta, d, d);
  const auto prof = schmidt_profile(st);
  out.at_most("schmidt_off_diagonal_mass", prof.off_diagonal_mass, 1e-12);
  out.at_most("schmidt_ratio_spread", prof.ratio_spread, 1e-8);
  if (!prof.ratios.empty()) out.at_most("schmidt_ratio", std::abs(prof.ratios.front() - std::tanh(std::abs(theta))), 1e-8);
  const auto nr = noise_report(st);
  const double sh = std::sinh(2 * theta);
  out.at_most("var_x1", std::abs(nr.moments.var_x1 - std::cosh(2 * theta) / 2), 1e-7);
  out.at_most("noise_cross_term", std::abs(std::abs(nr.cross) - sh * sh / 4), 1e-6);
  out.at_least("noise_margin", nr.margin_signed, 0.0);
  out.at_most("squeeze_generator_agrees", 1.0 - fidelity(two_mode_squeezed_vacuum(-2.0 * theta, d, d), st), 1e-10);
  const double s = p.s.value_or(2.0 * theta);
  const auto sc = su11_disentangle_general(0.0, -s / 2, s / 2);
  const double th = std::tanh(s / 2);
  out.at_most("disentangle_specialization",
              std::max({std::abs(sc.gamma0 - 1.0 / (std::cosh(s / 2) * std::cosh(s / 2))),
                        std::abs(sc.gamma_plus + th), std::abs(sc.gamma_minus - th)}),
              1e-14);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mag(0.0, 0.5), ang(0.0, 2 * kPi);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Complex z0 = std::polar(mag(rng), ang(rng)), zp = std::polar(mag(rng), ang(rng)),
                  zm = std::polar(mag(rng), ang(rng));
    worst = std::max(worst, disentangle_residual(z0, zp, zm, 24));
  }
  out.at_most("disentangle_identity", worst, 1e-8);
}

inline void factorization(const Params& p, VerifyReport& out) {
  using namespace squeezing;
  const double theta = p.theta.value_or(0.5), c = p.c.value_or(0.0);
  const Grid g = Grid::uniform(-3, 3, 2048);
  const auto sol = generalized_condition_solution(theta, c, g, g);
  out.at_most("pde_residual", sol.pde_residual, 1e-4);
  out.at_least("phi_normalizable", sol.phi_normalizable ? 1.0 : 0.0, 1.0);
  const std::size_t d = std::min<std::size_t>(p.dim, 40);
  const auto lf = lambda_mode_factorization(theta, d, d);
  out.at_most("lambda_commutators", lf.commutator_residual, 1e-10);
  out.at_most("lambda_vacuum", lf.vacuum_residual, 1e-12);
  out.at_most("lambda_product_state", lf.fidelity_defect, 1e-7);
}

inline void sqm_suite(const Params& p, VerifyReport& out) {
  using namespace sqm;
  const double lambda = p.lambda.value_or(1.0);
  const auto f = build_family(lambda, p.grid);
  const auto spec = spectral_check(f, 6);
  out.at_most("spectrum_vs_ladder", spec.max_residual, 1e-3);
  out.at_most("spectrum_vs_oscillator", spec.max_gap, 1e-3);
  out.at_most("eigenvector_infidelity", 1.0 - spec.fidelities.minCoeff(), 1e-4);
  const auto g = gram_matrix(chi_states(f, 12));
  out.at_most("chi_orthonormality", (g - OperatorMatrix::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-5);
  out.at_most("chi0_norm", std::abs(chi0_raw_norm(f) - 1.0), 1e-6);
  const Complex z = p.z.value_or(1.0);
  const std::size_t levels = std::min(p.levels, kMaxLevels);
  const auto lc = lambda_coherent(z, f, levels);
  const auto mc = modal_report(lc, f, z);
  out.at_most("lambda_coherent_eigen_residual", mc.eigen_residual, 1e-6);
  out.at_most("lambda_coherent_product", std::abs(mc.product - 0.25), 1e-5);
  const Complex xi = p.xi.value_or(0.5);
  const auto ls = lambda_squeezed(xi, 0.0, f, levels);
  const auto ms = modal_report(ls, f, 0.0);
  const double r = std::abs(xi), cs = std::cos(std::arg(xi));
  out.at_most("lambda_squeezed_var_x", std::abs(ms.var_x - 0.5 * (std::cosh(2 * r) + cs * std::sinh(2 * r))), 1e-5);
  out.at_most("lambda_squeezed_var_p", std::abs(ms.var_p - 0.5 * (std::cosh(2 * r) - cs * std::sinh(2 * r))), 1e-5);
  if (lambda >= 1e6) {
    out.at_most("oscillator_limit_coherent", lc.wave.distance(coherent::coherent_wavefunction(z, f.grid)), 1e-4);
    if (xi.imag() == 0.0)
      out.at_most("oscillator_limit_squeezed", ls.wave.distance(ho_squeezed_coherent(xi.real(), 0.0, f.grid)), 1e-4);
  }
}

using SuiteFn = std::function<void(const Params&, VerifyReport&)>;

inline const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites{
      {"ho-algebra", ho_algebra},     {"coherent", coherent_suite},       {"time-evolution", time_evolution},
      {"pair", pair_suite},           {"phase", phase_suite},             {"single-squeeze", single_squeeze},
      {"two-squeeze", two_squeeze},   {"factorization", factorization},   {"sqm", sqm_suite},
  };
  return suites;
}

inline VerifyReport run_suite(const std::string& name, const Params& p, std::optional<double> tol_override = {}) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  require(it != reg.end(), ErrorKind::invalid_parameter, "unknown suite: " + name);
  VerifyReport out;
  out.suite = name;
  it->second(p, out);
  out.finalize(tol_override);
  return out;
}

}  // namespace fockbench::verify

#endif  // FOCKBENCH_SUITES_HPP
