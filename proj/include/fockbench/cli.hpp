#ifndef FOCKBENCH_CLI_HPP
#define FOCKBENCH_CLI_HPP

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fockbench/coherent.hpp"
#include "fockbench/isospectral.hpp"
#include "fockbench/pair.hpp"
#include "fockbench/phase.hpp"
#include "fockbench/serialize.hpp"
#include "fockbench/squeezing.hpp"
#include "fockbench/su11.hpp"
#include "fockbench/suites.hpp"
#include "fockbench/two_mode_squeezing.hpp"

namespace fockbench::cli {

enum ExitCode : int { ok = 0, verify_failed = 1, usage = 2 };

struct SweepSpec {
  std::string param;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
};

struct RunConfig {
  std::string command;
  std::string family;
  std::string suite;
  verify::Params params;
  std::string format = "json";
  std::string out;
  std::optional<double> tol;
  SweepSpec sweep;
};

struct FamilyInfo {
  std::vector<std::string> required;
  std::vector<std::string> allowed;
  bool two_mode = false;
  bool lambda = false;
};

inline const std::map<std::string, FamilyInfo>& families() {
  static const std::map<std::string, FamilyInfo> f{
      {"coherent", {{"alpha"}, {"alpha", "t"}}},
      {"squeezed", {{"r"}, {"r", "phi", "t"}}},
      {"theta-vacuum", {{"theta"}, {"theta", "t"}}},
      {"two-mode", {{"theta"}, {"theta"}, true}},
      {"pair", {{"zeta"}, {"zeta", "q"}, true}},
      {"perelomov", {{"xi"}, {"xi", "k", "t"}}},
      {"parity-pair", {{"zeta"}, {"zeta", "q"}, true}},
      {"phase-squeezed", {{"r"}, {"r", "phi", "m", "t"}}},
      {"lambda-coherent", {{"lambda", "z"}, {"lambda", "z"}, false, true}},
      {"lambda-squeezed", {{"lambda", "xi"}, {"lambda", "xi", "z"}, false, true}},
  };
  return f;
}

namespace detail {

inline bool has_param(const verify::Params& p, const std::string& name) {
  if (name == "alpha") return p.alpha.has_value();
  if (name == "zeta") return p.zeta.has_value();
  if (name == "xi") return p.xi.has_value();
  if (name == "z") return p.z.has_value();
  if (name == "r") return p.r.has_value();
  if (name == "phi") return p.phi.has_value();
  if (name == "theta") return p.theta.has_value();
  if (name == "s") return p.s.has_value();
  if (name == "lambda") return p.lambda.has_value();
  if (name == "k") return p.k.has_value();
  if (name == "t") return p.t.has_value();
  if (name == "c") return p.c.has_value();
  if (name == "q") return p.q.has_value();
  if (name == "m") return p.m.has_value();
  return false;
}

inline void set_param(verify::Params& p, const std::string& name, double v) {
  if (name == "alpha") p.alpha = v;
  else if (name == "zeta") p.zeta = v;
  else if (name == "xi") p.xi = v;
  else if (name == "z") p.z = v;
  else if (name == "r") p.r = v;
  else if (name == "phi") p.phi = v;
  else if (name == "theta") p.theta = v;
  else if (name == "s") p.s = v;
  else if (name == "lambda") p.lambda = v;
  else if (name == "k") p.k = v;
  else if (name == "t") p.t = v;
  else if (name == "c") p.c = v;
  else if (name == "q" || name == "m") {
    require(v == std::round(v), ErrorKind::invalid_parameter, name + " must be an integer");
    (name == "q" ? p.q : p.m) = static_cast<int>(v);
  } else {
    throw Error(ErrorKind::invalid_parameter, "unknown parameter: " + name);
  }
}

inline void write_params(io::JsonWriter& w, const verify::Params& p) {
  w.key("parameters").begin_object();
  const auto cplx = [&w](const char* k, const std::optional<Complex>& v) { if (v) w.field(k, *v); };
  const auto real = [&w](const char* k, const std::optional<double>& v) { if (v) w.field(k, *v); };
  const auto integer = [&w](const char* k, const std::optional<int>& v) { if (v) w.field(k, *v); };
  cplx("alpha", p.alpha);
  real("r", p.r);
  real("phi", p.phi);
  real("theta", p.theta);
  real("s", p.s);
  cplx("zeta", p.zeta);
  integer("q", p.q);
  real("k", p.k);
  cplx("xi", p.xi);
  real("lambda", p.lambda);
  cplx("z", p.z);
  integer("m", p.m);
  real("t", p.t);
  real("c", p.c);
  w.end_object();
}

}  // namespace detail

inline void validate(const RunConfig& cfg, bool for_sweep = false) {
  require(cfg.params.dim >= 2, ErrorKind::invalid_dimension, "dim must be >= 2");
  require(cfg.format == "json" || cfg.format == "csv", ErrorKind::invalid_parameter,
          "format must be json or csv, got " + cfg.format);
  if (cfg.command == "verify") return;
  const auto it = families().find(cfg.family);
  require(it != families().end(), ErrorKind::invalid_parameter,
          cfg.family.empty() ? "--family is required" : "unknown family: " + cfg.family);
  for (const auto& name : it->second.required) {
    if (for_sweep && name == cfg.sweep.param) continue;
    require(detail::has_param(cfg.params, name), ErrorKind::invalid_parameter,
            "family " + cfg.family + " needs --" + name);
  }
}

/// A constructed state of any family, plus its headline cross-check.
struct Built {
  std::optional<FockState> single;
  std::optional<TwoModeState> two;
  std::optional<sqm::LambdaState> lam;
  std::optional<sqm::IsospectralFamily> fam;
  double reference = 0.0;  // infidelity to an independent construction, or distance to the oscillator analogue
  double eigen_residual = std::numeric_limits<double>::quiet_NaN();
};

inline Built build_state(const RunConfig& cfg) {
  const auto& p = cfg.params;
  const std::size_t d = p.dim;
  const std::string& f = cfg.family;
  Built b;
  const auto infid = [](const CVector& u, const CVector& v) { return std::max(0.0, 1.0 - fidelity(u, v)); };
  if (f == "coherent") {
    const Complex alpha = *p.alpha;
    const FockState s = coherent::coherent_ladder({alpha, d});
    if (p.t && *p.t != 0.0) {
      const FockState moved = coherent::evolve(s, *p.t);
      b.reference = infid(moved.amps(), coherent::evolve_coherent({alpha, *p.t}, d).amps());
      b.single = moved;
    } else {
      b.reference = infid(s.amps(), coherent::displacement_operator(alpha, d).col(0));
      b.single = s;
    }
  } else if (f == "squeezed") {
    const squeezing::SqueezeSpec spec{*p.r, p.phi.value_or(0.0), d};
    const FockState s = squeezing::squeezed_vacuum(spec);
    b.reference = infid(s.amps(), squeezing::squeezed_vacuum_closed_form(spec).amps());
    b.single = s;
  } else if (f == "theta-vacuum") {
    const FockState s = squeezing::theta_vacuum(*p.theta, d);
    const CVector e = matrix_exponential(squeezing::squeeze_generator(Complex(*p.theta, 0.0), d)).col(0);
    b.reference = infid(s.amps(), e);
    b.single = s;
  } else if (f == "perelomov") {
    const su11::SU11Rep rep{p.k.value_or(0.5), d};
    const FockState s = su11::perelomov_state(rep, *p.xi);
    b.reference = infid(s.amps(), su11::perelomov_by_exponential(rep, *p.xi).amps());
    b.single = s;
  } else if (f == "phase-squeezed") {
    const double phi = p.phi.value_or(0.0);
    const int m = p.m.value_or(1);
    const auto ps = phase::phase_squeeze_unitary(*p.r, phi, m, d);
    b.reference = infid(ps.state.amps(), phase::phase_squeezed_closed_form(*p.r, phi, m, d).amps());
    b.single = ps.state;
  } else if (f == "two-mode") {
    const auto s = squeezing::two_mode_theta_vacuum(*p.theta, d, d);
    b.reference = 1.0 - fidelity(s, squeezing::two_mode_squeezed_vacuum(-2.0 * *p.theta, d, d));
    b.two = s;
  } else if (f == "pair") {
    const int q = p.q.value_or(0);
    const auto dims = pair::SectorDims::for_charge(q, d);
    const auto s = pair::pair_coherent({*p.zeta, q, dims});
    const auto unit = [](std::size_t, std::size_t) { return 1.0; };
    b.reference = 1.0 - fidelity(s, pair::nonlinear_pair_coherent(unit, *p.zeta, q, dims));
    b.eigen_residual = pair::pair_residuals(s, *p.zeta, q).eigen;
    b.two = s;
  } else if (f == "parity-pair") {
    const int q = p.q.value_or(0);
    const auto dims = pair::SectorDims::for_charge(q, d);
    const auto s = pair::parity_pair_state(*p.zeta, q, dims);
    b.reference = 1.0 - fidelity(s, pair::parity_pair_superposition(*p.zeta, q, dims));
    b.two = s;
  } else if (f == "lambda-coherent" || f == "lambda-squeezed") {
    const auto fam = sqm::build_family(*p.lambda, p.grid);
    const std::size_t levels = p.levels;
    const Complex z = p.z.value_or(0.0);
    auto st = f == "lambda-coherent" ? sqm::lambda_coherent(z, fam, levels)
                                     : sqm::lambda_squeezed(*p.xi, z, fam, levels);
    // Same modal coefficients on the undeformed oscillator basis.
    const auto psi = sqm::hermite_functions(fam.grid, levels);
    CVector ho = CVector::Zero(static_cast<Eigen::Index>(fam.grid.n_points));
    for (std::size_t n = 0; n < levels; ++n) ho += st.modal(static_cast<Eigen::Index>(n)) * psi[n].cast<Complex>();
    b.reference = st.wave.distance(GridWavefunction(fam.grid, ho));
    if (f == "lambda-coherent") b.eigen_residual = sqm::modal_report(st, fam, z).eigen_residual;
    b.lam = std::move(st);
    b.fam = fam;
  } else {
    throw Error(ErrorKind::invalid_parameter, "unknown family: " + f);
  }
  if (b.single && p.t && *p.t != 0.0 && f != "coherent") b.single = coherent::evolve(*b.single, *p.t);
  return b;
}

namespace detail {

inline FockState modal_state(const sqm::LambdaState& s) { return FockState(s.modal / s.modal.norm()); }

inline void write_quadratures(io::JsonWriter& w, const QuadratureReport& q) {
  w.key("quadrature_report").begin_object();
  w.field("mean_x", q.mean_x).field("mean_p", q.mean_p).field("var_x", q.var_x).field("var_p", q.var_p);
  w.field("product", q.product).end_object();
}

inline std::string single_state_json(const RunConfig& cfg, const FockState& s, const Built& b) {
  io::JsonWriter w;
  w.begin_object().field("schema", 1).field("command", "state").field("family", cfg.family);
  detail::write_params(w, cfg.params);
  w.field("dim", s.dim());
  if (b.lam) w.field("levels", static_cast<std::size_t>(b.lam->modal.size()));
  w.key("amplitudes").values(s.amps());
  w.key("photon_distribution").values(s.photon_distribution());
  const auto st = photon_statistics(s);
  w.key("photon_statistics").begin_object();
  w.field("mean", st.mean).field("variance", st.variance).field("mandel_q", st.mandel_q).end_object();
  const auto q = quadrature_report(s);
  write_quadratures(w, q);
  w.field("tail_mass", s.tail_mass()).field("tail_warning", q.tail_warning);
  if (b.lam) {
    w.field("oscillator_distance", b.reference).field("grid_norm", b.lam->wave.norm_squared());
    if (!std::isnan(b.eigen_residual)) w.field("eigen_residual", b.eigen_residual);
  } else {
    w.field("reference_infidelity", b.reference);
  }
  return w.end_object().str();
}

inline std::string two_mode_state_json(const RunConfig& cfg, const TwoModeState& s, const Built& b) {
  io::JsonWriter w;
  w.begin_object().field("schema", 1).field("command", "state").field("family", cfg.family);
  detail::write_params(w, cfg.params);
  w.key("dims").begin_array().value(s.dim_a()).value(s.dim_b()).end_array();
  w.key("amplitudes").values(s.flat());
  const Eigen::MatrixXd joint = s.joint_distribution();
  w.key("joint_distribution").begin_array();
  for (Eigen::Index i = 0; i < joint.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(joint.cols()));
    for (Eigen::Index j = 0; j < joint.cols(); ++j) row[static_cast<std::size_t>(j)] = joint(i, j);
    w.values(row);
  }
  w.end_array();
  const auto r = two_mode_report(s);
  w.key("quadrature_report").begin_object();
  w.field("mean_x1", r.mean_x1).field("mean_p1", r.mean_p1).field("mean_x2", r.mean_x2).field("mean_p2", r.mean_p2);
  w.field("var_x1", r.var_x1).field("var_p1", r.var_p1).field("var_x2", r.var_x2).field("var_p2", r.var_p2);
  w.field("cov_x1x2", r.cov_x1x2).field("cov_p1p2", r.cov_p1p2);
  w.field("mean_n1", r.mean_n1).field("mean_n2", r.mean_n2).end_object();
  const double tail = s.tail_mass();
  w.field("tail_mass", tail).field("tail_warning", tail > Tolerances{}.tail);
  w.field("reference_infidelity", b.reference);
  if (!std::isnan(b.eigen_residual)) w.field("eigen_residual", b.eigen_residual);
  return w.end_object().str();
}

}  // namespace detail

inline std::string run_state(const RunConfig& cfg) {
  validate(cfg);
  const Built b = build_state(cfg);
  if (b.two) {
    if (cfg.format == "csv") {
      io::Table t{{"n1", "n2", "probability"}, {}};
      const Eigen::MatrixXd joint = b.two->joint_distribution();
      for (Eigen::Index i = 0; i < joint.rows(); ++i)
        for (Eigen::Index j = 0; j < joint.cols(); ++j)
          t.rows.push_back({static_cast<double>(i), static_cast<double>(j), joint(i, j)});
      return t.to_csv();
    }
    return detail::two_mode_state_json(cfg, *b.two, b);
  }
  const FockState s = b.single ? *b.single : detail::modal_state(*b.lam);
  if (cfg.format == "csv") {
    io::Table t{{"n", "probability"}, {}};
    const auto p = s.photon_distribution();
    for (std::size_t n = 0; n < p.size(); ++n) t.rows.push_back({static_cast<double>(n), p[n]});
    return t.to_csv();
  }
  return detail::single_state_json(cfg, s, b);
}

/// Headline observables for one parameter point.
inline io::Table observables_table(const RunConfig& cfg, const std::string& first) {
  const auto& info = families().at(cfg.family);
  if (info.two_mode)
    return {{first, "mean_n1", "mean_n2", "var_x1", "var_p1", "var_x2", "var_p2", "cov_x1x2", "cov_p1p2", "tail_mass",
             "reference_infidelity"},
            {}};
  if (info.lambda)
    return {{first, "mean_n", "var_n", "mean_x", "mean_p", "var_x", "var_p", "product", "grid_norm",
             "oscillator_distance"},
            {}};
  return {{first, "mean_n", "var_n", "mean_x", "mean_p", "var_x", "var_p", "product", "tail_mass",
           "reference_infidelity"},
          {}};
}

inline std::vector<double> observables_row(double value, const Built& b) {
  if (b.two) {
    const auto r = two_mode_report(*b.two);
    return {value,      r.mean_n1,  r.mean_n2,  r.var_x1,          r.var_p1,   r.var_x2,
            r.var_p2,   r.cov_x1x2, r.cov_p1p2, b.two->tail_mass(), b.reference};
  }
  const FockState s = b.single ? *b.single : detail::modal_state(*b.lam);
  const auto st = photon_statistics(s);
  const auto q = quadrature_report(s);
  const double last = b.lam ? b.lam->wave.norm_squared() : s.tail_mass();
  return {value, st.mean, st.variance, q.mean_x, q.mean_p, q.var_x, q.var_p, q.product, last, b.reference};
}

inline std::string run_sweep(const RunConfig& cfg) {
  const auto& sw = cfg.sweep;
  require(sw.steps >= 1, ErrorKind::invalid_parameter, "sweep needs --steps >= 1");
  require(!sw.param.empty(), ErrorKind::invalid_parameter, "sweep needs --param");
  validate(cfg, true);
  const auto& allowed = families().at(cfg.family).allowed;
  require(std::find(allowed.begin(), allowed.end(), sw.param) != allowed.end(), ErrorKind::invalid_parameter,
          "parameter " + sw.param + " does not belong to family " + cfg.family);
  io::Table table = observables_table(cfg, sw.param);
  for (int i = 0; i < sw.steps; ++i) {
    const double v = sw.steps == 1 ? sw.start : sw.start + (sw.stop - sw.start) * i / (sw.steps - 1);
    RunConfig point = cfg;
    detail::set_param(point.params, sw.param, v);
    table.rows.push_back(observables_row(v, build_state(point)));
  }
  if (cfg.format == "json") {
    io::JsonWriter w;
    w.begin_object().field("schema", 1).field("command", "sweep").field("family", cfg.family);
    detail::write_params(w, cfg.params);
    w.field("dim", cfg.params.dim).field("param", sw.param);
    table.write_json(w);
    return w.end_object().str();
  }
  return table.to_csv();
}

/// Fock amplitudes mapped to x through oscillator eigenfunctions; lambda
/// families are already on the grid.
inline std::string run_wavefunction(const RunConfig& cfg) {
  validate(cfg);
  require(!families().at(cfg.family).two_mode, ErrorKind::invalid_parameter,
          "wavefunction is defined for single-mode families only");
  const Built b = build_state(cfg);
  const Grid& g = cfg.params.grid;
  std::optional<GridWavefunction> psi;
  if (b.lam) {
    psi = b.lam->wave;
  } else {
    const auto basis = sqm::hermite_functions(g, b.single->dim());
    CVector v = CVector::Zero(static_cast<Eigen::Index>(g.n_points));
    for (std::size_t n = 0; n < basis.size(); ++n) v += (*b.single)[n] * basis[n].cast<Complex>();
    psi = GridWavefunction(g, std::move(v));
  }
  if (cfg.format == "csv") {
    io::Table t{{"x", "re", "im", "density"}, {}};
    for (std::size_t i = 0; i < g.n_points; ++i) {
      const Complex c = psi->values()(static_cast<Eigen::Index>(i));
      t.rows.push_back({g.x(i), c.real(), c.imag(), std::norm(c)});
    }
    return t.to_csv();
  }
  io::JsonWriter w;
  w.begin_object().field("schema", 1).field("command", "wavefunction").field("family", cfg.family);
  detail::write_params(w, cfg.params);
  w.key("grid").begin_object().field("min", g.x_min).field("max", g.x_max()).field("points", g.n_points).end_object();
  w.field("grid_norm", psi->norm_squared());
  w.field("mean_x", psi->mean_x()).field("var_x", psi->var_x()).field("mean_p", psi->mean_p()).field("var_p", psi->var_p());
  std::vector<double> xs(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) xs[i] = g.x(i);
  w.key("x").values(xs);
  w.key("psi").values(psi->values());
  return w.end_object().str();
}

inline std::string verify_document(const RunConfig& cfg, const verify::VerifyReport& r) {
  if (cfg.format == "csv") {
    std::string out = "name,value,bound,comparator,pass\n";
    for (const auto& c : r.checks)
      out += c.name + "," + io::format_number(c.value) + "," + io::format_number(c.bound) + "," +
             (c.compare == verify::Compare::at_most ? "<=" : ">=") + "," + (c.pass ? "true" : "false") + "\n";
    return out;
  }
  io::JsonWriter w;
  w.begin_object().field("schema", 1).field("command", "verify").field("suite", r.suite);
  detail::write_params(w, cfg.params);
  w.field("dim", cfg.params.dim);
  if (cfg.tol) w.field("tolerance_override", *cfg.tol);
  w.key("checks").begin_array();
  for (const auto& c : r.checks) {
    w.begin_object().field("name", c.name).field("value", c.value).field("bound", c.bound);
    w.field("comparator", c.compare == verify::Compare::at_most ? "<=" : ">=").field("pass", c.pass).end_object();
  }
  w.end_array();
  return w.field("pass", r.passed()).end_object().str();
}

/// Default dimension: FOCKBENCH_DIM if set, else the library default.
inline std::size_t default_dim() {
  const char* env = std::getenv("FOCKBENCH_DIM");
  if (!env || !*env) return kDefaultDim;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  require(end && *end == '\0' && v >= 2, ErrorKind::invalid_dimension,
          std::string("FOCKBENCH_DIM must be an integer >= 2, got ") + env);
  return static_cast<std::size_t>(v);
}

namespace detail {

inline void emit(const RunConfig& cfg, const std::string& doc, std::ostream& out) {
  if (cfg.out.empty()) out << doc;
  else io::write_atomic(cfg.out, doc);
}

}  // namespace detail

/// Parses argv and runs one command. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"fockbench: truncated Fock-space states, identity checks and sweeps"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  const std::vector<std::string> commands{"state", "verify", "sweep", "wavefunction"};
  app.add_option("command", cfg.command, "state | verify | sweep | wavefunction")
      ->required()
      ->check(CLI::IsMember(commands));

  std::vector<std::string> family_names;
  for (const auto& [name, info] : families()) family_names.push_back(name);
  std::vector<std::string> suite_names;
  for (const auto& [name, fn] : verify::registry()) suite_names.push_back(name);

  app.add_option("--family", cfg.family)->check(CLI::IsMember(family_names));
  app.add_option("--suite", cfg.suite)->check(CLI::IsMember(suite_names));
  auto& p = cfg.params;
  app.add_option("--alpha", p.alpha, "coherent amplitude, e.g. 2 or 1+1i");
  app.add_option("--r", p.r, "squeeze magnitude");
  app.add_option("--phi", p.phi, "squeeze phase");
  app.add_option("--theta", p.theta, "Bogoliubov angle");
  app.add_option("--s", p.s, "two-mode squeeze strength");
  app.add_option("--zeta", p.zeta, "pair eigenvalue");
  app.add_option("--q", p.q, "charge sector");
  app.add_option("--k", p.k, "Bargmann index");
  app.add_option("--xi", p.xi, "SU(1,1) / squeeze parameter");
  app.add_option("--lambda", p.lambda, "isospectral deformation parameter");
  app.add_option("--z", p.z, "lambda-ladder eigenvalue");
  app.add_option("--m", p.m, "phase-ladder order");
  app.add_option("--t", p.t, "evolution time");
  app.add_option("--c", p.c, "generalized-condition center");
  std::size_t dim = 0;
  auto* dim_opt = app.add_option("--dim", dim, "Fock truncation (default FOCKBENCH_DIM or 64)");
  app.add_option("--levels", p.levels, "chi levels for lambda families")->capture_default_str();
  double gmin = -10.0, gmax = 10.0;
  std::size_t gpoints = 2001;
  app.add_option("--grid-min", gmin)->capture_default_str();
  app.add_option("--grid-max", gmax)->capture_default_str();
  app.add_option("--grid-points", gpoints)->capture_default_str();
  app.add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", cfg.out, "output path (written atomically); stdout if omitted");
  app.add_option("--tol", cfg.tol, "override every tolerance bound of a verify suite");
  app.add_option("--param", cfg.sweep.param, "swept parameter");
  app.add_option("--start", cfg.sweep.start);
  app.add_option("--stop", cfg.sweep.stop);
  app.add_option("--steps", cfg.sweep.steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }

  try {
    p.dim = dim_opt->count() > 0 ? dim : default_dim();
    require(p.dim >= 2, ErrorKind::invalid_dimension, "dim must be >= 2");
    p.grid = Grid::uniform(gmin, gmax, gpoints);
    if (cfg.command == "state") {
      detail::emit(cfg, run_state(cfg), out);
    } else if (cfg.command == "sweep") {
      detail::emit(cfg, run_sweep(cfg), out);
    } else if (cfg.command == "wavefunction") {
      detail::emit(cfg, run_wavefunction(cfg), out);
    } else {
      require(!cfg.suite.empty(), ErrorKind::invalid_parameter, "verify needs --suite");
      validate(cfg);
      const auto t0 = std::chrono::steady_clock::now();
      auto report = verify::run_suite(cfg.suite, p, cfg.tol);
      report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      detail::emit(cfg, verify_document(cfg, report), out);
      std::size_t failed = 0;
      for (const auto& c : report.checks) {
        if (c.pass) continue;
        ++failed;
        err << "FAIL " << c.name << ": " << io::format_number(c.value)
            << (c.compare == verify::Compare::at_most ? " > " : " < ") << io::format_number(c.bound) << "\n";
      }
      err << "suite " << report.suite << ": " << (report.passed() ? "pass" : "fail") << " ("
          << report.checks.size() - failed << "/" << report.checks.size() << " checks, " << report.wall_seconds
          << " s)\n";
      return report.passed() ? ok : verify_failed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return ok;
}

}  // namespace fockbench::cli

#endif  // FOCKBENCH_CLI_HPP
