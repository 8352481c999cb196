#ifndef FOCKBENCH_CONFIG_HPP
#define FOCKBENCH_CONFIG_HPP

#include <cstddef>

namespace fockbench {

/// Natural units used throughout the library. This is the only place the
/// three constants appear; every formula below is written with them set to 1.
struct NaturalUnits {
  static constexpr double hbar = 1.0;
  static constexpr double mass = 1.0;
  static constexpr double omega = 1.0;
};

/// Numerical tolerances shared by constructors and diagnostics.
struct Tolerances {
  double identity = 1e-12;     // exact-arithmetic operator identities
  double state = 1e-10;        // state construction / eigen-residuals
  double exponential = 1e-10;  // matrix exponential accuracy
  double tail = 1e-10;         // allowed norm deficit of a truncated state
  double tail_fraction = 0.1;  // top fraction of the basis watched for mass
};

inline constexpr std::size_t kDefaultDim = 64;

}  // namespace fockbench

#endif  // FOCKBENCH_CONFIG_HPP
