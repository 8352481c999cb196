#ifndef FOCKBENCH_ERROR_HPP
#define FOCKBENCH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fockbench {

enum class ErrorKind {
  invalid_dimension,
  invalid_parameter,
  shape,
  numeric,
  not_normalized,
  range,
  singularity,
  truncation,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::shape: return "shape";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::not_normalized: return "not-normalized";
    case ErrorKind::range: return "range";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::truncation: return "truncation";
  }
  return "unknown";
}

/// Every failure raised by the library. The kind lets callers (the CLI in
/// particular) map errors onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace fockbench

#endif  // FOCKBENCH_ERROR_HPP
