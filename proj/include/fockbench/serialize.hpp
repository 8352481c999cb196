#ifndef FOCKBENCH_SERIALIZE_HPP
#define FOCKBENCH_SERIALIZE_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "fockbench/error.hpp"
#include "fockbench/linalg.hpp"

namespace fockbench::io {

/// 17 significant digits: round-trips any double.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

/// Streaming JSON writer that keeps insertion order. Non-finite numbers are
/// written as strings so the document stays valid JSON.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(const std::string& k) {
    separate();
    out_ << quote(k) << ':';
    after_key_ = true;
    return *this;
  }

  JsonWriter& value(double v) {
    separate();
    out_ << (std::isfinite(v) ? format_number(v) : quote(format_number(v)));
    return *this;
  }
  JsonWriter& value(int v) {
    separate();
    out_ << v;
    return *this;
  }
  JsonWriter& value(std::size_t v) {
    separate();
    out_ << v;
    return *this;
  }
  JsonWriter& value(bool v) {
    separate();
    out_ << (v ? "true" : "false");
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    separate();
    out_ << quote(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& value(Complex z) { return begin_array().value(z.real()).value(z.imag()).end_array(); }

  template <class T>
  JsonWriter& field(const std::string& k, const T& v) {
    return key(k).value(v);
  }

  JsonWriter& values(const std::vector<double>& v) {
    begin_array();
    for (double x : v) value(x);
    return end_array();
  }
  JsonWriter& values(const CVector& v) {
    begin_array();
    for (Eigen::Index i = 0; i < v.size(); ++i) value(v(i));
    return end_array();
  }

  std::string str() const { return out_.str() + "\n"; }

 private:
  JsonWriter& open(char c) {
    separate();
    out_ << c;
    first_.push_back(true);
    return *this;
  }
  JsonWriter& close(char c) {
    out_ << c;
    first_.pop_back();
    return *this;
  }
  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ << ',';
      first_.back() = false;
    }
  }

  std::ostringstream out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

/// Rectangular numeric table: one header row, comma delimiter, LF endings.
struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < headers.size(); ++i) out += (i ? "," : "") + headers[i];
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
      out += '\n';
    }
    return out;
  }

  void write_json(JsonWriter& w) const {
    w.key("columns").begin_array();
    for (const auto& h : headers) w.value(h);
    w.end_array();
    w.key("rows").begin_array();
    for (const auto& row : rows) w.values(row);
    w.end_array();
  }
};

/// Writes through a sibling temp file and renames it into place.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(f), ErrorKind::invalid_parameter, "cannot open output file " + tmp);
    f << content;
    f.flush();
    require(static_cast<bool>(f), ErrorKind::invalid_parameter, "write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::invalid_parameter, "cannot move output into place: " + ec.message());
  }
}

}  // namespace fockbench::io

#endif  // FOCKBENCH_SERIALIZE_HPP
