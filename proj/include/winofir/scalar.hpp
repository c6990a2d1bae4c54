#pragma once

#include <string>
#include <variant>

#include "winofir/fixed.hpp"
#include "winofir/rational.hpp"

namespace winofir {

enum class Backend { exact, float64, fixed };

std::string_view to_string(Backend b);
Backend parse_backend(std::string_view name);

// Arithmetic backend descriptor; fixed_format is meaningful only when
// backend == Backend::fixed.
struct BackendSpec {
  Backend backend = Backend::exact;
  FixedFormat fixed_format{};

  static BackendSpec exact() { return {Backend::exact, {}}; }
  static BackendSpec float64() { return {Backend::float64, {}}; }
  static BackendSpec fixed(const FixedFormat& f) { return {Backend::fixed, f}; }

  bool operator==(const BackendSpec&) const = default;
};

// Runtime-tagged scalar for the I/O and CLI boundary; the kernels themselves
// are templates over the concrete scalar types.
using ScalarValue = std::variant<Rational, double, Fixed>;

Backend backend_of(const ScalarValue& v);

ScalarValue add(const ScalarValue& a, const ScalarValue& b);
ScalarValue mul(const ScalarValue& a, const ScalarValue& b);
ScalarValue halve(const ScalarValue& a);

struct ScalarConversion {
  ScalarValue value;
  bool lossless = false;
};

ScalarConversion convert(const ScalarValue& v, const BackendSpec& target);

// Text forms: exact prints integers or "num/den"; float64 prints a
// shortest-round-trip decimal; fixed prints the exact represented value.
std::string format_scalar(const ScalarValue& v);

// Inline literals: decimals or rationals ("3/2") for exact, strtod for
// float64; fixed parses the real value and converts with the format's
// rounding.
ScalarValue parse_scalar(std::string_view text, const BackendSpec& spec);

std::string format_double(double v);  // round-trip exact decimal

}  // namespace winofir
