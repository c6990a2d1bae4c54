#include "winofir/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace winofir {

namespace {

void require_same_backend(const ScalarValue& a, const ScalarValue& b) {
  if (backend_of(a) != backend_of(b)) {
    throw BackendMismatchError(std::string("scalar backends differ: ") +
                               std::string(to_string(backend_of(a))) + " vs " +
                               std::string(to_string(backend_of(b))));
  }
}

}  // namespace

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::exact: return "exact";
    case Backend::float64: return "float64";
    case Backend::fixed: return "fixed";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  if (name == "exact") return Backend::exact;
  if (name == "float64") return Backend::float64;
  if (name == "fixed") return Backend::fixed;
  throw ParseError("unknown backend '" + std::string(name) + "'");
}

Backend backend_of(const ScalarValue& v) {
  switch (v.index()) {
    case 0: return Backend::exact;
    case 1: return Backend::float64;
    default: return Backend::fixed;
  }
}

ScalarValue add(const ScalarValue& a, const ScalarValue& b) {
  require_same_backend(a, b);
  return std::visit(
      [&](const auto& x) -> ScalarValue {
        using T = std::decay_t<decltype(x)>;
        return x + std::get<T>(b);
      },
      a);
}

ScalarValue mul(const ScalarValue& a, const ScalarValue& b) {
  require_same_backend(a, b);
  return std::visit(
      [&](const auto& x) -> ScalarValue {
        using T = std::decay_t<decltype(x)>;
        return x * std::get<T>(b);
      },
      a);
}

ScalarValue halve(const ScalarValue& a) {
  return std::visit([](const auto& x) -> ScalarValue { return halve(x); }, a);
}

ScalarConversion convert(const ScalarValue& v, const BackendSpec& target) {
  // Route through the exact rational form, which represents every fixed and
  // finite float64 value without loss.
  Rational exact;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) {
          exact = x;
        } else if constexpr (std::is_same_v<T, double>) {
          exact = rational_from_double(x);
        } else {
          exact = x.to_rational();
        }
      },
      v);

  switch (target.backend) {
    case Backend::exact:
      return {ScalarValue(exact), true};
    case Backend::float64: {
      const double d = rational_to_double(exact);
      if (!std::isfinite(d)) {
        throw OverflowError("value " + format_rational(exact) +
                            " overflows binary64");
      }
      return {ScalarValue(d), rational_from_double(d) == exact};
    }
    case Backend::fixed: {
      const FixedConversion c = fixed_from_rational(exact, target.fixed_format);
      return {ScalarValue(c.value), c.lossless};
    }
  }
  throw std::logic_error("unreachable backend");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_scalar(const ScalarValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return format_rational(x);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else {
          return to_string(x);
        }
      },
      v);
}

ScalarValue parse_scalar(std::string_view text, const BackendSpec& spec) {
  switch (spec.backend) {
    case Backend::exact:
      return parse_rational(text);
    case Backend::float64: {
      std::string s(text);
      char* end = nullptr;
      const double d = std::strtod(s.c_str(), &end);
      if (end == s.c_str() || *end != '\0') {
        throw ParseError("bad float64 literal '" + s + "'");
      }
      if (!std::isfinite(d)) {
        throw ParseError("non-finite float64 literal '" + s + "'");
      }
      return d;
    }
    case Backend::fixed:
      return fixed_from_rational(parse_rational(text), spec.fixed_format).value;
  }
  throw std::logic_error("unreachable backend");
}

}  // namespace winofir
