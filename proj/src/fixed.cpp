#include "winofir/fixed.hpp"

#include <cmath>
#include <sstream>

namespace winofir {

namespace {

__int128 pow2(int bits) { return static_cast<__int128>(1) << bits; }

// Two's-complement reduction to total_bits.
int64_t wrap_to(__int128 v, int total_bits) {
  const __int128 modulus = pow2(total_bits);
  __int128 r = v % modulus;
  if (r < 0) r += modulus;          // low total_bits as unsigned
  if (r >= pow2(total_bits - 1)) r -= modulus;
  return static_cast<int64_t>(r);
}

int64_t apply_policy(__int128 v, const FixedFormat& fmt) {
  const __int128 lo = fmt.min_raw();
  const __int128 hi = fmt.max_raw();
  if (v >= lo && v <= hi) return static_cast<int64_t>(v);
  switch (fmt.overflow) {
    case OverflowPolicy::saturate:
      return static_cast<int64_t>(v < lo ? lo : hi);
    case OverflowPolicy::wrap:
      return wrap_to(v, fmt.total_bits);
    case OverflowPolicy::error:
      throw OverflowError("fixed-point overflow in " + to_string(fmt));
  }
  return 0;  // unreachable
}

void require_same_format(const Fixed& a, const Fixed& b) {
  if (!(a.format() == b.format())) {
    throw BackendMismatchError("fixed-point formats differ: " +
                               to_string(a.format()) + " vs " +
                               to_string(b.format()));
  }
}

// Round a rational to the nearest integer per mode. truncate floors,
// matching an arithmetic right shift of the scaled value.
BigInt round_rational_to_int(const Rational& v, RoundingMode mode) {
  BigInt num = numerator_of(v);
  BigInt den = denominator_of(v);
  BigInt q = num / den;
  BigInt r = num - q * den;
  if (r < 0) {  // floor division
    q -= 1;
    r += den;
  }
  if (mode == RoundingMode::truncate) return q;
  BigInt twice = r * 2;
  if (twice > den) return q + 1;
  if (twice == den && (q % 2) != 0) return q + 1;
  return q;
}

}  // namespace

FixedFormat FixedFormat::validated(int total_bits, int frac_bits,
                                   OverflowPolicy overflow,
                                   RoundingMode rounding) {
  if (total_bits < 2 || total_bits > 64) {
    throw std::invalid_argument("fixed-point total_bits must be in [2,64], got " +
                                std::to_string(total_bits));
  }
  if (frac_bits < 0 || frac_bits >= total_bits) {
    throw std::invalid_argument("fixed-point frac_bits must be in [0,total_bits), got " +
                                std::to_string(frac_bits));
  }
  return FixedFormat{total_bits, frac_bits, overflow, rounding};
}

FixedFormat FixedFormat::with_guard_bit() const {
  return validated(total_bits, frac_bits + 1, overflow, rounding);
}

int64_t FixedFormat::min_raw() const {
  return static_cast<int64_t>(-pow2(total_bits - 1));
}

int64_t FixedFormat::max_raw() const {
  return static_cast<int64_t>(pow2(total_bits - 1) - 1);
}

std::string to_string(const FixedFormat& f) {
  std::ostringstream os;
  os << "fixed(" << f.total_bits << "," << f.frac_bits << ","
     << to_string(f.overflow) << "," << to_string(f.rounding) << ")";
  return os.str();
}

OverflowPolicy parse_overflow_policy(std::string_view name) {
  if (name == "saturate") return OverflowPolicy::saturate;
  if (name == "wrap") return OverflowPolicy::wrap;
  if (name == "error") return OverflowPolicy::error;
  throw ParseError("unknown overflow policy '" + std::string(name) + "'");
}

RoundingMode parse_rounding_mode(std::string_view name) {
  if (name == "nearest_even") return RoundingMode::nearest_even;
  if (name == "truncate") return RoundingMode::truncate;
  throw ParseError("unknown rounding mode '" + std::string(name) + "'");
}

std::string_view to_string(OverflowPolicy p) {
  switch (p) {
    case OverflowPolicy::saturate: return "saturate";
    case OverflowPolicy::wrap: return "wrap";
    case OverflowPolicy::error: return "error";
  }
  return "?";
}

std::string_view to_string(RoundingMode r) {
  switch (r) {
    case RoundingMode::nearest_even: return "nearest_even";
    case RoundingMode::truncate: return "truncate";
  }
  return "?";
}

__int128 round_shift_right(__int128 value, int shift, RoundingMode mode) {
  if (shift == 0) return value;
  const __int128 floor_part = value >> shift;
  if (mode == RoundingMode::truncate) return floor_part;
  const __int128 remainder = value - (floor_part << shift);
  const __int128 half = pow2(shift - 1);
  if (remainder > half) return floor_part + 1;
  if (remainder == half) return (floor_part & 1) ? floor_part + 1 : floor_part;
  return floor_part;
}

Fixed Fixed::from_raw(int64_t raw, const FixedFormat& fmt) {
  FixedFormat::validated(fmt.total_bits, fmt.frac_bits, fmt.overflow, fmt.rounding);
  if (raw < fmt.min_raw() || raw > fmt.max_raw()) {
    throw std::invalid_argument("raw value " + std::to_string(raw) +
                                " does not fit " + to_string(fmt));
  }
  return Fixed(raw, fmt);
}

Fixed Fixed::from_integer(int64_t value, const FixedFormat& fmt) {
  const __int128 raw = static_cast<__int128>(value) << fmt.frac_bits;
  return Fixed(apply_policy(raw, fmt), fmt);
}

Rational Fixed::to_rational() const {
  return Rational(BigInt(raw_), BigInt(pow2(fmt_.frac_bits)));
}

double Fixed::to_double() const {
  return std::ldexp(static_cast<double>(raw_), -fmt_.frac_bits);
}

Fixed Fixed::halved() const {
  const __int128 r = round_shift_right(raw_, 1, fmt_.rounding);
  return Fixed(static_cast<int64_t>(r), fmt_);  // always in range
}

Fixed operator+(const Fixed& a, const Fixed& b) {
  require_same_format(a, b);
  const __int128 sum = static_cast<__int128>(a.raw_) + b.raw_;
  return Fixed(apply_policy(sum, a.fmt_), a.fmt_);
}

Fixed operator-(const Fixed& a, const Fixed& b) {
  require_same_format(a, b);
  const __int128 diff = static_cast<__int128>(a.raw_) - b.raw_;
  return Fixed(apply_policy(diff, a.fmt_), a.fmt_);
}

Fixed operator*(const Fixed& a, const Fixed& b) {
  require_same_format(a, b);
  const __int128 product = static_cast<__int128>(a.raw_) * b.raw_;
  const __int128 rescaled =
      round_shift_right(product, a.fmt_.frac_bits, a.fmt_.rounding);
  return Fixed(apply_policy(rescaled, a.fmt_), a.fmt_);
}

Fixed Fixed::operator-() const {
  const __int128 neg = -static_cast<__int128>(raw_);
  return Fixed(apply_policy(neg, fmt_), fmt_);
}

FixedConversion fixed_from_rational(const Rational& value, const FixedFormat& fmt) {
  const Rational scaled = value * Rational(BigInt(pow2(fmt.frac_bits)));
  BigInt rounded = round_rational_to_int(scaled, fmt.rounding);
  if (rounded < fmt.min_raw() || rounded > fmt.max_raw()) {
    switch (fmt.overflow) {
      case OverflowPolicy::saturate:
        rounded = rounded < 0 ? BigInt(fmt.min_raw()) : BigInt(fmt.max_raw());
        break;
      case OverflowPolicy::wrap: {
        const BigInt modulus = BigInt(1) << fmt.total_bits;
        BigInt r = rounded % modulus;
        if (r < 0) r += modulus;
        if (r >= (BigInt(1) << (fmt.total_bits - 1))) r -= modulus;
        rounded = r;
        break;
      }
      case OverflowPolicy::error:
        throw OverflowError("fixed-point overflow converting " +
                            format_rational(value) + " to " + to_string(fmt));
    }
  }
  Fixed result = Fixed::from_raw(rounded.convert_to<int64_t>(), fmt);
  const bool lossless = result.to_rational() == value;
  return FixedConversion{result, lossless};
}

FixedConversion fixed_from_double(double value, const FixedFormat& fmt) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite value cannot be converted to fixed point");
  }
  return fixed_from_rational(rational_from_double(value), fmt);
}

std::string to_string(const Fixed& v) {
  return format_rational(v.to_rational());
}

}  // namespace winofir
