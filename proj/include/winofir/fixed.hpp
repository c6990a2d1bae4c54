#pragma once

#include <cstdint>
#include <string>

#include "winofir/errors.hpp"
#include "winofir/rational.hpp"

namespace winofir {

enum class OverflowPolicy { saturate, wrap, error };
enum class RoundingMode { nearest_even, truncate };

// Two's-complement fixed-point format. A value is stored as a signed
// integer of raw units worth 2^-frac_bits each; the representable range
// is [-2^(total_bits-1-frac_bits), 2^(total_bits-1-frac_bits) - 2^-frac_bits].
struct FixedFormat {
  int total_bits = 16;
  int frac_bits = 8;
  OverflowPolicy overflow = OverflowPolicy::saturate;
  RoundingMode rounding = RoundingMode::nearest_even;

  static FixedFormat validated(int total_bits, int frac_bits,
                               OverflowPolicy overflow = OverflowPolicy::saturate,
                               RoundingMode rounding = RoundingMode::nearest_even);

  // Same range topology with one more fractional bit; lets integer-valued
  // operands survive a single halving losslessly.
  FixedFormat with_guard_bit() const;

  int64_t min_raw() const;  // -2^(total_bits-1)
  int64_t max_raw() const;  //  2^(total_bits-1) - 1

  bool operator==(const FixedFormat&) const = default;
};

std::string to_string(const FixedFormat& f);
OverflowPolicy parse_overflow_policy(std::string_view name);
RoundingMode parse_rounding_mode(std::string_view name);
std::string_view to_string(OverflowPolicy p);
std::string_view to_string(RoundingMode r);

// shift >= 0; truncate is an arithmetic right shift (floor), nearest_even
// rounds the real value value/2^shift half-to-even.
__int128 round_shift_right(__int128 value, int shift, RoundingMode mode);

// Fixed-point scalar. Arithmetic computes the exact wide result first,
// then rounds to frac_bits and applies the overflow policy. Mixing formats
// in one operation throws BackendMismatchError.
class Fixed {
 public:
  Fixed() = default;

  static Fixed from_raw(int64_t raw, const FixedFormat& fmt);
  static Fixed from_integer(int64_t value, const FixedFormat& fmt);

  int64_t raw() const { return raw_; }
  const FixedFormat& format() const { return fmt_; }

  Rational to_rational() const;  // exact
  double to_double() const;

  Fixed halved() const;  // arithmetic right shift by 1 with rounding

  friend Fixed operator+(const Fixed& a, const Fixed& b);
  friend Fixed operator-(const Fixed& a, const Fixed& b);
  friend Fixed operator*(const Fixed& a, const Fixed& b);
  Fixed operator-() const;

  bool operator==(const Fixed& other) const = default;

 private:
  Fixed(int64_t raw, const FixedFormat& fmt) : raw_(raw), fmt_(fmt) {}

  int64_t raw_ = 0;
  FixedFormat fmt_{};
};

inline Fixed halve(const Fixed& v) { return v.halved(); }

struct FixedConversion {
  Fixed value;
  bool lossless = false;
};

// Round per fmt.rounding, then apply fmt.overflow to the out-of-range part.
FixedConversion fixed_from_rational(const Rational& value, const FixedFormat& fmt);
FixedConversion fixed_from_double(double value, const FixedFormat& fmt);

std::string to_string(const Fixed& v);

}  // namespace winofir
