#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace conecalc {

  using Integer  = boost::multiprecision::cpp_int;
  using Rational = boost::multiprecision::cpp_rational;

  // Parses `p/q`, `p`, with optional leading sign.  Throws ParseError.
  Rational parse_rational(std::string_view text);

  // Always `p/q`, denominator included even when it is 1.
  std::string to_fraction_string(Rational const& r);

  // Integers print without a denominator; used inside word grammars.
  std::string to_compact_string(Rational const& r);

  // 12 significant digits.
  std::string to_decimal_string(Rational const& r);

  // Rounds toward zero: floor for x >= 0, ceiling for x <= 0.
  Integer trunc_toward_zero(Rational const& x);

  Integer lcm_of_denominators(std::span<Rational const> values);

  Rational abs(Rational const& r);

  std::int64_t to_int64(Integer const& value);

}  // namespace conecalc
