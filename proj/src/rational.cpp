#include "conecalc/rational.hpp"

#include <cctype>
#include <limits>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "conecalc/error.hpp"

namespace conecalc {

  namespace {
    Integer parse_integer(std::string_view text, std::size_t offset) {
      std::size_t i = 0;
      bool negative = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
      }
      if (i == text.size()) {
        throw ParseError("expected digits", 1, offset + i + 1);
      }
      Integer value = 0;
      for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
          throw ParseError(std::string("unexpected character '") + text[i]
                               + "' in number",
                           1,
                           offset + i + 1);
        }
        value = value * 10 + (text[i] - '0');
      }
      return negative ? Integer(-value) : value;
    }
  }  // namespace

  Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Rational(parse_integer(text, 0));
    }
    Integer num = parse_integer(text.substr(0, slash), 0);
    auto    den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
      throw ParseError("denominator must be unsigned", 1, slash + 2);
    }
    Integer den = parse_integer(den_text, slash + 1);
    if (den == 0) {
      throw ParseError("zero denominator", 1, slash + 2);
    }
    return Rational(num, den);
  }

  std::string to_fraction_string(Rational const& r) {
    return numerator(r).str() + "/" + denominator(r).str();
  }

  std::string to_compact_string(Rational const& r) {
    if (denominator(r) == 1) {
      return numerator(r).str();
    }
    return to_fraction_string(r);
  }

  std::string to_decimal_string(Rational const& r) {
    using Decimal = boost::multiprecision::cpp_dec_float_50;
    Decimal value = Decimal(numerator(r)) / Decimal(denominator(r));
    return value.str(12, std::ios_base::fmtflags(0));
  }

  Integer trunc_toward_zero(Rational const& x) {
    // cpp_int division truncates toward zero.
    return numerator(x) / denominator(x);
  }

  Integer lcm_of_denominators(std::span<Rational const> values) {
    Integer m = 1;
    for (auto const& v : values) {
      Integer d = denominator(v);
      m         = m / boost::multiprecision::gcd(m, d) * d;
    }
    return m;
  }

  Rational abs(Rational const& r) {
    return r < 0 ? Rational(-r) : r;
  }

  std::int64_t to_int64(Integer const& value) {
    if (value > std::numeric_limits<std::int64_t>::max()
        || value < std::numeric_limits<std::int64_t>::min()) {
      throw BudgetExceeded("integer " + value.str() + " exceeds 64 bits");
    }
    return static_cast<std::int64_t>(value);
  }

}  // namespace conecalc
