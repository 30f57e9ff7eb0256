#include "ofa/rational.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "ofa/errors.hpp"

namespace ofa {

namespace {

boost::multiprecision::cpp_int pow10(long exponent) {
  boost::multiprecision::cpp_int p = 1;
  for (long i = 0; i < exponent; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  const auto bad = [&] { return ConfigInvalid("not a decimal number: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }

  boost::multiprecision::cpp_int digits = 0;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch >= '0' && ch <= '9') {
      digits = digits * 10 + (ch - '0');
      if (seen_point) ++scale;
      seen_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();

  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw bad();
    ++pos;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) throw bad();
  }

  exponent -= scale;
  Rational value = exponent >= 0 ? Rational(digits * pow10(exponent))
                                 : Rational(digits, pow10(-exponent));
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw ConfigInvalid("non-finite number");
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  if (ec != std::errc()) throw ConfigInvalid("cannot format number");
  return parse_decimal(std::string_view(buffer, static_cast<std::size_t>(ptr - buffer)));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace ofa
