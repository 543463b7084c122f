#include "herd/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "herd/errors.hpp"

namespace herd {

std::string_view to_string(Backend backend) {
  return backend == Backend::kExact ? "exact" : "float";
}

Backend backend_from_string(std::string_view text) {
  if (text == "exact") return Backend::kExact;
  if (text == "float") return Backend::kFloat;
  throw InvalidArgumentError("unknown backend '" + std::string(text) + "'");
}

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw NumericError("non-finite value cannot become a rational");
  return Rational(value);
}

namespace {

using Integer = boost::multiprecision::mpz_int;

Integer parse_integer(std::string_view digits, std::string_view original) {
  if (digits.empty()) throw ParseError("malformed number '" + std::string(original) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("malformed number '" + std::string(original) + "'");
  return Integer(std::string(digits));
}

Integer pow10(long exponent) {
  Integer p = 1;
  for (long i = 0; i < exponent; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view original = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(original) + "'");
    return num / den;
  }

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    const Integer magnitude = parse_integer(exp_text, original);
    if (magnitude > 4000) throw ParseError("exponent out of range in '" + std::string(original) + "'");
    exponent = magnitude.convert_to<long>();
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }

  std::string digits;
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    digits = std::string(text.substr(0, dot)) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
    if (digits.empty()) throw ParseError("malformed number '" + std::string(original) + "'");
  } else {
    digits = std::string(text);
  }

  Rational value(parse_integer(digits, original));
  if (exponent > 0) value *= Rational(pow10(exponent));
  if (exponent < 0) value /= Rational(pow10(-exponent));
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool is_integer(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

std::string format_scalar(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_scalar(const Rational& value) { return format_rational(value); }

}  // namespace herd
