#include "tropiso/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "tropiso/errors.hpp"

namespace tropiso {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// mpz_int reads a leading 0 as an octal prefix, so strip it first.
boost::multiprecision::mpz_int decimal_integer(std::string_view digits) {
  std::size_t k = digits.find_first_not_of('0');
  if (k == std::string_view::npos) return 0;
  return boost::multiprecision::mpz_int(std::string(digits.substr(k)));
}

boost::multiprecision::mpz_int pow10(long e) {
  boost::multiprecision::mpz_int r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    bool neg = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      neg = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    boost::multiprecision::mpz_int p = decimal_integer(num), q = decimal_integer(den);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    return neg ? Rational(-r) : r;
  }

  // Decimal with optional exponent.
  bool neg = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = body.substr(e + 1);
    bool eneg = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      eneg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
      throw ParseError("malformed exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_part));
    if (eneg) exponent = -exponent;
    body = body.substr(0, e);
  }
  std::string_view int_part = body, frac_part;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    int_part = body.substr(0, dot);
    frac_part = body.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty())
    throw ParseError("malformed number '" + std::string(text) + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw ParseError("malformed number '" + std::string(text) + "'");

  std::string digits = std::string(int_part) + std::string(frac_part);
  boost::multiprecision::mpz_int mantissa = decimal_integer(digits);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  Rational r = scale >= 0 ? Rational(mantissa, pow10(scale)) : Rational(mantissa * pow10(-scale));
  return neg ? Rational(-r) : r;
}

std::string format_rational(const Rational& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw ParseError("non-finite floating-point value");
  return Rational(value);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Semiring opposite(Semiring s) {
  return s == Semiring::MinPlus ? Semiring::MaxPlus : Semiring::MinPlus;
}

std::string_view semiring_name(Semiring s) { return s == Semiring::MinPlus ? "min" : "max"; }

Semiring parse_semiring(std::string_view name) {
  if (name == "min") return Semiring::MinPlus;
  if (name == "max") return Semiring::MaxPlus;
  throw ParseError("unknown semiring '" + std::string(name) + "' (expected min or max)");
}

const Rational& TropScalar::value() const {
  if (!value_) throw BottomEntryError("tropical zero (infinite) entry where a finite value is required");
  return *value_;
}

TropScalar trop_add(Semiring s, const TropScalar& a, const TropScalar& b) {
  return trop_better(s, b, a) ? b : a;
}

TropScalar trop_mul(const TropScalar& a, const TropScalar& b) {
  if (a.is_bottom() || b.is_bottom()) return TropScalar::bottom();
  return TropScalar(Rational(a.value() + b.value()));
}

bool trop_better(Semiring s, const TropScalar& a, const TropScalar& b) {
  if (a.is_bottom()) return false;
  if (b.is_bottom()) return true;
  return s == Semiring::MaxPlus ? a.value() > b.value() : a.value() < b.value();
}

std::string format_scalar(Semiring s, const TropScalar& x) {
  if (x.is_bottom()) return s == Semiring::MaxPlus ? "-inf" : "inf";
  return format_rational(x.value());
}

TropScalar parse_scalar(Semiring s, std::string_view text) {
  std::string_view t = trim(text);
  if (t == "-inf" || t == "inf" || t == "+inf") {
    bool negative = t.front() == '-';
    if ((s == Semiring::MaxPlus) == negative) return TropScalar::bottom();
    throw ParseError("'" + std::string(t) + "' is not the tropical zero of the " +
                     std::string(semiring_name(s)) + "-plus semiring");
  }
  return TropScalar(parse_rational(t));
}

}  // namespace tropiso
