#pragma once

// Exact tropical scalars over the min-plus or max-plus semiring.

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace tropiso {

using Rational = boost::multiprecision::mpq_rational;

/// Parses "p", "p/q", or a decimal such as "-0.125" / "1.5e-3" exactly.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

/// The exact rational equal to a finite double.
Rational rational_from_double(double value);

double to_double(const Rational& value);

enum class Semiring { MinPlus, MaxPlus };

Semiring opposite(Semiring s);
std::string_view semiring_name(Semiring s);  // "min" | "max"
Semiring parse_semiring(std::string_view name);

/// A finite rational or Bottom, the neutral element of tropical addition.
/// Bottom reads as -inf in max-plus and +inf in min-plus; the semiring is
/// carried by the enclosing matrix, so negating a matrix and flipping its
/// semiring maps Bottom to Bottom.
class TropScalar {
 public:
  TropScalar() = default;  // Bottom
  TropScalar(Rational v) : value_(std::move(v)) {}
  TropScalar(long v) : value_(Rational(v)) {}
  TropScalar(int v) : value_(Rational(v)) {}

  static TropScalar bottom() { return TropScalar(); }

  bool is_bottom() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  /// Throws BottomEntryError on Bottom.
  const Rational& value() const;

  friend bool operator==(const TropScalar&, const TropScalar&) = default;

 private:
  std::optional<Rational> value_;
};

/// Tropical addition: min or max, with Bottom neutral.
TropScalar trop_add(Semiring s, const TropScalar& a, const TropScalar& b);

/// Tropical multiplication: ordinary sum, Bottom absorbing.
TropScalar trop_mul(const TropScalar& a, const TropScalar& b);

/// True when `a` is strictly better than `b` in the semiring's order
/// (larger for max-plus, smaller for min-plus). Bottom is worst.
bool trop_better(Semiring s, const TropScalar& a, const TropScalar& b);

/// "-inf" / "inf" for Bottom depending on the semiring.
std::string format_scalar(Semiring s, const TropScalar& x);

/// Accepts rationals, decimals and the Bottom token of the semiring.
/// The opposite infinity is rejected.
TropScalar parse_scalar(Semiring s, std::string_view text);

}  // namespace tropiso
