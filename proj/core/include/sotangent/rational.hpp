#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sot {

using Rational = mpq_class;
using Complex = std::complex<double>;

using QVector = std::vector<Rational>;
using RVector = std::vector<double>;
using CVector = std::vector<Complex>;

/// Coefficient field of a problem. Exact rationals are the default.
enum class Field { RationalExact, RealFloat, ComplexFloat };

std::string to_string(Field field);
Field field_from_string(std::string_view name);

/// Canonical "p/q" rendering ("p" when the denominator is 1).
std::string to_string(const Rational& q);

/// Bits in numerator plus bits in denominator.
std::size_t bit_size(const Rational& q);

/// Parses "p", "p/q", or (when `allow_decimal`) a decimal literal such as "-1.25"
/// read as the exact decimal fraction.
Rational parse_rational(std::string_view text, bool allow_decimal = false);

inline double to_double(const Rational& q) { return q.get_d(); }

RVector to_double(const QVector& v);
CVector to_complex(const QVector& v);

Rational dot(const QVector& a, const QVector& b);
bool is_zero(const QVector& v);
std::string to_string(const QVector& v);

/// Scalar traits used by the templated polynomial and series code.
template <class K>
struct ScalarTraits {
  static bool is_zero(const K& x) { return x == K(0); }
  static K zero() { return K(0); }
  static K one() { return K(1); }
};

template <>
struct ScalarTraits<Rational> {
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
};

} // namespace sot
