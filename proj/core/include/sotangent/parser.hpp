#pragma once

#include "sotangent/polynomial.hpp"
#include "sotangent/rational.hpp"

#include <string_view>

namespace sot {

/// Parses a polynomial expression in x1..xn (aliases x, y, z when n_vars <= 3).
///
/// Accepts integer and "p/q" literals, + - * / ^ and parentheses; a coefficient may
/// precede a variable without '*' ("3x^2"). Division is only by nonzero constants.
/// Decimal literals are rejected under Field::RationalExact and read as exact decimal
/// fractions under the float fields. Throws ParseError with the offending position.
Polynomial<Rational> parse_polynomial(std::string_view text, std::size_t n_vars,
                                      Field field = Field::RationalExact);

} // namespace sot
