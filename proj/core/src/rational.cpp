#include "sotangent/rational.hpp"

#include "sotangent/errors.hpp"

#include <cctype>
#include <sstream>

namespace sot {

std::string to_string(Field field) {
  switch (field) {
  case Field::RationalExact: return "rational";
  case Field::RealFloat: return "real";
  case Field::ComplexFloat: return "complex";
  }
  return "rational";
}

Field field_from_string(std::string_view name) {
  if (name == "rational") return Field::RationalExact;
  if (name == "real") return Field::RealFloat;
  if (name == "complex") return Field::ComplexFloat;
  throw ValidationError("unknown field '" + std::string(name) + "' (expected rational, real or complex)");
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::size_t bit_size(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ValidationError("malformed rational '" + std::string(text) + "'");
    mpz_class d{std::string(den)};
    if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(num)), d);
    value.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    if (!allow_decimal)
      throw ValidationError("decimal literal '" + std::string(text) + "' not allowed under the exact field");
    auto ip = body.substr(0, dot);
    auto fp = body.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw ValidationError("malformed decimal '" + std::string(text) + "'");
    std::string digits = std::string(ip) + std::string(fp);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    value = Rational(mpz_class(digits.empty() ? "0" : digits), den);
    value.canonicalize();
  } else {
    if (!all_digits(body)) throw ValidationError("malformed number '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(body)));
  }
  return negative ? Rational(-value) : value;
}

RVector to_double(const QVector& v) {
  RVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

CVector to_complex(const QVector& v) {
  CVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.emplace_back(q.get_d(), 0.0);
  return out;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw ValidationError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVector& v) {
  for (const auto& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

std::string to_string(const QVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ')';
  return os.str();
}

} // namespace sot
