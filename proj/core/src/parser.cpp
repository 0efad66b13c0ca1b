#include "sotangent/parser.hpp"

#include <cctype>
#include <string>

namespace sot {
namespace {

class Parser {
public:
  Parser(std::string_view text, std::size_t n_vars, Field field)
      : text_(text), n_(n_vars), allow_decimal_(field != Field::RationalExact) {}

  Polynomial<Rational> run() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    auto p = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

private:
  Polynomial<Rational> expr() {
    auto acc = term();
    for (;;) {
      skip_ws();
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial<Rational> term() {
    auto acc = unary();
    for (;;) {
      skip_ws();
      if (peek('*')) {
        ++pos_;
        acc *= unary();
      } else if (peek('/')) {
        const std::size_t at = ++pos_;
        auto divisor = unary();
        if (divisor.is_zero()) throw ParseError("division by zero", at);
        if (divisor.degree() != 0 || divisor.term_count() != 1)
          throw ParseError("division only by nonzero constants", at);
        acc *= Rational(1) / divisor.terms().begin()->second;
      } else if (!at_end() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || peek('('))) {
        acc *= unary();
      } else {
        return acc;
      }
    }
  }

  Polynomial<Rational> unary() {
    skip_ws();
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial<Rational> power() {
    auto base = primary();
    skip_ws();
    if (!peek('^')) return base;
    ++pos_;
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a nonnegative integer exponent", start);
    unsigned long e = 0;
    try {
      e = std::stoul(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      throw ParseError("exponent out of range", start);
    }
    if (e > 4096) throw ParseError("exponent out of range", start);
    return pow(base, static_cast<unsigned>(e));
  }

  Polynomial<Rational> primary() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      const std::size_t open = pos_++;
      auto inner = expr();
      skip_ws();
      if (!peek(')')) throw ParseError("unbalanced '('", open);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Polynomial<Rational> number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    const auto lit = text_.substr(start, pos_ - start);
    if (lit.find('.') != std::string_view::npos && !allow_decimal_)
      throw ParseError("decimal literal '" + std::string(lit) + "' not allowed under the exact field", start);
    try {
      return Polynomial<Rational>::constant(n_, parse_rational(lit, allow_decimal_));
    } catch (const ValidationError&) {
      throw ParseError("malformed number '" + std::string(lit) + "'", start);
    }
  }

  Polynomial<Rational> variable() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    return Polynomial<Rational>::variable(n_, resolve(name, start));
  }

  std::size_t resolve(const std::string& name, std::size_t at) const {
    if (n_ <= 3 && name.size() == 1) {
      const auto idx = std::string("xyz").find(name[0]);
      if (idx != std::string::npos && idx < n_) return idx;
    }
    if (name.size() >= 2 && name[0] == 'x' && name[1] != '0') {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (digits && name.size() < 8) {
        const auto k = std::stoul(name.substr(1));
        if (k >= 1 && k <= n_) return k - 1;
      }
    }
    throw ParseError("unknown variable '" + name + "'", at);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(char c) const { return !at_end() && text_[pos_] == c; }

  std::string_view text_;
  std::size_t n_;
  bool allow_decimal_;
  std::size_t pos_ = 0;
};

} // namespace

Polynomial<Rational> parse_polynomial(std::string_view text, std::size_t n_vars, Field field) {
  if (n_vars == 0) throw ValidationError("n_vars must be positive");
  return Parser(text, n_vars, field).run();
}

} // namespace sot
