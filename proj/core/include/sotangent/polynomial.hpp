#pragma once

#include "sotangent/errors.hpp"
#include "sotangent/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sot {

using Exponent = std::vector<std::uint32_t>;

inline unsigned total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

/// Graded lexicographic order: total degree first, then lexicographic with x1 most significant.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

/// Display name of variable `index` (0-based) in an `n_vars`-variate ring:
/// x, y, z when n_vars <= 3, otherwise x1..xn.
inline std::string variable_name(std::size_t index, std::size_t n_vars) {
  static const char* short_names[] = {"x", "y", "z"};
  if (n_vars <= 3) return short_names[index];
  return "x" + std::to_string(index + 1);
}

/// Sparse multivariate polynomial over K. Stored coefficients are never zero.
template <class K>
class Polynomial {
public:
  using Scalar = K;
  using TermMap = std::map<Exponent, K, GradedLexLess>;

  explicit Polynomial(std::size_t n_vars = 1) : n_vars_(n_vars) {
    if (n_vars == 0) throw ValidationError("polynomial needs at least one variable");
  }

  static Polynomial constant(std::size_t n_vars, const K& c) {
    Polynomial p(n_vars);
    p.add_term(Exponent(n_vars, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t n_vars, std::size_t index) {
    if (index >= n_vars) throw ValidationError("variable index out of range");
    Polynomial p(n_vars);
    Exponent e(n_vars, 0);
    e[index] = 1;
    p.add_term(e, ScalarTraits<K>::one());
    return p;
  }

  std::size_t n_vars() const noexcept { return n_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  void add_term(const Exponent& e, const K& c) {
    if (e.size() != n_vars_) throw ValidationError("exponent length does not match n_vars");
    if (ScalarTraits<K>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<K>::is_zero(it->second)) terms_.erase(it);
    }
  }

  K coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ScalarTraits<K>::zero() : it->second;
  }

  unsigned degree() const { return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first); }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check_same_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Polynomial& operator*=(const K& s) {
    if (ScalarTraits<K>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const K& s) { return a *= s; }
  friend Polynomial operator*(const K& s, Polynomial a) { return a *= s; }

  friend Polynomial operator-(Polynomial a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_ring(b);
    Polynomial out(a.n_vars_);
    Exponent e(a.n_vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }

private:
  void check_same_ring(const Polynomial& o) const {
    if (o.n_vars_ != n_vars_) throw ValidationError("polynomials live in rings of different dimension");
  }

  std::size_t n_vars_;
  TermMap terms_;
};

template <class K>
Polynomial<K> pow(const Polynomial<K>& base, unsigned exponent) {
  auto result = Polynomial<K>::constant(base.n_vars(), ScalarTraits<K>::one());
  auto square = base;
  while (exponent) {
    if (exponent & 1u) result *= square;
    exponent >>= 1;
    if (exponent) square = square * square;
  }
  return result;
}

/// Least total degree carrying a nonzero term; nullopt stands for the order of 0 (infinite).
template <class K>
std::optional<unsigned> order_of(const Polynomial<K>& f) {
  if (f.is_zero()) return std::nullopt;
  return total_degree(f.terms().begin()->first);
}

template <class K>
Polynomial<K> homogeneous_component(const Polynomial<K>& f, unsigned d) {
  Polynomial<K> out(f.n_vars());
  for (const auto& [e, c] : f.terms())
    if (total_degree(e) == d) out.add_term(e, c);
  return out;
}

/// f^{[*]}: the homogeneous component of degree ord(f). Zero for f = 0.
template <class K>
Polynomial<K> initial_form(const Polynomial<K>& f) {
  auto m = order_of(f);
  return m ? homogeneous_component(f, *m) : Polynomial<K>(f.n_vars());
}

/// f^{[*]+1}: the homogeneous component of degree ord(f) + 1. Zero for f = 0.
template <class K>
Polynomial<K> next_form(const Polynomial<K>& f) {
  auto m = order_of(f);
  return m ? homogeneous_component(f, *m + 1) : Polynomial<K>(f.n_vars());
}

template <class K>
Polynomial<K> derivative(const Polynomial<K>& f, std::size_t var) {
  if (var >= f.n_vars()) throw ValidationError("derivative: variable index out of range");
  Polynomial<K> out(f.n_vars());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    Exponent d = e;
    --d[var];
    out.add_term(d, c * K(static_cast<long>(e[var])));
  }
  return out;
}

template <class K>
std::vector<Polynomial<K>> gradient(const Polynomial<K>& f) {
  std::vector<Polynomial<K>> g;
  g.reserve(f.n_vars());
  for (std::size_t i = 0; i < f.n_vars(); ++i) g.push_back(derivative(f, i));
  return g;
}

/// Evaluates f at x. V may be a wider scalar than K (e.g. double coefficients at a complex point).
template <class K, class V>
V evaluate(const Polynomial<K>& f, const std::vector<V>& x) {
  if (x.size() != f.n_vars())
    throw ValidationError("evaluate: point has dimension " + std::to_string(x.size()) + ", expected " +
                          std::to_string(f.n_vars()));
  std::vector<std::vector<V>> powers(x.size());
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].empty() ? V(1) : powers[i].back() * x[i]);
  V sum(0);
  for (const auto& [e, c] : f.terms()) {
    V term(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= powers[i][e[i]];
    sum += term;
  }
  return sum;
}

template <class K, class V>
std::vector<V> evaluate_gradient(const Polynomial<K>& f, const std::vector<V>& x) {
  std::vector<V> out;
  out.reserve(f.n_vars());
  for (std::size_t i = 0; i < f.n_vars(); ++i) out.push_back(evaluate(derivative(f, i), x));
  return out;
}

/// Symmetric matrix of second partials at x0.
template <class K, class V>
std::vector<std::vector<V>> hessian_at(const Polynomial<K>& f, const std::vector<V>& x0) {
  const std::size_t n = f.n_vars();
  std::vector<std::vector<V>> h(n, std::vector<V>(n, V(0)));
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = derivative(f, i);
    for (std::size_t j = i; j < n; ++j) {
      h[i][j] = evaluate(derivative(di, j), x0);
      h[j][i] = h[i][j];
    }
  }
  return h;
}

template <class K2, class K, class Fn>
Polynomial<K2> convert(const Polynomial<K>& f, Fn&& fn) {
  Polynomial<K2> out(f.n_vars());
  for (const auto& [e, c] : f.terms()) out.add_term(e, fn(c));
  return out;
}

inline Polynomial<double> to_double(const Polynomial<Rational>& f) {
  return convert<double>(f, [](const Rational& q) { return q.get_d(); });
}

/// x -> f(x + shift), computed exactly.
template <class K>
Polynomial<K> translate(const Polynomial<K>& f, const std::vector<K>& shift) {
  const std::size_t n = f.n_vars();
  if (shift.size() != n) throw ValidationError("translate: shift dimension mismatch");
  std::vector<std::vector<Polynomial<K>>> powers(n);
  Polynomial<K> out(n);
  for (const auto& [e, c] : f.terms()) {
    auto term = Polynomial<K>::constant(n, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (!e[i]) continue;
      auto& pw = powers[i];
      if (pw.empty())
        pw.push_back(Polynomial<K>::constant(n, ScalarTraits<K>::one()));
      while (pw.size() <= e[i])
        pw.push_back(pw.back() * (Polynomial<K>::variable(n, i) + Polynomial<K>::constant(n, shift[i])));
      term *= pw[e[i]];
    }
    out += term;
  }
  return out;
}

namespace detail {

inline std::string scalar_text(const Rational& q) { return q.get_str(); }

inline std::string scalar_text(double d) {
  std::ostringstream os;
  os.precision(17);
  os << d;
  return os.str();
}

inline bool scalar_negative(const Rational& q) { return sgn(q) < 0; }
inline bool scalar_negative(double d) { return d < 0; }

} // namespace detail

/// Renders f in descending graded-lex order, e.g. "-x^2 + y".
template <class K>
std::string to_string(const Polynomial<K>& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = detail::scalar_negative(c);
    const K magnitude = negative ? K(-c) : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += '*';
      mono += variable_name(i, f.n_vars());
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    const bool unit = magnitude == K(1);
    if (mono.empty())
      os << detail::scalar_text(magnitude);
    else if (unit)
      os << mono;
    else
      os << detail::scalar_text(magnitude) << '*' << mono;
  }
  return os.str();
}

} // namespace sot
