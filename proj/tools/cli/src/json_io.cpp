#include "sotangent/cli/json_io.hpp"

#include "sotangent/errors.hpp"

#include <cmath>

namespace sot::cli {

json to_json(const Rational& q) { return to_string(q); }

json to_json(const QVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

json to_json(const std::vector<QVector>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json to_json(const AffineSubspace& s) {
  if (s.is_empty()) return {{"kind", "empty"}};
  return {{"kind", "nonempty"}, {"point", to_json(s.point())}, {"basis", to_json(s.basis())}};
}

json to_json(const Certificate& c) {
  json passing = json::array();
  for (auto k : c.passing) passing.push_back(to_string(k));
  json out = {{"class", to_string(c.kind)}, {"passing", passing}, {"failed_checks", c.failed_checks}};
  if (c.certified()) {
    json cols = json::array();
    for (auto j : c.block_columns) cols.push_back(j);
    out["witness"] = {{"matrix", to_json(c.gradient_matrix)},
                      {"rank", c.rank},
                      {"block_columns", cols},
                      {"block_determinant", to_json(c.block_determinant)},
                      {"orders", c.orders}};
  }
  return out;
}

json to_json(const JetArc& arc) {
  json coeffs = json::array();
  for (const auto& c : arc.series.coeffs()) coeffs.push_back(to_json(c));
  return {{"order", arc.order()},
          {"coeffs", coeffs},
          {"residual_orders", arc.residual_orders},
          {"certificate", to_string(arc.certificate.kind)}};
}

json to_json(const Infimum& inf) {
  json out = {{"kind", to_string(inf.kind)}};
  if (inf.kind == Infimum::Kind::Finite) out["value"] = to_json(inf.value);
  return out;
}

json to_json(const DecaySchedule& s) {
  json ts = json::array();
  for (double t : s.t_values) ts.push_back(number(t));
  return {{"t_values", ts},
          {"project_tol", number(s.project_tol)},
          {"decay_exponent_threshold", number(s.decay_exponent_threshold)},
          {"reject_floor", number(s.reject_floor)}};
}

json to_json(const MembershipVerdict& v) {
  json samples = json::array();
  for (const auto& s : v.samples)
    samples.push_back({{"t", number(s.t)},
                       {"d", number(s.d)},
                       {"converged", s.converged},
                       {"feasible", s.feasible},
                       {"scaled_residual", number(s.scaled_residual)},
                       {"absolute_residual", number(s.absolute_residual)}});
  return {{"verdict", to_string(v.verdict)},
          {"evidence", "numerical"},
          {"fitted_exponent", number(v.fitted_exponent)},
          {"normalized_distances", samples},
          {"diagnostics", v.diagnostics}};
}

json to_json(const OptimalityReport& r) {
  json out = {{"direction", to_json(r.direction)},
              {"first_order", to_json(r.first_order_value)},
              {"critical", r.is_critical},
              {"quadratic_term", to_json(r.quadratic_term)},
              {"infimum", to_json(r.infimum)},
              {"set_used", to_string(r.set_used)},
              {"verdict", to_string(r.verdict)},
              {"exact", r.exact},
              {"class", to_string(r.certificate.kind)},
              {"algebraic_infimum", to_json(r.algebraic_infimum)},
              {"algebraic_inconclusive", r.algebraic_inconclusive},
              {"notes", r.notes}};
  if (r.witness) out["witness"] = to_json(*r.witness);
  if (r.margin) out["margin"] = to_json(*r.margin);
  if (!r.sampled.empty()) {
    json rows = json::array();
    for (const auto& s : r.sampled)
      rows.push_back({{"w", to_json(s.w)}, {"verdict", to_string(s.verdict)}, {"value", to_json(s.value)}});
    out["sampled"] = rows;
  }
  return out;
}

Rational rational_from_json(const json& j, bool allow_decimal) {
  if (j.is_number_integer()) return parse_rational(j.dump());
  if (j.is_string()) return parse_rational(j.get<std::string>(), allow_decimal);
  if (j.is_number_float()) {
    if (!allow_decimal)
      throw ValidationError("non-integer JSON number " + j.dump() +
                            " under the rational field; write exact values as \"p/q\" strings");
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw ValidationError("non-finite number");
    const std::string text = j.dump(); // shortest round-trip form
    if (text.find_first_of("eE") == std::string::npos) return parse_rational(text, true);
    return Rational(d);
  }
  throw ValidationError("expected a number or a \"p/q\" string, got " + j.dump());
}

QVector vector_from_json(const json& j, bool allow_decimal) {
  if (!j.is_array()) throw ValidationError("expected an array of numbers, got " + j.dump());
  QVector out;
  for (const auto& x : j) out.push_back(rational_from_json(x, allow_decimal));
  return out;
}

} // namespace sot::cli
