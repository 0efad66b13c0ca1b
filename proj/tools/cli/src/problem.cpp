#include "sotangent/cli/problem.hpp"

#include "sotangent/cli/json_io.hpp"
#include "sotangent/errors.hpp"
#include "sotangent/parser.hpp"

#include <set>

namespace sot::cli {

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ValidationError("unknown key '" + key + "' in " + where);
}

std::size_t positive_integer(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw ValidationError("'" + key + "' must be a positive integer");
  return j.get<std::size_t>();
}

double positive_real(const json& j, const std::string& key) {
  if (!j.is_number()) throw ValidationError("schedule." + key + " must be a number");
  return j.get<double>();
}

/// Caret line under the offending character, for parse errors in a generator string.
std::string caret(const std::string& text, std::size_t position) {
  return "\n  " + text + "\n  " + std::string(std::min(position, text.size()), ' ') + "^";
}

Polynomial<Rational> parse_labeled(const std::string& text, std::size_t n_vars, Field field,
                                   const std::string& label) {
  try {
    return parse_polynomial(text, n_vars, field);
  } catch (const ParseError& e) {
    throw ParseError(label + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")) +
                         caret(text, e.position()),
                     e.position());
  }
}

std::vector<QVector> vectors(const json& j, const std::string& key, std::size_t n, bool allow_decimal) {
  if (!j.is_array()) throw ValidationError("'" + key + "' must be an array of vectors");
  std::vector<QVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto v = vector_from_json(j[i], allow_decimal);
    if (v.size() != n)
      throw ValidationError(key + "[" + std::to_string(i) + "] has dimension " + std::to_string(v.size()) +
                            ", expected " + std::to_string(n));
    out.push_back(std::move(v));
  }
  return out;
}

} // namespace

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) throw ValidationError("problem file must be a JSON object");
  reject_unknown_keys(doc,
                      {"n", "field", "generators", "point", "directions", "candidates_w", "objective", "truncation",
                       "schedule", "assert_parabolic_regularity"},
                      "problem file");
  ProblemFile p;
  if (!doc.contains("n")) throw ValidationError("missing required key 'n'");
  p.n = positive_integer(doc["n"], "n");

  if (doc.contains("field")) {
    if (!doc["field"].is_string()) throw ValidationError("'field' must be a string");
    p.field = field_from_string(doc["field"].get<std::string>());
  }
  const bool decimals = p.field != Field::RationalExact;

  if (!doc.contains("generators") || !doc["generators"].is_array() || doc["generators"].empty())
    throw ValidationError("'generators' must be a nonempty array of polynomial strings");
  std::vector<Polynomial<Rational>> raw;
  for (std::size_t i = 0; i < doc["generators"].size(); ++i) {
    const auto& g = doc["generators"][i];
    if (!g.is_string()) throw ValidationError("generators[" + std::to_string(i) + "] must be a string");
    p.generator_text.push_back(g.get<std::string>());
    raw.push_back(parse_labeled(p.generator_text.back(), p.n, p.field, "generators[" + std::to_string(i) + "]"));
  }

  p.point = QVector(p.n, Rational(0));
  if (doc.contains("point")) {
    p.point = vector_from_json(doc["point"], decimals);
    if (p.point.size() != p.n) throw ValidationError("'point' must have dimension n");
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Rational value = evaluate(raw[i], p.point);
    if (sgn(value) != 0)
      throw ValidationError("generators[" + std::to_string(i) + "] does not vanish at point (value " +
                            to_string(value) + ")");
    p.generators.push_back(translate(raw[i], p.point));
  }

  if (doc.contains("directions")) p.directions = vectors(doc["directions"], "directions", p.n, decimals);
  if (doc.contains("candidates_w")) p.candidates_w = vectors(doc["candidates_w"], "candidates_w", p.n, decimals);

  if (doc.contains("objective")) {
    if (!doc["objective"].is_string()) throw ValidationError("'objective' must be a polynomial string");
    p.objective_text = doc["objective"].get<std::string>();
    auto f = parse_labeled(*p.objective_text, p.real_dim(), p.field, "objective");
    QVector shift(p.point);
    shift.resize(p.real_dim(), Rational(0));
    p.objective = translate(f, shift);
  }

  if (doc.contains("truncation")) {
    p.truncation = positive_integer(doc["truncation"], "truncation");
    if (*p.truncation < 2) throw ValidationError("'truncation' must be at least 2");
  }

  if (doc.contains("schedule")) {
    const auto& s = doc["schedule"];
    if (!s.is_object()) throw ValidationError("'schedule' must be an object");
    reject_unknown_keys(s, {"t_values", "project_tol", "decay_exponent_threshold", "reject_floor"}, "schedule");
    if (s.contains("t_values")) {
      if (!s["t_values"].is_array()) throw ValidationError("schedule.t_values must be an array of numbers");
      p.schedule.t_values.clear();
      for (const auto& t : s["t_values"]) p.schedule.t_values.push_back(positive_real(t, "t_values"));
    }
    if (s.contains("project_tol")) p.schedule.project_tol = positive_real(s["project_tol"], "project_tol");
    if (s.contains("decay_exponent_threshold"))
      p.schedule.decay_exponent_threshold = positive_real(s["decay_exponent_threshold"], "decay_exponent_threshold");
    if (s.contains("reject_floor")) p.schedule.reject_floor = positive_real(s["reject_floor"], "reject_floor");
    p.schedule.validate();
  }

  if (doc.contains("assert_parabolic_regularity")) {
    if (!doc["assert_parabolic_regularity"].is_boolean())
      throw ValidationError("'assert_parabolic_regularity' must be a boolean");
    p.assert_parabolic_regularity = doc["assert_parabolic_regularity"].get<bool>();
  }

  p.system(); // runs the PolySystem invariants now rather than inside a subcommand
  return p;
}

ProblemFile parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("problem file is not valid JSON: ") + e.what());
  }
  return parse_problem(doc);
}

} // namespace sot::cli
