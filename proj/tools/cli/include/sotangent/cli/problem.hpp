#pragma once

#include "json.hpp"

#include "sotangent/polynomial.hpp"
#include "sotangent/sampler.hpp"
#include "sotangent/tangent_algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sot::cli {

/// A validated problem file. Generators and objective are already translated so the
/// reference point sits at the origin.
struct ProblemFile {
  std::size_t n = 0;
  Field field = Field::RationalExact;
  std::vector<std::string> generator_text;
  std::vector<Polynomial<Rational>> generators;
  QVector point;
  std::vector<QVector> directions;
  std::vector<QVector> candidates_w;
  std::optional<std::string> objective_text;
  std::optional<Polynomial<Rational>> objective;
  std::optional<std::size_t> truncation;
  DecaySchedule schedule = DecaySchedule::standard();
  bool assert_parabolic_regularity = false;

  PolySystem system() const { return PolySystem(n, generators, field); }
  /// Dimension of the objective's variables: n, or 2n over C.
  std::size_t real_dim() const { return field == Field::ComplexFloat ? 2 * n : n; }
};

/// Strict schema: unknown keys, wrong types and generators not vanishing at `point` are
/// ValidationErrors; polynomial syntax errors name the offending generator.
ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile parse_problem_text(const std::string& text);

} // namespace sot::cli
