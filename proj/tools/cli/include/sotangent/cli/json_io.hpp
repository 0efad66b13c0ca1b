#pragma once

#include "json.hpp"

#include "sotangent/jet_lift.hpp"
#include "sotangent/linalg.hpp"
#include "sotangent/optimality.hpp"
#include "sotangent/sampler.hpp"

namespace sot::cli {

using nlohmann::json;

json to_json(const Rational& q);
json to_json(const QVector& v);
json to_json(const std::vector<QVector>& rows);
json to_json(const Matrix& m);
/// Finite doubles as numbers, otherwise "inf", "-inf" or "nan".
json number(double x);

json to_json(const AffineSubspace& s);
json to_json(const Certificate& c);
json to_json(const JetArc& arc);
json to_json(const Infimum& inf);
json to_json(const DecaySchedule& s);
json to_json(const MembershipVerdict& v);
json to_json(const OptimalityReport& r);

/// "3", "-1/2" or a JSON integer; decimals only when `allow_decimal`.
Rational rational_from_json(const json& j, bool allow_decimal);
QVector vector_from_json(const json& j, bool allow_decimal);

} // namespace sot::cli
