#include "sotangent/cli/commands.hpp"

#include "sotangent/cli/json_io.hpp"
#include "sotangent/errors.hpp"
#include "sotangent/jet_lift.hpp"
#include "sotangent/optimality.hpp"
#include "sotangent/sampler.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#ifndef SOTANGENT_VERSION
#define SOTANGENT_VERSION "0.0.0"
#endif

namespace sot::cli {

namespace {

struct CsvRow {
  std::size_t direction;
  std::size_t w;
  DecaySample sample;
};

struct Context {
  const ProblemFile& problem;
  const RunOptions& options;
  PolySystem sys;
  std::vector<CsvRow> csv;
  int exit_code = kExitOk;

  void raise(int code) {
    // Inadmissible jets outrank inconclusive sampling.
    if (code == kExitInadmissible || exit_code == kExitOk) exit_code = code;
  }
};

void require_directions(const ProblemFile& p, const std::string& cmd) {
  if (p.directions.empty()) throw ValidationError("'" + cmd + "' needs a nonempty 'directions' list");
  for (const auto& u : p.directions)
    if (is_zero(u)) throw ValidationError("direction u must be nonzero");
}

std::size_t truncation(const Context& ctx) {
  if (ctx.options.truncation) return *ctx.options.truncation;
  return ctx.problem.truncation.value_or(kDefaultTruncation);
}

/// Jets to try along u: the user's candidates, else the canonical point of T^{2,a}, else 0.
std::vector<QVector> jets_for(const Context& ctx, const QVector& u) {
  if (!ctx.problem.candidates_w.empty()) return ctx.problem.candidates_w;
  if (tangent_cone_membership(ctx.sys, u)) {
    const auto s = algebraic_t2(ctx.sys, u);
    if (!s.is_empty()) return {s.point()};
  }
  return {QVector(ctx.sys.n(), Rational(0))};
}

json cmd_initial(Context& ctx) {
  json rows = json::array();
  const auto data = initial_data(ctx.sys);
  for (std::size_t i = 0; i < data.size(); ++i)
    rows.push_back({{"generator", to_string(ctx.sys[i])},
                    {"source", ctx.problem.generator_text[i]},
                    {"order", data[i].order},
                    {"initial", to_string(data[i].initial)},
                    {"next", to_string(data[i].next)}});
  return rows;
}

json cmd_tangent_cone(Context& ctx) {
  require_directions(ctx.problem, "tangent-cone");
  json rows = json::array();
  for (const auto& u : ctx.problem.directions) {
    json values = json::array();
    for (const auto& d : initial_data(ctx.sys)) values.push_back(to_json(Rational(evaluate(d.initial, u))));
    const bool in_cone = tangent_cone_membership(ctx.sys, u);
    json row = {{"direction", to_json(u)}, {"in_tangent_cone", in_cone}, {"initial_values", values}};
    row["next_form_consistent"] = in_cone ? json(next_form_consistency(ctx.sys, u)) : json(nullptr);
    rows.push_back(row);
  }
  return rows;
}

json cmd_t2a(Context& ctx) {
  require_directions(ctx.problem, "t2a");
  json rows = json::array();
  for (const auto& u : ctx.problem.directions) {
    const bool in_cone = tangent_cone_membership(ctx.sys, u);
    json warnings = json::array();
    if (!in_cone) warnings.push_back("u is not in the tangent cone of the generators, so T^2 is empty");
    rows.push_back({{"direction", to_json(u)},
                    {"in_tangent_cone", in_cone},
                    {"t2a", to_json(algebraic_t2(ctx.sys, u))},
                    {"jet_space", in_cone && next_form_consistency(ctx.sys, u)
                                      ? to_json(jet_space_t2(ctx.sys, u))
                                      : json(nullptr)},
                    {"warnings", warnings}});
  }
  return rows;
}

json classify_entry(const Context& ctx, const QVector& u) {
  if (!tangent_cone_membership(ctx.sys, u))
    return {{"direction", to_json(u)},
            {"in_tangent_cone", false},
            {"class", to_string(SurjectivityClass::None)},
            {"passing", json::array()},
            {"failed_checks", {"u is not in the tangent cone of the generators"}}};
  json out = to_json(classify(ctx.sys, u));
  out["direction"] = to_json(u);
  out["in_tangent_cone"] = true;
  return out;
}

json cmd_classify(Context& ctx) {
  require_directions(ctx.problem, "classify");
  json rows = json::array();
  for (const auto& u : ctx.problem.directions) rows.push_back(classify_entry(ctx, u));
  return rows;
}

/// Membership of w in T^2_{0,u}X: exact whenever the generators decide it, sampled otherwise.
json sample_entry(Context& ctx, const QVector& u, const QVector& w, std::size_t ui, std::size_t wi) {
  json out = {{"direction", to_json(u)}, {"w", to_json(w)}};
  if (!tangent_cone_membership(ctx.sys, u)) {
    out["verdict"] = to_string(Verdict::NotMember);
    out["method"] = "exact";
    out["reason"] = "u is not in the tangent cone of the generators, so T^2 is empty";
    return out;
  }
  const auto cert = classify(ctx.sys, u);
  if (cert.certified()) {
    out["method"] = "exact";
    out["class"] = to_string(cert.kind);
    try {
      const auto arc = lift_second_jet(ctx.sys, cert, u, w, truncation(ctx));
      out["verdict"] = to_string(Verdict::Member);
      out["arc"] = to_json(arc);
    } catch (const InadmissibleJet& e) {
      out["verdict"] = to_string(Verdict::NotMember);
      out["reason"] = std::string("w is outside T^{2,a}, which equals T^2 here: ") + e.what();
    }
    return out;
  }

  const FloatSystem fs(ctx.sys);
  const auto v = t2_membership(fs, to_double(u), to_double(w), ctx.problem.schedule, ctx.options.seed);
  for (const auto& s : v.samples) ctx.csv.push_back({ui, wi, s});
  if (v.verdict == Verdict::Inconclusive) ctx.raise(kExitInconclusive);
  json body = to_json(v);
  body.update(out);
  body["method"] = "numerical";
  body["class"] = to_string(SurjectivityClass::None);
  body["schedule"] = to_json(ctx.problem.schedule);
  return body;
}

json cmd_sample(Context& ctx) {
  require_directions(ctx.problem, "sample");
  json rows = json::array();
  for (std::size_t i = 0; i < ctx.problem.directions.size(); ++i) {
    const auto& u = ctx.problem.directions[i];
    const auto jets = jets_for(ctx, u);
    for (std::size_t k = 0; k < jets.size(); ++k) rows.push_back(sample_entry(ctx, u, jets[k], i, k));
  }
  return rows;
}

json cmd_lift(Context& ctx) {
  require_directions(ctx.problem, "lift");
  json rows = json::array();
  for (std::size_t i = 0; i < ctx.problem.directions.size(); ++i) {
    const auto& u = ctx.problem.directions[i];
    const auto jets = jets_for(ctx, u);
    for (std::size_t k = 0; k < jets.size(); ++k) {
      const auto& w = jets[k];
      json row = {{"direction", to_json(u)}, {"w", to_json(w)}};
      if (!tangent_cone_membership(ctx.sys, u)) {
        row["status"] = "INADMISSIBLE";
        row["error"] = "u is not in the tangent cone of the generators";
        ctx.raise(kExitInadmissible);
      } else if (const auto cert = classify(ctx.sys, u); cert.certified()) {
        try {
          const auto arc = lift_second_jet(ctx.sys, cert, u, w, truncation(ctx));
          row["status"] = "CLEAN";
          row["arc"] = to_json(arc);
        } catch (const InadmissibleJet& e) {
          row["status"] = "INADMISSIBLE";
          row["error"] = e.what();
          ctx.raise(kExitInadmissible);
        }
      } else {
        row["status"] = "ROUTED_TO_SAMPLER";
        row["note"] = "no surjectivity certificate along u; membership is estimated numerically";
        row["sample"] = sample_entry(ctx, u, w, i, k);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

OptimalityVerdict combine(const OptimalityReport& nec, const OptimalityReport& suf) {
  if (nec.verdict == OptimalityVerdict::NecessaryFails) return OptimalityVerdict::NecessaryFails;
  if (suf.verdict == OptimalityVerdict::SufficientHolds) return OptimalityVerdict::SufficientHolds;
  if (nec.verdict == OptimalityVerdict::NecessaryHolds && nec.exact) return OptimalityVerdict::NecessaryHolds;
  return OptimalityVerdict::Indeterminate;
}

json cmd_optimality(Context& ctx) {
  require_directions(ctx.problem, "optimality");
  if (!ctx.problem.objective) throw ValidationError("'optimality' needs an 'objective'");
  const auto& f = *ctx.problem.objective;
  const bool asserted = ctx.problem.assert_parabolic_regularity || ctx.options.assert_parabolic_regularity;

  CheckOptions opts;
  opts.schedule = ctx.problem.schedule;
  opts.seed = ctx.options.seed;
  for (auto w : ctx.problem.candidates_w) {
    w.resize(ctx.problem.real_dim(), Rational(0));
    opts.candidates_w.push_back(std::move(w));
  }

  const auto first = first_order_scan(ctx.sys, f, ctx.problem.directions);
  json rows = json::array();
  for (std::size_t i = 0; i < ctx.problem.directions.size(); ++i) {
    const auto& u = ctx.problem.directions[i];
    json row = {{"direction", to_json(u)}, {"first_order", to_json(first[i].value)}, {"critical", first[i].critical}};
    if (!tangent_cone_membership(ctx.sys, u)) {
      row["verdict"] = to_string(OptimalityVerdict::Indeterminate);
      row["notes"] = {"u is not in the tangent cone of the generators"};
    } else if (!first[i].critical) {
      row["verdict"] = to_string(OptimalityVerdict::Indeterminate);
      row["notes"] = {"not critical: only the first-order value applies along u"};
    } else {
      const auto nec = necessary_check(ctx.sys, f, u, opts);
      const auto suf = sufficient_check(ctx.sys, f, u, asserted);
      const auto verdict = combine(nec, suf);
      row = to_json(verdict == OptimalityVerdict::SufficientHolds ? suf : nec);
      row["verdict"] = to_string(verdict);
      row["necessary"] = to_json(nec);
      row["sufficient"] = to_json(suf);
    }
    rows.push_back(row);
  }
  return {{"directions", rows},
          {"coverage",
           "per-direction results; strict local minimality needs every critical direction of T_0X covered, "
           "and the directions here are user supplied"}};
}

std::vector<QVector> default_grid(std::size_t n) {
  if (n > 6) throw ValidationError("'sweep' without candidates_w builds a 3^n grid; supply candidates_w for n > 6");
  std::vector<QVector> grid;
  std::vector<int> digits(n, -1);
  while (true) {
    QVector w;
    for (int d : digits) w.emplace_back(d);
    grid.push_back(std::move(w));
    std::size_t j = n;
    while (j > 0 && digits[j - 1] == 1) digits[--j] = -1;
    if (j == 0) break;
    ++digits[j - 1];
  }
  return grid;
}

json cmd_sweep(Context& ctx) {
  require_directions(ctx.problem, "sweep");
  const auto grid = ctx.problem.candidates_w.empty() ? default_grid(ctx.sys.n()) : ctx.problem.candidates_w;
  std::vector<RVector> wd;
  for (const auto& w : grid) wd.push_back(to_double(w));
  const FloatSystem fs(ctx.sys);
  json out = json::array();
  for (std::size_t i = 0; i < ctx.problem.directions.size(); ++i) {
    const auto& u = ctx.problem.directions[i];
    const auto sweep = t2_case_sweep(fs, to_double(u), wd, ctx.problem.schedule, ctx.options.seed);
    json rows = json::array();
    for (std::size_t k = 0; k < sweep.rows.size(); ++k) {
      const auto& r = sweep.rows[k];
      for (const auto& s : r.result.samples) ctx.csv.push_back({i, k, s});
      rows.push_back({{"w", to_json(grid[k])},
                      {"verdict", to_string(r.result.verdict)},
                      {"fitted_exponent", number(r.result.fitted_exponent)}});
    }
    out.push_back({{"direction", to_json(u)},
                   {"rows", rows},
                   {"constraints", sweep.constraints},
                   {"constraints_separate", sweep.constraints_separate},
                   {"evidence", "numerical"}});
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open decay CSV '" + path + "' for writing");
  f.precision(17);
  f << "direction,w,t,d,converged\n";
  for (const auto& r : rows)
    f << r.direction << ',' << r.w << ',' << r.sample.t << ',' << r.sample.d << ',' << (r.sample.converged ? 1 : 0)
      << '\n';
}

} // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"initial", "tangent-cone", "t2a",        "classify",
                                              "lift",    "sample",       "optimality", "sweep"};
  return names;
}

CommandResult run_command(const std::string& command, const ProblemFile& problem, const RunOptions& options) {
  Context ctx{problem, options, problem.system(), {}, kExitOk};
  json result;
  if (command == "initial") result = cmd_initial(ctx);
  else if (command == "tangent-cone") result = cmd_tangent_cone(ctx);
  else if (command == "t2a") result = cmd_t2a(ctx);
  else if (command == "classify") result = cmd_classify(ctx);
  else if (command == "lift") result = cmd_lift(ctx);
  else if (command == "sample") result = cmd_sample(ctx);
  else if (command == "optimality") result = cmd_optimality(ctx);
  else if (command == "sweep") result = cmd_sweep(ctx);
  else throw ValidationError("unknown subcommand '" + command + "'");

  if (options.decay_csv) write_csv(*options.decay_csv, ctx.csv);
  return {std::move(result), ctx.exit_code};
}

int run(const std::string& command, const std::string& input_text, const RunOptions& options, std::ostream& out,
        std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  json report = {{"tool", "sotangent"},
                 {"version", SOTANGENT_VERSION},
                 {"command", command},
                 {"input_sha256", sha256_hex(input_text)}};
  int code = kExitOk;
  auto fail = [&](int c, const char* kind, const std::string& message) {
    code = c;
    report["error"] = {{"kind", kind}, {"message", message}};
    err << "sotangent " << command << ": " << message << '\n';
  };
  try {
    const auto problem = parse_problem_text(input_text);
    report["field"] = to_string(problem.field);
    auto res = run_command(command, problem, options);
    report["result"] = std::move(res.result);
    code = res.exit_code;
  } catch (const ParseError& e) {
    fail(kExitValidation, "parse", e.what());
  } catch (const ValidationError& e) {
    fail(kExitValidation, "validation", e.what());
  } catch (const PreconditionError& e) {
    fail(kExitValidation, "precondition", e.what());
  } catch (const InadmissibleJet& e) {
    fail(kExitInadmissible, "inadmissible_jet", e.what());
  } catch (const std::exception& e) {
    fail(kExitInternal, "internal", e.what());
  }
  report["exit_code"] = code;
  report["wall_time_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << report.dump(options.pretty ? 2 : -1) << '\n';
  return code;
}

} // namespace sot::cli
