#include "sotangent/cli/commands.hpp"
#include "sotangent/cli/problem.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sot::cli {
namespace {

using nlohmann::json;

std::string read_data(const std::string& name) {
  std::ifstream f(std::string(SOTANGENT_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  json report;
  std::string err;
};

Outcome run_text(const std::string& command, const std::string& text, RunOptions options = {}) {
  std::ostringstream out, err;
  const int code = run(command, text, options, out, err);
  return {code, json::parse(out.str()), err.str()};
}

Outcome run_file(const std::string& command, const std::string& name, RunOptions options = {}) {
  return run_text(command, read_data(name), std::move(options));
}

TEST(Problem, StrictKeys) {
  EXPECT_THROW(parse_problem_text(R"({"n": 2, "generators": ["y - x^2"], "directon": [[1, 0]]})"),
               ValidationError);
  EXPECT_THROW(parse_problem_text(R"({"n": 2, "generators": ["y"], "schedule": {"tol": 1}})"), ValidationError);
  EXPECT_THROW(parse_problem_text(R"({"generators": ["y"]})"), ValidationError);
}

TEST(Problem, GeneratorErrorsNameTheGenerator) {
  try {
    parse_problem_text(R"({"n": 2, "generators": ["y", "x +* y"]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("generators[1]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_problem_text(R"({"n": 2, "generators": ["y - x^2"], "point": [1, 2]})"), ValidationError);
  EXPECT_THROW(parse_problem_text(R"({"n": 2, "generators": ["y - x^2"], "directions": [[1, 0, 0]]})"),
               ValidationError);
}

TEST(Problem, PointIsTranslatedToOrigin) {
  const auto p = parse_problem_text(read_data("parabola_shifted.json"));
  // y - x^2 at (1, 1) + x becomes y - x^2 - 2x.
  EXPECT_EQ(to_string(p.generators[0]), "-x^2 - 2*x + y");
}

TEST(Run, ParabolaCommands) {
  auto r = run_file("t2a", "parabola.json");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto& set = r.report["result"][0];
  EXPECT_EQ(set["t2a"]["point"], json({"0", "2"}));

  r = run_file("classify", "parabola.json");
  EXPECT_EQ(r.report["result"][0]["class"], "HYPERSURFACE_NONDEG");

  r = run_file("lift", "parabola.json");
  ASSERT_EQ(r.code, kExitOk) << r.err;

  r = run_file("optimality", "parabola.json");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.report["result"]["directions"][0]["verdict"], "SUFFICIENT_HOLDS");
  EXPECT_EQ(r.report["exit_code"], 0);
  EXPECT_EQ(r.report["tool"], "sotangent");
  EXPECT_EQ(r.report["input_sha256"].get<std::string>().size(), 64u);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run_file("lift", "parabola_inadmissible.json").code, kExitInadmissible);
  EXPECT_EQ(run_text("t2a", "{ not json").code, kExitValidation);
  EXPECT_EQ(run_text("t2a", R"({"n": 2, "generators": ["y - x^"]})").code, kExitValidation);
  EXPECT_EQ(run_text("optimality", R"({"n": 2, "generators": ["y - x^2"], "directions": [[1, 0]]})").code,
            kExitValidation);
  EXPECT_EQ(run_text("frobnicate", read_data("parabola.json")).code, kExitValidation);

  // Whitney at (1, 1, 0) has no certificate, so it is sampled; an unreachable decay threshold
  // turns a member into an undecided verdict.
  const auto inconclusive = run_text("sample", R"({"n": 3, "field": "real", "generators": ["z^2 - x^3*y^3"],
      "directions": [[1, 1, 0]], "candidates_w": [[5, -3, 0]], "schedule": {"decay_exponent_threshold": 5}})");
  EXPECT_EQ(inconclusive.code, kExitInconclusive) << inconclusive.report.dump();

  const auto failed = run_file("lift", "parabola_inadmissible.json");
  EXPECT_EQ(failed.report["exit_code"], kExitInadmissible);
}

TEST(Run, ErrorsAreReportedAsJson) {
  const auto r = run_text("t2a", R"({"n": 2, "generators": ["y - x^2"], "bogus": 1})");
  EXPECT_EQ(r.report["error"]["kind"], "validation");
  EXPECT_NE(r.report["error"]["message"].get<std::string>().find("bogus"), std::string::npos);
  EXPECT_FALSE(r.report.contains("result"));
}

json without_timing(json report) {
  report.erase("wall_time_ms");
  return report;
}

TEST(Run, DeterministicOutput) {
  for (const auto& cmd : command_names()) {
    const auto a = run_file(cmd, "whitney_real.json");
    const auto b = run_file(cmd, "whitney_real.json");
    EXPECT_EQ(without_timing(a.report), without_timing(b.report)) << cmd;
    EXPECT_EQ(a.code, b.code);
  }
}

TEST(Run, PointTranslationIsMetamorphic) {
  const std::string shifted = read_data("parabola_shifted.json");
  const std::string origin = R"({"n": 2, "generators": ["y - x^2 - 2*x"], "point": [0, 0],
      "directions": [[1, 2]], "candidates_w": [[0, 2]], "objective": "y - 2*x"})";
  for (const auto& cmd : {"initial", "tangent-cone", "t2a", "classify", "lift", "optimality"}) {
    const auto a = run_text(cmd, shifted);
    const auto b = run_text(cmd, origin);
    ASSERT_EQ(a.code, b.code) << cmd << ": " << a.err << b.err;
    auto ra = a.report["result"], rb = b.report["result"];
    // The initial command echoes the generator text, which differs by construction.
    for (auto* r : {&ra, &rb})
      for (auto& row : *r)
        if (row.is_object()) row.erase("source");
    EXPECT_EQ(ra, rb) << cmd;
  }
}

TEST(Run, DecayCsv) {
  const auto path = std::filesystem::temp_directory_path() / "sotangent_cli_test_decay.csv";
  RunOptions opts;
  opts.decay_csv = path.string();
  const auto r = run_file("sample", "whitney_real.json", opts);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream f(path);
  std::string header, line;
  std::getline(f, header);
  EXPECT_EQ(header, "direction,w,t,d,converged");
  std::size_t rows = 0;
  while (std::getline(f, line)) ++rows;
  // 4 directions x 1 candidate x 17 schedule steps.
  EXPECT_EQ(rows, 4u * 17u);
  std::filesystem::remove(path);
}

TEST(Digest, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

} // namespace
} // namespace sot::cli
