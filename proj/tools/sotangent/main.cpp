#include "CLI11.hpp"

#include "sotangent/cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  namespace cli = sot::cli;

  CLI::App app{"Directional second-order tangent sets of polynomial-defined sets"};
  app.require_subcommand(1);

  std::string input;
  std::size_t truncation = 0;
  std::string csv;
  cli::RunOptions options;

  app.add_option("--input", input, "problem file (JSON)")->required()->check(CLI::ExistingFile);
  auto* trunc = app.add_option("--truncation", truncation, "arc truncation order N (default 8)")
                    ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  app.add_flag("--pretty", options.pretty, "indent the JSON report");
  auto* csv_opt = app.add_option("--emit-decay-csv", csv, "write (t, d(t)) samples as CSV");
  app.add_flag("--assert-parabolic-regularity", options.assert_parabolic_regularity,
               "accept parabolic regularity for sufficiency on uncertified directions");
  app.add_option("--seed", options.seed, "seed for sampler perturbations");

  const char* help[] = {
      "initial forms and next forms of the generators",
      "tangent-cone membership of each direction",
      "algebraic second-order tangent set per direction",
      "surjectivity certificate per direction",
      "lift (u, w) to an arc in X",
      "numerical membership of w in the geometric set",
      "second-order optimality report",
      "membership verdicts over a grid of w",
  };
  std::string command;
  for (std::size_t i = 0; i < cli::command_names().size(); ++i) {
    auto* sub = app.add_subcommand(cli::command_names()[i], help[i]);
    sub->fallthrough();
    sub->callback([&command, name = cli::command_names()[i]] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitValidation;
  }
  if (trunc->count()) options.truncation = truncation;
  if (csv_opt->count()) options.decay_csv = csv;

  std::ifstream in(input, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return cli::run(command, text.str(), options, std::cout, std::cerr);
}
