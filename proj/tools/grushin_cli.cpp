#include "grushin/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Numerical probes of Hardy, Hardy-Sobolev and Caffarelli-Kohn-Nirenberg inequalities on Grushin spaces"};
  app.set_version_flag("--version", std::string(GRUSHIN_VERSION));
  app.require_subcommand(1);

  grushin::CommandOptions opts;
  double tol = 0;
  std::uint64_t seed = 0;
  const std::pair<const char*, const char*> commands[] = {
      {"validate", "check a parameter tuple against its admissibility conditions"},
      {"eval", "evaluate both sides of an inequality on a trial field"},
      {"scale", "dilation experiment: fit the lambda-exponents of the three integrals"},
      {"translate", "translation experiment: growth of the integrals under far shifts"},
      {"logfam", "log-family experiment: growth in log(1/eps) on the equality trigger"},
      {"sharp", "search the near-extremal Hardy family for the best ratio"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", opts.config_path, "JSON experiment config")->required();
    sub->add_option("--out", opts.out, "write the JSON report here (CSV alongside, same stem)");
    sub->add_option("--tol", tol, "quadrature relative tolerance (overrides the config)");
    sub->add_option("--seed", seed, "seed for every random stream (overrides the config)");
    sub->add_flag("--force", opts.force, "evaluate tuples that fail their admissibility check");
    sub->callback([&, sub, name = std::string(name)] {
      opts.command = name;
      if (sub->count("--tol")) opts.tol = tol;
      if (sub->count("--seed")) opts.seed = seed;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : grushin::kExitUsage;
  }
  return grushin::run_command(opts, std::cout, std::cerr);
}
