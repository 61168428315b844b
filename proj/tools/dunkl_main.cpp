#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dunkl/commands.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::string out_dir;
  std::string method;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int levels = 0;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "run configuration file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", o.out_dir, "output directory (overrides config)");
  sub->add_option("--seed", o.seed, "random seed (overrides config)")
      ->each([&o](const std::string&) { o.seed_set = true; });
}

dunkl::RunConfig load(const Overrides& o) {
  dunkl::RunConfig cfg = dunkl::RunConfig::from_json_file(o.config_path);
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (!o.method.empty()) cfg.method = o.method;
  if (o.seed_set) cfg.seed = o.seed;
  if (o.levels > 0) cfg.levels = o.levels;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet solver for the Dunkl Laplacian on admissible domains"};
  app.require_subcommand(1);

  Overrides o;
  CLI::App* validate = app.add_subcommand("validate", "check domain admissibility");
  CLI::App* solve = app.add_subcommand("solve", "solve the Dirichlet problem");
  CLI::App* measure = app.add_subcommand("measure", "harmonic-measure decomposition");
  CLI::App* convergence = app.add_subcommand("convergence", "grid-refinement study");
  CLI::App* identities = app.add_subcommand("identities", "algebraic identity battery");
  for (CLI::App* sub : {validate, solve, measure, convergence, identities})
    add_common(sub, o);
  solve->add_option("--method", o.method)->check(CLI::IsMember({"reduction", "direct", "both"}));
  measure->add_option("--method", o.method)
      ->check(CLI::IsMember({"reduction", "direct", "both"}));
  convergence->add_option("--method", o.method)
      ->check(CLI::IsMember({"reduction", "direct", "both"}));
  convergence->add_option("--levels", o.levels, "refinement levels")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    const dunkl::RunConfig cfg = load(o);
    if (validate->parsed()) return dunkl::cmd_validate(cfg, std::cout, std::cerr);
    if (solve->parsed()) return dunkl::cmd_solve(cfg, std::cout, std::cerr);
    if (measure->parsed()) return dunkl::cmd_measure(cfg, std::cout, std::cerr);
    if (convergence->parsed()) return dunkl::cmd_convergence(cfg, std::cout, std::cerr);
    if (identities->parsed()) return dunkl::cmd_identities(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dunkl::exit_config;
  }
  return dunkl::exit_config;
}
