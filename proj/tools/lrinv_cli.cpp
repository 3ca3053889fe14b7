#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lrinv/config.hpp"
#include "lrinv/scenario.hpp"

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  int jobs = 1;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Common& c, bool needs_config) {
  auto* opt = sub->add_option("--config", c.config, "scenario config (JSON)");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--jobs", c.jobs, "concurrent branches or sweep points")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "seed for randomized property suites");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solutions of Lie-algebraic time-dependent Schrodinger equations"};
  app.require_subcommand(1);
  Common common;
  auto* run = app.add_subcommand("run", "solve a scenario and compare with the oracle");
  auto* verify = app.add_subcommand("verify", "run the property suites for a scenario");
  auto* berry = app.add_subcommand("berry", "adiabatic geometric-phase sweep");
  auto* catalog = app.add_subcommand("catalog", "list model presets and exclusions");
  for (auto* sub : {run, verify, berry}) add_common(sub, common, true);
  add_common(catalog, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lrinv::kExitConfig;
  }

  if (catalog->parsed()) {
    lrinv::print_catalog(std::cout);
    return lrinv::kExitPass;
  }

  lrinv::ScenarioConfig cfg;
  try {
    cfg = lrinv::load_config(common.config);
  } catch (const lrinv::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return lrinv::kExitConfig;
  }
  if (common.seed) cfg.seed = *common.seed;
  const lrinv::RunOptions opts{common.out, common.jobs, common.seed};

  if (run->parsed()) return lrinv::run_command(cfg, opts, std::cout);
  if (verify->parsed()) return lrinv::verify_command(cfg, opts, std::cout);
  return lrinv::berry_command(cfg, opts, std::cout);
}
