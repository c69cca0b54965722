#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "infswitch/runner.hpp"

namespace {

struct CommonArgs {
  std::string config;
  infswitch::CliOverrides overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_replicas) {
  cmd->add_option("--config", args.config, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&args](std::uint64_t s) { args.overrides.seed = s; },
      "override dynamics.seed");
  cmd->add_option_function<std::string>(
      "--out", [&args](const std::string& d) { args.overrides.out_dir = d; },
      "override output.dir");
  if (with_replicas)
    cmd->add_option_function<int>(
        "--replicas", [&args](int r) { args.overrides.replicas = r; },
        "number of independent replicas (streams 0..K-1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated tempering / infinite-switching sampling toolkit"};
  app.require_subcommand(1);

  CommonArgs run_args, adapt_args, ldp_args, ref_args;
  CLI::App* run = app.add_subcommand("run", "run a tempering trajectory");
  add_common(run, run_args, true);
  CLI::App* adapt =
      app.add_subcommand("adapt", "iterate the partition-function weights");
  add_common(adapt, adapt_args, false);
  CLI::App* ldp =
      app.add_subcommand("ldp", "evaluate the large-deviation rate functionals");
  add_common(ldp, ldp_args, false);
  CLI::App* reference =
      app.add_subcommand("reference", "export quadrature reference values");
  add_common(reference, ref_args, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) infswitch::cmd_run(run_args.config, run_args.overrides);
    if (adapt->parsed()) infswitch::cmd_adapt(adapt_args.config, adapt_args.overrides);
    if (ldp->parsed()) infswitch::cmd_ldp(ldp_args.config, ldp_args.overrides);
    if (reference->parsed())
      infswitch::cmd_reference(ref_args.config, ref_args.overrides);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
