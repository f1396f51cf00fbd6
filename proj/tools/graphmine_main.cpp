#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "graphmine/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"similarity-graph embedding and minority pattern mining"};
  app.require_subcommand(1);

  graphmine::CliOptions opts;

  auto add_common = [&opts](CLI::App* cmd, bool needs_data) {
    cmd->add_option("--config", opts.config_path, "JSON config path (defaults apply)")
        ->check(CLI::ExistingFile);
    auto* data =
        cmd->add_option("--data", opts.data_path, "input CSV with a label column");
    if (needs_data) data->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_path, "output path")->required();
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--verbose", opts.verbose, "stage and epoch logging to stderr");
    cmd->add_flag("--timings", opts.timings,
                  "emit measured runtime_ms (breaks byte-reproducibility)");
  };

  auto* synth = app.add_subcommand("synth", "generate a seeded imbalanced dataset");
  synth->add_option("--out", opts.out_path, "output CSV path")->required();
  synth->add_option("--n", opts.synth_n, "sample count");
  synth->add_option("--d", opts.synth_d, "feature count");
  synth->add_option("--minority-fraction", opts.synth_minority_fraction,
                    "fraction of minority samples");
  synth->add_option("--clusters", opts.synth_clusters, "minority sub-cluster count");
  synth->add_option("--spread", opts.synth_spread, "minority cluster spread");
  synth->add_option("--seed", opts.synth_seed, "generator seed");

  add_common(app.add_subcommand("mine", "embed, discretize and mine one dataset"),
             true);
  add_common(app.add_subcommand(
                 "compare", "embedding vs raw vs pca variants on one dataset"),
             true);
  add_common(app.add_subcommand("sweep-dims", "embedding pipeline across dimensions"),
             true);
  add_common(
      app.add_subcommand("sweep-graphs", "embedding pipeline across graph methods"),
      true);
  add_common(app.add_subcommand("export-graph", "edge list and degree statistics"),
             true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  opts.command = app.get_subcommands().front()->get_name();
  return graphmine::run_command(opts, std::cout, std::cerr);
}
