#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "graphmine/config.hpp"
#include "graphmine/dataset.hpp"
#include "graphmine/mining.hpp"

namespace graphmine {

enum class PipelineVariant { embedding, raw, pca };

std::string to_string(PipelineVariant v);

// Output of one end-to-end run. Patterns and the transaction database are
// kept so callers can export them; stages lists what actually executed.
struct PipelineRun {
  MiningReport report;
  PatternSet patterns;
  TransactionDb db;
  std::vector<std::string> stages;
};

PipelineRun run_pipeline(PipelineVariant variant, const Dataset& data,
                         const PipelineConfig& cfg, std::ostream* verbose_log = nullptr);

struct ReportBundle {
  std::string axis;  // variant | embedding_dim | graph_method
  std::vector<MiningReport> reports;
  std::string tool_version = "0.1.0";
  std::string dataset_digest;
  std::string config_echo;  // canonical resolved config, kept for provenance
};

// include_timings replaces the default runtime_ms = 0 with measured wall
// times, at the cost of byte-reproducibility between runs.
std::string bundle_json(const ReportBundle& bundle, bool include_timings = false);
std::string bundle_csv(const ReportBundle& bundle, bool include_timings = false);

struct CliOptions {
  std::string command;
  std::string config_path;  // empty = all defaults
  std::string data_path;
  std::string out_path;
  std::string format = "json";
  bool verbose = false;
  bool timings = false;

  // synth parameters
  long synth_n = 1000;
  long synth_d = 20;
  double synth_minority_fraction = 0.05;
  long synth_clusters = 3;
  double synth_spread = 1.0;
  std::uint64_t synth_seed = 42;
};

// Full subcommand dispatch; returns the process exit code (0 ok, 2 config
// error, 3 data error, 4 runtime error) and writes a machine-readable
// error record to err on failure.
int run_command(const CliOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace graphmine
