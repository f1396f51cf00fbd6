#include "graphmine/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "graphmine/gnn.hpp"
#include "graphmine/graph.hpp"
#include "graphmine/pca.hpp"
#include "graphmine/rng.hpp"
#include "graphmine/trainer.hpp"
#include "graphmine/util.hpp"

namespace graphmine {

std::string to_string(PipelineVariant v) {
  switch (v) {
    case PipelineVariant::embedding: return "embedding";
    case PipelineVariant::raw: return "raw";
    case PipelineVariant::pca: return "pca";
  }
  return "embedding";
}

PipelineRun run_pipeline(PipelineVariant variant, const Dataset& data,
                         const PipelineConfig& cfg, std::ostream* verbose_log) {
  const auto t0 = std::chrono::steady_clock::now();
  PipelineRun run;

  auto stage = [&run, verbose_log](const char* name) {
    run.stages.push_back(name);
    if (verbose_log) *verbose_log << "[stage] " << name << '\n';
  };

  Dataset work = data;
  if (cfg.data.standardize) {
    stage("standardize");
    work = standardize(data).first;
  }

  Matrix mined_features;
  int reported_dim = 0;
  std::string graph_method = "none";

  switch (variant) {
    case PipelineVariant::embedding: {
      stage("graph");
      const SampleGraph graph = build_graph(work.features, cfg.graph_config(), cfg.seed);
      stage("train");
      const ModelDims dims{static_cast<int>(work.n_features()), cfg.model.hidden_dim,
                           cfg.model.embedding_dim};
      const GnnModel initial = init_model(dims, derive_seed(cfg.seed, "init"));
      const TrainHistory hist =
          train(initial, graph, work, cfg.train_config(), verbose_log);
      stage("embed");
      mined_features = extract_embeddings(hist.final_model, graph, work);
      reported_dim = cfg.model.embedding_dim;
      graph_method = to_string(cfg.graph.method);
      break;
    }
    case PipelineVariant::raw: {
      mined_features = work.features;
      reported_dim = 0;
      break;
    }
    case PipelineVariant::pca: {
      stage("pca");
      const int rank = static_cast<int>(
          std::min<Index>(cfg.model.embedding_dim, work.n_features()));
      const PcaModel pca = pca_fit(work.features, rank);
      mined_features = pca_transform(pca, work.features);
      reported_dim = rank;
      break;
    }
  }

  stage("discretize");
  const BinningModel binning = fit_quantile_bins(mined_features, cfg.discretize.bins);
  run.db = to_transactions(mined_features, work.labels, binning);

  stage("mine");
  run.patterns =
      fp_growth(run.db, cfg.mining.scope, cfg.mining.min_support, cfg.mining.max_len);
  if (cfg.mining.maximal_only) run.patterns = maximal_only(run.patterns);

  stage("report");
  Provenance prov;
  prov.variant = to_string(variant);
  prov.graph_method = graph_method;
  prov.embedding_dim = reported_dim;
  prov.seed = cfg.seed;
  prov.config_digest = cfg.digest();
  const auto t1 = std::chrono::steady_clock::now();
  prov.runtime_ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  run.report = mining_report(run.patterns, run.db, prov);
  return run;
}

namespace {

using nlohmann::json;

json report_json(const MiningReport& r, bool include_timings) {
  json j;
  j["variant"] = r.provenance.variant;
  j["graph_method"] = r.provenance.graph_method;
  j["embedding_dim"] = r.provenance.embedding_dim;
  j["num_patterns"] = r.num_patterns;
  j["avg_support"] = r.avg_support;
  j["avg_confidence"] = r.avg_confidence;
  j["minority_coverage"] = r.minority_coverage;
  j["seed"] = r.provenance.seed;
  j["config_digest"] = r.provenance.config_digest;
  j["runtime_ms"] = include_timings ? r.provenance.runtime_ms : 0;
  return j;
}

}  // namespace

std::string bundle_json(const ReportBundle& bundle, bool include_timings) {
  json j;
  j["tool_version"] = bundle.tool_version;
  j["dataset_digest"] = bundle.dataset_digest;
  j["axis"] = bundle.axis;
  j["reports"] = json::array();
  for (const auto& r : bundle.reports) {
    j["reports"].push_back(report_json(r, include_timings));
  }
  return j.dump(2) + "\n";
}

std::string bundle_csv(const ReportBundle& bundle, bool include_timings) {
  std::ostringstream out;
  out << "variant,graph_method,embedding_dim,num_patterns,avg_support,"
         "avg_confidence,minority_coverage,seed,config_digest,runtime_ms\n";
  for (const auto& r : bundle.reports) {
    out << r.provenance.variant << ',' << r.provenance.graph_method << ','
        << r.provenance.embedding_dim << ',' << r.num_patterns << ','
        << format_double(r.avg_support) << ',' << format_double(r.avg_confidence)
        << ',' << format_double(r.minority_coverage) << ',' << r.provenance.seed
        << ',' << r.provenance.config_digest << ','
        << (include_timings ? r.provenance.runtime_ms : 0) << '\n';
  }
  return out.str();
}

namespace {

std::string error_record(const Error& e) {
  json j;
  j["error"]["code"] = e.code();
  j["error"]["kind"] = e.kind() == ErrorKind::Config  ? "config"
                       : e.kind() == ErrorKind::Data  ? "data"
                                                      : "runtime";
  j["error"]["message"] = e.what();
  return j.dump() + "\n";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::Data: return 3;
    case ErrorKind::Runtime: return 4;
  }
  return 4;
}

void write_bundle(const ReportBundle& bundle, const CliOptions& opts) {
  const std::string text = opts.format == "csv" ? bundle_csv(bundle, opts.timings)
                                                : bundle_json(bundle, opts.timings);
  write_file(opts.out_path, text);
}

Dataset load_input(const CliOptions& opts, const PipelineConfig& cfg,
                   std::string& digest_out) {
  const std::string bytes = read_file(opts.data_path);
  digest_out = hex16(fnv1a64(bytes));
  return load_csv(opts.data_path, cfg.data.label_column, cfg.data.drop_columns);
}

int dispatch(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  std::ostream* vlog = opts.verbose ? &err : nullptr;

  // reject unknown subcommands before touching config or data files
  static const std::array<const char*, 6> kCommands = {
      "synth", "mine", "compare", "sweep-dims", "sweep-graphs", "export-graph"};
  if (std::find_if(kCommands.begin(), kCommands.end(), [&](const char* c) {
        return opts.command == c;
      }) == kCommands.end()) {
    throw Error(ErrorKind::Config, "UnknownCommand",
                "unknown subcommand: " + opts.command);
  }

  if (opts.command == "synth") {
    SyntheticSpec spec;
    spec.n_samples = opts.synth_n;
    spec.n_features = opts.synth_d;
    spec.minority_fraction = opts.synth_minority_fraction;
    spec.n_minority_clusters = opts.synth_clusters;
    spec.cluster_spread = opts.synth_spread;
    spec.seed = opts.synth_seed;
    const SyntheticData data = generate_synthetic(spec);
    write_csv(data.dataset, opts.out_path);
    out << "wrote " << data.dataset.n_samples() << " samples ("
        << data.dataset.n_features() << " features) to " << opts.out_path << '\n';
    return 0;
  }

  const PipelineConfig cfg =
      opts.config_path.empty() ? PipelineConfig{} : parse_config(opts.config_path);

  std::string dataset_digest;
  const Dataset data = load_input(opts, cfg, dataset_digest);

  if (opts.command == "export-graph") {
    Dataset work = data;
    if (cfg.data.standardize) work = standardize(data).first;
    const SampleGraph graph = build_graph(work.features, cfg.graph_config(), cfg.seed);
    write_file(opts.out_path, edge_list_csv(graph));

    // per-class degree statistics stand in for a picture of the structure
    auto class_stats = [&graph, &work](int label) {
      DegreeStats s;
      long count = 0;
      double mn = 1e300, mx = 0.0, total = 0.0;
      for (int i = 0; i < graph.n_nodes; ++i) {
        if (work.labels[static_cast<std::size_t>(i)] != label) continue;
        double deg = 0.0;
        for (const auto& e : graph.adjacency[static_cast<std::size_t>(i)]) {
          if (e.neighbor != i) deg += 1.0;
        }
        mn = std::min(mn, deg);
        mx = std::max(mx, deg);
        total += deg;
        ++count;
      }
      s.n_nodes = count;
      if (count > 0) {
        s.min_degree = mn;
        s.max_degree = mx;
        s.mean_degree = total / static_cast<double>(count);
        s.n_edges = static_cast<long>(total);
      }
      return s;
    };

    auto stats_json = [](const DegreeStats& s) {
      json j;
      j["n_nodes"] = s.n_nodes;
      j["n_directed_edges"] = s.n_edges;
      j["min_degree"] = s.min_degree;
      j["max_degree"] = s.max_degree;
      j["mean_degree"] = s.mean_degree;
      return j;
    };

    json j;
    j["method"] = to_string(graph.method);
    if (graph.sigma) j["sigma"] = *graph.sigma;
    j["overall"] = stats_json(degree_stats(graph));
    j["minority"] = stats_json(class_stats(1));
    j["majority"] = stats_json(class_stats(0));
    write_file(opts.out_path + ".stats.json", j.dump(2) + "\n");
    out << "wrote edge list to " << opts.out_path << '\n';
    return 0;
  }

  ReportBundle bundle;
  bundle.dataset_digest = dataset_digest;
  bundle.config_echo = cfg.canonical();

  if (opts.command == "mine") {
    bundle.axis = "variant";
    PipelineRun run = run_pipeline(PipelineVariant::embedding, data, cfg, vlog);
    bundle.reports.push_back(run.report);
    write_bundle(bundle, opts);
    write_file(opts.out_path + ".patterns.csv", patterns_csv(run.patterns, run.db));
    write_file(opts.out_path + ".transactions.txt", transactions_text(run.db));
    out << "mined " << run.report.num_patterns << " patterns, wrote "
        << opts.out_path << '\n';
    return 0;
  }

  if (opts.command == "compare") {
    bundle.axis = "variant";
    for (const auto variant : {PipelineVariant::embedding, PipelineVariant::raw,
                               PipelineVariant::pca}) {
      bundle.reports.push_back(run_pipeline(variant, data, cfg, vlog).report);
    }
    write_bundle(bundle, opts);
    out << "wrote " << bundle.reports.size() << " reports to " << opts.out_path << '\n';
    return 0;
  }

  if (opts.command == "sweep-dims") {
    bundle.axis = "embedding_dim";
    for (const int dim : {32, 64, 128, 256}) {
      PipelineConfig point = cfg;
      point.model.embedding_dim = dim;
      bundle.reports.push_back(
          run_pipeline(PipelineVariant::embedding, data, point, vlog).report);
    }
    write_bundle(bundle, opts);
    out << "wrote " << bundle.reports.size() << " reports to " << opts.out_path << '\n';
    return 0;
  }

  if (opts.command == "sweep-graphs") {
    bundle.axis = "graph_method";
    for (const auto method :
         {GraphMethod::knn, GraphMethod::complete, GraphMethod::mutual_information,
          GraphMethod::adaptive_threshold}) {
      PipelineConfig point = cfg;
      point.graph.method = method;
      bundle.reports.push_back(
          run_pipeline(PipelineVariant::embedding, data, point, vlog).report);
    }
    write_bundle(bundle, opts);
    out << "wrote " << bundle.reports.size() << " reports to " << opts.out_path << '\n';
    return 0;
  }

  // unreachable: the command roster is checked on entry
  throw Error(ErrorKind::Config, "UnknownCommand",
              "unknown subcommand: " + opts.command);
}

}  // namespace

int run_command(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(opts, out, err);
  } catch (const Error& e) {
    err << error_record(e);
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    json j;
    j["error"]["code"] = "Unexpected";
    j["error"]["kind"] = "runtime";
    j["error"]["message"] = e.what();
    err << j.dump() << '\n';
    return 4;
  }
}

}  // namespace graphmine
