#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphmine/graph.hpp"
#include "graphmine/mining.hpp"
#include "graphmine/trainer.hpp"

namespace graphmine {

// Resolved pipeline configuration. Parsing is strict: unknown keys are
// rejected and every value is range-checked up front, so a run can only
// fail later for data or numeric reasons.
struct PipelineConfig {
  struct Data {
    std::string label_column = "Class";
    std::vector<std::string> drop_columns;
    bool standardize = true;
  } data;

  struct Graph {
    GraphMethod method = GraphMethod::knn;
    int k = 10;
    double alpha = 1.0;
    int mi_bins = 4;
    std::optional<double> sigma;  // empty = median heuristic ("auto")
  } graph;

  struct Model {
    int hidden_dim = 64;
    int embedding_dim = 128;
  } model;

  struct Train {
    double learning_rate = 0.01;
    int epochs = 200;
    double lambda = 0.5;
    double beta = 0.5;
    double margin = 1.0;
    int pos_pairs = 2;
    int neg_pairs = 2;
  } train;

  struct Discretize {
    int bins = 4;
  } discretize;

  struct Mining {
    double min_support = 0.05;
    Scope scope = Scope::minority;
    bool maximal_only = false;
    long max_len = 3;
  } mining;

  std::uint64_t seed = 42;

  GraphConfig graph_config() const;
  TrainConfig train_config() const;

  // Fully resolved config as canonical JSON (sorted keys, no whitespace).
  std::string canonical() const;
  std::string digest() const;  // 16 hex chars over canonical()
};

PipelineConfig parse_config_text(const std::string& text);
PipelineConfig parse_config(const std::string& path);

}  // namespace graphmine
