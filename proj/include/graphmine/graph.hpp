#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphmine/dataset.hpp"
#include "graphmine/errors.hpp"
#include "graphmine/types.hpp"

namespace graphmine {

enum class GraphMethod { knn, complete, mutual_information, adaptive_threshold };

std::string to_string(GraphMethod m);
std::optional<GraphMethod> graph_method_from_string(const std::string& s);

struct GraphEntry {
  int neighbor;
  double raw;   // similarity weight
  double norm;  // raw / row sum, filled by normalize_neighborhood
};

// Adjacency lists are sorted by neighbor id and every node carries a
// self-loop with raw weight 1. Raw weights are symmetric by construction
// (structure is symmetrized by union); norm weights are row-stochastic.
struct SampleGraph {
  int n_nodes = 0;
  std::vector<std::vector<GraphEntry>> adjacency;
  GraphMethod method = GraphMethod::knn;
  std::optional<double> sigma;      // set for the gaussian-weighted methods
  std::vector<double> raw_rowsum;   // filled by normalize_neighborhood

  double raw_weight(int i, int j) const;  // 0 when no edge
  long n_directed_edges() const;
};

// exp(-||xi - xj||_2 / sigma), on the plain (unsquared) euclidean distance
double gaussian_similarity(const Vector& xi, const Vector& xj, double sigma);

// Median pairwise distance, over all pairs when N <= sample_cap, otherwise
// over a seeded subsample of sample_cap rows. A zero median falls back to
// the mean of the positive distances; all-zero distances are degenerate.
double median_bandwidth(const Matrix& x, long sample_cap, std::uint64_t seed);

SampleGraph build_knn_graph(const Matrix& x, int k, double sigma);
SampleGraph build_complete_graph(const Matrix& x, double sigma);
SampleGraph build_mutual_information_graph(const Matrix& x, int mi_bins, int k);
SampleGraph build_adaptive_threshold_graph(const Matrix& x, double alpha, double sigma);

// Fills norm = raw / rowsum for every entry and records the row sums.
SampleGraph normalize_neighborhood(SampleGraph g);

struct GraphConfig {
  GraphMethod method = GraphMethod::knn;
  int k = 10;
  double alpha = 1.0;
  int mi_bins = 4;
  std::optional<double> sigma;  // empty means median heuristic
};

SampleGraph build_graph(const Matrix& x, const GraphConfig& cfg, std::uint64_t seed);

// "src,dst,raw_weight,norm_weight" with one line per directed entry,
// source ascending then neighbor ascending, self-loops included.
std::string edge_list_csv(const SampleGraph& g);

struct DegreeStats {
  double min_degree = 0.0;   // neighbor count excluding the self-loop
  double max_degree = 0.0;
  double mean_degree = 0.0;
  long n_nodes = 0;
  long n_edges = 0;          // directed entries excluding self-loops
};

DegreeStats degree_stats(const SampleGraph& g);

}  // namespace graphmine
