#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "graphmine/dataset.hpp"
#include "graphmine/gnn.hpp"
#include "graphmine/graph.hpp"
#include "graphmine/types.hpp"

namespace graphmine {

struct ClassWeighting {
  double w_minority = 0.0;  // 1 / |minority|
  double w_majority = 0.0;  // beta / |majority|
  double beta = 1.0;
};

struct TrainConfig {
  double learning_rate = 0.01;
  int epochs = 200;
  double lambda = 0.5;     // balance on the local term
  double beta = 0.5;       // majority weight damping
  double margin = 1.0;
  int pos_pairs = 2;       // positive partners sampled per minority anchor
  int neg_pairs = 2;
  std::uint64_t seed = 42;
  double clamp_epsilon = 1e-7;
};

struct LossBreakdown {
  double total = 0.0;   // always global + lambda * local, same arithmetic
  double global_term = 0.0;
  double local_term = 0.0;
  int epoch = 0;        // 1-based
};

struct TrainHistory {
  std::vector<LossBreakdown> losses;
  GnnModel final_model;
  std::vector<double> epoch_ms;
};

std::pair<ClassWeighting, Vector> class_weights(const std::vector<int>& labels,
                                                double beta);

// Weighted cross entropy, sum over samples with predictions clamped into
// [eps, 1-eps] before the logs.
double global_loss(const Vector& predictions, const std::vector<int>& labels,
                   const Vector& weights, double eps);

// dL/dprediction for the same loss; zero where the clamp is active.
Vector global_loss_grad(const Vector& predictions, const std::vector<int>& labels,
                        const Vector& weights, double eps);

struct LocalLoss {
  double value = 0.0;
  Matrix d_embeddings;  // same shape as the embedding matrix
};

// Minority-anchored contrastive term: squared distance for sampled
// minority-minority pairs, squared hinge max(0, m - D)^2 for sampled
// minority-majority pairs, each averaged over its own pair set.
LocalLoss local_contrastive_loss(const Matrix& embeddings,
                                 const std::vector<int>& labels, double margin,
                                 int pos_pairs, int neg_pairs, std::uint64_t seed);

LossBreakdown total_loss(double global_term, double local_term, double lambda);

// Full-batch Adam over the composite objective. Pair sampling is reseeded
// each epoch from the config seed, so runs are bit-reproducible.
TrainHistory train(const GnnModel& initial, const SampleGraph& graph,
                   const Dataset& dataset, const TrainConfig& config,
                   std::ostream* epoch_log = nullptr);

Matrix extract_embeddings(const GnnModel& model, const SampleGraph& graph,
                          const Dataset& dataset);

}  // namespace graphmine
