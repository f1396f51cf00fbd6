#include "graphmine/trainer.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <ostream>

#include "graphmine/rng.hpp"
#include "graphmine/util.hpp"

namespace graphmine {

std::pair<ClassWeighting, Vector> class_weights(const std::vector<int>& labels,
                                                double beta) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw Precondition("beta must be in (0, 1]");
  long n_min = 0, n_maj = 0;
  for (int y : labels) (y == 1 ? n_min : n_maj)++;
  if (n_min == 0 || n_maj == 0) throw SingleClassError();

  ClassWeighting cw;
  cw.beta = beta;
  cw.w_minority = 1.0 / static_cast<double>(n_min);
  cw.w_majority = beta / static_cast<double>(n_maj);

  Vector w(static_cast<Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    w[static_cast<Index>(i)] = labels[i] == 1 ? cw.w_minority : cw.w_majority;
  }
  return {cw, std::move(w)};
}

double global_loss(const Vector& predictions, const std::vector<int>& labels,
                   const Vector& weights, double eps) {
  if (predictions.size() != static_cast<Index>(labels.size()) ||
      predictions.size() != weights.size())
    throw LengthMismatch("global_loss: predictions, labels and weights disagree");
  double loss = 0.0;
  for (Index i = 0; i < predictions.size(); ++i) {
    const double p = std::min(std::max(predictions[i], eps), 1.0 - eps);
    const double y = static_cast<double>(labels[static_cast<std::size_t>(i)]);
    loss -= weights[i] * (y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
  }
  return loss;
}

Vector global_loss_grad(const Vector& predictions, const std::vector<int>& labels,
                        const Vector& weights, double eps) {
  if (predictions.size() != static_cast<Index>(labels.size()) ||
      predictions.size() != weights.size())
    throw LengthMismatch("global_loss_grad: predictions, labels and weights disagree");
  Vector g = Vector::Zero(predictions.size());
  for (Index i = 0; i < predictions.size(); ++i) {
    const double p = predictions[i];
    if (p < eps || p > 1.0 - eps) continue;  // clamp region, flat
    const double y = static_cast<double>(labels[static_cast<std::size_t>(i)]);
    g[i] = weights[i] * (p - y) / (p * (1.0 - p));
  }
  return g;
}

LocalLoss local_contrastive_loss(const Matrix& embeddings,
                                 const std::vector<int>& labels, double margin,
                                 int pos_pairs, int neg_pairs, std::uint64_t seed) {
  if (embeddings.rows() != static_cast<Index>(labels.size()))
    throw LengthMismatch("local loss: embedding rows != label count");
  if (!(margin > 0.0)) throw Precondition("margin must be > 0");
  if (pos_pairs < 1 || neg_pairs < 1)
    throw Precondition("pair counts must be >= 1");

  LocalLoss out;
  out.d_embeddings = Matrix::Zero(embeddings.rows(), embeddings.cols());

  std::vector<int> minority, majority;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == 1 ? minority : majority).push_back(static_cast<int>(i));
  }
  if (minority.size() < 2) {
    std::cerr << "warning: fewer than 2 minority samples, local loss is 0\n";
    return out;
  }

  Rng rng(seed);

  // Collect pairs first so each term is averaged over its full pair set.
  std::vector<std::pair<int, int>> pos, neg;
  for (int a : minority) {
    std::vector<int> others;
    others.reserve(minority.size() - 1);
    for (int j : minority) {
      if (j != a) others.push_back(j);
    }
    const std::size_t p = std::min<std::size_t>(static_cast<std::size_t>(pos_pairs),
                                                others.size());
    for (int j : rng.sample_without_replacement(others, p)) pos.emplace_back(a, j);

    const std::size_t q = std::min<std::size_t>(static_cast<std::size_t>(neg_pairs),
                                                majority.size());
    for (int j : rng.sample_without_replacement(majority, q)) neg.emplace_back(a, j);
  }

  double pos_sum = 0.0;
  if (!pos.empty()) {
    const double inv = 1.0 / static_cast<double>(pos.size());
    for (const auto& [a, j] : pos) {
      const Vector diff = embeddings.row(a) - embeddings.row(j);
      pos_sum += diff.squaredNorm();
      // d(D^2)/dE_a = 2 diff, scaled by the mean
      out.d_embeddings.row(a) += (2.0 * inv) * diff.transpose();
      out.d_embeddings.row(j) -= (2.0 * inv) * diff.transpose();
    }
    pos_sum *= inv;
  }

  double neg_sum = 0.0;
  if (!neg.empty()) {
    const double inv = 1.0 / static_cast<double>(neg.size());
    for (const auto& [a, j] : neg) {
      const Vector diff = embeddings.row(a) - embeddings.row(j);
      const double dist = diff.norm();
      const double gap = margin - dist;
      if (gap <= 0.0) continue;
      neg_sum += gap * gap;
      if (dist > 0.0) {
        // d(max(0, m-D)^2)/dE_a = 2 (D - m) diff / D
        const double c = (2.0 * inv) * (dist - margin) / dist;
        out.d_embeddings.row(a) += c * diff.transpose();
        out.d_embeddings.row(j) -= c * diff.transpose();
      }
      // dist == 0: the distance is not differentiable, take subgradient 0
    }
    neg_sum *= inv;
  }

  out.value = pos_sum + neg_sum;
  return out;
}

LossBreakdown total_loss(double global_term, double local_term, double lambda) {
  LossBreakdown b;
  b.global_term = global_term;
  b.local_term = local_term;
  b.total = global_term + lambda * local_term;
  return b;
}

namespace {

// Per-tensor Adam state with bias correction.
struct AdamState {
  Matrix mw1, vw1, mw2, vw2;
  Vector mb1, vb1, mb2, vb2, mwo, vwo;
  double mbo = 0.0, vbo = 0.0;

  explicit AdamState(const GnnModel& m) {
    mw1 = Matrix::Zero(m.w1.rows(), m.w1.cols());
    vw1 = mw1;
    mw2 = Matrix::Zero(m.w2.rows(), m.w2.cols());
    vw2 = mw2;
    mb1 = Vector::Zero(m.b1.size());
    vb1 = mb1;
    mb2 = Vector::Zero(m.b2.size());
    vb2 = mb2;
    mwo = Vector::Zero(m.w_out.size());
    vwo = mwo;
  }
};

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

template <typename T>
void adam_step(T& param, T& m, T& v, const T& g, double lr, double bc1, double bc2) {
  m = kBeta1 * m + (1.0 - kBeta1) * g;
  v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
  param.array() -=
      lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + kAdamEps);
}

void adam_step_scalar(double& param, double& m, double& v, double g, double lr,
                      double bc1, double bc2) {
  m = kBeta1 * m + (1.0 - kBeta1) * g;
  v = kBeta2 * v + (1.0 - kBeta2) * g * g;
  param -= lr * (m / bc1) / (std::sqrt(v / bc2) + kAdamEps);
}

}  // namespace

TrainHistory train(const GnnModel& initial, const SampleGraph& graph,
                   const Dataset& dataset, const TrainConfig& config,
                   std::ostream* epoch_log) {
  if (config.epochs < 0) throw Precondition("epochs must be >= 0");
  if (!(config.clamp_epsilon > 0.0 && config.clamp_epsilon <= 1e-3))
    throw Precondition("clamp_epsilon must be in (0, 1e-3]");
  if (config.lambda < 0.0) throw Precondition("lambda must be >= 0");
  if (!(config.learning_rate > 0.0)) throw Precondition("learning_rate must be > 0");

  class_partition(dataset);  // both classes must be present
  const auto [cw, weights] = class_weights(dataset.labels, config.beta);
  (void)cw;

  TrainHistory hist;
  hist.final_model = initial;
  hist.losses.reserve(static_cast<std::size_t>(config.epochs));
  hist.epoch_ms.reserve(static_cast<std::size_t>(config.epochs));

  AdamState adam(initial);
  GnnModel& model = hist.final_model;

  for (int e = 0; e < config.epochs; ++e) {
    const auto t0 = std::chrono::steady_clock::now();

    const ForwardTrace trace = forward(model, graph, dataset.features);

    const double lg =
        global_loss(trace.predictions, dataset.labels, weights, config.clamp_epsilon);
    const Vector d_pred = global_loss_grad(trace.predictions, dataset.labels, weights,
                                           config.clamp_epsilon);

    const LocalLoss ll = local_contrastive_loss(
        trace.z2, dataset.labels, config.margin, config.pos_pairs, config.neg_pairs,
        derive_seed(config.seed, "local_pairs", static_cast<std::uint64_t>(e)));

    LossBreakdown b = total_loss(lg, ll.value, config.lambda);
    b.epoch = e + 1;
    if (!std::isfinite(b.total)) throw NonFiniteLoss(e + 1);

    const Matrix d_emb = config.lambda * ll.d_embeddings;
    const Gradients g = backward(model, graph, trace, d_pred, d_emb);

    const double t = static_cast<double>(e + 1);
    const double bc1 = 1.0 - std::pow(kBeta1, t);
    const double bc2 = 1.0 - std::pow(kBeta2, t);
    adam_step(model.w1, adam.mw1, adam.vw1, g.w1, config.learning_rate, bc1, bc2);
    adam_step(model.b1, adam.mb1, adam.vb1, g.b1, config.learning_rate, bc1, bc2);
    adam_step(model.w2, adam.mw2, adam.vw2, g.w2, config.learning_rate, bc1, bc2);
    adam_step(model.b2, adam.mb2, adam.vb2, g.b2, config.learning_rate, bc1, bc2);
    adam_step(model.w_out, adam.mwo, adam.vwo, g.w_out, config.learning_rate, bc1, bc2);
    adam_step_scalar(model.b_out, adam.mbo, adam.vbo, g.b_out, config.learning_rate,
                     bc1, bc2);

    const auto t1 = std::chrono::steady_clock::now();
    hist.losses.push_back(b);
    hist.epoch_ms.push_back(
        std::chrono::duration<double, std::milli>(t1 - t0).count());

    if (epoch_log) {
      *epoch_log << b.epoch << ',' << format_double(b.total) << ','
                 << format_double(b.global_term) << ',' << format_double(b.local_term)
                 << '\n';
    }
  }
  return hist;
}

Matrix extract_embeddings(const GnnModel& model, const SampleGraph& graph,
                          const Dataset& dataset) {
  return forward(model, graph, dataset.features).z2;
}

}  // namespace graphmine
