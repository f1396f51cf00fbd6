#pragma once

#include <cstdint>
#include <string>

#include "graphmine/errors.hpp"
#include "graphmine/graph.hpp"
#include "graphmine/types.hpp"

namespace graphmine {

struct ModelDims {
  int input_dim = 0;
  int hidden_dim = 0;
  int embedding_dim = 0;
};

// Two graph-convolution layers and a scalar scoring head. Layer l maps
// aggregated features through an affine transform: relu after layer 1,
// identity after layer 2 (so z2 doubles as the embedding), sigmoid on
// the head. Weight matrices are (out x in); rows act on feature vectors.
struct GnnModel {
  ModelDims dims;
  std::uint64_t init_seed = 0;
  Matrix w1;      // hidden x input
  Vector b1;      // hidden
  Matrix w2;      // embedding x hidden
  Vector b2;      // embedding
  Vector w_out;   // embedding
  double b_out = 0.0;
};

// Every intermediate the backward pass needs, kept in forward order.
struct ForwardTrace {
  Matrix h0;           // n x input
  Matrix agg1;         // n x input
  Matrix z1;           // n x hidden
  Matrix h1;           // n x hidden, relu(z1)
  Matrix agg2;         // n x hidden
  Matrix z2;           // n x embedding
  Vector logits;       // n
  Vector predictions;  // n, sigmoid(logits)
};

struct Gradients {
  Matrix w1;
  Vector b1;
  Matrix w2;
  Vector b2;
  Vector w_out;
  double b_out = 0.0;
  Matrix embeddings;  // total dL/dz2, useful for inspection
};

GnnModel init_model(const ModelDims& dims, std::uint64_t seed);

// out_i = sum_{j in N(i)} norm(i,j) * x_j  (row-stochastic smoothing)
Matrix aggregate(const SampleGraph& g, const Matrix& x);

// Adjoint of aggregate: out_i = sum_{j in N(i)} raw(i,j)/rowsum(j) * x_j.
// Valid because the structure and raw weights are symmetric.
Matrix aggregate_transpose(const SampleGraph& g, const Matrix& x);

ForwardTrace forward(const GnnModel& m, const SampleGraph& g, const Matrix& x);

// d_predictions is dL/d(sigmoid output); d_embeddings is any extra dL/dz2
// fed in from losses that act on the embeddings directly (pass an empty
// matrix when there is none).
Gradients backward(const GnnModel& m, const SampleGraph& g, const ForwardTrace& t,
                   const Vector& d_predictions, const Matrix& d_embeddings);

// Text checkpoint, bit-exact round trip (hexfloat payload + checksum).
void save_model(const GnnModel& m, const std::string& path);
GnnModel load_model(const std::string& path);

}  // namespace graphmine
