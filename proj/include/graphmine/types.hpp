#pragma once

#include <Eigen/Core>

namespace graphmine {

// All numeric work is done in 64-bit reals; the gradient-check tolerances
// and the bit-reproducibility contracts are stated for this precision.
using Scalar = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace graphmine
