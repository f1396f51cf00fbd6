#pragma once

#include "graphmine/errors.hpp"
#include "graphmine/types.hpp"

namespace graphmine {

// Rows of `components` are orthonormal principal directions ordered by
// non-increasing eigenvalue; each row's largest-magnitude entry is positive.
struct PcaModel {
  Vector mean;
  Matrix components;   // r x d
  Vector eigenvalues;  // length r, non-negative, non-increasing
};

// Eigendecomposition of the population covariance via cyclic Jacobi
// rotations, swept until the off-diagonal norm falls below max(1e-12,
// machine precision relative to the input scale).
PcaModel pca_fit(const Matrix& x, int rank);

Matrix pca_transform(const PcaModel& model, const Matrix& x);

// All eigenvalues of a symmetric matrix (descending), plus eigenvectors as
// columns. Exposed for testing the rotation loop directly.
void jacobi_eigen(const Matrix& sym, Vector& eigenvalues, Matrix& eigenvectors);

}  // namespace graphmine
