#include "graphmine/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace graphmine {

void jacobi_eigen(const Matrix& sym, Vector& eigenvalues, Matrix& eigenvectors) {
  if (sym.rows() != sym.cols()) throw Precondition("matrix must be square");
  const Index d = sym.rows();

  Matrix a = sym;
  Matrix v = Matrix::Identity(d, d);

  auto off_norm = [&a, d]() {
    double s = 0.0;
    for (Index p = 0; p < d; ++p) {
      for (Index q = p + 1; q < d; ++q) s += 2.0 * a(p, q) * a(p, q);
    }
    return std::sqrt(s);
  };

  // the achievable floor scales with the matrix itself
  const double tol = std::max(1e-12, 8.0 * 2.220446049250313e-16 * sym.norm());
  const int max_sweeps = 100;

  for (int sweep = 0; sweep < max_sweeps && off_norm() > tol; ++sweep) {
    for (Index p = 0; p < d; ++p) {
      for (Index q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        // smaller-magnitude root of t^2 + 2 t theta - 1 = 0 for stability
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Index i = 0; i < d; ++i) {
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (Index i = 0; i < d; ++i) {
          const double api = a(p, i);
          const double aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (Index i = 0; i < d; ++i) {
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  // order eigenpairs by descending value, stable in the original index
  std::vector<Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&a](Index x, Index y) { return a(x, x) > a(y, y); });

  eigenvalues.resize(d);
  eigenvectors.resize(d, d);
  for (Index k = 0; k < d; ++k) {
    eigenvalues[k] = a(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(k)]);
    eigenvectors.col(k) = v.col(idx[static_cast<std::size_t>(k)]);
  }
}

PcaModel pca_fit(const Matrix& x, int rank) {
  const Index n = x.rows();
  const Index d = x.cols();
  if (n < 2) throw Precondition("pca needs at least 2 rows");
  if (rank < 1 || rank > d) throw RankRequestTooLarge(rank, static_cast<long>(d));

  PcaModel model;
  model.mean = x.colwise().mean();
  const Matrix centered = x.rowwise() - model.mean.transpose();
  const Matrix cov = (centered.transpose() * centered) / static_cast<double>(n);

  Vector evals;
  Matrix evecs;
  jacobi_eigen(cov, evals, evecs);

  model.components.resize(rank, d);
  model.eigenvalues.resize(rank);
  for (int r = 0; r < rank; ++r) {
    Vector comp = evecs.col(r);
    // deterministic sign: largest-magnitude entry positive, first on ties
    Index best = 0;
    for (Index i = 1; i < d; ++i) {
      if (std::abs(comp[i]) > std::abs(comp[best])) best = i;
    }
    if (comp[best] < 0.0) comp = -comp;
    model.components.row(r) = comp.transpose();
    model.eigenvalues[r] = std::max(evals[r], 0.0);
  }
  return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& x) {
  if (x.cols() != model.mean.size())
    throw DimensionMismatch("pca_transform: column count does not match model");
  return (x.rowwise() - model.mean.transpose()) * model.components.transpose();
}

}  // namespace graphmine
