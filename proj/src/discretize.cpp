#include "graphmine/discretize.hpp"

#include <algorithm>
#include <sstream>

#include "graphmine/util.hpp"

namespace graphmine {

BinningModel fit_quantile_bins(const Matrix& x, int bins) {
  if (x.rows() < 1) throw Precondition("binning needs at least 1 row");
  if (bins < 1) throw Precondition("bins must be >= 1");

  BinningModel model;
  model.n_dims = x.cols();
  model.bins_per_dim = bins;
  model.boundaries.resize(static_cast<std::size_t>(x.cols()));
  model.constant_dims.assign(static_cast<std::size_t>(x.cols()), 0);

  std::vector<double> col(static_cast<std::size_t>(x.rows()));
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) col[static_cast<std::size_t>(i)] = x(i, j);
    std::sort(col.begin(), col.end());
    auto& cuts = model.boundaries[static_cast<std::size_t>(j)];
    for (int b = 1; b < bins; ++b) {
      const double q = quantile_sorted(col, static_cast<double>(b) / bins);
      if (cuts.empty() || q > cuts.back()) cuts.push_back(q);
    }
    if (col.front() == col.back()) {
      cuts.clear();
      model.constant_dims[static_cast<std::size_t>(j)] = 1;
    }
  }
  return model;
}

int assign_bin(double value, Index dim, const BinningModel& model) {
  if (dim < 0 || dim >= model.n_dims) throw Precondition("dimension out of range");
  const auto& cuts = model.boundaries[static_cast<std::size_t>(dim)];
  const auto it = std::lower_bound(cuts.begin(), cuts.end(), value);
  return static_cast<int>(it - cuts.begin());
}

TransactionDb to_transactions(const Matrix& x, const std::vector<int>& labels,
                              const BinningModel& model) {
  if (x.cols() != model.n_dims)
    throw DimensionMismatch("matrix columns do not match binning model");
  if (static_cast<Index>(labels.size()) != x.rows())
    throw DimensionMismatch("label count does not match matrix rows");

  TransactionDb db;
  db.n_dims = model.n_dims;
  db.bins_per_dim = model.bins_per_dim;
  db.n_items = static_cast<int>(model.n_dims) * model.bins_per_dim;
  db.labels = labels;
  db.transactions.resize(static_cast<std::size_t>(x.rows()));
  for (Index i = 0; i < x.rows(); ++i) {
    auto& t = db.transactions[static_cast<std::size_t>(i)];
    t.reserve(static_cast<std::size_t>(model.n_dims));
    for (Index d = 0; d < model.n_dims; ++d) {
      t.push_back(static_cast<int>(d) * model.bins_per_dim +
                  assign_bin(x(i, d), d, model));
    }
    // item ids grow with the dimension, so the set is already sorted
  }
  return db;
}

std::string transactions_text(const TransactionDb& db) {
  std::ostringstream out;
  for (std::size_t i = 0; i < db.transactions.size(); ++i) {
    bool first = true;
    for (int item : db.transactions[i]) {
      if (!first) out << ' ';
      out << item;
      first = false;
    }
    out << " # " << db.labels[i] << '\n';
  }
  return out.str();
}

std::string item_token(int item_id, int bins_per_dim) {
  return std::to_string(item_id / bins_per_dim) + ':' +
         std::to_string(item_id % bins_per_dim);
}

}  // namespace graphmine
