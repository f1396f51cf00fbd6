#pragma once

#include <string>
#include <vector>

#include "graphmine/errors.hpp"
#include "graphmine/types.hpp"

namespace graphmine {

// Per-dimension quantile cuts. Duplicate quantiles collapse, so a dimension
// may end up with fewer than B-1 boundaries; a constant dimension has none.
struct BinningModel {
  Index n_dims = 0;
  int bins_per_dim = 1;
  std::vector<std::vector<double>> boundaries;  // strictly increasing per dim
  std::vector<char> constant_dims;
};

// One transaction per sample: item id = dim * B + bin, sorted ascending.
// Labels ride along side-band so mining scope stays a runtime choice.
struct TransactionDb {
  std::vector<std::vector<int>> transactions;
  std::vector<int> labels;
  int n_items = 0;       // n_dims * bins_per_dim
  Index n_dims = 0;
  int bins_per_dim = 0;
};

BinningModel fit_quantile_bins(const Matrix& x, int bins);

// Number of cut points strictly less than the value; a value equal to a
// cut falls in the lower bin.
int assign_bin(double value, Index dim, const BinningModel& model);

TransactionDb to_transactions(const Matrix& x, const std::vector<int>& labels,
                              const BinningModel& model);

// One line per transaction: space-separated item ids, then " # label".
std::string transactions_text(const TransactionDb& db);

// "dim:bin" token for pattern export.
std::string item_token(int item_id, int bins_per_dim);

}  // namespace graphmine
