#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphmine/errors.hpp"
#include "graphmine/types.hpp"

namespace graphmine {

// Tabular binary-labeled dataset. Rows are samples, columns are features;
// label 1 marks the minority / positive class.
struct Dataset {
  Matrix features;                         // N x d, finite
  std::vector<int> labels;                 // 0/1, length N
  std::vector<std::string> feature_names;  // unique, length d
  std::string source;                      // file path or synthetic digest

  Index n_samples() const { return features.rows(); }
  Index n_features() const { return features.cols(); }
};

// Per-column z-score parameters. Constant columns carry stddev 0 and are
// flagged; they standardize to all zeros and invert back to their mean.
struct StandardizationModel {
  Vector means;
  Vector stddevs;  // population convention
  std::vector<char> constant_cols;

  Matrix apply(const Matrix& x) const;
  Matrix invert(const Matrix& z) const;
};

struct SyntheticSpec {
  long n_samples = 0;
  long n_features = 0;
  double minority_fraction = 0.0;  // in (0, 0.5)
  long n_minority_clusters = 1;
  double cluster_spread = 1.0;
  std::uint64_t seed = 0;
};

// Generated dataset plus the per-row minority sub-cluster id (-1 for
// majority rows), kept so tests can check cluster structure directly.
struct SyntheticData {
  Dataset dataset;
  std::vector<int> cluster_of_row;
};

struct ClassPartition {
  std::vector<int> majority;
  std::vector<int> minority;
};

// Reads a header CSV of finite decimal features plus a 0/1 label column.
// Row order and label values are preserved verbatim.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::vector<std::string>& drop_columns = {});

// Writes a CSV that load_csv reproduces exactly (shortest round-trip decimals).
void write_csv(const Dataset& ds, const std::string& path,
               const std::string& label_column = "Class");

std::pair<Dataset, StandardizationModel> standardize(const Dataset& ds);

SyntheticData generate_synthetic(const SyntheticSpec& spec);

// Splits 0-based row indices by label; both classes must be present.
ClassPartition class_partition(const Dataset& ds);

}  // namespace graphmine
