#include "graphmine/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>

#include "graphmine/rng.hpp"
#include "graphmine/util.hpp"

namespace graphmine {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Matrix StandardizationModel::apply(const Matrix& x) const {
  if (x.cols() != means.size())
    throw DimensionMismatch("standardization model expects " +
                            std::to_string(means.size()) + " columns");
  Matrix z = x;
  for (Index j = 0; j < x.cols(); ++j) {
    if (constant_cols[static_cast<std::size_t>(j)]) {
      z.col(j).setZero();
    } else {
      z.col(j) = (x.col(j).array() - means[j]) / stddevs[j];
    }
  }
  return z;
}

Matrix StandardizationModel::invert(const Matrix& z) const {
  if (z.cols() != means.size())
    throw DimensionMismatch("standardization model expects " +
                            std::to_string(means.size()) + " columns");
  Matrix x = z;
  for (Index j = 0; j < z.cols(); ++j) {
    x.col(j) = z.col(j).array() * stddevs[j] + means[j];
  }
  return x;
}

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::vector<std::string>& drop_columns) {
  const std::string text = read_file(path);

  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  if (lines.empty()) throw EmptyDataset();

  const std::vector<std::string> header = split_csv_line(lines[0]);

  auto find_col = [&](const std::string& name) -> long {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<long>(i);
    }
    return -1;
  };

  const long label_idx = find_col(label_column);
  if (label_idx < 0) throw MissingColumn(label_column);

  std::set<long> dropped;
  for (const auto& name : drop_columns) {
    const long idx = find_col(name);
    if (idx < 0) throw MissingColumn(name);
    dropped.insert(idx);
  }
  dropped.insert(label_idx);

  std::vector<long> feature_idx;
  std::vector<std::string> feature_names;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!dropped.count(static_cast<long>(i))) {
      feature_idx.push_back(static_cast<long>(i));
      feature_names.push_back(header[i]);
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  long row_no = 0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    ++row_no;
    const auto cells = split_csv_line(lines[li]);
    if (cells.size() != header.size())
      throw ParseError(row_no, "(row)", "expected " + std::to_string(header.size()) +
                                            " fields, got " + std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(feature_idx.size());
    for (std::size_t f = 0; f < feature_idx.size(); ++f) {
      const auto v = parse_double(cells[static_cast<std::size_t>(feature_idx[f])]);
      if (!v) throw ParseError(row_no, feature_names[f], "not a finite number");
      row.push_back(*v);
    }
    const auto lv = parse_double(cells[static_cast<std::size_t>(label_idx)]);
    if (!lv || (*lv != 0.0 && *lv != 1.0))
      throw ParseError(row_no, label_column, "label must be 0 or 1");
    labels.push_back(static_cast<int>(*lv));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw EmptyDataset();

  Dataset ds;
  ds.features.resize(static_cast<Index>(rows.size()),
                     static_cast<Index>(feature_idx.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      ds.features(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  ds.labels = std::move(labels);
  ds.feature_names = std::move(feature_names);
  ds.source = path;
  return ds;
}

void write_csv(const Dataset& ds, const std::string& path,
               const std::string& label_column) {
  std::ostringstream out;
  for (const auto& name : ds.feature_names) out << name << ',';
  out << label_column << '\n';
  for (Index i = 0; i < ds.n_samples(); ++i) {
    for (Index j = 0; j < ds.n_features(); ++j) {
      out << format_double(ds.features(i, j)) << ',';
    }
    out << ds.labels[static_cast<std::size_t>(i)] << '\n';
  }
  write_file(path, out.str());
}

std::pair<Dataset, StandardizationModel> standardize(const Dataset& ds) {
  const Index n = ds.n_samples();
  if (n < 2) throw Precondition("standardize requires at least 2 rows");

  StandardizationModel model;
  model.means.resize(ds.n_features());
  model.stddevs.resize(ds.n_features());
  model.constant_cols.assign(static_cast<std::size_t>(ds.n_features()), 0);

  for (Index j = 0; j < ds.n_features(); ++j) {
    const double mean = ds.features.col(j).mean();
    const double var =
        (ds.features.col(j).array() - mean).square().sum() / static_cast<double>(n);
    model.means[j] = mean;
    if (var == 0.0) {
      model.stddevs[j] = 0.0;
      model.constant_cols[static_cast<std::size_t>(j)] = 1;
    } else {
      model.stddevs[j] = std::sqrt(var);
    }
  }

  Dataset out = ds;
  out.features = model.apply(ds.features);
  return {std::move(out), std::move(model)};
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_samples < 1) throw InvalidSpec("n_samples must be >= 1");
  if (spec.n_features < 1) throw InvalidSpec("n_features must be >= 1");
  if (!(spec.minority_fraction > 0.0 && spec.minority_fraction < 0.5))
    throw InvalidSpec("minority_fraction must be in (0, 0.5)");
  if (spec.n_minority_clusters < 1) throw InvalidSpec("n_minority_clusters must be >= 1");
  if (!(spec.cluster_spread > 0.0)) throw InvalidSpec("cluster_spread must be > 0");

  const long n_minority =
      std::llround(static_cast<double>(spec.n_samples) * spec.minority_fraction);
  if (n_minority < spec.n_minority_clusters)
    throw InvalidSpec("fewer minority samples than clusters");

  Rng rng(derive_seed(spec.seed, "synthetic"));

  // Minority row positions: a seeded sample spread through the dataset.
  std::vector<int> all(static_cast<std::size_t>(spec.n_samples));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<int> minority_rows =
      rng.sample_without_replacement(all, static_cast<std::size_t>(n_minority));
  std::sort(minority_rows.begin(), minority_rows.end());

  // Cluster means on a seeded lattice: each coordinate is -shift, +shift or 0,
  // nonzero with probability 1/4, at least one nonzero per cluster. The
  // offset coordinates are what makes bin-patterns mineable by construction.
  const double shift = 2.5;
  Matrix means(spec.n_minority_clusters, spec.n_features);
  for (long c = 0; c < spec.n_minority_clusters; ++c) {
    bool any = false;
    for (long j = 0; j < spec.n_features; ++j) {
      const std::uint64_t r = rng.below(8);
      double mu = 0.0;
      if (r == 0) mu = -shift;
      else if (r == 1) mu = shift;
      if (mu != 0.0) any = true;
      means(c, j) = mu;
    }
    if (!any) means(c, c % spec.n_features) = shift;
  }

  Dataset ds;
  ds.features.resize(spec.n_samples, spec.n_features);
  ds.labels.assign(static_cast<std::size_t>(spec.n_samples), 0);
  std::vector<int> cluster(static_cast<std::size_t>(spec.n_samples), -1);

  std::size_t next_minority = 0;
  for (long i = 0; i < spec.n_samples; ++i) {
    const bool is_minority = next_minority < minority_rows.size() &&
                             minority_rows[next_minority] == static_cast<int>(i);
    if (is_minority) {
      const long c = static_cast<long>(next_minority) % spec.n_minority_clusters;
      for (long j = 0; j < spec.n_features; ++j) {
        ds.features(i, j) = means(c, j) + spec.cluster_spread * rng.normal();
      }
      ds.labels[static_cast<std::size_t>(i)] = 1;
      cluster[static_cast<std::size_t>(i)] = static_cast<int>(c);
      ++next_minority;
    } else {
      for (long j = 0; j < spec.n_features; ++j) {
        ds.features(i, j) = rng.normal();
      }
    }
  }

  ds.feature_names.reserve(static_cast<std::size_t>(spec.n_features));
  for (long j = 0; j < spec.n_features; ++j) {
    ds.feature_names.push_back("f" + std::to_string(j + 1));
  }

  std::ostringstream tag;
  tag << "synthetic:n=" << spec.n_samples << ",d=" << spec.n_features
      << ",mf=" << format_double(spec.minority_fraction)
      << ",c=" << spec.n_minority_clusters
      << ",s=" << format_double(spec.cluster_spread) << ",seed=" << spec.seed;
  ds.source = tag.str();

  return {std::move(ds), std::move(cluster)};
}

ClassPartition class_partition(const Dataset& ds) {
  ClassPartition part;
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    (ds.labels[i] == 1 ? part.minority : part.majority).push_back(static_cast<int>(i));
  }
  if (part.minority.empty() || part.majority.empty()) throw SingleClassError();
  return part;
}

}  // namespace graphmine
