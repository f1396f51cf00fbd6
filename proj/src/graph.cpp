#include "graphmine/graph.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include "graphmine/discretize.hpp"
#include "graphmine/rng.hpp"
#include "graphmine/util.hpp"

namespace graphmine {

std::string to_string(GraphMethod m) {
  switch (m) {
    case GraphMethod::knn: return "knn";
    case GraphMethod::complete: return "complete";
    case GraphMethod::mutual_information: return "mutual_information";
    case GraphMethod::adaptive_threshold: return "adaptive_threshold";
  }
  return "knn";
}

std::optional<GraphMethod> graph_method_from_string(const std::string& s) {
  if (s == "knn") return GraphMethod::knn;
  if (s == "complete") return GraphMethod::complete;
  if (s == "mutual_information") return GraphMethod::mutual_information;
  if (s == "adaptive_threshold") return GraphMethod::adaptive_threshold;
  return std::nullopt;
}

double SampleGraph::raw_weight(int i, int j) const {
  const auto& row = adjacency[static_cast<std::size_t>(i)];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const GraphEntry& e, int v) { return e.neighbor < v; });
  if (it != row.end() && it->neighbor == j) return it->raw;
  return 0.0;
}

long SampleGraph::n_directed_edges() const {
  long total = 0;
  for (const auto& row : adjacency) total += static_cast<long>(row.size());
  return total;
}

double gaussian_similarity(const Vector& xi, const Vector& xj, double sigma) {
  if (!(sigma > 0.0)) throw NonPositiveSigma(sigma);
  if (xi.size() != xj.size())
    throw DimensionMismatch("similarity arguments differ in length");
  return std::exp(-(xi - xj).norm() / sigma);
}

double median_bandwidth(const Matrix& x, long sample_cap, std::uint64_t seed) {
  const Index n = x.rows();
  if (n < 2) throw Precondition("bandwidth needs at least 2 rows");
  if (sample_cap < 2) throw Precondition("sample_cap must be >= 2");

  std::vector<int> rows;
  if (n <= sample_cap) {
    rows.resize(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
  } else {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    Rng rng(seed);
    rows = rng.sample_without_replacement(all, static_cast<std::size_t>(sample_cap));
    std::sort(rows.begin(), rows.end());
  }

  std::vector<double> dists;
  dists.reserve(rows.size() * (rows.size() - 1) / 2);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      dists.push_back((x.row(rows[a]) - x.row(rows[b])).norm());
    }
  }
  std::sort(dists.begin(), dists.end());
  const double med = quantile_sorted(dists, 0.5);
  if (med > 0.0) return med;

  double pos_sum = 0.0;
  long pos_count = 0;
  for (double d : dists) {
    if (d > 0.0) {
      pos_sum += d;
      ++pos_count;
    }
  }
  if (pos_count == 0) throw DegenerateData();
  return pos_sum / static_cast<double>(pos_count);
}

namespace {

SampleGraph make_empty(int n, GraphMethod method, std::optional<double> sigma) {
  SampleGraph g;
  g.n_nodes = n;
  g.adjacency.assign(static_cast<std::size_t>(n), {});
  g.method = method;
  g.sigma = sigma;
  return g;
}

// Directed candidate edges -> union-symmetrized sorted adjacency with
// self-loops at raw 1. Weight lookup is by the caller's map.
SampleGraph assemble(int n, GraphMethod method, std::optional<double> sigma,
                     const std::vector<std::vector<std::pair<int, double>>>& kept) {
  std::vector<std::map<int, double>> edges(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (const auto& [j, w] : kept[static_cast<std::size_t>(i)]) {
      if (w <= 0.0) continue;  // exp underflow; a zero edge is no edge
      edges[static_cast<std::size_t>(i)][j] = w;
      edges[static_cast<std::size_t>(j)][i] = w;
    }
  }
  SampleGraph g = make_empty(n, method, sigma);
  for (int i = 0; i < n; ++i) {
    auto& row = edges[static_cast<std::size_t>(i)];
    row[i] = 1.0;  // self-loop
    auto& adj = g.adjacency[static_cast<std::size_t>(i)];
    adj.reserve(row.size());
    for (const auto& [j, w] : row) adj.push_back({j, w, 0.0});
  }
  return g;
}

}  // namespace

SampleGraph build_knn_graph(const Matrix& x, int k, double sigma) {
  const Index n = x.rows();
  if (n < 2) throw Precondition("graph needs at least 2 rows");
  if (k < 1 || k > n - 1) throw InvalidK(k, static_cast<long>(n));
  if (!(sigma > 0.0)) throw NonPositiveSigma(sigma);

  std::vector<std::vector<std::pair<int, double>>> kept(static_cast<std::size_t>(n));
  std::vector<std::pair<double, int>> cand;
  for (Index i = 0; i < n; ++i) {
    cand.clear();
    cand.reserve(static_cast<std::size_t>(n) - 1);
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      cand.emplace_back((x.row(i) - x.row(j)).squaredNorm(), static_cast<int>(j));
    }
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    for (int t = 0; t < k; ++t) {
      const double d = std::sqrt(cand[static_cast<std::size_t>(t)].first);
      kept[static_cast<std::size_t>(i)].emplace_back(
          cand[static_cast<std::size_t>(t)].second, std::exp(-d / sigma));
    }
  }
  return assemble(static_cast<int>(n), GraphMethod::knn, sigma, kept);
}

SampleGraph build_complete_graph(const Matrix& x, double sigma) {
  const Index n = x.rows();
  if (n < 2) throw Precondition("graph needs at least 2 rows");
  if (!(sigma > 0.0)) throw NonPositiveSigma(sigma);

  std::vector<std::vector<std::pair<int, double>>> kept(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double d = (x.row(i) - x.row(j)).norm();
      kept[static_cast<std::size_t>(i)].emplace_back(static_cast<int>(j),
                                                     std::exp(-d / sigma));
    }
  }
  return assemble(static_cast<int>(n), GraphMethod::complete, sigma, kept);
}

namespace {

// Normalized mutual information MI / min(H) from integer-count histograms.
double nmi_pair(const std::vector<int>& a, const std::vector<int>& b, int bins,
                const std::vector<double>& log_table) {
  const std::size_t n = a.size();
  std::vector<long> ca(static_cast<std::size_t>(bins), 0);
  std::vector<long> cb(static_cast<std::size_t>(bins), 0);
  std::vector<long> joint(static_cast<std::size_t>(bins * bins), 0);
  for (std::size_t t = 0; t < n; ++t) {
    ++ca[static_cast<std::size_t>(a[t])];
    ++cb[static_cast<std::size_t>(b[t])];
    ++joint[static_cast<std::size_t>(a[t] * bins + b[t])];
  }
  const double ln_n = log_table[n];
  double ha = 0.0, hb = 0.0, mi = 0.0;
  for (int u = 0; u < bins; ++u) {
    if (ca[static_cast<std::size_t>(u)] > 0) {
      const double p = static_cast<double>(ca[static_cast<std::size_t>(u)]) / n;
      ha -= p * (log_table[static_cast<std::size_t>(ca[static_cast<std::size_t>(u)])] - ln_n);
    }
    if (cb[static_cast<std::size_t>(u)] > 0) {
      const double p = static_cast<double>(cb[static_cast<std::size_t>(u)]) / n;
      hb -= p * (log_table[static_cast<std::size_t>(cb[static_cast<std::size_t>(u)])] - ln_n);
    }
  }
  for (int u = 0; u < bins; ++u) {
    for (int v = 0; v < bins; ++v) {
      const long c = joint[static_cast<std::size_t>(u * bins + v)];
      if (c == 0) continue;
      const double p = static_cast<double>(c) / n;
      // ln(p_uv / (p_u p_v)) via pure count logs
      mi += p * (log_table[static_cast<std::size_t>(c)] + ln_n -
                 log_table[static_cast<std::size_t>(ca[static_cast<std::size_t>(u)])] -
                 log_table[static_cast<std::size_t>(cb[static_cast<std::size_t>(v)])]);
    }
  }
  const double hmin = std::min(ha, hb);
  if (hmin <= 0.0) {
    return a == b ? 1.0 : 0.0;  // a constant-binned sample vector
  }
  double v = mi / hmin;
  if (v < 0.0) v = 0.0;  // tiny negative from float cancellation
  if (v > 1.0) v = 1.0;
  return v;
}

}  // namespace

SampleGraph build_mutual_information_graph(const Matrix& x, int mi_bins, int k) {
  const Index n = x.rows();
  if (n < 2) throw Precondition("graph needs at least 2 rows");
  if (mi_bins < 2) throw InvalidBins(mi_bins);
  if (k < 1 || k > n - 1) throw InvalidK(k, static_cast<long>(n));
  if (x.cols() < mi_bins) {
    std::cerr << "warning: only " << x.cols() << " features for " << mi_bins
              << "-bin sample histograms; mutual information will be coarse\n";
  }

  // Per-sample bin vectors: sample i is described by the bin code of each
  // of its features, using the same quantile convention as the discretizer.
  const BinningModel binning = fit_quantile_bins(x, mi_bins);
  const Index d = x.cols();
  std::vector<std::vector<int>> sample_bins(
      static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(d)));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) {
      sample_bins[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          assign_bin(x(i, j), j, binning);
    }
  }

  std::vector<double> log_table(static_cast<std::size_t>(d) + 1, 0.0);
  for (std::size_t c = 1; c < log_table.size(); ++c)
    log_table[c] = std::log(static_cast<double>(c));

  std::vector<std::vector<std::pair<int, double>>> kept(static_cast<std::size_t>(n));
  std::vector<std::pair<double, int>> cand;
  for (Index i = 0; i < n; ++i) {
    cand.clear();
    cand.reserve(static_cast<std::size_t>(n) - 1);
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double v = nmi_pair(sample_bins[static_cast<std::size_t>(i)],
                                sample_bins[static_cast<std::size_t>(j)], mi_bins,
                                log_table);
      // negate so partial_sort's ascending order means "highest NMI first";
      // ties break toward the lower index
      cand.emplace_back(-v, static_cast<int>(j));
    }
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    for (int t = 0; t < k; ++t) {
      double w = -cand[static_cast<std::size_t>(t)].first;
      if (w <= 0.0) continue;  // NMI 0 carries no edge
      kept[static_cast<std::size_t>(i)].emplace_back(
          cand[static_cast<std::size_t>(t)].second, w);
    }
  }
  return assemble(static_cast<int>(n), GraphMethod::mutual_information, std::nullopt,
                  kept);
}

SampleGraph build_adaptive_threshold_graph(const Matrix& x, double alpha,
                                           double sigma) {
  const Index n = x.rows();
  if (n < 2) throw Precondition("graph needs at least 2 rows");
  if (!(sigma > 0.0)) throw NonPositiveSigma(sigma);

  Matrix sim(n, n);
  for (Index i = 0; i < n; ++i) {
    sim(i, i) = 1.0;
    for (Index j = i + 1; j < n; ++j) {
      const double w = std::exp(-(x.row(i) - x.row(j)).norm() / sigma);
      sim(i, j) = w;
      sim(j, i) = w;
    }
  }

  std::vector<std::vector<std::pair<int, double>>> kept(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    double mean = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (j != i) mean += sim(i, j);
    }
    mean /= static_cast<double>(n - 1);
    double var = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (j != i) {
        const double dlt = sim(i, j) - mean;
        var += dlt * dlt;
      }
    }
    var /= static_cast<double>(n - 1);  // population over the n-1 off-diagonal sims
    const double cut = mean + alpha * std::sqrt(var);
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      if (sim(i, j) >= cut) {
        kept[static_cast<std::size_t>(i)].emplace_back(static_cast<int>(j), sim(i, j));
      }
    }
  }
  return assemble(static_cast<int>(n), GraphMethod::adaptive_threshold, sigma, kept);
}

SampleGraph normalize_neighborhood(SampleGraph g) {
  g.raw_rowsum.assign(static_cast<std::size_t>(g.n_nodes), 0.0);
  for (int i = 0; i < g.n_nodes; ++i) {
    double sum = 0.0;
    for (const auto& e : g.adjacency[static_cast<std::size_t>(i)]) sum += e.raw;
    if (!(sum > 0.0)) throw ZeroNeighborhood(i);
    g.raw_rowsum[static_cast<std::size_t>(i)] = sum;
    for (auto& e : g.adjacency[static_cast<std::size_t>(i)]) e.norm = e.raw / sum;
  }
  return g;
}

SampleGraph build_graph(const Matrix& x, const GraphConfig& cfg, std::uint64_t seed) {
  double sigma = 0.0;
  if (cfg.method != GraphMethod::mutual_information) {
    sigma = cfg.sigma ? *cfg.sigma
                      : median_bandwidth(x, 1024, derive_seed(seed, "sigma"));
  }
  SampleGraph g;
  switch (cfg.method) {
    case GraphMethod::knn:
      g = build_knn_graph(x, cfg.k, sigma);
      break;
    case GraphMethod::complete:
      g = build_complete_graph(x, sigma);
      break;
    case GraphMethod::mutual_information:
      g = build_mutual_information_graph(x, cfg.mi_bins, cfg.k);
      break;
    case GraphMethod::adaptive_threshold:
      g = build_adaptive_threshold_graph(x, cfg.alpha, sigma);
      break;
  }
  return normalize_neighborhood(std::move(g));
}

std::string edge_list_csv(const SampleGraph& g) {
  std::ostringstream out;
  out << "src,dst,raw_weight,norm_weight\n";
  for (int i = 0; i < g.n_nodes; ++i) {
    for (const auto& e : g.adjacency[static_cast<std::size_t>(i)]) {
      out << i << ',' << e.neighbor << ',' << format_double(e.raw) << ','
          << format_double(e.norm) << '\n';
    }
  }
  return out.str();
}

DegreeStats degree_stats(const SampleGraph& g) {
  DegreeStats s;
  s.n_nodes = g.n_nodes;
  if (g.n_nodes == 0) return s;
  double mn = 1e300, mx = 0.0, total = 0.0;
  for (int i = 0; i < g.n_nodes; ++i) {
    double deg = 0.0;
    for (const auto& e : g.adjacency[static_cast<std::size_t>(i)]) {
      if (e.neighbor != i) deg += 1.0;
    }
    mn = std::min(mn, deg);
    mx = std::max(mx, deg);
    total += deg;
  }
  s.min_degree = mn;
  s.max_degree = mx;
  s.mean_degree = total / static_cast<double>(g.n_nodes);
  s.n_edges = static_cast<long>(total);
  return s;
}

}  // namespace graphmine
