#include "graphmine/mining.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "graphmine/util.hpp"

namespace graphmine {

std::string to_string(Scope s) {
  return s == Scope::minority ? "minority" : "full";
}

std::optional<Scope> scope_from_string(const std::string& s) {
  if (s == "minority") return Scope::minority;
  if (s == "full") return Scope::full;
  return std::nullopt;
}

namespace {

std::vector<const std::vector<int>*> scope_view(const TransactionDb& db, Scope scope) {
  std::vector<const std::vector<int>*> view;
  view.reserve(db.transactions.size());
  for (std::size_t i = 0; i < db.transactions.size(); ++i) {
    if (scope == Scope::full || db.labels[i] == 1) {
      view.push_back(&db.transactions[i]);
    }
  }
  return view;
}

long count_threshold(double min_support, long scope_size) {
  const long t =
      static_cast<long>(std::ceil(min_support * static_cast<double>(scope_size)));
  return std::max<long>(t, 1);
}

void sort_canonical(std::vector<Pattern>& patterns) {
  std::sort(patterns.begin(), patterns.end(), [](const Pattern& a, const Pattern& b) {
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return a.items < b.items;
  });
}

// FP-tree over rank-recoded transactions. Items are kept as ranks in the one
// global order (descending scope frequency, ascending id on ties), so every
// path through any conditional tree is an increasing rank sequence.
struct FpTree {
  struct Node {
    int rank;
    long count;
    int parent;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<int>> children;  // child node ids per node
  std::vector<std::vector<int>> header;    // rank -> node ids
  std::vector<long> rank_count;            // rank -> total count in this tree

  explicit FpTree(std::size_t n_ranks)
      : header(n_ranks), rank_count(n_ranks, 0) {
    nodes.push_back({-1, 0, -1});
    children.emplace_back();
  }

  void insert(const std::vector<int>& ranks, long count) {
    int cur = 0;
    for (int r : ranks) {
      rank_count[static_cast<std::size_t>(r)] += count;
      int next = -1;
      for (int c : children[static_cast<std::size_t>(cur)]) {
        if (nodes[static_cast<std::size_t>(c)].rank == r) {
          next = c;
          break;
        }
      }
      if (next < 0) {
        next = static_cast<int>(nodes.size());
        nodes.push_back({r, 0, cur});
        children.emplace_back();
        children[static_cast<std::size_t>(cur)].push_back(next);
        header[static_cast<std::size_t>(r)].push_back(next);
      }
      nodes[static_cast<std::size_t>(next)].count += count;
      cur = next;
    }
  }
};

void mine_tree(const FpTree& tree, long threshold, long max_len,
               std::vector<int>& suffix_ranks, const std::vector<int>& rank_to_item,
               std::vector<Pattern>& out) {
  const int n_ranks = static_cast<int>(tree.header.size());
  // least-frequent first: highest rank first
  for (int r = n_ranks - 1; r >= 0; --r) {
    const long total = tree.rank_count[static_cast<std::size_t>(r)];
    if (total < threshold) continue;

    suffix_ranks.push_back(r);

    Pattern p;
    p.items.reserve(suffix_ranks.size());
    for (int sr : suffix_ranks) p.items.push_back(rank_to_item[static_cast<std::size_t>(sr)]);
    std::sort(p.items.begin(), p.items.end());
    p.support_count = total;
    out.push_back(std::move(p));

    if (max_len == 0 || static_cast<long>(suffix_ranks.size()) < max_len) {
      // conditional pattern base: prefix paths of every node carrying r
      std::vector<std::pair<std::vector<int>, long>> base;
      std::vector<long> cond_count(static_cast<std::size_t>(n_ranks), 0);
      for (int nid : tree.header[static_cast<std::size_t>(r)]) {
        const long c = tree.nodes[static_cast<std::size_t>(nid)].count;
        std::vector<int> path;
        for (int cur = tree.nodes[static_cast<std::size_t>(nid)].parent; cur > 0;
             cur = tree.nodes[static_cast<std::size_t>(cur)].parent) {
          path.push_back(tree.nodes[static_cast<std::size_t>(cur)].rank);
        }
        if (path.empty()) continue;
        std::reverse(path.begin(), path.end());
        for (int pr : path) cond_count[static_cast<std::size_t>(pr)] += c;
        base.emplace_back(std::move(path), c);
      }

      bool any = false;
      for (int pr = 0; pr < n_ranks; ++pr) {
        if (cond_count[static_cast<std::size_t>(pr)] >= threshold) {
          any = true;
          break;
        }
      }
      if (any) {
        FpTree cond(static_cast<std::size_t>(n_ranks));
        std::vector<int> filtered;
        for (const auto& [path, c] : base) {
          filtered.clear();
          for (int pr : path) {
            if (cond_count[static_cast<std::size_t>(pr)] >= threshold)
              filtered.push_back(pr);
          }
          if (!filtered.empty()) cond.insert(filtered, c);
        }
        mine_tree(cond, threshold, max_len, suffix_ranks, rank_to_item, out);
      }
    }

    suffix_ranks.pop_back();
  }
}

}  // namespace

PatternSet fp_growth(const TransactionDb& db, Scope scope, double min_support,
                     long max_len) {
  if (!(min_support > 0.0 && min_support <= 1.0))
    throw Precondition("min_support must be in (0, 1]");
  if (max_len < 0) throw Precondition("max_len must be >= 0");

  const auto view = scope_view(db, scope);
  if (view.empty()) throw EmptyScope();
  const long scope_size = static_cast<long>(view.size());
  const long threshold = count_threshold(min_support, scope_size);

  PatternSet ps;
  ps.scope = scope;
  ps.scope_size = scope_size;
  ps.min_support = min_support;
  ps.max_len = max_len;

  std::map<int, long> item_count;
  for (const auto* t : view) {
    for (int item : *t) ++item_count[item];
  }

  // global order: descending scope frequency, ties ascending id
  std::vector<std::pair<int, long>> frequent;
  for (const auto& [item, c] : item_count) {
    if (c >= threshold) frequent.emplace_back(item, c);
  }
  std::sort(frequent.begin(), frequent.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (frequent.empty()) return ps;

  std::map<int, int> item_to_rank;
  std::vector<int> rank_to_item(frequent.size());
  for (std::size_t r = 0; r < frequent.size(); ++r) {
    item_to_rank[frequent[r].first] = static_cast<int>(r);
    rank_to_item[r] = frequent[r].first;
  }

  FpTree tree(frequent.size());
  std::vector<int> ranks;
  for (const auto* t : view) {
    ranks.clear();
    for (int item : *t) {
      const auto it = item_to_rank.find(item);
      if (it != item_to_rank.end()) ranks.push_back(it->second);
    }
    std::sort(ranks.begin(), ranks.end());
    if (!ranks.empty()) tree.insert(ranks, 1);
  }

  std::vector<int> suffix;
  mine_tree(tree, threshold, max_len, suffix, rank_to_item, ps.patterns);

  for (auto& p : ps.patterns) {
    p.support = static_cast<double>(p.support_count) / static_cast<double>(scope_size);
  }
  sort_canonical(ps.patterns);
  return ps;
}

PatternSet apriori_oracle(const TransactionDb& db, Scope scope, double min_support,
                          long max_len) {
  if (!(min_support > 0.0 && min_support <= 1.0))
    throw Precondition("min_support must be in (0, 1]");
  if (max_len < 0) throw Precondition("max_len must be >= 0");

  const auto view = scope_view(db, scope);
  if (view.empty()) throw EmptyScope();

  int universe = db.n_items;
  for (const auto* t : view) {
    for (int item : *t) universe = std::max(universe, item + 1);
  }
  if (universe > 20) throw OracleTooLarge(universe);

  const long scope_size = static_cast<long>(view.size());
  const long threshold = count_threshold(min_support, scope_size);

  std::vector<std::uint32_t> masks;
  masks.reserve(view.size());
  for (const auto* t : view) {
    std::uint32_t m = 0;
    for (int item : *t) m |= (1u << item);
    masks.push_back(m);
  }

  PatternSet ps;
  ps.scope = scope;
  ps.scope_size = scope_size;
  ps.min_support = min_support;
  ps.max_len = max_len;

  const std::uint32_t limit = 1u << universe;
  for (std::uint32_t m = 1; m < limit; ++m) {
    if (max_len > 0 && std::popcount(m) > max_len) continue;
    long c = 0;
    for (std::uint32_t t : masks) {
      if ((t & m) == m) ++c;
    }
    if (c < threshold) continue;
    Pattern p;
    for (int i = 0; i < universe; ++i) {
      if (m & (1u << i)) p.items.push_back(i);
    }
    p.support_count = c;
    p.support = static_cast<double>(c) / static_cast<double>(scope_size);
    ps.patterns.push_back(std::move(p));
  }
  sort_canonical(ps.patterns);
  return ps;
}

namespace {

bool contains_sorted(const std::vector<int>& t, const std::vector<int>& p) {
  return std::includes(t.begin(), t.end(), p.begin(), p.end());
}

// Postings over the full database: one bitset per item, one for the
// minority rows. Pattern occurrence counts are AND-reductions.
struct PostingIndex {
  std::size_t n_words;
  std::vector<std::vector<std::uint64_t>> item_rows;
  std::vector<std::uint64_t> minority_rows;
  long n_minority = 0;

  explicit PostingIndex(const TransactionDb& db) {
    const std::size_t n = db.transactions.size();
    n_words = (n + 63) / 64;
    int universe = db.n_items;
    for (const auto& t : db.transactions) {
      for (int item : t) universe = std::max(universe, item + 1);
    }
    item_rows.assign(static_cast<std::size_t>(universe),
                     std::vector<std::uint64_t>(n_words, 0));
    minority_rows.assign(n_words, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (int item : db.transactions[i]) {
        item_rows[static_cast<std::size_t>(item)][i / 64] |= (1ull << (i % 64));
      }
      if (db.labels[i] == 1) {
        minority_rows[i / 64] |= (1ull << (i % 64));
        ++n_minority;
      }
    }
  }

  // Rows containing every item of p, written into buf. Patterns are
  // non-empty, so the all-ones seed never survives into the result and the
  // tail bits past the last row stay zero.
  void pattern_rows(const Pattern& p, std::vector<std::uint64_t>& buf) const {
    buf.assign(n_words, ~0ull);
    for (int item : p.items) {
      const auto& r = item_rows[static_cast<std::size_t>(item)];
      for (std::size_t w = 0; w < n_words; ++w) buf[w] &= r[w];
    }
  }
};

long popcount_words(const std::vector<std::uint64_t>& words) {
  long c = 0;
  for (std::uint64_t w : words) c += std::popcount(w);
  return c;
}

}  // namespace

double pattern_confidence(const Pattern& p, const TransactionDb& db) {
  long containing = 0, minority_containing = 0;
  for (std::size_t i = 0; i < db.transactions.size(); ++i) {
    if (contains_sorted(db.transactions[i], p.items)) {
      ++containing;
      if (db.labels[i] == 1) ++minority_containing;
    }
  }
  if (containing == 0) throw UndefinedConfidence();
  return static_cast<double>(minority_containing) / static_cast<double>(containing);
}

double minority_coverage(const PatternSet& ps, const TransactionDb& db) {
  long n_minority = 0;
  for (int y : db.labels) n_minority += (y == 1);
  if (n_minority == 0) throw NoMinority();
  if (ps.patterns.empty()) return 0.0;

  long covered = 0;
  for (std::size_t i = 0; i < db.transactions.size(); ++i) {
    if (db.labels[i] != 1) continue;
    for (const auto& p : ps.patterns) {
      if (contains_sorted(db.transactions[i], p.items)) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(n_minority);
}

PatternSet maximal_only(const PatternSet& ps) {
  PatternSet out = ps;
  out.patterns.clear();
  for (const auto& cand : ps.patterns) {
    bool has_superset = false;
    for (const auto& other : ps.patterns) {
      if (other.items.size() > cand.items.size() &&
          contains_sorted(other.items, cand.items)) {
        has_superset = true;
        break;
      }
    }
    if (!has_superset) out.patterns.push_back(cand);
  }
  return out;
}

MiningReport mining_report(const PatternSet& ps, const TransactionDb& db,
                           const Provenance& prov) {
  MiningReport r;
  r.provenance = prov;
  r.num_patterns = static_cast<long>(ps.patterns.size());
  if (ps.patterns.empty()) {
    r.empty = true;
    return r;
  }

  double support_sum = 0.0;
  for (const auto& p : ps.patterns) support_sum += p.support;
  r.avg_support = support_sum / static_cast<double>(ps.patterns.size());

  const PostingIndex index(db);

  double conf_sum = 0.0;
  long conf_n = 0;
  std::vector<std::uint64_t> rows;
  std::vector<std::uint64_t> covered(index.n_words, 0);
  for (const auto& p : ps.patterns) {
    index.pattern_rows(p, rows);
    long containing = 0, minority_containing = 0;
    for (std::size_t w = 0; w < index.n_words; ++w) {
      containing += std::popcount(rows[w]);
      minority_containing += std::popcount(rows[w] & index.minority_rows[w]);
      covered[w] |= rows[w] & index.minority_rows[w];
    }
    if (containing > 0) {
      conf_sum += static_cast<double>(minority_containing) /
                  static_cast<double>(containing);
      ++conf_n;
    }
  }
  r.avg_confidence = conf_n > 0 ? conf_sum / static_cast<double>(conf_n) : 0.0;

  if (index.n_minority > 0) {
    r.minority_coverage = static_cast<double>(popcount_words(covered)) /
                          static_cast<double>(index.n_minority);
  }
  return r;
}

std::string patterns_csv(const PatternSet& ps, const TransactionDb& db) {
  std::ostringstream out;
  out << "items;support;confidence\n";
  const int bins = std::max(db.bins_per_dim, 1);
  for (const auto& p : ps.patterns) {
    bool first = true;
    for (int item : p.items) {
      if (!first) out << '|';
      out << item_token(item, bins);
      first = false;
    }
    double conf = 0.0;
    try {
      conf = pattern_confidence(p, db);
    } catch (const UndefinedConfidence&) {
      conf = 0.0;
    }
    out << ';' << format_double(p.support) << ';' << format_double(conf) << '\n';
  }
  return out.str();
}

}  // namespace graphmine
