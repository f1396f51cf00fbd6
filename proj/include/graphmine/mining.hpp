#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphmine/discretize.hpp"
#include "graphmine/errors.hpp"

namespace graphmine {

enum class Scope { minority, full };

std::string to_string(Scope s);
std::optional<Scope> scope_from_string(const std::string& s);

struct Pattern {
  std::vector<int> items;  // sorted ascending
  long support_count = 0;  // within the mining scope
  double support = 0.0;    // support_count / scope_size
};

// Canonical order: by itemset size, then lexicographic item ids. Every
// pattern meets the count threshold ceil(min_support * scope_size).
struct PatternSet {
  std::vector<Pattern> patterns;
  Scope scope = Scope::minority;
  long scope_size = 0;
  double min_support = 0.0;
  long max_len = 0;  // 0 = unbounded itemset size
};

// max_len caps the itemset size; 0 means no cap. The cap exists because a
// tight embedding cluster makes every item combination within the cluster
// frequent, and enumerating all of them is exponential in the transaction
// width.
PatternSet fp_growth(const TransactionDb& db, Scope scope, double min_support,
                     long max_len = 0);

// Exhaustive bitmask enumeration; same output contract as fp_growth.
// Only usable when the item universe fits in 20 bits.
PatternSet apriori_oracle(const TransactionDb& db, Scope scope, double min_support,
                          long max_len = 0);

// Confidence of the class rule pattern -> minority, counted over the full
// database.
double pattern_confidence(const Pattern& p, const TransactionDb& db);

// Fraction of minority transactions containing at least one pattern.
double minority_coverage(const PatternSet& ps, const TransactionDb& db);

// Keeps only patterns with no mined proper superset.
PatternSet maximal_only(const PatternSet& ps);

struct Provenance {
  std::string variant;       // embedding | raw | pca
  std::string graph_method;  // "none" for variants without a graph
  int embedding_dim = 0;
  std::uint64_t seed = 0;
  std::string config_digest;
  long runtime_ms = 0;
};

struct MiningReport {
  long num_patterns = 0;
  double avg_support = 0.0;
  double avg_confidence = 0.0;
  double minority_coverage = 0.0;
  bool empty = false;  // no patterns survived the support threshold
  Provenance provenance;
};

MiningReport mining_report(const PatternSet& ps, const TransactionDb& db,
                           const Provenance& prov);

// CSV "items;support;confidence" with items as dim:bin tokens joined by '|'.
std::string patterns_csv(const PatternSet& ps, const TransactionDb& db);

}  // namespace graphmine
