#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "graphmine/mining.hpp"
#include "graphmine/rng.hpp"

using namespace graphmine;

namespace {

TransactionDb make_db(std::vector<std::vector<int>> transactions,
                      std::vector<int> labels, int n_items) {
  TransactionDb db;
  db.transactions = std::move(transactions);
  db.labels = std::move(labels);
  db.n_items = n_items;
  db.n_dims = n_items;  // synthetic dbs here are not tied to a binning model
  db.bins_per_dim = 1;
  for (auto& t : db.transactions) std::sort(t.begin(), t.end());
  return db;
}

using Counted = std::set<std::pair<std::vector<int>, long>>;

Counted counted(const PatternSet& ps) {
  Counted out;
  for (const auto& p : ps.patterns) out.insert({p.items, p.support_count});
  return out;
}

TransactionDb random_db(Rng& rng) {
  const int n_items = 2 + static_cast<int>(rng.below(9));   // 2..10
  const int n_trans = 1 + static_cast<int>(rng.below(40));  // 1..40
  std::vector<std::vector<int>> ts;
  std::vector<int> labels;
  for (int t = 0; t < n_trans; ++t) {
    std::vector<int> items;
    for (int i = 0; i < n_items; ++i)
      if (rng.uniform() < 0.4) items.push_back(i);
    if (items.empty()) items.push_back(static_cast<int>(rng.below(n_items)));
    ts.push_back(std::move(items));
    labels.push_back(rng.uniform() < 0.3 ? 1 : 0);
  }
  return make_db(std::move(ts), std::move(labels), n_items);
}

const std::vector<std::vector<int>> kFourTx{{0, 1, 2}, {0, 1}, {0, 2}, {0}};

}  // namespace

TEST_CASE("fp-growth finds exactly the frequent itemsets of the worked fixture") {
  const TransactionDb db = make_db(kFourTx, {0, 0, 0, 0}, 3);
  const PatternSet ps = fp_growth(db, Scope::full, 0.5);
  CHECK(ps.scope_size == 4);

  const Counted expect{
      {{0}, 4}, {{1}, 2}, {{2}, 2}, {{0, 1}, 2}, {{0, 2}, 2}};
  CHECK(counted(ps) == expect);

  // canonical order: smaller itemsets first, then lexicographic
  REQUIRE(ps.patterns.size() == 5);
  CHECK(ps.patterns[0].items == std::vector<int>{0});
  CHECK(ps.patterns[3].items == std::vector<int>{0, 1});
  CHECK(ps.patterns[4].items == std::vector<int>{0, 2});

  // support is the exact count ratio
  CHECK(ps.patterns[0].support == 1.0);
  CHECK(ps.patterns[1].support == 0.5);
}

TEST_CASE("min_support one keeps only itemsets present everywhere") {
  const TransactionDb db = make_db(kFourTx, {0, 0, 0, 0}, 3);
  const PatternSet ps = fp_growth(db, Scope::full, 1.0);
  REQUIRE(ps.patterns.size() == 1);
  CHECK(ps.patterns[0].items == std::vector<int>{0});
  CHECK(ps.patterns[0].support_count == 4);
}

TEST_CASE("minority scope without minority transactions is an error") {
  const TransactionDb db = make_db(kFourTx, {0, 0, 0, 0}, 3);
  CHECK_THROWS_AS(fp_growth(db, Scope::minority, 0.5), EmptyScope);
  CHECK_THROWS_AS(apriori_oracle(db, Scope::minority, 0.5), EmptyScope);
}

TEST_CASE("fp-growth validates its arguments") {
  const TransactionDb db = make_db(kFourTx, {0, 0, 0, 0}, 3);
  CHECK_THROWS_AS(fp_growth(db, Scope::full, 0.0), Precondition);
  CHECK_THROWS_AS(fp_growth(db, Scope::full, 1.5), Precondition);
  CHECK_THROWS_AS(fp_growth(db, Scope::full, 0.5, -1), Precondition);
}

TEST_CASE("oracle reproduces the fixture and the power-set example") {
  const TransactionDb db = make_db(kFourTx, {0, 0, 0, 0}, 3);
  CHECK(counted(apriori_oracle(db, Scope::full, 0.5)) ==
        counted(fp_growth(db, Scope::full, 0.5)));

  const TransactionDb single = make_db({{4, 7}}, {0}, 8);
  const PatternSet ps = apriori_oracle(single, Scope::full, 1.0);
  const Counted expect{{{4}, 1}, {{7}, 1}, {{4, 7}, 1}};
  CHECK(counted(ps) == expect);
  CHECK(counted(fp_growth(single, Scope::full, 1.0)) == expect);
}

TEST_CASE("oracle refuses item universes beyond 20 bits") {
  const TransactionDb db = make_db({{0, 21}}, {0}, 22);
  CHECK_THROWS_AS(apriori_oracle(db, Scope::full, 0.5), OracleTooLarge);
}

TEST_CASE("empty result when the count threshold exceeds the scope size") {
  // one minority transaction, min_support 1.0 over full scope of 4: threshold 4
  const TransactionDb db = make_db({{0}, {1}, {2}, {3}}, {0, 0, 0, 0}, 4);
  const PatternSet ps = apriori_oracle(db, Scope::full, 1.0);
  CHECK(ps.patterns.empty());
  CHECK(fp_growth(db, Scope::full, 1.0).patterns.empty());
}

TEST_CASE("fp-growth agrees with the oracle on random databases") {
  Rng rng(6000);
  const double supports[] = {0.1, 0.2, 0.3, 0.5, 0.7, 0.9};
  for (int trial = 0; trial < 30; ++trial) {
    const TransactionDb db = random_db(rng);
    const double ms = supports[rng.below(6)];
    const PatternSet a = fp_growth(db, Scope::full, ms);
    const PatternSet b = apriori_oracle(db, Scope::full, ms);
    CHECK(counted(a) == counted(b));

    const bool has_minority =
        std::find(db.labels.begin(), db.labels.end(), 1) != db.labels.end();
    if (has_minority) {
      CHECK(counted(fp_growth(db, Scope::minority, ms)) ==
            counted(apriori_oracle(db, Scope::minority, ms)));
    }
  }
}

TEST_CASE("downward closure holds on random databases") {
  Rng rng(6100);
  for (int trial = 0; trial < 15; ++trial) {
    const TransactionDb db = random_db(rng);
    const PatternSet ps = fp_growth(db, Scope::full, 0.2);
    std::map<std::vector<int>, long> count_of;
    for (const auto& p : ps.patterns) count_of[p.items] = p.support_count;
    for (const auto& p : ps.patterns) {
      if (p.items.size() < 2) continue;
      for (std::size_t drop = 0; drop < p.items.size(); ++drop) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < p.items.size(); ++i)
          if (i != drop) sub.push_back(p.items[i]);
        auto it = count_of.find(sub);
        REQUIRE(it != count_of.end());
        CHECK(it->second >= p.support_count);
      }
    }
  }
}

TEST_CASE("raising min_support shrinks the pattern set") {
  Rng rng(6200);
  for (int trial = 0; trial < 10; ++trial) {
    const TransactionDb db = random_db(rng);
    const Counted lo = counted(fp_growth(db, Scope::full, 0.2));
    const Counted hi = counted(fp_growth(db, Scope::full, 0.6));
    CHECK(std::includes(lo.begin(), lo.end(), hi.begin(), hi.end()));
  }
}

TEST_CASE("full scope on an all-minority database matches minority scope") {
  Rng rng(6300);
  for (int trial = 0; trial < 5; ++trial) {
    TransactionDb db = random_db(rng);
    std::fill(db.labels.begin(), db.labels.end(), 1);
    CHECK(counted(fp_growth(db, Scope::full, 0.3)) ==
          counted(fp_growth(db, Scope::minority, 0.3)));
  }
}

TEST_CASE("max_len caps itemset size in both miners identically") {
  Rng rng(6400);
  for (int trial = 0; trial < 10; ++trial) {
    const TransactionDb db = random_db(rng);
    const PatternSet fp = fp_growth(db, Scope::full, 0.15, 2);
    const PatternSet or2 = apriori_oracle(db, Scope::full, 0.15, 2);
    CHECK(counted(fp) == counted(or2));
    for (const auto& p : fp.patterns) CHECK(p.items.size() <= 2);

    // the cap only removes the longer itemsets
    Counted uncapped = counted(fp_growth(db, Scope::full, 0.15));
    Counted trimmed;
    for (const auto& [items, c] : uncapped)
      if (items.size() <= 2) trimmed.insert({items, c});
    CHECK(counted(fp) == trimmed);
  }
}

TEST_CASE("average support never drops below min_support") {
  Rng rng(6500);
  for (int trial = 0; trial < 10; ++trial) {
    const TransactionDb db = random_db(rng);
    const PatternSet ps = fp_growth(db, Scope::full, 0.3);
    if (ps.patterns.empty()) continue;
    double mean = 0.0;
    for (const auto& p : ps.patterns) {
      CHECK(p.support >= 0.3);
      CHECK(p.support <= 1.0);
      mean += p.support;
    }
    mean /= static_cast<double>(ps.patterns.size());
    CHECK(mean >= 0.3);
  }
}

namespace {

// t1={1}min t2={1}min t3={1}maj t4={2}maj
const TransactionDb kConfDb = make_db({{1}, {1}, {1}, {2}}, {1, 1, 0, 0}, 3);
// same db extended with t5={1,2}min
const TransactionDb kConfDbExt =
    make_db({{1}, {1}, {1}, {2}, {1, 2}}, {1, 1, 0, 0, 1}, 3);

Pattern pat(std::vector<int> items) {
  Pattern p;
  p.items = std::move(items);
  return p;
}

}  // namespace

TEST_CASE("pattern confidence is the minority ratio among containing transactions") {
  CHECK(pattern_confidence(pat({1}), kConfDb) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(pattern_confidence(pat({2}), kConfDb) == 0.0);
  CHECK_THROWS_AS(pattern_confidence(pat({0}), kConfDb), UndefinedConfidence);

  CHECK(pattern_confidence(pat({1}), kConfDbExt) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pattern_confidence(pat({2}), kConfDbExt) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pattern_confidence(pat({1, 2}), kConfDbExt) == 1.0);
}

TEST_CASE("minority coverage counts minority transactions hit by any pattern") {
  PatternSet ps;
  ps.patterns = {pat({1})};
  const TransactionDb db = make_db({{1}, {1}}, {1, 1}, 2);
  CHECK(minority_coverage(ps, db) == 1.0);

  PatternSet empty;
  CHECK(minority_coverage(empty, db) == 0.0);

  PatternSet miss;
  miss.patterns = {pat({0})};
  CHECK(minority_coverage(miss, db) == 0.0);

  const TransactionDb no_min = make_db({{1}}, {0}, 2);
  CHECK_THROWS_AS(minority_coverage(ps, no_min), NoMinority);
}

TEST_CASE("mining report averages supports and defined confidences") {
  Provenance prov;
  prov.variant = "raw";

  PatternSet ps;
  ps.scope = Scope::minority;
  ps.scope_size = 4;
  Pattern a = pat({1});
  a.support_count = 2;
  a.support = 0.5;
  Pattern b = pat({1, 2});
  b.support_count = 1;
  b.support = 0.25;
  ps.patterns = {a, b};

  const MiningReport rep = mining_report(ps, kConfDbExt, prov);
  CHECK(rep.num_patterns == 2);
  CHECK(rep.avg_support == doctest::Approx(0.375).epsilon(1e-15));
  // conf({1}) = 3/4 and conf({1,2}) = 1 on the extended db
  CHECK(rep.avg_confidence == doctest::Approx((0.75 + 1.0) / 2.0).epsilon(1e-15));
  CHECK(rep.minority_coverage == 1.0);
  CHECK_FALSE(rep.empty);
  CHECK(rep.provenance.variant == "raw");
}

TEST_CASE("empty pattern set reports zeros with the empty flag") {
  Provenance prov;
  PatternSet ps;
  const MiningReport rep = mining_report(ps, kConfDbExt, prov);
  CHECK(rep.num_patterns == 0);
  CHECK(rep.avg_support == 0.0);
  CHECK(rep.avg_confidence == 0.0);
  CHECK(rep.minority_coverage == 0.0);
  CHECK(rep.empty);
}

TEST_CASE("maximal filter keeps only patterns with no mined superset") {
  const TransactionDb db = make_db(kFourTx, {0, 0, 0, 0}, 3);
  const PatternSet all = fp_growth(db, Scope::full, 0.5);
  const PatternSet mx = maximal_only(all);
  const Counted expect{{{0, 1}, 2}, {{0, 2}, 2}};
  CHECK(counted(mx) == expect);
}

TEST_CASE("pattern export uses dim:bin tokens with semicolon fields") {
  Matrix x(4, 2);
  x << 0, 0,
       0, 1,
       1, 0,
       1, 1;
  const BinningModel bm = fit_quantile_bins(x, 2);
  const TransactionDb db = to_transactions(x, {1, 1, 1, 1}, bm);
  PatternSet ps = fp_growth(db, Scope::minority, 0.5);
  const std::string csv = patterns_csv(ps, db);
  CHECK(csv.rfind("items;support;confidence\n", 0) == 0);
  CHECK(csv.find("0:0") != std::string::npos);
  const auto lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == static_cast<long>(ps.patterns.size()) + 1);
}
