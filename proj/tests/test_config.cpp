#include <doctest.h>

#include <string>

#include "graphmine/config.hpp"

using namespace graphmine;

TEST_CASE("empty object resolves to the full default table") {
  const PipelineConfig cfg = parse_config_text("{}");
  CHECK(cfg.data.label_column == "Class");
  CHECK(cfg.data.drop_columns.empty());
  CHECK(cfg.data.standardize);
  CHECK(cfg.graph.method == GraphMethod::knn);
  CHECK(cfg.graph.k == 10);
  CHECK(cfg.graph.alpha == 1.0);
  CHECK(cfg.graph.mi_bins == 4);
  CHECK_FALSE(cfg.graph.sigma.has_value());
  CHECK(cfg.model.hidden_dim == 64);
  CHECK(cfg.model.embedding_dim == 128);
  CHECK(cfg.train.learning_rate == 0.01);
  CHECK(cfg.train.epochs == 200);
  CHECK(cfg.train.lambda == 0.5);
  CHECK(cfg.train.beta == 0.5);
  CHECK(cfg.train.margin == 1.0);
  CHECK(cfg.train.pos_pairs == 2);
  CHECK(cfg.train.neg_pairs == 2);
  CHECK(cfg.discretize.bins == 4);
  CHECK(cfg.mining.min_support == 0.05);
  CHECK(cfg.mining.scope == Scope::minority);
  CHECK_FALSE(cfg.mining.maximal_only);
  CHECK(cfg.mining.max_len == 3);
  CHECK(cfg.seed == 42);
}

TEST_CASE("negative lambda is rejected with the dotted key") {
  try {
    parse_config_text(R"({"train":{"lambda":-1}})");
    FAIL("expected InvalidValue");
  } catch (const InvalidValue& e) {
    CHECK(e.key == "train.lambda");
    CHECK(e.reason == "must be ≥ 0");
  }
}

TEST_CASE("unknown sections and keys are rejected") {
  try {
    parse_config_text(R"({"grph":{}})");
    FAIL("expected UnknownKey");
  } catch (const UnknownKey& e) {
    CHECK(e.key == "grph");
  }
  try {
    parse_config_text(R"({"graph":{"kk":3}})");
    FAIL("expected UnknownKey");
  } catch (const UnknownKey& e) {
    CHECK(e.key == "graph.kk");
  }
}

TEST_CASE("malformed json raises a syntax error") {
  CHECK_THROWS_AS(parse_config_text("{"), ConfigSyntaxError);
  CHECK_THROWS_AS(parse_config_text(""), ConfigSyntaxError);
  CHECK_THROWS_AS(parse_config_text("[1,2]"), ConfigSyntaxError);
}

TEST_CASE("sigma accepts auto or a positive number") {
  CHECK_FALSE(parse_config_text(R"({"graph":{"sigma":"auto"}})").graph.sigma.has_value());
  const PipelineConfig fixed = parse_config_text(R"({"graph":{"sigma":2.5}})");
  REQUIRE(fixed.graph.sigma.has_value());
  CHECK(*fixed.graph.sigma == 2.5);
  try {
    parse_config_text(R"({"graph":{"sigma":-1}})");
    FAIL("expected InvalidValue");
  } catch (const InvalidValue& e) {
    CHECK(e.key == "graph.sigma");
    CHECK(e.reason == "must be \"auto\" or a positive number");
  }
  CHECK_THROWS_AS(parse_config_text(R"({"graph":{"sigma":"median"}})"), InvalidValue);
}

TEST_CASE("enum-valued fields reject unknown tags") {
  CHECK(parse_config_text(R"({"graph":{"method":"adaptive_threshold"}})").graph.method ==
        GraphMethod::adaptive_threshold);
  CHECK_THROWS_AS(parse_config_text(R"({"graph":{"method":"voronoi"}})"), InvalidValue);
  CHECK(parse_config_text(R"({"mining":{"scope":"full"}})").mining.scope == Scope::full);
  CHECK_THROWS_AS(parse_config_text(R"({"mining":{"scope":"all"}})"), InvalidValue);
}

TEST_CASE("range checks cover the numeric fields") {
  CHECK_THROWS_AS(parse_config_text(R"({"graph":{"k":0}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"graph":{"mi_bins":1}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"model":{"hidden_dim":0}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"model":{"embedding_dim":-3}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"train":{"learning_rate":0}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"train":{"epochs":-1}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"train":{"beta":0}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"train":{"beta":1.2}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"mining":{"min_support":0}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"mining":{"min_support":1.0001}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"mining":{"max_len":-2}})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"seed":-4})"), InvalidValue);
  CHECK_THROWS_AS(parse_config_text(R"({"train":{"epochs":3.5}})"), InvalidValue);

  // boundary values that must pass
  CHECK(parse_config_text(R"({"train":{"beta":1.0}})").train.beta == 1.0);
  CHECK(parse_config_text(R"({"mining":{"min_support":1.0}})").mining.min_support == 1.0);
  CHECK(parse_config_text(R"({"train":{"epochs":0}})").train.epochs == 0);
  CHECK(parse_config_text(R"({"mining":{"max_len":0}})").mining.max_len == 0);
}

TEST_CASE("canonical form and digest are stable") {
  const PipelineConfig a = parse_config_text("{}");
  const PipelineConfig b = parse_config_text(R"({"graph":{}})");
  CHECK(a.canonical() == b.canonical());
  CHECK(a.digest() == b.digest());
  CHECK(a.digest().size() == 16);

  const PipelineConfig c = parse_config_text(R"({"graph":{"k":11}})");
  CHECK(a.canonical() != c.canonical());
  CHECK(a.digest() != c.digest());

  // explicitly setting a default leaves the resolved form unchanged
  const PipelineConfig d = parse_config_text(R"({"graph":{"k":10}})");
  CHECK(a.canonical() == d.canonical());
}

TEST_CASE("converters hand the resolved values to the stage configs") {
  const PipelineConfig cfg = parse_config_text(
      R"({"seed":7,"graph":{"method":"complete","sigma":1.5},
          "train":{"epochs":17,"lambda":0.25}})");
  const GraphConfig gc = cfg.graph_config();
  CHECK(gc.method == GraphMethod::complete);
  REQUIRE(gc.sigma.has_value());
  CHECK(*gc.sigma == 1.5);
  const TrainConfig tc = cfg.train_config();
  CHECK(tc.epochs == 17);
  CHECK(tc.lambda == 0.25);
  CHECK(tc.seed == 7);
}
