#include "graphmine/config.hpp"

#include <json.hpp>

#include "graphmine/rng.hpp"
#include "graphmine/util.hpp"

namespace graphmine {

namespace {

using nlohmann::json;

void expect_object(const json& j, const std::string& key) {
  if (!j.is_object()) throw InvalidValue(key, "must be an object");
}

std::string str_field(const json& j, const std::string& key, const std::string& path,
                      std::string fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_string()) throw InvalidValue(path, "must be a string");
  return v.get<std::string>();
}

bool bool_field(const json& j, const std::string& key, const std::string& path,
                bool fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_boolean()) throw InvalidValue(path, "must be true or false");
  return v.get<bool>();
}

long int_field(const json& j, const std::string& key, const std::string& path,
               long fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw InvalidValue(path, "must be an integer");
  return v.get<long>();
}

double num_field(const json& j, const std::string& key, const std::string& path,
                 double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw InvalidValue(path, "must be a number");
  return v.get<double>();
}

void check_keys(const json& j, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) throw UnknownKey(prefix.empty() ? key : prefix + "." + key);
  }
}

}  // namespace

GraphConfig PipelineConfig::graph_config() const {
  GraphConfig g;
  g.method = graph.method;
  g.k = graph.k;
  g.alpha = graph.alpha;
  g.mi_bins = graph.mi_bins;
  g.sigma = graph.sigma;
  return g;
}

TrainConfig PipelineConfig::train_config() const {
  TrainConfig t;
  t.learning_rate = train.learning_rate;
  t.epochs = train.epochs;
  t.lambda = train.lambda;
  t.beta = train.beta;
  t.margin = train.margin;
  t.pos_pairs = train.pos_pairs;
  t.neg_pairs = train.neg_pairs;
  t.seed = seed;
  return t;
}

std::string PipelineConfig::canonical() const {
  json j;
  j["data"]["label_column"] = data.label_column;
  j["data"]["drop_columns"] = data.drop_columns;
  j["data"]["standardize"] = data.standardize;
  j["graph"]["method"] = to_string(graph.method);
  j["graph"]["k"] = graph.k;
  j["graph"]["alpha"] = graph.alpha;
  j["graph"]["mi_bins"] = graph.mi_bins;
  if (graph.sigma) {
    j["graph"]["sigma"] = *graph.sigma;
  } else {
    j["graph"]["sigma"] = "auto";
  }
  j["model"]["hidden_dim"] = model.hidden_dim;
  j["model"]["embedding_dim"] = model.embedding_dim;
  j["train"]["learning_rate"] = train.learning_rate;
  j["train"]["epochs"] = train.epochs;
  j["train"]["lambda"] = train.lambda;
  j["train"]["beta"] = train.beta;
  j["train"]["margin"] = train.margin;
  j["train"]["pos_pairs"] = train.pos_pairs;
  j["train"]["neg_pairs"] = train.neg_pairs;
  j["discretize"]["bins"] = discretize.bins;
  j["mining"]["min_support"] = mining.min_support;
  j["mining"]["scope"] = to_string(mining.scope);
  j["mining"]["maximal_only"] = mining.maximal_only;
  j["mining"]["max_len"] = mining.max_len;
  j["seed"] = seed;
  return j.dump();  // json's object is key-sorted, so this is canonical
}

std::string PipelineConfig::digest() const {
  return hex16(fnv1a64(canonical()));
}

PipelineConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigSyntaxError(e.what());
  }
  if (!j.is_object()) throw ConfigSyntaxError("config root must be an object");

  check_keys(j, "", {"data", "graph", "model", "train", "discretize", "mining", "seed"});

  PipelineConfig cfg;

  if (j.contains("data")) {
    const auto& d = j.at("data");
    expect_object(d, "data");
    check_keys(d, "data", {"label_column", "drop_columns", "standardize"});
    cfg.data.label_column =
        str_field(d, "label_column", "data.label_column", cfg.data.label_column);
    if (cfg.data.label_column.empty())
      throw InvalidValue("data.label_column", "must be a non-empty string");
    if (d.contains("drop_columns")) {
      const auto& dc = d.at("drop_columns");
      if (!dc.is_array()) throw InvalidValue("data.drop_columns", "must be an array");
      cfg.data.drop_columns.clear();
      for (const auto& e : dc) {
        if (!e.is_string())
          throw InvalidValue("data.drop_columns", "entries must be strings");
        cfg.data.drop_columns.push_back(e.get<std::string>());
      }
    }
    cfg.data.standardize =
        bool_field(d, "standardize", "data.standardize", cfg.data.standardize);
  }

  if (j.contains("graph")) {
    const auto& g = j.at("graph");
    expect_object(g, "graph");
    check_keys(g, "graph", {"method", "k", "alpha", "mi_bins", "sigma"});
    if (g.contains("method")) {
      if (!g.at("method").is_string())
        throw InvalidValue("graph.method", "must be a string");
      const auto m = graph_method_from_string(g.at("method").get<std::string>());
      if (!m)
        throw InvalidValue("graph.method",
                           "must be one of knn, complete, mutual_information, "
                           "adaptive_threshold");
      cfg.graph.method = *m;
    }
    cfg.graph.k = static_cast<int>(int_field(g, "k", "graph.k", cfg.graph.k));
    if (cfg.graph.k < 1) throw InvalidValue("graph.k", "must be ≥ 1");
    cfg.graph.alpha = num_field(g, "alpha", "graph.alpha", cfg.graph.alpha);
    cfg.graph.mi_bins =
        static_cast<int>(int_field(g, "mi_bins", "graph.mi_bins", cfg.graph.mi_bins));
    if (cfg.graph.mi_bins < 2) throw InvalidValue("graph.mi_bins", "must be ≥ 2");
    if (g.contains("sigma")) {
      const auto& s = g.at("sigma");
      if (s.is_string()) {
        if (s.get<std::string>() != "auto")
          throw InvalidValue("graph.sigma", "must be \"auto\" or a positive number");
        cfg.graph.sigma.reset();
      } else if (s.is_number()) {
        const double v = s.get<double>();
        if (!(v > 0.0))
          throw InvalidValue("graph.sigma", "must be \"auto\" or a positive number");
        cfg.graph.sigma = v;
      } else {
        throw InvalidValue("graph.sigma", "must be \"auto\" or a positive number");
      }
    }
  }

  if (j.contains("model")) {
    const auto& m = j.at("model");
    expect_object(m, "model");
    check_keys(m, "model", {"hidden_dim", "embedding_dim"});
    cfg.model.hidden_dim = static_cast<int>(
        int_field(m, "hidden_dim", "model.hidden_dim", cfg.model.hidden_dim));
    if (cfg.model.hidden_dim < 1)
      throw InvalidValue("model.hidden_dim", "must be ≥ 1");
    cfg.model.embedding_dim = static_cast<int>(
        int_field(m, "embedding_dim", "model.embedding_dim", cfg.model.embedding_dim));
    if (cfg.model.embedding_dim < 1)
      throw InvalidValue("model.embedding_dim", "must be ≥ 1");
  }

  if (j.contains("train")) {
    const auto& t = j.at("train");
    expect_object(t, "train");
    check_keys(t, "train",
               {"learning_rate", "epochs", "lambda", "beta", "margin", "pos_pairs",
                "neg_pairs"});
    cfg.train.learning_rate =
        num_field(t, "learning_rate", "train.learning_rate", cfg.train.learning_rate);
    if (!(cfg.train.learning_rate > 0.0))
      throw InvalidValue("train.learning_rate", "must be > 0");
    cfg.train.epochs =
        static_cast<int>(int_field(t, "epochs", "train.epochs", cfg.train.epochs));
    if (cfg.train.epochs < 0) throw InvalidValue("train.epochs", "must be ≥ 0");
    cfg.train.lambda = num_field(t, "lambda", "train.lambda", cfg.train.lambda);
    if (cfg.train.lambda < 0.0) throw InvalidValue("train.lambda", "must be ≥ 0");
    cfg.train.beta = num_field(t, "beta", "train.beta", cfg.train.beta);
    if (!(cfg.train.beta > 0.0 && cfg.train.beta <= 1.0))
      throw InvalidValue("train.beta", "must be in (0, 1]");
    cfg.train.margin = num_field(t, "margin", "train.margin", cfg.train.margin);
    if (!(cfg.train.margin > 0.0)) throw InvalidValue("train.margin", "must be > 0");
    cfg.train.pos_pairs = static_cast<int>(
        int_field(t, "pos_pairs", "train.pos_pairs", cfg.train.pos_pairs));
    if (cfg.train.pos_pairs < 1) throw InvalidValue("train.pos_pairs", "must be ≥ 1");
    cfg.train.neg_pairs = static_cast<int>(
        int_field(t, "neg_pairs", "train.neg_pairs", cfg.train.neg_pairs));
    if (cfg.train.neg_pairs < 1) throw InvalidValue("train.neg_pairs", "must be ≥ 1");
  }

  if (j.contains("discretize")) {
    const auto& d = j.at("discretize");
    expect_object(d, "discretize");
    check_keys(d, "discretize", {"bins"});
    cfg.discretize.bins =
        static_cast<int>(int_field(d, "bins", "discretize.bins", cfg.discretize.bins));
    if (cfg.discretize.bins < 1) throw InvalidValue("discretize.bins", "must be ≥ 1");
  }

  if (j.contains("mining")) {
    const auto& m = j.at("mining");
    expect_object(m, "mining");
    check_keys(m, "mining", {"min_support", "scope", "maximal_only", "max_len"});
    cfg.mining.min_support =
        num_field(m, "min_support", "mining.min_support", cfg.mining.min_support);
    if (!(cfg.mining.min_support > 0.0 && cfg.mining.min_support <= 1.0))
      throw InvalidValue("mining.min_support", "must be in (0, 1]");
    if (m.contains("scope")) {
      if (!m.at("scope").is_string())
        throw InvalidValue("mining.scope", "must be a string");
      const auto s = scope_from_string(m.at("scope").get<std::string>());
      if (!s) throw InvalidValue("mining.scope", "must be minority or full");
      cfg.mining.scope = *s;
    }
    cfg.mining.maximal_only =
        bool_field(m, "maximal_only", "mining.maximal_only", cfg.mining.maximal_only);
    cfg.mining.max_len = int_field(m, "max_len", "mining.max_len", cfg.mining.max_len);
    if (cfg.mining.max_len < 0) throw InvalidValue("mining.max_len", "must be ≥ 0");
  }

  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (!s.is_number_unsigned())
      throw InvalidValue("seed", "must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  return cfg;
}

PipelineConfig parse_config(const std::string& path) {
  return parse_config_text(read_file(path));
}

}  // namespace graphmine
