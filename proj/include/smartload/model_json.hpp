#pragma once

#include <string>

#include <json.hpp>

#include "smartload/error.hpp"
#include "smartload/featurize.hpp"
#include "smartload/forest.hpp"
#include "smartload/gbdt.hpp"
#include "smartload/stacking.hpp"
#include "smartload/tree.hpp"

namespace smartload {

using Json = nlohmann::ordered_json;

inline constexpr int kModelSchemaVersion = 1;

namespace detail {

inline void expect_schema(const Json& j, const std::string& schema) {
  if (!j.is_object() || j.value("schema", std::string{}) != schema) {
    throw Error(ErrorKind::MalformedModel, "expected a '" + schema + "' document");
  }
  if (j.value("schema_version", 0) != kModelSchemaVersion) {
    throw Error(ErrorKind::MalformedModel, "unsupported " + schema + " version");
  }
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedModel, e.what());
  }
}

}  // namespace detail

inline Json to_json(const HyperParams& p) {
  return Json{{"num_leaves", p.num_leaves},
              {"min_leaf_instances", p.min_leaf_instances},
              {"learning_rate", p.learning_rate},
              {"num_trees", p.num_trees}};
}

inline HyperParams hyperparams_from_json(const Json& j) {
  return detail::guarded([&] {
    return HyperParams{j.at("num_leaves").get<int>(), j.at("min_leaf_instances").get<int>(),
                       j.at("learning_rate").get<double>(), j.at("num_trees").get<int>()};
  });
}

/// Flattened node list; children are referenced by id.
inline Json to_json(const RegressionTree& tree) {
  Json nodes = Json::array();
  const auto& ns = tree.nodes();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto& n = ns[i];
    if (n.is_leaf()) {
      nodes.push_back({{"id", i}, {"kind", "leaf"}, {"value", n.value}, {"count", n.count}});
    } else {
      nodes.push_back({{"id", i},
                       {"kind", "split"},
                       {"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"value", n.value},
                       {"count", n.count}});
    }
  }
  return Json{{"feature_count", tree.feature_count()}, {"nodes", std::move(nodes)}};
}

inline RegressionTree tree_from_json(const Json& j) {
  return detail::guarded([&] {
    const auto& arr = j.at("nodes");
    std::vector<TreeNode> nodes(arr.size());
    for (const auto& e : arr) {
      const auto id = e.at("id").get<std::size_t>();
      if (id >= nodes.size()) throw Error(ErrorKind::MalformedModel, "node id out of range");
      TreeNode n;
      n.value = e.at("value").get<double>();
      n.count = e.value("count", std::size_t{0});
      const auto kind = e.at("kind").get<std::string>();
      if (kind == "split") {
        n.feature = e.at("feature").get<int>();
        n.threshold = e.at("threshold").get<double>();
        n.left = e.at("left").get<int>();
        n.right = e.at("right").get<int>();
        if (n.feature < 0) throw Error(ErrorKind::MalformedModel, "negative split feature");
      } else if (kind != "leaf") {
        throw Error(ErrorKind::MalformedModel, "unknown node kind '" + kind + "'");
      }
      nodes[id] = n;
    }
    return RegressionTree(std::move(nodes), j.at("feature_count").get<std::size_t>());
  });
}

inline Json to_json(const GbdtModel& m) {
  Json trees = Json::array();
  for (const auto& t : m.trees) trees.push_back(to_json(t));
  return Json{{"schema", "smartload.gbdt"},
              {"schema_version", kModelSchemaVersion},
              {"hyperparams", to_json(m.params)},
              {"initial_prediction", m.initial_prediction},
              {"learning_rate", m.learning_rate},
              {"feature_names", m.feature_names},
              {"trees", std::move(trees)}};
}

inline GbdtModel gbdt_from_json(const Json& j) {
  detail::expect_schema(j, "smartload.gbdt");
  return detail::guarded([&] {
    GbdtModel m;
    m.params = hyperparams_from_json(j.at("hyperparams"));
    m.initial_prediction = j.at("initial_prediction").get<double>();
    m.learning_rate = j.at("learning_rate").get<double>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    for (const auto& t : j.at("trees")) {
      m.trees.push_back(tree_from_json(t));
      if (m.trees.back().feature_count() != m.feature_names.size()) {
        throw Error(ErrorKind::MalformedModel, "tree feature count disagrees with feature_names");
      }
    }
    return m;
  });
}

inline Json to_json(const ForestParams& p) {
  return Json{{"tree_count", p.tree_count},
              {"num_leaves", p.num_leaves},
              {"min_leaf_instances", p.min_leaf_instances},
              {"bootstrap", p.bootstrap}};
}

inline ForestParams forest_params_from_json(const Json& j) {
  return detail::guarded([&] {
    return ForestParams{j.at("tree_count").get<int>(), j.at("num_leaves").get<int>(),
                        j.at("min_leaf_instances").get<int>(), j.at("bootstrap").get<bool>()};
  });
}

inline Json to_json(const ForestModel& m) {
  Json trees = Json::array();
  for (const auto& t : m.trees) trees.push_back(to_json(t));
  return Json{{"schema", "smartload.forest"},
              {"schema_version", kModelSchemaVersion},
              {"params", to_json(m.params)},
              {"bootstrap_seed", m.bootstrap_seed},
              {"feature_names", m.feature_names},
              {"trees", std::move(trees)}};
}

inline ForestModel forest_from_json(const Json& j) {
  detail::expect_schema(j, "smartload.forest");
  return detail::guarded([&] {
    ForestModel m;
    m.params = forest_params_from_json(j.at("params"));
    m.bootstrap_seed = j.at("bootstrap_seed").get<std::uint64_t>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    for (const auto& t : j.at("trees")) m.trees.push_back(tree_from_json(t));
    return m;
  });
}

inline Json to_json(const StackModel& m) {
  return Json{{"schema", "smartload.stack"},
              {"schema_version", kModelSchemaVersion},
              {"intercept", m.intercept},
              {"weight_bdtr", m.weight_bdtr},
              {"weight_dfr", m.weight_dfr},
              {"train_rmse", m.train_rmse},
              {"ridge_applied", m.ridge_applied}};
}

inline StackModel stack_from_json(const Json& j) {
  detail::expect_schema(j, "smartload.stack");
  return detail::guarded([&] {
    return StackModel{j.at("intercept").get<double>(), j.at("weight_bdtr").get<double>(),
                      j.at("weight_dfr").get<double>(), j.at("train_rmse").get<double>(),
                      j.at("ridge_applied").get<bool>()};
  });
}

inline Json to_json(const FeatureSpec& s) {
  return Json{{"lags", s.lags},
              {"include_prev_day_min_max", s.include_prev_day_min_max},
              {"include_week_lag", s.include_week_lag},
              {"time_part_boundaries", s.time_part_boundaries},
              {"transform", to_string(s.transform)},
              {"scale_factor", s.scale_factor}};
}

inline FeatureSpec feature_spec_from_json(const Json& j) {
  return detail::guarded([&] {
    FeatureSpec s;
    s.lags = j.at("lags").get<std::vector<int>>();
    s.include_prev_day_min_max = j.at("include_prev_day_min_max").get<bool>();
    s.include_week_lag = j.at("include_week_lag").get<bool>();
    s.time_part_boundaries = j.at("time_part_boundaries").get<std::array<int, 4>>();
    s.transform = parse_transform(j.at("transform").get<std::string>());
    s.scale_factor = j.at("scale_factor").get<double>();
    s.validate();
    return s;
  });
}

}  // namespace smartload
