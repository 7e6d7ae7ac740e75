#pragma once

#include <string>
#include <vector>

#include "timewise/network.hpp"

namespace timewise::testing {

// A(0.3) -> B with rows (0.8, 0.2) / (0.1, 0.9).
inline constexpr const char* kChainText = R"({
  "variables": [
    {"id": "A", "states": ["t", "f"]},
    {"id": "B", "states": ["t", "f"]}
  ],
  "chance": [
    {"id": "A", "parents": [], "cpt": [0.3, 0.7]},
    {"id": "B", "parents": ["A"], "cpt": [0.8, 0.2, 0.1, 0.9]}
  ]
})";

inline constexpr const char* kCyclicText = R"({
  "variables": [
    {"id": "A", "states": ["t", "f"]},
    {"id": "B", "states": ["t", "f"]}
  ],
  "chance": [
    {"id": "A", "parents": ["B"], "cpt": [0.5, 0.5, 0.5, 0.5]},
    {"id": "B", "parents": ["A"], "cpt": [0.5, 0.5, 0.5, 0.5]}
  ]
})";

inline NetworkData binary_node_data(NetworkData data, const std::string& id, std::vector<std::string> parents,
                                    std::vector<double> p_true, std::vector<double> importance = {}) {
  data.variables.push_back({id, {"t", "f"}});
  ChanceSpec spec{id, std::move(parents), {}, std::nullopt, std::nullopt};
  for (double p : p_true) {
    spec.cpt.push_back(p);
    spec.cpt.push_back(1.0 - p);
  }
  if (!importance.empty()) spec.arc_importance = std::move(importance);
  data.chance.push_back(std::move(spec));
  return data;
}

inline Network chain_network() {
  NetworkData d;
  d = binary_node_data(d, "A", {}, {0.3});
  d = binary_node_data(d, "B", {"A"}, {0.8, 0.1});
  return Network::build(d);
}

inline Network chain_network_uninformative() {
  NetworkData d;
  d = binary_node_data(d, "A", {}, {0.3});
  d = binary_node_data(d, "B", {"A"}, {0.5, 0.5});
  return Network::build(d);
}

// A -> B, A -> C, B -> D, C -> D. `bd_importance` weights the B -> D arc.
inline Network diamond_network(double bd_importance = 1.0) {
  NetworkData d;
  d = binary_node_data(d, "A", {}, {0.4});
  d = binary_node_data(d, "B", {"A"}, {0.9, 0.2}, {1.0});
  d = binary_node_data(d, "C", {"A"}, {0.3, 0.75}, {1.0});
  d = binary_node_data(d, "D", {"B", "C"}, {0.95, 0.6, 0.5, 0.05}, {bd_importance, 1.0});
  return Network::build(d);
}

// Condition D with symptoms S1, S2 and an extra S1 -> S2 arc.
inline Network symptom_diamond_network() {
  NetworkData d;
  d = binary_node_data(d, "D", {}, {0.25});
  d = binary_node_data(d, "S1", {"D"}, {0.7, 0.2});
  d = binary_node_data(d, "S2", {"D", "S1"}, {0.9, 0.6, 0.4, 0.1});
  return Network::build(d);
}

inline Network naive_bayes_network() {
  NetworkData d;
  d = binary_node_data(d, "D", {}, {0.25});
  d = binary_node_data(d, "S1", {"D"}, {0.7, 0.2});
  d = binary_node_data(d, "S2", {"D"}, {0.65, 0.15});
  return Network::build(d);
}

inline Network fair_coin_network() {
  NetworkData d;
  d = binary_node_data(d, "C", {}, {0.5});
  return Network::build(d);
}

inline Network deterministic_network() {
  NetworkData d;
  d = binary_node_data(d, "A", {}, {0.5});
  d = binary_node_data(d, "B", {"A"}, {1.0, 1.0});
  return Network::build(d);
}

// Fixed eight-node multiply connected net used for sampler calibration.
// Query X7 = t given X5 = t; the posterior is moderate (about 0.6).
inline Network eight_node_network() {
  NetworkData d;
  d = binary_node_data(d, "X0", {}, {0.35});
  d = binary_node_data(d, "X1", {}, {0.6});
  d = binary_node_data(d, "X2", {"X0"}, {0.8, 0.25});
  d = binary_node_data(d, "X3", {"X0", "X1"}, {0.9, 0.55, 0.4, 0.1});
  d = binary_node_data(d, "X4", {"X1"}, {0.3, 0.7});
  d = binary_node_data(d, "X5", {"X2", "X3"}, {0.85, 0.5, 0.45, 0.15});
  d = binary_node_data(d, "X6", {"X3", "X4"}, {0.75, 0.35, 0.6, 0.2});
  d = binary_node_data(d, "X7", {"X5", "X6"}, {0.9, 0.65, 0.5, 0.2});
  return Network::build(d);
}

}  // namespace timewise::testing
