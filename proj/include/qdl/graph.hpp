#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

namespace qdl {

// Weighted undirected graph, the Max-Cut problem input.
// File form: {"n": 4, "edges": [[0, 1, 1.0], ...]}; a pair [i, j] means
// weight 1. Edges are stored with i < j and are unique.
struct GraphEdge {
  int i = 0;
  int j = 0;
  double w = 1.0;

  bool operator==(const GraphEdge&) const = default;
};

struct Graph {
  int n = 0;
  std::vector<GraphEdge> edges;

  double total_weight() const;

  bool operator==(const Graph&) const = default;
};

Graph parse_graph(const nlohmann::json& doc);
Graph parse_graph(const std::string& text);
nlohmann::json to_json(const Graph& g);

}  // namespace qdl
