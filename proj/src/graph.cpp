#include "qdl/graph.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "qdl/errors.hpp"
#include "qdl/json_io.hpp"

namespace qdl {

double Graph::total_weight() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.w;
  return total;
}

Graph parse_graph(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("expected an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "n" && key != "edges") {
      throw SchemaError("unexpected field \"" + key + "\"", key);
    }
  }
  Graph g;
  const auto n_it = doc.find("n");
  if (n_it == doc.end()) throw SchemaError("missing field \"n\"", "n");
  if (!n_it->is_number_integer() || n_it->get<long long>() < 1) {
    throw SchemaError("n must be a positive integer", "n");
  }
  g.n = n_it->get<int>();

  const auto edges_it = doc.find("edges");
  if (edges_it == doc.end()) throw SchemaError("missing field \"edges\"", "edges");
  if (!edges_it->is_array()) throw SchemaError("expected an array", "edges");

  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < edges_it->size(); ++k) {
    const std::string path = "edges[" + std::to_string(k) + "]";
    const nlohmann::json& e = (*edges_it)[k];
    if (!e.is_array() || e.size() < 2 || e.size() > 3) {
      throw SchemaError("each edge must be [i, j] or [i, j, w]", path);
    }
    if (!e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw SchemaError("edge endpoints must be integers", path);
    }
    GraphEdge edge;
    edge.i = e[0].get<int>();
    edge.j = e[1].get<int>();
    if (e.size() == 3) {
      if (!e[2].is_number()) throw SchemaError("edge weight must be a number", path);
      edge.w = e[2].get<double>();
      if (!std::isfinite(edge.w)) throw SchemaError("edge weight must be finite", path);
    }
    if (edge.i > edge.j) std::swap(edge.i, edge.j);
    if (edge.i < 0 || edge.j >= g.n) {
      throw SchemaError("edge endpoints must lie in [0, n)", path);
    }
    if (edge.i == edge.j) throw SchemaError("self-loops are not allowed", path);
    if (!seen.insert({edge.i, edge.j}).second) {
      throw SchemaError("duplicate edge (" + std::to_string(edge.i) + ", " +
                            std::to_string(edge.j) + ")",
                        path);
    }
    g.edges.push_back(edge);
  }
  return g;
}

Graph parse_graph(const std::string& text) { return parse_graph(load_json_text(text)); }

nlohmann::json to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n;
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back(nlohmann::json::array({e.i, e.j, e.w}));
  return j;
}

}  // namespace qdl
