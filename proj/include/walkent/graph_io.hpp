#pragma once

#include "walkent/graph.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace walkent {

/// Edge-list text: "n <count>" then one "u v" line per edge, u < v,
/// 0-indexed, newline terminated.
std::string to_edge_list(const Graph& g);
Graph read_edge_list(std::istream& in, std::string provenance = "edgelist");

/// {"n": ..., "edges": [[u, v], ...], "provenance": ...}
nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& doc);

} // namespace walkent
