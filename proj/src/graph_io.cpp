#include "walkent/graph_io.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

namespace walkent {

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph read_edge_list(std::istream& in, std::string provenance) {
  std::string line;
  std::string tag;
  Index n = 0;
  if (!std::getline(in, line))
    throw std::invalid_argument("edge list: missing header line");
  {
    std::istringstream header(line);
    if (!(header >> tag >> n) || tag != "n" || n < 1)
      throw std::invalid_argument("edge list: header must be 'n <count>'");
  }
  std::vector<std::pair<Index, Index>> edges;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    Index u = 0;
    Index v = 0;
    std::string rest;
    if (!(row >> u >> v) || (row >> rest))
      throw std::invalid_argument("edge list: malformed edge on line " +
                                  std::to_string(lineno));
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
  }
  return from_edges(n, edges, std::move(provenance));
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.size()}, {"edges", edges}, {"provenance", g.provenance()}};
}

Graph graph_from_json(const nlohmann::json& doc) {
  const auto n = doc.at("n").get<Index>();
  std::vector<std::pair<Index, Index>> edges;
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph json: each edge must be [u, v]");
    auto u = e[0].get<Index>();
    auto v = e[1].get<Index>();
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
  }
  return from_edges(n, edges, doc.value("provenance", std::string("json")));
}

} // namespace walkent
