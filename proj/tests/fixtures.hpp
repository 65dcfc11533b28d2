#pragma once

#include "walkent/family_spec.hpp"
#include "walkent/reproduce.hpp"

#include <vector>

inline std::vector<walkent::Graph> fixture_graphs(walkent::Index max_nodes = 1000) {
  std::vector<walkent::Graph> out;
  for (const auto& spec : walkent::fixture_specs()) {
    walkent::Graph g = walkent::parse_family(spec);
    if (g.size() <= max_nodes) out.push_back(std::move(g));
  }
  return out;
}
