#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace walkent {

using Index = Eigen::Index;
using AdjacencyMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// Simple undirected loopless graph with dense 0/1 adjacency.
///
/// The constructor validates symmetry, a zero diagonal and 0/1 entries and
/// throws std::invalid_argument otherwise, so every Graph value in circulation
/// satisfies those invariants. Graphs are immutable after construction.
class Graph {
public:
  Graph(AdjacencyMatrix adjacency, std::string provenance);

  Index size() const { return adj_.rows(); }
  const AdjacencyMatrix& adjacency() const { return adj_; }
  const std::string& provenance() const { return provenance_; }

  template <typename Scalar>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency_as() const {
    return adj_.cast<Scalar>();
  }

  /// Neighbour lists in ascending order.
  const std::vector<std::vector<Index>>& neighbours() const { return nbrs_; }

  std::size_t edge_count() const { return edges_; }
  Index degree(Index i) const { return static_cast<Index>(nbrs_[i].size()); }
  std::vector<Index> degrees() const;

  /// Edges as (u, v) with u < v, lexicographically ordered.
  std::vector<std::pair<Index, Index>> edges() const;

private:
  AdjacencyMatrix adj_;
  std::string provenance_;
  std::vector<std::vector<Index>> nbrs_;
  std::size_t edges_ = 0;
};

Graph from_edges(Index n, const std::vector<std::pair<Index, Index>>& edges,
                 std::string provenance);

// Families.
Graph complete_graph(int c);
Graph cycle_graph(int k);
Graph path_graph(int k);

/// G(c,m): c independent nodes (indices 0..c-1) followed by m blocks of c
/// clique nodes; independent node i is matched to node i of every block.
Graph kks_graph(int c, int m);

/// Spider S(d,l): centre 0, leg t occupies 1 + t*l .. (t+1)*l ordered
/// outward, so 1 + t*l is the inner node and (t+1)*l the outer one.
Graph spider(int d, int l);

/// k copies of S(d,l); the k copies of each leg's outer node form a cycle.
Graph spider_cycle(int d, int l, int k);

/// k1 copies of SC(d,l,[k2]); for each (spider copy, leg) the k1 copies of
/// the inner node form a cycle.
Graph spider_torus(int d, int l, int k1, int k2);

/// Role of a node within a spider-derived graph.
enum class SpiderRole { centre, inner, intermediate, outer };
SpiderRole spider_role(Index node, int d, int l);

// Products, node (i, j) maps to i * |H| + j.
Graph cartesian_product(const Graph& g, const Graph& h);
Graph tensor_product(const Graph& g, const Graph& h);

// Predicates.
bool is_connected(const Graph& g);
bool has_triangle(const Graph& g);

} // namespace walkent
