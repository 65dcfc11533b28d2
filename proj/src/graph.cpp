#include "walkent/graph.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/KroneckerProduct>

#include <queue>
#include <stdexcept>
#include <string>

namespace walkent {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void join_cycle(AdjacencyMatrix& adj, const std::vector<Index>& ring) {
  const auto k = ring.size();
  for (std::size_t a = 0; a < k; ++a) {
    const Index u = ring[a];
    const Index v = ring[(a + 1) % k];
    adj(u, v) = 1;
    adj(v, u) = 1;
  }
}

} // namespace

Graph::Graph(AdjacencyMatrix adjacency, std::string provenance)
    : adj_(std::move(adjacency)), provenance_(std::move(provenance)) {
  require(adj_.rows() == adj_.cols(), "adjacency must be square");
  require(adj_.rows() >= 1, "graph needs at least one node");
  const Index n = adj_.rows();
  nbrs_.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    require(adj_(i, i) == 0, "adjacency diagonal must be zero");
    for (Index j = 0; j < n; ++j) {
      const int a = adj_(i, j);
      require(a == 0 || a == 1, "adjacency entries must be 0 or 1");
      require(a == adj_(j, i), "adjacency must be symmetric");
      if (a == 1) nbrs_[static_cast<std::size_t>(i)].push_back(j);
    }
    edges_ += nbrs_[static_cast<std::size_t>(i)].size();
  }
  edges_ /= 2;
}

std::vector<Index> Graph::degrees() const {
  std::vector<Index> out(nbrs_.size());
  for (std::size_t i = 0; i < nbrs_.size(); ++i)
    out[i] = static_cast<Index>(nbrs_[i].size());
  return out;
}

std::vector<std::pair<Index, Index>> Graph::edges() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(edges_);
  for (Index u = 0; u < size(); ++u)
    for (Index v : nbrs_[static_cast<std::size_t>(u)])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph from_edges(Index n, const std::vector<std::pair<Index, Index>>& edges,
                 std::string provenance) {
  require(n >= 1, "graph needs at least one node");
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(n, n);
  for (auto [u, v] : edges) {
    require(u >= 0 && v >= 0 && u < n && v < n, "edge endpoint out of range");
    require(u != v, "self loops are not allowed");
    require(adj(u, v) == 0, "duplicate edge");
    adj(u, v) = 1;
    adj(v, u) = 1;
  }
  return Graph(std::move(adj), std::move(provenance));
}

Graph complete_graph(int c) {
  require(c >= 1, "complete graph needs c >= 1");
  AdjacencyMatrix adj = AdjacencyMatrix::Ones(c, c);
  adj.diagonal().setZero();
  return Graph(std::move(adj), "complete(" + std::to_string(c) + ")");
}

Graph cycle_graph(int k) {
  require(k >= 3, "cycle graph needs k >= 3");
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(k, k);
  std::vector<Index> ring(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) ring[static_cast<std::size_t>(i)] = i;
  join_cycle(adj, ring);
  return Graph(std::move(adj), "cycle(" + std::to_string(k) + ")");
}

Graph path_graph(int k) {
  require(k >= 1, "path graph needs k >= 1");
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) {
    adj(i, i + 1) = 1;
    adj(i + 1, i) = 1;
  }
  return Graph(std::move(adj), "path(" + std::to_string(k) + ")");
}

Graph kks_graph(int c, int m) {
  require(c >= 2, "kks graph needs c >= 2");
  require(m >= 1, "kks graph needs m >= 1");
  const Index n = static_cast<Index>(c) * (m + 1);
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(n, n);
  for (int block = 0; block < m; ++block) {
    const Index base = static_cast<Index>(c) * (block + 1);
    for (int i = 0; i < c; ++i) {
      adj(i, base + i) = 1;
      adj(base + i, i) = 1;
      for (int j = 0; j < c; ++j)
        if (i != j) adj(base + i, base + j) = 1;
    }
  }
  return Graph(std::move(adj),
               "kks(" + std::to_string(c) + "," + std::to_string(m) + ")");
}

namespace {

AdjacencyMatrix spider_adjacency(int d, int l) {
  const Index n = 1 + static_cast<Index>(d) * l;
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(n, n);
  for (int t = 0; t < d; ++t) {
    Index prev = 0;
    for (int s = 0; s < l; ++s) {
      const Index v = 1 + static_cast<Index>(t) * l + s;
      adj(prev, v) = 1;
      adj(v, prev) = 1;
      prev = v;
    }
  }
  return adj;
}

AdjacencyMatrix spider_cycle_adjacency(int d, int l, int k) {
  const AdjacencyMatrix one = spider_adjacency(d, l);
  const Index s = one.rows();
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(s * k, s * k);
  for (int copy = 0; copy < k; ++copy) adj.block(copy * s, copy * s, s, s) = one;
  for (int t = 0; t < d; ++t) {
    std::vector<Index> ring;
    for (int copy = 0; copy < k; ++copy)
      ring.push_back(copy * s + static_cast<Index>(t + 1) * l);
    join_cycle(adj, ring);
  }
  return adj;
}

} // namespace

Graph spider(int d, int l) {
  require(d >= 1 && l >= 1, "spider needs d >= 1 and l >= 1");
  return Graph(spider_adjacency(d, l),
               "spider(" + std::to_string(d) + "," + std::to_string(l) + ")");
}

Graph spider_cycle(int d, int l, int k) {
  require(d >= 1 && l >= 1, "spider cycle needs d >= 1 and l >= 1");
  require(k >= 3, "spider cycle needs k >= 3");
  return Graph(spider_cycle_adjacency(d, l, k),
               "spidercycle(" + std::to_string(d) + "," + std::to_string(l) + "," +
                   std::to_string(k) + ")");
}

Graph spider_torus(int d, int l, int k1, int k2) {
  require(d >= 1, "spider torus needs d >= 1");
  require(l >= 2, "spider torus needs l >= 2 so that inner nodes exist");
  require(k1 >= 3 && k2 >= 3, "spider torus needs k1, k2 >= 3");
  const AdjacencyMatrix sc = spider_cycle_adjacency(d, l, k2);
  const Index s = 1 + static_cast<Index>(d) * l;
  const Index block = sc.rows();
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(block * k1, block * k1);
  for (int copy = 0; copy < k1; ++copy)
    adj.block(copy * block, copy * block, block, block) = sc;
  for (int p = 0; p < k2; ++p) {
    for (int t = 0; t < d; ++t) {
      std::vector<Index> ring;
      for (int copy = 0; copy < k1; ++copy)
        ring.push_back(copy * block + p * s + 1 + static_cast<Index>(t) * l);
      join_cycle(adj, ring);
    }
  }
  return Graph(std::move(adj), "spidertorus(" + std::to_string(d) + "," +
                                   std::to_string(l) + "," + std::to_string(k1) +
                                   "," + std::to_string(k2) + ")");
}

SpiderRole spider_role(Index node, int d, int l) {
  const Index s = 1 + static_cast<Index>(d) * l;
  const Index local = node % s;
  if (local == 0) return SpiderRole::centre;
  const Index depth = (local - 1) % l + 1;
  if (depth == l) return SpiderRole::outer;
  if (depth == 1) return SpiderRole::inner;
  return SpiderRole::intermediate;
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  const AdjacencyMatrix ig = AdjacencyMatrix::Identity(g.size(), g.size());
  const AdjacencyMatrix ih = AdjacencyMatrix::Identity(h.size(), h.size());
  AdjacencyMatrix adj = Eigen::kroneckerProduct(g.adjacency(), ih).eval() +
                        Eigen::kroneckerProduct(ig, h.adjacency()).eval();
  return Graph(std::move(adj),
               "cart(" + g.provenance() + "," + h.provenance() + ")");
}

Graph tensor_product(const Graph& g, const Graph& h) {
  AdjacencyMatrix adj = Eigen::kroneckerProduct(g.adjacency(), h.adjacency());
  return Graph(std::move(adj),
               "tensor(" + g.provenance() + "," + h.provenance() + ")");
}

bool is_connected(const Graph& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::queue<Index> frontier;
  frontier.push(0);
  seen[0] = 1;
  Index reached = 1;
  while (!frontier.empty()) {
    const Index u = frontier.front();
    frontier.pop();
    for (Index v : g.neighbours()[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == g.size();
}

bool has_triangle(const Graph& g) {
  const AdjacencyMatrix& a = g.adjacency();
  // trace(A^3) = sum_ij (A^2)_ij A_ji
  const AdjacencyMatrix a2 = a * a;
  return a2.cwiseProduct(a).sum() > 0;
}

} // namespace walkent
