#include "walkent/family_spec.hpp"
#include "walkent/graph.hpp"
#include "walkent/graph_io.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

using namespace walkent;

TEST_CASE("graph constructor validates the adjacency") {
  AdjacencyMatrix a(2, 2);
  a << 0, 1, 0, 0;
  CHECK_THROWS_AS(Graph(a, "asym"), std::invalid_argument);
  a << 1, 0, 0, 0;
  CHECK_THROWS_AS(Graph(a, "loop"), std::invalid_argument);
  a << 0, 2, 2, 0;
  CHECK_THROWS_AS(Graph(a, "weight"), std::invalid_argument);
  CHECK_THROWS_AS(Graph(AdjacencyMatrix(2, 3), "rect"), std::invalid_argument);
  CHECK_THROWS_AS(Graph(AdjacencyMatrix(0, 0), "empty"), std::invalid_argument);
  a << 0, 1, 1, 0;
  const Graph g(a, "k2");
  CHECK(g.edge_count() == 1);
  CHECK(g.provenance() == "k2");
}

TEST_CASE("from_edges rejects loops and out-of-range nodes") {
  CHECK_THROWS_AS(from_edges(3, {{0, 0}}, "x"), std::invalid_argument);
  CHECK_THROWS_AS(from_edges(3, {{0, 3}}, "x"), std::invalid_argument);
  const Graph g = from_edges(3, {{0, 1}, {1, 2}}, "p3");
  CHECK(g.edges() == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 2}});
}

TEST_CASE("kks graph sizes and degrees") {
  const Graph g = kks_graph(4, 5);
  CHECK(g.size() == 24);
  CHECK(g.edge_count() == 50);
  CHECK(g.provenance() == "kks(4,5)");
  for (Index i = 0; i < 4; ++i) CHECK(g.degree(i) == 5);
  for (Index i = 4; i < 24; ++i) CHECK(g.degree(i) == 4);
  CHECK(kks_graph(2, 3).size() == 8);
  CHECK_THROWS_AS(kks_graph(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(kks_graph(3, 0), std::invalid_argument);
}

TEST_CASE("small families") {
  CHECK(complete_graph(5).edge_count() == 10);
  CHECK(cycle_graph(5).edge_count() == 5);
  CHECK(path_graph(4).edge_count() == 3);
  CHECK_THROWS_AS(cycle_graph(2), std::invalid_argument);
  const Graph s = spider(3, 2);
  CHECK(s.size() == 7);
  CHECK(s.degree(0) == 3);
  CHECK(spider_role(0, 3, 2) == SpiderRole::centre);
  CHECK(spider_role(1, 3, 2) == SpiderRole::inner);
  CHECK(spider_role(2, 3, 2) == SpiderRole::outer);
  CHECK(spider_role(2, 3, 3) == SpiderRole::intermediate);
}

TEST_CASE("spider torus shape and degrees by role") {
  const Graph g = spider_torus(4, 2, 5, 3);
  CHECK(g.size() == 135);
  CHECK(g.edge_count() == 240);
  CHECK(is_connected(g));
  // 15 spider copies of 9 nodes; centres and inner nodes have degree 4,
  // outer nodes degree 3.
  std::map<SpiderRole, std::set<Index>> degrees;
  std::map<Index, int> histogram;
  for (Index v = 0; v < g.size(); ++v) {
    degrees[spider_role(v % 9, 4, 2)].insert(g.degree(v));
    ++histogram[g.degree(v)];
  }
  CHECK(degrees[SpiderRole::centre] == std::set<Index>{4});
  CHECK(degrees[SpiderRole::inner] == std::set<Index>{4});
  CHECK(degrees[SpiderRole::outer] == std::set<Index>{3});
  CHECK(histogram == std::map<Index, int>{{3, 60}, {4, 75}});
  CHECK_THROWS_AS(spider_torus(4, 1, 5, 3), std::invalid_argument);
}

TEST_CASE("products follow the kronecker layout") {
  const Graph g = path_graph(3);
  const Graph h = cycle_graph(3);
  const Graph box = cartesian_product(g, h);
  CHECK(box.size() == 9);
  CHECK(box.edge_count() == 2 * 3 + 3 * 3);
  CHECK(box.provenance() == "cart(path(3),cycle(3))");
  CHECK(box.adjacency()(0 * 3 + 0, 1 * 3 + 0) == 1);
  CHECK(box.adjacency()(0 * 3 + 0, 0 * 3 + 1) == 1);
  CHECK(box.adjacency()(0 * 3 + 0, 1 * 3 + 1) == 0);
  const Graph t = tensor_product(g, h);
  CHECK(t.edge_count() == 2 * 2 * 3);
  CHECK(t.adjacency()(0 * 3 + 0, 1 * 3 + 1) == 1);
  CHECK(t.adjacency()(0 * 3 + 0, 1 * 3 + 0) == 0);
}

TEST_CASE("connectivity and triangles") {
  CHECK(is_connected(kks_graph(4, 5)));
  CHECK(has_triangle(kks_graph(4, 5)));
  CHECK_FALSE(has_triangle(cycle_graph(4)));
  CHECK(has_triangle(cycle_graph(3)));
  // P2 x P2 under the tensor product splits into two edges.
  CHECK_FALSE(is_connected(tensor_product(path_graph(2), path_graph(2))));
  CHECK(is_connected(cartesian_product(kks_graph(4, 5), cycle_graph(5))));
}

TEST_CASE("edge list and json round trips") {
  const Graph g = kks_graph(3, 2);
  const std::string text = to_edge_list(g);
  CHECK(text.rfind("n 9\n", 0) == 0);
  std::istringstream in(text);
  const Graph back = read_edge_list(in);
  CHECK(back.adjacency() == g.adjacency());
  const Graph from_doc = graph_from_json(to_json(g));
  CHECK(from_doc.adjacency() == g.adjacency());
  CHECK(from_doc.provenance() == "kks(3,2)");

  std::istringstream bad_header("m 3\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(bad_header), std::invalid_argument);
  std::istringstream bad_line("n 3\n0 x\n");
  CHECK_THROWS_AS(read_edge_list(bad_line), std::invalid_argument);
}

TEST_CASE("family spec parser") {
  CHECK(parse_family("kks(4,5)").size() == 24);
  CHECK(parse_family(" cart( kks(4,5) , cycle(5) ) ").size() == 120);
  CHECK(parse_family("tensor(kks(4,5),cart(cycle(5),cycle(3)))").size() == 360);
  CHECK(parse_family("spidercycle(3,2,4)").size() == 28);
  CHECK(parse_family("spidertorus(4,2,5,3)").size() == 135);
  CHECK(parse_family("complete(4)").edge_count() == 6);

  auto message = [](const std::string& spec) {
    try {
      parse_family(spec);
    } catch (const FamilySpecError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("kks(4").find("kks(c,m)") != std::string::npos);
  CHECK(message("cycle(2)").find("cycle(k)") != std::string::npos);
  CHECK(message("wheel(5)").find("spec :=") != std::string::npos);
  CHECK(message("kks(4,5) extra") != "");
  CHECK(message("cart(kks(4,5))").find("cart(spec,spec)") != std::string::npos);
}
