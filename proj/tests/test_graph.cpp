#include <doctest.h>

#include "homlab/graph.hpp"

using namespace homlab;

TEST_CASE("strict constructor rejects malformed edge sets") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), Error);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), Error);
  Graph g(3, {{2, 0}, {1, 2}});
  CHECK(g.edge_count() == 2);
  CHECK(g.edges().front() == Edge{0, 2});
  CHECK(g.adjacent(2, 1));
  CHECK_FALSE(g.adjacent(0, 1));
}

TEST_CASE("isolated vertices have empty neighbourhoods") {
  Graph g(1);
  CHECK(g.degree(0) == 0);
  CHECK(g.connected());
  CHECK(Graph(0).components().empty());
}

TEST_CASE("normalized drops loops but remembers them") {
  Graph g = Graph::normalized(2, {{0, 0}, {0, 1}, {1, 0}});
  CHECK(g.edge_count() == 1);
  CHECK(g.has_loop());
}

TEST_CASE("standard graphs") {
  CHECK(complete_graph(4).edge_count() == 6);
  CHECK(path_graph(4).edge_count() == 3);
  CHECK(cycle_graph(5).edge_count() == 5);
  CHECK(star_graph(3).vertex_count() == 4);
  Graph u = disjoint_union(cycle_graph(3), cycle_graph(3));
  CHECK(u.vertex_count() == 6);
  CHECK(u.components().size() == 2);
}

TEST_CASE("enumeration counts isomorphism classes") {
  CHECK(enumerate_graphs(3).size() == 7);
  CHECK(enumerate_graphs(4).size() == 18);
  CHECK(enumerate_graphs(6).size() == 208);
  CHECK(enumerate_graphs(3, nullptr, true).size() == 8);
  CHECK(enumerate_graphs(5, [](const Graph& g) { return g.vertex_count() == 5 && g.connected(); }).size() == 21);
  auto all = enumerate_graphs(5);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(are_isomorphic(all[i], all[j]));
}

TEST_CASE("enumeration respects the cap") { CHECK_THROWS_AS(enumerate_graphs(9), CapError); }

TEST_CASE("canonical code is a relabelling invariant") {
  Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 4}});
  Graph r = g.relabel({3, 0, 4, 1, 2});
  CHECK(canonical_code(g) == canonical_code(r));
  CHECK(are_isomorphic(g, r));
  CHECK(are_isomorphic(from_code(5, canonical_code(g)), g));
  CHECK_FALSE(are_isomorphic(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))));
}

TEST_CASE("glue identifies labels pairwise") {
  LabelledGraph a{path_graph(2), {0}};
  LabelledGraph b{path_graph(3), {1}};
  LabelledGraph c = glue(a, b);
  CHECK(c.graph.vertex_count() == 4);
  CHECK(c.graph.edge_count() == 3);
  CHECK(c.arity() == 1);
  CHECK(underlying(c).vertex_count() == 4);
}

TEST_CASE("concatenation of adjacency graphs is a path") {
  BilabelledGraph a = adjacency_graph();
  BilabelledGraph p = concat(a, a);
  CHECK(p.graph.vertex_count() == 3);
  CHECK(p.graph.edge_count() == 2);
  CHECK(p.graph.degree(p.in[0]) == 1);
  CHECK(p.graph.degree(p.out[0]) == 1);
  LabelledGraph c = identify_ends(concat(p, a));
  CHECK(are_isomorphic(c.graph, cycle_graph(3)));
}

TEST_CASE("identity is neutral for concatenation") {
  BilabelledGraph a = adjacency_graph();
  BilabelledGraph i = identity_graph(1);
  CHECK(are_isomorphic(concat(i, a).graph, a.graph));
  LabelledGraph v = apply(a, ones_graph(1));
  CHECK(v.graph.edge_count() == 1);
  CHECK(reverse(reverse(a)) == a);
}

TEST_CASE("parallel composition identifies both label tuples") {
  BilabelledGraph a = adjacency_graph();
  BilabelledGraph p = parallel(a, a);
  CHECK(p.graph.vertex_count() == 2);
  CHECK(p.graph.edge_count() == 1);
}

TEST_CASE("graph file round trip") {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  AnyGraph back = parse_graph(format_graph(g));
  REQUIRE(std::holds_alternative<Graph>(back));
  CHECK(std::get<Graph>(back) == g);

  LabelledGraph l{g, {0, 3}};
  AnyGraph lb = parse_graph(format_graph(l));
  REQUIRE(std::holds_alternative<LabelledGraph>(lb));
  CHECK(std::get<LabelledGraph>(lb) == l);

  BilabelledGraph b{g, {0}, {3}};
  AnyGraph bb = parse_graph(format_graph(b));
  REQUIRE(std::holds_alternative<BilabelledGraph>(bb));
  CHECK(std::get<BilabelledGraph>(bb) == b);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_graph("# c\nn 3\ne 0 5\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_graph("n 2\nl 0\nin 0\nout 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("e 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("n 2\ne 0 0\n"), ParseError);
}

TEST_CASE("forests and trees") {
  CHECK(is_tree(star_graph(4)));
  CHECK(is_forest(disjoint_union(path_graph(3), path_graph(2))));
  CHECK_FALSE(is_tree(disjoint_union(path_graph(3), path_graph(2))));
  CHECK_FALSE(is_forest(cycle_graph(4)));
}
