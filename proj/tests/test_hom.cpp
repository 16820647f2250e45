#include <doctest.h>

#include "homlab/hom.hpp"

using namespace homlab;

TEST_CASE("small hom counts") {
  CHECK(hom_count(complete_graph(2), complete_graph(3)) == 6);
  CHECK(hom_count(cycle_graph(3), complete_graph(3)) == 6);
  CHECK(hom_count(path_graph(3), complete_graph(3)) == 12);
  CHECK(hom_count(cycle_graph(4), complete_graph(2)) == 2);
  CHECK(hom_count(cycle_graph(3), cycle_graph(6)) == 0);
  CHECK(hom_count(cycle_graph(3), disjoint_union(cycle_graph(3), cycle_graph(3))) == 12);
  CHECK(hom_count(Graph(0), cycle_graph(5)) == 1);
  CHECK(hom_count(Graph(2), cycle_graph(5)) == 25);
  CHECK(hom_count(complete_graph(1), Graph(0)) == 0);
}

TEST_CASE("collapsed loops have no homomorphisms") {
  CHECK(hom_count(Graph::normalized(1, {{0, 0}}), complete_graph(4)) == 0);
}

TEST_CASE("forest counts on large targets agree with brute force") {
  // Targets above 16 vertices use the forest dynamic program.
  Graph g = disjoint_union(cycle_graph(9), disjoint_union(complete_graph(5), path_graph(6)));
  for (const Graph& f : enumerate_graphs(6, is_forest)) {
    HomTensor t = hom_tensor(LabelledGraph{f, {}}, g);
    CHECK(hom_count(f, g) == t.entries[0]);
  }
  Graph star = star_graph(3);
  Integer cubes = 0;
  for (int v = 0; v < g.vertex_count(); ++v) cubes += g.degree(v) * g.degree(v) * g.degree(v);
  CHECK(hom_count(star, g) == cubes);
}

TEST_CASE("adjacency and identity tensors") {
  Graph g = path_graph(3);
  HomTensor a = hom_tensor(adjacency_graph(), g);
  CHECK(a.rows() == 3);
  CHECK(a.at(0, 1) == 1);
  CHECK(a.at(0, 2) == 0);
  CHECK(hom_tensor(identity_graph(2), g) == identity_tensor(3, 2));
  CHECK(hom_tensor(ones_graph(1), g) == ones_tensor(3, 1));
}

TEST_CASE("tensor algebra mirrors graph algebra") {
  Graph g = cycle_graph(5);
  BilabelledGraph a = adjacency_graph();
  BilabelledGraph p = concat(a, a);
  CHECK(hom_tensor(p, g) == matmul(hom_tensor(a, g), hom_tensor(a, g)));
  CHECK(hom_tensor(parallel(p, a), g) == schur(hom_tensor(p, g), hom_tensor(a, g)));
  CHECK(hom_tensor(reverse(p), g) == transpose(hom_tensor(p, g)));
  CHECK(hom_tensor(apply(p, ones_graph(1)), g) == matvec(hom_tensor(p, g), ones_tensor(5, 1)));
  HomTensor a3 = matmul(hom_tensor(a, g), hom_tensor(p, g));
  CHECK(trace(a3) == hom_count(cycle_graph(3), g));
  CHECK(soe(hom_tensor(p, g)) == hom_count(path_graph(3), g));
  CHECK(trace(hom_tensor(concat(p, p), g)) == hom_count(cycle_graph(4), g));
}

TEST_CASE("glue is the Schur product of labelled tensors") {
  Graph g = complete_graph(4);
  LabelledGraph x{path_graph(2), {0}};
  LabelledGraph y{path_graph(3), {1}};
  CHECK(hom_tensor(glue(x, y), g) == schur(hom_tensor(x, g), hom_tensor(y, g)));
}

TEST_CASE("tuple indexing") {
  CHECK(tuple_index({1, 2}, 3) == 5);
  CHECK(index_tuple(5, 3, 2) == std::vector<int>{1, 2});
}

TEST_CASE("tensor size cap") { CHECK_THROWS_AS(HomTensor(3, 3, 100), CapError); }

TEST_CASE("word text format") {
  Word w = parse_word("w pw:2 1 4 0");
  CHECK(w.kind == FamilyKind::pw);
  CHECK(w.k == 2);
  CHECK(w.letters == std::vector<int>{1, 4, 0});
  CHECK(format_word(w) == "w pw:2 1 4 0");
  CHECK_THROWS(parse_word("x pw:2 1"));
}
