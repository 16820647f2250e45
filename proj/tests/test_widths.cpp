#include <doctest.h>

#include "homlab/basal.hpp"
#include "homlab/widths.hpp"

using namespace homlab;

TEST_CASE("widths of standard graphs") {
  CHECK(treewidth(complete_graph(4)) == 3);
  CHECK(pathwidth(complete_graph(4)) == 3);
  CHECK(treedepth(complete_graph(4)) == 4);
  CHECK(treewidth(cycle_graph(5)) == 2);
  CHECK(pathwidth(cycle_graph(5)) == 2);
  CHECK(treedepth(cycle_graph(5)) == 4);
  CHECK(treewidth(star_graph(5)) == 1);
  CHECK(pathwidth(star_graph(5)) == 1);
  CHECK(treedepth(star_graph(5)) == 2);
  CHECK(treedepth(path_graph(7)) == 3);
  CHECK(treedepth(path_graph(8)) == 4);
  CHECK(treewidth(Graph(3)) == 0);
  CHECK(treedepth(Graph(3)) == 1);
}

TEST_CASE("width computation cap") { CHECK_THROWS_AS(treewidth(cycle_graph(11)), CapError); }

TEST_CASE("optimal decompositions validate and match the widths") {
  for (const Graph& g : enumerate_graphs(5)) {
    Decomposition t = optimal_tree_decomposition(g);
    Decomposition p = optimal_path_decomposition(g);
    CHECK(validate_decomposition(g, t).valid);
    CHECK(validate_decomposition(g, p).valid);
    CHECK(t.width() == treewidth(g));
    CHECK(p.width() == pathwidth(g));
    EliminationForest f = optimal_elimination_forest(g);
    CHECK(validate_forest(g, f));
    CHECK(f.depth == treedepth(g));
    CHECK(treewidth(g) <= pathwidth(g));
    CHECK(pathwidth(g) <= treedepth(g) - 1);
  }
}

TEST_CASE("validator reports the violated condition") {
  Graph g = path_graph(3);
  Decomposition d;
  d.shape = Decomposition::Shape::path;
  d.skeleton = path_graph(2);
  d.bags = {{0, 1}, {2}};
  DecompositionCheck c = validate_decomposition(g, d);
  CHECK_FALSE(c.valid);
  CHECK(c.violated == 2);
  d.bags = {{0, 1}, {1}};
  CHECK(validate_decomposition(g, d).violated == 1);
  d.skeleton = star_graph(3);
  d.bags = {{1}, {0, 1}, {1, 2}, {1}};
  CHECK(validate_decomposition(g, d).violated == 4);
  d.shape = Decomposition::Shape::tree;
  CHECK(validate_decomposition(g, d).valid);
}

TEST_CASE("compiled words evaluate to hom counts") {
  auto targets = enumerate_graphs(3);
  for (const Graph& f : enumerate_graphs(5)) {
    if (pathwidth(f) <= 2) {
      Word w = compile_pathwidth_word(f, 2);
      CHECK(are_isomorphic(underlying(apply(word_graph(w), ones_graph(3))), f));
      for (const Graph& g : targets) CHECK(evaluate_word(w, g, EvalMode::soe) == hom_count(f, g));
    }
    if (treedepth(f) <= 3) {
      Word w = compile_treedepth_word(f, 3);
      for (const Graph& g : targets) CHECK(evaluate_word(w, g, EvalMode::soe) == hom_count(f, g));
    }
  }
  CHECK_THROWS(compile_pathwidth_word(complete_graph(4), 2));
  CHECK_THROWS(compile_treedepth_word(path_graph(8), 3));
}

TEST_CASE("cyclewidth samples: trace equals hom count of the closure") {
  Graph g = disjoint_union(cycle_graph(3), path_graph(2));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CyclewidthSample s = cyclewidth_sample(1, 6, seed);
    Graph c = underlying(s.closure);
    CHECK(evaluate_word(s.word, g, EvalMode::tr) == hom_count(c, g));
  }
}

TEST_CASE("trace closures of short cyclewidth-1 words") {
  BasalFamily f = basal_pw(1);
  int a = f.index_of("A^{1,2}"), f1 = f.index_of("F^{1}"), f2 = f.index_of("F^{2}"), i12 = f.index_of("I^{1,2}");
  Graph two_c3 = disjoint_union(cycle_graph(3), cycle_graph(3));

  // Both slots survive the closure, so a single A^{1,2} closes to an edge.
  Word edge{FamilyKind::pw, 1, {a}};
  CHECK(are_isomorphic(underlying(trace_closure(edge)), complete_graph(2)));
  CHECK(evaluate_word(edge, two_c3, EvalMode::tr) == 12);

  BilabelledGraph loop = adjacency_graph();
  Graph l = underlying(identify_ends(loop));
  CHECK(l.has_loop());
  CHECK(hom_count(l, two_c3) == 0);

  Word star{FamilyKind::pw, 1, {a, f1, a, f1, a, f1}};
  CHECK(are_isomorphic(underlying(trace_closure(star)), star_graph(3)));

  Word tri{FamilyKind::pw, 1, {a, f1, a, f2, i12, f1, a, f2}};
  Graph c = underlying(trace_closure(tri));
  CHECK(are_isomorphic(c, cycle_graph(3)));
  CHECK(evaluate_word(tri, two_c3, EvalMode::tr) == 12);
}
