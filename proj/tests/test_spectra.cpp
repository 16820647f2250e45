#include <doctest.h>

#include "homlab/spectra.hpp"
#include "homlab/widths.hpp"

using namespace homlab;

namespace {
Graph two_c3() { return disjoint_union(cycle_graph(3), cycle_graph(3)); }
}  // namespace

TEST_CASE("family specs") {
  CHECK(FamilySpec::parse("dary:2").kind == FamilySpec::Kind::dary);
  CHECK(FamilySpec::parse("dary:2").d == 2);
  CHECK(FamilySpec::parse("trees").name() == "trees");
  CHECK(FamilySpec::parse("dary:3").name() == "dary:3");
  CHECK_THROWS(FamilySpec::parse("cycles"));
}

TEST_CASE("family enumeration") {
  CHECK(family_enumerate(FamilySpec::parse("trees"), 5).size() == 8);
  CHECK(family_enumerate(FamilySpec::parse("dary:1"), 5).size() == 5);
  CHECK(family_enumerate(FamilySpec::parse("dary:2"), 5).size() == 7);
  CHECK(family_enumerate(FamilySpec::parse("paths"), 6).size() == 6);
  for (const Graph& t : family_enumerate(FamilySpec::parse("trees"), 6)) CHECK(is_tree(t));
}

TEST_CASE("Gram closure on regular pairs") {
  for (const char* f : {"paths", "trees", "dary:1", "dary:2"}) {
    GramResult r = gram_indistinguishable(FamilySpec::parse(f), cycle_graph(6), two_c3());
    CHECK(r.indistinguishable);
    CHECK(r.dimension == 1);
  }
}

TEST_CASE("Gram witness separates the pair") {
  Graph g = path_graph(4), h = star_graph(3);
  GramResult r = gram_indistinguishable(FamilySpec::parse("trees"), g, h);
  CHECK_FALSE(r.indistinguishable);
  REQUIRE(r.witness);
  Graph w = underlying(*r.witness);
  CHECK(is_tree(w));
  CHECK(hom_count(w, g) != hom_count(w, h));
}

TEST_CASE("Gram agrees with enumeration for small pairs") {
  auto graphs = enumerate_graphs(4);
  FamilySpec trees = FamilySpec::parse("trees");
  auto members = family_enumerate(trees, 8);
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = i; j < graphs.size(); ++j) {
      bool equal = true;
      for (const Graph& t : members) equal &= hom_count(t, graphs[i]) == hom_count(t, graphs[j]);
      CHECK(gram_indistinguishable(trees, graphs[i], graphs[j]).indistinguishable == equal);
    }
}

TEST_CASE("word testers on C6 vs 2C3") {
  BasalFamily fam = basal_pw(1);
  MatrixFamily fg = basal_matrices(fam, cycle_graph(6)), fh = basal_matrices(fam, two_c3());
  WordsResult s = words_equivalent(fg, fh, EvalMode::soe);
  CHECK(s.equivalent);
  CHECK_FALSE(s.bounded);
  WordsResult t = words_equivalent(fg, fh, EvalMode::tr);
  REQUIRE_FALSE(t.equivalent);
  Word w{FamilyKind::pw, 1, t.failing};
  CHECK(evaluate_word(w, cycle_graph(6), EvalMode::tr) == t.value_g);
  CHECK(evaluate_word(w, two_c3(), EvalMode::tr) == t.value_h);
  Graph c = underlying(trace_closure(w));
  CHECK(hom_count(c, cycle_graph(6)) == 0);
  CHECK(hom_count(c, two_c3()) == 12);
}

TEST_CASE("bounded word search is flagged") {
  BasalFamily fam = basal_pw(1);
  MatrixFamily fg = basal_matrices(fam, cycle_graph(6)), fh = basal_matrices(fam, two_c3());
  WordsResult t = words_equivalent(fg, fh, EvalMode::tr, 1);
  CHECK(t.equivalent);
  CHECK(t.bounded);
}

TEST_CASE("sparse and dense agree") {
  HomTensor a = hom_tensor(adjacency_graph(), cycle_graph(5));
  CHECK(to_dense(sparse_from_dense(a)) == a);
}
