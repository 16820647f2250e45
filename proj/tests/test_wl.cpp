#include <doctest.h>

#include "homlab/wl.hpp"

using namespace homlab;

TEST_CASE("colour refinement on regular graphs") {
  Graph g = cycle_graph(6), h = disjoint_union(cycle_graph(3), cycle_graph(3));
  WLComparison c = wl_compare(g, h, 1);
  CHECK(c.indistinguishable);
  CHECK(c.separating_round == -1);
  CHECK(wl_colouring(g, 1).class_count == 1);
}

TEST_CASE("2-WL separates C6 from 2C3") {
  Graph g = cycle_graph(6), h = disjoint_union(cycle_graph(3), cycle_graph(3));
  WLComparison c = wl_compare(g, h, 2);
  CHECK_FALSE(c.indistinguishable);
  CHECK(c.separating_round >= 0);
  long total_g = 0, total_h = 0;
  for (const auto& cl : c.classes) {
    total_g += cl[1];
    total_h += cl[2];
  }
  CHECK(total_g == 36);
  CHECK(total_h == 36);
}

TEST_CASE("degree sequences separate at round one") {
  WLComparison c = wl_compare(path_graph(4), star_graph(3), 1);
  CHECK_FALSE(c.indistinguishable);
  CHECK(c.separating_round == 1);
  CHECK_FALSE(wl_indistinguishable(complete_graph(1), complete_graph(2), 1));
}

TEST_CASE("relabelling invariance and monotonicity") {
  auto graphs = enumerate_graphs(4);
  for (const Graph& g : graphs) {
    std::vector<int> perm(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) perm[i] = g.vertex_count() - 1 - i;
    CHECK(wl_indistinguishable(g, g.relabel(perm), 2));
  }
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = i + 1; j < graphs.size(); ++j)
      if (wl_indistinguishable(graphs[i], graphs[j], 2)) CHECK(wl_indistinguishable(graphs[i], graphs[j], 1));
}

TEST_CASE("atomic types record equality and adjacency") {
  Graph g = path_graph(3);
  CHECK(atomic_type(g, {0, 1}) == atomic_type(g, {1, 2}));
  CHECK(atomic_type(g, {0, 1}) != atomic_type(g, {0, 2}));
  CHECK(atomic_type(g, {0, 0}) != atomic_type(g, {0, 2}));
}

TEST_CASE("colours determine tensor entries") {
  Graph g = cycle_graph(6), h = disjoint_union(cycle_graph(3), cycle_graph(3));
  std::vector<LabelledGraph> sample = {
      {path_graph(3), {0}},
      {path_graph(4), {1}},
      {star_graph(3), {0}},
  };
  CorrespondenceReport r = verify_colour_tensor_correspondence(g, h, 1, sample);
  CHECK(r.passed);
  CHECK(r.checked == 3);

  std::vector<LabelledGraph> pairs = {{cycle_graph(4), {0, 2}}, {path_graph(3), {0, 2}}};
  CHECK(verify_colour_tensor_correspondence(g, h, 2, pairs).passed);
}

TEST_CASE("tuple cap") {
  Caps saved = Caps::get();
  Caps tight = saved;
  tight.wl_tuples = 10;
  Caps::set(tight);
  CHECK_THROWS_AS(wl_colouring(cycle_graph(6), 2), CapError);
  Caps::set(saved);
}
