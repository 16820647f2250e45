#include <doctest.h>

#include "homlab/counterexamples.hpp"
#include "homlab/spectra.hpp"

using namespace homlab;

TEST_CASE("Prouhet-Thue-Morse partition") {
  PtmPartition p = ptm_partition(1);
  CHECK(p.a == std::vector<long>{0, 3, 5, 6});
  CHECK(p.b == std::vector<long>{1, 2, 4, 7});
  CHECK(p.ell == 3);
  CHECK(p.sum_a == 368);
  CHECK(p.sum_b == 416);
  PtmPartition q = ptm_partition(2);
  CHECK(q.a.size() == 16);
  CHECK(q.ell == 5);
  CHECK_THROWS_AS(ptm_partition(3), CapError);
}

TEST_CASE("principal sequences") {
  PtmPartition p = ptm_partition(1);
  auto [sa, sb] = principal_sequence_pair(p.a, p.b);
  std::string why;
  CHECK(check_principal_sequence(sa, &why));
  CHECK(check_principal_sequence(sb, &why));
  CHECK(sa.v[0] == sa.u[0]);
  CHECK(sa.scale == sb.scale);
  CHECK(check_principal_sequence(principal_sequence({0, 1, 2}), &why));
}

TEST_CASE("M_lambda for d = 1") {
  DegreePair p = generate_degree_pair(1);
  CHECK(p.lambda == 10);
  CHECK(p.N == 740);
  IntMatrix m = {{255, 19, 25, 77}, {19, 354, 274, 143}, {25, 274, 370, 397}, {77, 143, 397, 587}};
  CHECK(p.m == m);
  CHECK(matrix_rank(p.m) == 3);
  CHECK(matrix_rank(p.l) == 3);
  CHECK(p.g.vertex_count() == 2960);
  CHECK(p.g.edge_count() == p.h.edge_count());
  std::string meta = format_meta(p);
  CHECK(meta.find("lambda 10\n") != std::string::npos);
  CHECK(meta.find("M 4\n255 19 25 77\n") != std::string::npos);
}

TEST_CASE("lift of a tiny multigraph") {
  IntMatrix m = {{1, 2}, {2, 3}};
  LiftedGraph l = lift_multigraph(m, 4);
  CHECK(l.graph.vertex_count() == 8);
  std::string why;
  CHECK(check_lift(l, &why));
  for (int v = 0; v < 8; ++v) {
    int u = l.layer[v];
    CHECK(l.graph.degree(v) == Integer(m[u][0] + m[u][1]).get_si());
  }
  for (const Graph& t : family_enumerate(FamilySpec::parse("trees"), 5))
    CHECK(layered_hom_count(t, m, 4) == hom_count(t, l.graph));
  CHECK_THROWS(lift_multigraph(m, 2));
}

TEST_CASE("degree pair harness at d = 1") {
  DegreePair p = generate_degree_pair(1);
  DegreeReport r = verify_degree_pair(p, DegreeBounds{6, 10});
  for (const HarnessItem& it : r.items) CHECK_MESSAGE(it.passed, it.name << ": " << it.detail);
  CHECK(r.passed);
}
