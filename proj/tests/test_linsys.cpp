#include <doctest.h>

#include "homlab/linsys.hpp"

using namespace homlab;

namespace {

Graph c6() { return cycle_graph(6); }
Graph two_c3() { return disjoint_union(cycle_graph(3), cycle_graph(3)); }

LinearSystem toy(Rational a, Rational b) {
  // x + y = a, x - y = b
  LinearSystem s;
  int x = s.add_var(VarKey{VarKey::Kind::matrix_entry, {0}, {0}});
  int y = s.add_var(VarKey{VarKey::Kind::matrix_entry, {0}, {1}});
  s.add_row({{x, 1}, {y, 1}}, a, RowTag::commute);
  s.add_row({{x, 1}, {y, -1}}, b, RowTag::commute);
  return s;
}

}  // namespace

TEST_CASE("rows merge duplicate terms and drop trivial rows") {
  LinearSystem s;
  int x = s.add_var(VarKey{VarKey::Kind::matrix_entry, {0}, {0}});
  int y = s.add_var(VarKey{VarKey::Kind::matrix_entry, {1}, {0}});
  s.add_row({{y, 1}, {x, 2}, {y, -1}}, 3, RowTag::commute);
  REQUIRE(s.rows.size() == 1);
  CHECK(s.rows[0].terms.size() == 1);
  CHECK(s.rows[0].terms[0].first == x);
  s.add_row({{x, 1}, {x, -1}}, 0, RowTag::commute);
  CHECK(s.rows.size() == 1);
  CHECK(s.find(VarKey{VarKey::Kind::matrix_entry, {1}, {0}}) == y);
  CHECK_FALSE(s.find(VarKey{VarKey::Kind::matrix_entry, {2}, {0}}));
  CHECK(s.dump().rfind("var 0 (0|0)\n", 0) == 0);
}

TEST_CASE("toy systems: rational vs nonnegative") {
  LinearSystem s = toy(1, 3);  // x = 2, y = -1
  Feasibility r = solve_rational(s);
  REQUIRE(r.feasible);
  CHECK(r.witness[0] == 2);
  CHECK(r.witness[1] == -1);
  Feasibility n = solve_nonneg(with_nonneg(s));
  CHECK_FALSE(n.feasible);
  CHECK(solve_nonneg(s).feasible);  // no variable flagged

  LinearSystem t = toy(3, 1);
  Feasibility tn = solve_nonneg(with_nonneg(t));
  REQUIRE(tn.feasible);
  CHECK(satisfies(with_nonneg(t), tn.witness));
}

TEST_CASE("inconsistent systems ship certificates") {
  LinearSystem s = toy(1, 3);
  int x = 0;
  s.add_row({{x, 1}}, 0, RowTag::unit);
  Feasibility r = solve_rational(s);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.has_certificate());
  CHECK(certificate_valid(s, r.certificate));
  CHECK_FALSE(certificate_valid(s, {{0, 1}}));
}

TEST_CASE("witness file format") {
  LinearSystem s = toy(3, 1);
  Feasibility r = solve_rational(s);
  CHECK(format_witness(s, r.witness) == "X (0|0) 2/1\nX (0|1) 1/1\n");
}

TEST_CASE("F_iso on C6 vs 2C3 and on P4 vs K_{1,3}") {
  LinearSystem s = build_fiso(c6(), two_c3());
  CHECK(s.vars.size() == 36);
  CHECK(solve_rational(s).feasible);
  CHECK(solve_nonneg(with_nonneg(s)).feasible);
  LinearSystem t = with_nonneg(build_fiso(path_graph(4), star_graph(3)));
  CHECK_FALSE(solve_nonneg(t).feasible);
  Feasibility k = solve_rational(build_fiso(complete_graph(1), complete_graph(2)));
  CHECK_FALSE(k.feasible);
  CHECK(k.has_certificate());
}

TEST_CASE("PW and L_iso agree on C6 vs 2C3") {
  Graph g = c6(), h = two_c3();
  LinearSystem pw1 = build_pw(g, h, 1);
  CHECK(pw1.vars.size() == 1296);
  Feasibility x = solve_rational(pw1);
  REQUIRE(x.feasible);
  CHECK(solve_rational(build_liso(g, h, 1)).feasible);
  Feasibility l2 = solve_rational(build_liso(g, h, 2));
  CHECK_FALSE(l2.feasible);
  CHECK(certificate_valid(build_liso(g, h, 2), l2.certificate));
  CHECK(build_liso(g, h, 1).eliminated > 0);
}

TEST_CASE("TD layers on C6 vs 2C3") {
  Graph g = c6(), h = two_c3();
  CHECK(solve_rational(build_td(g, h, 2)).feasible);
  CHECK(solve_nonneg(with_nonneg(build_td(g, h, 2))).feasible);
  CHECK_FALSE(solve_rational(build_td(g, h, 3)).feasible);
}

TEST_CASE("commutation systems") {
  LinearSystem s = build_commutation(c6(), two_c3(), basal_pw(1));
  CHECK(solve_rational(s).feasible);
  CHECK(s.vars.size() == build_pw(c6(), two_c3(), 1).vars.size());
  CHECK(solve_rational(build_commutation(path_graph(4), star_graph(3), basal_pw(0))).feasible);
  LinearSystem t = build_commutation(path_graph(4), star_graph(3), basal_pw(1));
  CHECK_FALSE(solve_rational(t).feasible);
}

TEST_CASE("desk-scale guardrails") {
  CHECK_THROWS_AS(build_pw(c6(), two_c3(), 3), CapError);
  CHECK_THROWS_AS(build_fiso(cycle_graph(7), cycle_graph(7)), CapError);
  CHECK_THROWS_AS(build_td(c6(), two_c3(), 4), CapError);
}

TEST_CASE("transport maps on feasible instances") {
  Graph g = c6(), h = two_c3();
  Feasibility x = solve_rational(build_pw(g, h, 1));
  REQUIRE(x.feasible);
  Assignment s = symmetrise_solution(g, h, 1, x.witness);
  CHECK(is_symmetric_solution(g, h, 1, s));
  CHECK(satisfies(build_pw(g, h, 1), s, false));
  Assignment p = project_solution(g, h, 1, s);
  CHECK(satisfies(build_pw(g, h, 0), p, false));
  Assignment y = pw_to_liso(g, h, 1, x.witness);
  CHECK(satisfies(build_liso(g, h, 1), y, false));
  Assignment back = liso_to_pw(g, h, 1, y);
  CHECK(satisfies(build_pw(g, h, 1), back, false));

  Feasibility n = solve_nonneg(with_nonneg(build_pw(g, h, 1)));
  REQUIRE(n.feasible);
  Assignment yn = pw_to_liso(g, h, 1, n.witness);
  CHECK(satisfies(with_nonneg(build_liso(g, h, 1)), yn));

  Feasibility t = solve_rational(build_td(g, h, 2));
  REQUIRE(t.feasible);
  Assignment block = td_top_block(g, h, 2, t.witness);
  CHECK(satisfies(build_tdb(g, h, 2), block, false));
  Assignment lower = td_project(g, h, 2, block);
  CHECK(satisfies(build_tdb(g, h, 1), lower, false));
  CHECK(satisfies(build_td(g, h, 2), td_assemble(g, h, 2, block), false));
}

TEST_CASE("transport rejects non-solutions") {
  Graph g = c6(), h = two_c3();
  Assignment zero(build_pw(g, h, 1).vars.size());
  CHECK_THROWS_AS(pw_to_liso(g, h, 1, zero), Error);
}
