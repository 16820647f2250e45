#include <doctest.h>

#include <sstream>

#include "homlab/report.hpp"

using namespace homlab;

TEST_CASE("graph specs") {
  CHECK(graph_from_spec("C3+C3").vertex_count() == 6);
  CHECK(graph_from_spec("C3+C3").edge_count() == 6);
  CHECK(graph_from_spec("2K2").edge_count() == 2);
  CHECK(graph_from_spec("K3,3").edge_count() == 9);
  CHECK(graph_from_spec("S3").vertex_count() == 4);
  CHECK(graph_from_spec("E3").edge_count() == 0);
  CHECK(graph_from_spec("prism").edge_count() == 9);
  CHECK_THROWS(graph_from_spec("Q3"));
  CHECK_THROWS(graph_from_spec("C"));
}

TEST_CASE("pattern library") {
  const PatternLibrary& lib = PatternLibrary::get();
  CHECK(lib.graphs.size() == 208);
  auto sep = separating_pattern(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3)),
                                [&](int i) { return lib.tw[i] <= 2; });
  REQUIRE(sep);
  CHECK(sep->vertex_count() == 3);
}

TEST_CASE("report on a self pair is all positive") {
  Graph g = path_graph(3);
  PairReport r = run_pair_report("P3", g, g, ReportOptions{2, true});
  CHECK(r.violations.empty());
  for (const Verdict& v : r.items) CHECK_MESSAGE(v.state == Verdict::State::yes, v.key);
  CHECK(r.to_text().find("consistent=yes") != std::string::npos);
}

TEST_CASE("report on K1 vs K2 is all negative") {
  PairReport r = run_pair_report("K1/K2", complete_graph(1), complete_graph(2), ReportOptions{2, true});
  CHECK(r.violations.empty());
  for (const Verdict& v : r.items) CHECK_MESSAGE(v.state == Verdict::State::no, v.key);
}

TEST_CASE("report on C6 vs 2C3 at k_max 1") {
  PairReport r = run_pair_report("c6", cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3)),
                                 ReportOptions{1, true});
  CHECK(r.violations.empty());
  CHECK(r.get("fiso.rat") == true);
  CHECK(r.get("fiso.nn") == true);
  CHECK(r.get("pw1.rat") == true);
  CHECK(r.get("wl1") == true);
  CHECK(r.get("td2.rat") == true);
  CHECK(r.get("pw1.transport") == true);
  std::string text = r.to_text();
  CHECK(text.rfind("pair=c6\n", 0) == 0);
  CHECK(text.find("fiso.rat=feasible\n") != std::string::npos);
}

TEST_CASE("caps are recorded per item") {
  PairReport r = run_pair_report("c7", cycle_graph(7), cycle_graph(7), ReportOptions{1, false});
  CHECK(r.violations.empty());
  auto it = std::find_if(r.items.begin(), r.items.end(), [](const Verdict& v) { return v.key == "fiso.rat"; });
  REQUIRE(it != r.items.end());
  CHECK(it->state == Verdict::State::skipped);
  CHECK(r.get("wl1") == true);
}

TEST_CASE("corpus parsing and ordering") {
  std::istringstream empty("# nothing\n\n");
  CorpusSummary e = run_corpus(empty, 2);
  CHECK(e.reports.empty());
  CHECK(e.consistent);

  std::istringstream in("kmax 1\npair P3 P3\npair K2 E2\nall-pairs 2\n");
  std::ostringstream progress;
  CorpusSummary s = run_corpus(in, 3, &progress);
  REQUIRE(s.reports.size() == 8);
  CHECK(s.reports[0].id == "P3 vs P3");
  CHECK(s.reports[1].id == "K2 vs E2");
  CHECK(s.consistent);
  CHECK(progress.str().rfind("P3 vs P3 |", 0) == 0);
  CHECK(format_summary(s).find("pairs=8 violations=0 consistent=yes") != std::string::npos);

  std::istringstream bad("pair P3\n");
  CHECK_THROWS_AS(run_corpus(bad, 1), ParseError);
  std::istringstream unknown("kmax 1\nfrobnicate 3\n");
  try {
    run_corpus(unknown, 1);
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 2);
  }
}
