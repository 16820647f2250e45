// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include "homlab/basal.hpp"
#include "homlab/counterexamples.hpp"
#include "homlab/hom.hpp"
#include "homlab/linsys.hpp"
#include "homlab/report.hpp"
#include "homlab/spectra.hpp"
#include "homlab/widths.hpp"
#include "homlab/wl.hpp"

using namespace homlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> problems;

  void fail(const std::string& why) {
    pass = false;
    if (problems.size() < 10) problems.push_back(why);
  }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  failures += !o.pass;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": " << o.summary << " ("
            << static_cast<int>(secs * 10) / 10.0 << "s)" << std::endl;
  for (const std::string& p : o.problems) std::cout << "    " << p << std::endl;
}

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

CorpusSummary load_corpus(const std::string& name) {
  std::string dir = std::string(HOMLAB_SOURCE_DIR) + "/corpus";
  std::ifstream in(dir + "/" + name);
  if (!in) throw Error("missing corpus " + name);
  return run_corpus(in, jobs(), nullptr, dir);
}

// Verdict that must have been computed.
bool need(const PairReport& r, const std::string& key, Outcome& o) {
  auto v = r.get(key);
  if (!v) {
    o.fail(r.id + ": " + key + " not computed");
    return false;
  }
  return *v;
}

std::string show_pair(const PairReport& r) { return "(" + r.id + ")"; }

}  // namespace

int main() {
  std::cout << "homlab acceptance run" << std::endl;

  criterion(1, "basal words evaluate to hom counts", [] {
    Outcome o;
    auto targets = enumerate_graphs(4);
    long checks = 0;
    int pw_patterns = 0, td_patterns = 0;
    for (const Graph& f : enumerate_graphs(6)) {
      if (pathwidth(f) <= 2) {
        ++pw_patterns;
        Word w = compile_pathwidth_word(f, 2);
        for (const Graph& g : targets) {
          ++checks;
          if (evaluate_word(w, g, EvalMode::soe) != hom_count(f, g)) o.fail("pw word mismatch for " + format_graph(f));
        }
      }
      if (treedepth(f) <= 3) {
        ++td_patterns;
        Word w = compile_treedepth_word(f, 3);
        for (const Graph& g : targets) {
          ++checks;
          if (evaluate_word(w, g, EvalMode::soe) != hom_count(f, g)) o.fail("td word mismatch for " + format_graph(f));
        }
      }
    }
    o.summary = std::to_string(pw_patterns) + " pw<=2 and " + std::to_string(td_patterns) + " td<=3 patterns, " +
                std::to_string(targets.size()) + " targets, " + std::to_string(checks) + " exact comparisons";
    return o;
  });

  // Shared pair reports for criteria 2, 3, 6, 9, 10.
  std::vector<PairReport> small, curated;
  auto t0 = std::chrono::steady_clock::now();
  small = load_corpus("small.txt").reports;
  curated = load_corpus("curated.txt").reports;
  std::cout << "ran " << small.size() << " + " << curated.size() << " pair reports in "
            << static_cast<int>(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count())
            << "s" << std::endl;
  std::vector<const PairReport*> all;
  for (const auto& r : small) all.push_back(&r);
  for (const auto& r : curated) all.push_back(&r);

  criterion(2, "PW^{k+1} rational <=> L^{k+1}_iso rational", [&] {
    Outcome o;
    int feasible = 0, checks = 0;
    for (const PairReport* r : all)
      for (int k = 1; k <= 2; ++k) {
        std::string K = std::to_string(k);
        bool a = need(*r, "pw" + K + ".rat", o), b = need(*r, "liso" + K + ".rat", o);
        ++checks;
        feasible += a;
        if (a != b) o.fail(show_pair(*r) + " k=" + K + " pw=" + std::to_string(a) + " liso=" + std::to_string(b));
      }
    o.summary = std::to_string(all.size()) + " pairs, k in {1,2}: " + std::to_string(checks) + " checks, " +
                std::to_string(feasible) + " feasible";
    return o;
  });

  criterion(3, "nonneg PW^{k+1} <=> nonneg L^{k+1}_iso <=> k-WL", [&] {
    Outcome o;
    int indist = 0, checks = 0;
    for (const PairReport* r : all)
      for (int k = 1; k <= 2; ++k) {
        std::string K = std::to_string(k);
        bool a = need(*r, "pw" + K + ".nn", o), b = need(*r, "liso" + K + ".nn", o), c = need(*r, "wl" + K, o);
        ++checks;
        indist += c;
        if (a != b || b != c)
          o.fail(show_pair(*r) + " k=" + K + " pw=" + std::to_string(a) + " liso=" + std::to_string(b) +
                 " wl=" + std::to_string(c));
      }
    o.summary = std::to_string(checks) + " checks, " + std::to_string(indist) + " WL-indistinguishable";
    return o;
  });

  // Criteria 4 and 5 run over every pair of graphs on <= 6 vertices.
  auto graphs = enumerate_graphs(6);
  std::vector<std::vector<Integer>> walks(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (int n = 1; n <= 12; ++n) walks[i].push_back(hom_count(path_graph(n), graphs[i]));

  criterion(4, "nonneg F_iso <=> colour refinement (all pairs <= 6 vertices)", [&] {
    Outcome o;
    long pairs = 0, indist = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = i; j < graphs.size(); ++j) {
        ++pairs;
        LinearSystem sys = with_nonneg(build_fiso(graphs[i], graphs[j]));
        Feasibility f = solve_nonneg(sys);
        bool cr = wl_indistinguishable(graphs[i], graphs[j], 1);
        indist += cr;
        if (f.feasible != cr) o.fail("pair " + std::to_string(i) + "," + std::to_string(j));
        if (f.feasible && !satisfies(sys, f.witness)) o.fail("bad witness " + std::to_string(i) + "," + std::to_string(j));
      }
    o.summary = std::to_string(graphs.size()) + " graphs, " + std::to_string(pairs) + " pairs, " +
                std::to_string(indist) + " CR-indistinguishable";
    return o;
  });

  criterion(5, "rational F_iso <=> path hom counts (<= 12) <=> Gram(paths)", [&] {
    Outcome o;
    long pairs = 0, indist = 0;
    FamilySpec paths{FamilySpec::Kind::paths, 1};
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = i; j < graphs.size(); ++j) {
        ++pairs;
        LinearSystem sys = build_fiso(graphs[i], graphs[j]);
        Feasibility f = solve_rational(sys);
        bool hom = walks[i] == walks[j];
        bool gram = gram_indistinguishable(paths, graphs[i], graphs[j]).indistinguishable;
        indist += hom;
        if (f.feasible != hom || hom != gram)
          o.fail("pair " + std::to_string(i) + "," + std::to_string(j) + " fiso=" + std::to_string(f.feasible) +
                 " hom=" + std::to_string(hom) + " gram=" + std::to_string(gram));
        if (f.feasible ? !satisfies(sys, f.witness, false) : !certificate_valid(sys, f.certificate))
          o.fail("unverified verdict " + std::to_string(i) + "," + std::to_string(j));
      }
    o.summary = std::to_string(pairs) + " pairs, " + std::to_string(indist) + " path-indistinguishable";
    return o;
  });

  criterion(6, "TD^k rational <=> TD^k nonneg <=> hom counts over td<=k (k in {2,3})", [&] {
    Outcome o;
    int checks = 0, feasible = 0;
    for (const PairReport* r : all)
      for (int k = 2; k <= 3; ++k) {
        std::string K = std::to_string(k);
        bool a = need(*r, "td" + K + ".rat", o), b = need(*r, "td" + K + ".nn", o), c = need(*r, "td" + K + ".hom", o);
        ++checks;
        feasible += a;
        if (a != b || b != c)
          o.fail(show_pair(*r) + " k=" + K + " rat=" + std::to_string(a) + " nn=" + std::to_string(b) +
                 " hom=" + std::to_string(c));
      }
    const PairReport& c6 = curated.front();
    if (c6.id != "C6 vs C3+C3") o.fail("curated corpus should start with C6 vs C3+C3");
    else if (!need(c6, "td2.rat", o) || need(c6, "td3.rat", o)) o.fail("C6 vs C3+C3: expected TD^2 feasible, TD^3 not");
    o.summary = std::to_string(checks) + " checks, " + std::to_string(feasible) +
                " feasible; C6 vs C3+C3: TD^2 feasible, TD^3 infeasible";
    return o;
  });

  criterion(7, "degree pair d=1", [] {
    Outcome o;
    DegreePair p = generate_degree_pair(1);
    DegreeReport rep = verify_degree_pair(p, DegreeBounds{8, 20});
    for (const HarnessItem& it : rep.items)
      if (!it.passed) o.fail(it.name + ": " + it.detail);
    if (p.ptm.ell != 3 || p.ptm.sum_a != 368 || p.ptm.sum_b != 416)
      o.fail("PTM power sums: ell=" + std::to_string(p.ptm.ell) + " " + p.ptm.sum_a.get_str() + " vs " +
             p.ptm.sum_b.get_str());
    Graph star = star_graph(3);
    Integer sg = hom_count(star, p.g), sh = hom_count(star, p.h);
    if (sg == sh) o.fail("K_{1,3} does not separate the pair");
    if (sg != layered_hom_count(star, p.m, p.N) || sh != layered_hom_count(star, p.l, p.N))
      o.fail("census disagrees with direct count");
    if (wl_indistinguishable(p.g, p.h, 1)) o.fail("colour refinement does not separate the pair");
    if (!gram_indistinguishable(FamilySpec{FamilySpec::Kind::dary, 1}, p.g, p.h).indistinguishable)
      o.fail("Gram(dary 1) distinguishes");
    if (gram_indistinguishable(FamilySpec{FamilySpec::Kind::trees, 1}, p.g, p.h).indistinguishable)
      o.fail("Gram(trees) does not distinguish");
    o.summary = std::to_string(p.g.vertex_count()) + " vertices, lambda=" + p.lambda.get_str() +
                " N=" + std::to_string(p.N) + ", hom(K_{1,3}) " + sg.get_str() + " vs " + sh.get_str() + ", " +
                std::to_string(rep.items.size()) + " harness items";
    return o;
  });

  criterion(8, "word testers on (C6, C3+C3) over basal_pw(1)", [] {
    Outcome o;
    Graph g = cycle_graph(6), h = disjoint_union(cycle_graph(3), cycle_graph(3));
    BasalFamily fam = basal_pw(1);
    MatrixFamily fg = basal_matrices(fam, g), fh = basal_matrices(fam, h);
    WordsResult soe_r = words_equivalent(fg, fh, EvalMode::soe);
    if (!soe_r.equivalent || soe_r.bounded) o.fail("soe closure not equivalent");
    WordsResult tr_r = words_equivalent(fg, fh, EvalMode::tr);
    if (tr_r.equivalent) {
      o.fail("tr closure found no failing word");
      return o;
    }
    Word w{FamilyKind::pw, 1, tr_r.failing};
    Graph c = underlying(trace_closure(w));
    Integer x = hom_count(c, g), y = hom_count(c, h);
    Integer gap = abs(x - y);
    if (gap != 12) o.fail("closure gap " + gap.get_str());
    if (evaluate_word(w, g, EvalMode::tr) != x || evaluate_word(w, h, EvalMode::tr) != y)
      o.fail("trace does not match closure hom count");
    o.summary = "soe equivalent (dim " + std::to_string(soe_r.dimension) + "); tr fails on '" + format_word(w) +
                "', closure hom " + x.get_str() + " vs " + y.get_str();
    return o;
  });

  criterion(9, "witnesses and certificates verified", [&] {
    Outcome o;
    int witnesses = 0, certificates = 0, implied = 0;
    for (const PairReport* r : all) {
      for (const std::string& v : r->violations) o.fail(show_pair(*r) + " " + v);
      for (const Verdict& v : r->items) {
        bool rat = v.key.size() > 4 && v.key.compare(v.key.size() - 4, 4, ".rat") == 0;
        bool nn = v.key.size() > 3 && v.key.compare(v.key.size() - 3, 3, ".nn") == 0;
        if (!rat && !nn) continue;
        if (v.state == Verdict::State::yes) {
          if (v.detail.find("witness=verified") == std::string::npos) o.fail(show_pair(*r) + " " + v.key);
          ++witnesses;
        } else if (v.state == Verdict::State::no) {
          if (v.detail.find("certificate=verified") != std::string::npos) {
            ++certificates;
          } else if (nn && v.detail.find("implied by rational certificate") != std::string::npos) {
            ++implied;
          } else if (rat) {
            o.fail(show_pair(*r) + " " + v.key + " without certificate");
          }
        } else {
          o.fail(show_pair(*r) + " " + v.key + " not decided");
        }
      }
    }
    o.summary = std::to_string(witnesses) + " witnesses, " + std::to_string(certificates) + " certificates, " +
                std::to_string(implied) + " nonneg verdicts from rational certificates";
    return o;
  });

  criterion(10, "transport maps on feasible instances", [&] {
    Outcome o;
    int runs = 0;
    for (const PairReport* r : all) {
      for (int k = 1; k <= 2; ++k) {
        std::string K = std::to_string(k);
        if (r->get("pw" + K + ".rat").value_or(false) || r->get("liso" + K + ".rat").value_or(false)) {
          ++runs;
          if (!r->get("pw" + K + ".transport").value_or(false)) o.fail(show_pair(*r) + " pw" + K);
        }
      }
      for (int k = 1; k <= 3; ++k) {
        std::string K = std::to_string(k);
        if (r->get("td" + K + ".rat").value_or(false)) {
          ++runs;
          if (!r->get("td" + K + ".transport").value_or(false)) o.fail(show_pair(*r) + " td" + K);
        }
      }
    }
    o.summary = std::to_string(runs) + " transport runs verified";
    return o;
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
