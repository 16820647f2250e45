#include "homlab/report.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "homlab/counterexamples.hpp"
#include "homlab/hom.hpp"
#include "homlab/linsys.hpp"
#include "homlab/spectra.hpp"
#include "homlab/widths.hpp"
#include "homlab/wl.hpp"

namespace homlab {

const PatternLibrary& PatternLibrary::get() {
  static const PatternLibrary lib = [] {
    PatternLibrary l;
    l.graphs = enumerate_graphs(6);
    for (const Graph& f : l.graphs) {
      l.tw.push_back(treewidth(f));
      l.pw.push_back(pathwidth(f));
      l.td.push_back(treedepth(f));
    }
    return l;
  }();
  return lib;
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Integer> hom_profile(const Graph& g) {
  std::vector<Integer> out;
  for (const Graph& f : PatternLibrary::get().graphs) out.push_back(hom_count(f, g));
  return out;
}

std::optional<int> first_difference(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                    const std::function<bool(int)>& use) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (use(static_cast<int>(i)) && a[i] != b[i]) return static_cast<int>(i);
  return std::nullopt;
}

std::string short_graph(const Graph& f) {
  std::ostringstream os;
  os << "n" << f.vertex_count() << "[";
  for (std::size_t i = 0; i < f.edges().size(); ++i)
    os << (i ? " " : "") << f.edges()[i].first << "-" << f.edges()[i].second;
  os << "]";
  return os.str();
}

const char* value_word(const std::string& key, bool yes) {
  auto ends = [&](const char* s) {
    std::string t(s);
    return key.size() >= t.size() && key.compare(key.size() - t.size(), t.size(), t) == 0;
  };
  if (key.rfind("wl", 0) == 0 || ends(".gram")) return yes ? "indist" : "dist";
  if (ends(".hom")) return yes ? "equal" : "differ";
  if (ends(".transport")) return yes ? "ok" : "fail";
  return yes ? "feasible" : "infeasible";
}

class Builder {
public:
  explicit Builder(PairReport& r) : r_(r) {}

  // Runs `fn`, recording its verdict; caps and errors become item states.
  void item(const std::string& key, const std::function<bool(std::string&)>& fn) {
    Verdict v;
    v.key = key;
    auto start = Clock::now();
    try {
      std::string detail;
      v.state = fn(detail) ? Verdict::State::yes : Verdict::State::no;
      v.detail = detail;
    } catch (const CapError& e) {
      v.state = Verdict::State::skipped;
      v.detail = std::string("cap: ") + e.what();
    } catch (const std::exception& e) {
      v.state = Verdict::State::error;
      v.detail = e.what();
      r_.violations.push_back(key + ": " + e.what());
    }
    v.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r_.items.push_back(std::move(v));
  }

  void skip(const std::string& key, const std::string& why) {
    r_.items.push_back(Verdict{key, Verdict::State::skipped, why});
  }

  std::optional<bool> get(const std::string& key) const { return r_.get(key); }

  // a => b, both computed.
  void implies(const std::string& a, const std::string& b, bool rigorous = true) {
    auto x = get(a), y = get(b);
    if (!x || !y || !*x || *y) return;
    std::string msg = a + " holds but " + b + " does not";
    (rigorous ? r_.violations : r_.notes).push_back(msg);
  }

  void equiv(const std::string& a, const std::string& b, bool rigorous = true) {
    implies(a, b, rigorous);
    implies(b, a, rigorous);
  }

private:
  PairReport& r_;
};

// Solves one system and records witness / certificate hygiene in `detail`.
struct Solved {
  Feasibility rat, nn;
  bool have_nn = false;
};

std::string describe(const LinearSystem& sys, const Feasibility& f, bool nonneg, std::vector<std::string>& bad,
                     const std::string& key) {
  std::ostringstream os;
  os << "vars=" << sys.vars.size() << " rows=" << sys.rows.size();
  if (f.feasible) {
    std::size_t nnz = 0;
    for (const Rational& q : f.witness) nnz += sgn(q) != 0;
    bool ok = satisfies(sys, f.witness, nonneg);
    os << " witness_nnz=" << nnz << (ok ? " witness=verified" : " witness=INVALID");
    if (!ok) bad.push_back(key + ": witness fails substitution");
  } else if (f.has_certificate()) {
    bool ok = certificate_valid(sys, f.certificate);
    os << " certificate_rows=" << f.certificate.size() << (ok ? " certificate=verified" : " certificate=INVALID");
    if (!ok) bad.push_back(key + ": certificate does not combine to 0 = c");
  } else {
    os << " certificate=none";
    if (!nonneg) bad.push_back(key + ": rational infeasibility without certificate");
  }
  return os.str();
}

}  // namespace

std::optional<Graph> separating_pattern(const Graph& g, const Graph& h, const std::function<bool(int)>& use) {
  const auto& lib = PatternLibrary::get();
  for (std::size_t i = 0; i < lib.graphs.size(); ++i)
    if (use(static_cast<int>(i)) && hom_count(lib.graphs[i], g) != hom_count(lib.graphs[i], h)) return lib.graphs[i];
  return std::nullopt;
}

std::optional<bool> PairReport::get(const std::string& key) const {
  for (const Verdict& v : items)
    if (v.key == key) {
      if (v.state == Verdict::State::yes) return true;
      if (v.state == Verdict::State::no) return false;
      return std::nullopt;
    }
  return std::nullopt;
}

std::string PairReport::to_text() const {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << "pair=" << id << "\n";
  for (const Verdict& v : items) {
    os << v.key << "=";
    switch (v.state) {
      case Verdict::State::yes: os << value_word(v.key, true); break;
      case Verdict::State::no: os << value_word(v.key, false); break;
      case Verdict::State::skipped: os << "skipped"; break;
      case Verdict::State::error: os << "error"; break;
    }
    os << "\n";
    if (!v.detail.empty()) os << v.key << ".info=" << v.detail << "\n";
    if (v.seconds >= 0.005) os << v.key << ".seconds=" << v.seconds << "\n";
  }
  for (const std::string& s : violations) os << "violation=" << s << "\n";
  for (const std::string& s : notes) os << "note=" << s << "\n";
  os << "consistent=" << (violations.empty() ? "yes" : "no") << "\n";
  os << "seconds=" << seconds << "\n";
  return os.str();
}

PairReport run_pair_report(const std::string& id, const Graph& g, const Graph& h, const ReportOptions& opt) {
  auto start = Clock::now();
  PairReport r;
  r.id = id;
  Builder b(r);
  const auto& lib = PatternLibrary::get();

  bool small = std::max(g.vertex_count(), h.vertex_count()) <= 6;
  std::vector<Integer> pg, ph;
  if (small) {
    pg = hom_profile(g);
    ph = hom_profile(h);
  }
  auto hom_item = [&](const std::string& key, std::function<bool(int)> use) {
    if (!small) return b.skip(key, "pattern oracle needs graphs on <= 6 vertices");
    b.item(key, [&](std::string& d) {
      auto i = first_difference(pg, ph, use);
      if (!i) return true;
      d = "pattern=" + short_graph(lib.graphs[*i]) + " g=" + pg[*i].get_str() + " h=" + ph[*i].get_str();
      return false;
    });
  };

  // Solves a system in both modes. Nonneg infeasibility is inferred from a
  // rational certificate.
  auto solve_item = [&](const std::string& key, const std::function<LinearSystem()>& build) -> Solved {
    Solved s;
    std::optional<LinearSystem> sys;
    b.item(key + ".rat", [&](std::string& d) {
      sys = build();
      s.rat = solve_rational(*sys);
      d = describe(*sys, s.rat, false, r.violations, key + ".rat");
      return s.rat.feasible;
    });
    if (!sys) {
      b.skip(key + ".nn", "system not built");
      return s;
    }
    b.item(key + ".nn", [&](std::string& d) {
      if (!s.rat.feasible) {
        d = "implied by rational certificate";
        s.nn = s.rat;
        return false;
      }
      LinearSystem nsys = with_nonneg(*sys);
      s.nn = solve_nonneg(nsys);
      s.have_nn = true;
      d = describe(nsys, s.nn, true, r.violations, key + ".nn");
      return s.nn.feasible;
    });
    return s;
  };

  solve_item("fiso", [&] { return build_fiso(g, h); });
  b.item("paths.gram", [&](std::string& d) {
    auto res = gram_indistinguishable(FamilySpec{FamilySpec::Kind::paths, 1}, g, h);
    d = "dimension=" + std::to_string(res.dimension);
    if (res.witness) d += " witness=" + short_graph(underlying(*res.witness));
    return res.indistinguishable;
  });
  b.item("trees.gram", [&](std::string& d) {
    auto res = gram_indistinguishable(FamilySpec{FamilySpec::Kind::trees, 1}, g, h);
    d = "dimension=" + std::to_string(res.dimension);
    if (res.witness) d += " witness=" + short_graph(underlying(*res.witness));
    return res.indistinguishable;
  });
  b.item("paths.hom", [&](std::string& d) {
    for (int n = 1; n <= 12; ++n) {
      Graph p = path_graph(n);
      Integer x = hom_count(p, g), y = hom_count(p, h);
      if (x != y) {
        d = "path_vertices=" + std::to_string(n) + " g=" + x.get_str() + " h=" + y.get_str();
        return false;
      }
    }
    return true;
  });

  for (int k = 1; k <= opt.k_max; ++k) {
    std::string K = std::to_string(k);
    b.item("wl" + K, [&](std::string& d) {
      auto c = wl_compare(g, h, k);
      d = "rounds=" + std::to_string(c.rounds) + " classes=" + std::to_string(c.classes.size());
      if (!c.indistinguishable) d += " separating_round=" + std::to_string(c.separating_round);
      return c.indistinguishable;
    });
    Solved pw = solve_item("pw" + K, [&] { return build_pw(g, h, k); });
    Solved li = solve_item("liso" + K, [&] { return build_liso(g, h, k); });
    hom_item("pw" + K + ".hom", [&, k](int i) { return lib.pw[i] <= k; });
    hom_item("tw" + K + ".hom", [&, k](int i) { return lib.tw[i] <= k; });

    if (!opt.transport) continue;
    if (pw.rat.feasible || li.rat.feasible) {
      b.item("pw" + K + ".transport", [&](std::string& d) {
        int maps = 0;
        for (const Feasibility* f : {&pw.rat, &pw.nn})
          if (f->feasible) {
            Assignment y = symmetrise_solution(g, h, k, f->witness);
            if (!is_symmetric_solution(g, h, k, y)) throw InternalError("symmetrised solution not symmetric");
            project_solution(g, h, k, y);
            pw_to_liso(g, h, k, f->witness);
            maps += 3;
          }
        for (const Feasibility* f : {&li.rat, &li.nn})
          if (f->feasible) {
            liso_to_pw(g, h, k, f->witness);
            ++maps;
          }
        d = "maps_verified=" + std::to_string(maps);
        return true;
      });
    }
  }

  for (int k = 1; k <= opt.k_max + 1; ++k) {
    std::string K = std::to_string(k);
    Solved td = solve_item("td" + K, [&] { return build_td(g, h, k); });
    hom_item("td" + K + ".hom", [&, k](int i) { return lib.td[i] <= k; });
    if (opt.transport && td.rat.feasible) {
      b.item("td" + K + ".transport", [&](std::string& d) {
        int maps = 0;
        for (const Feasibility* f : {&td.rat, &td.nn})
          if (f->feasible) {
            td_assemble(g, h, k, td_top_block(g, h, k, f->witness));
            ++maps;
          }
        d = "maps_verified=" + std::to_string(maps);
        return true;
      });
    }
  }

  // Cross-checks backed by theorems; bounded-enumeration converses only
  // produce notes.
  b.implies("fiso.nn", "fiso.rat");
  b.equiv("fiso.rat", "paths.gram");
  b.equiv("fiso.rat", "paths.hom", g.vertex_count() + h.vertex_count() <= 12);
  b.equiv("fiso.nn", "wl1");
  b.equiv("fiso.nn", "trees.gram");
  b.implies("pw1.rat", "fiso.rat");
  for (int k = 1; k <= opt.k_max; ++k) {
    std::string K = std::to_string(k);
    b.implies("pw" + K + ".nn", "pw" + K + ".rat");
    b.equiv("pw" + K + ".rat", "liso" + K + ".rat");
    b.equiv("pw" + K + ".nn", "liso" + K + ".nn");
    b.equiv("pw" + K + ".nn", "wl" + K);
    b.implies("pw" + K + ".rat", "pw" + K + ".hom");
    b.implies("pw" + K + ".hom", "pw" + K + ".rat", false);
    b.implies("wl" + K, "tw" + K + ".hom");
    b.implies("tw" + K + ".hom", "wl" + K, false);
    if (k > 1) {
      std::string P = std::to_string(k - 1);
      b.implies("wl" + K, "wl" + P);
      b.implies("pw" + K + ".rat", "pw" + P + ".rat");
    }
  }
  for (int k = 1; k <= opt.k_max + 1; ++k) {
    std::string K = std::to_string(k);
    b.equiv("td" + K + ".rat", "td" + K + ".nn");
    b.implies("td" + K + ".rat", "td" + K + ".hom");
    b.implies("td" + K + ".hom", "td" + K + ".rat", false);
    if (k > 1) b.implies("td" + K + ".rat", "td" + std::to_string(k - 1) + ".rat");
  }

  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

// --- graph specs -------------------------------------------------------------

namespace {

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(a + b, e);
}

Graph prism_graph() {
  return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

int parse_int(const std::string& s, const std::string& spec) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Error("bad graph spec '" + spec + "'");
  return std::stoi(s);
}

Graph part_from_spec(std::string part, const std::string& spec) {
  int copies = 1;
  std::size_t digits = part.find_first_not_of("0123456789");
  if (digits != 0 && digits != std::string::npos) {
    copies = std::stoi(part.substr(0, digits));
    part = part.substr(digits);
  }
  Graph one;
  if (part == "prism") {
    one = prism_graph();
  } else if (part.size() >= 2) {
    std::string rest = part.substr(1);
    switch (part[0]) {
      case 'C': one = cycle_graph(parse_int(rest, spec)); break;
      case 'P': one = path_graph(parse_int(rest, spec)); break;
      case 'S': one = star_graph(parse_int(rest, spec)); break;
      case 'E': one = Graph(parse_int(rest, spec)); break;
      case 'K': {
        auto comma = rest.find(',');
        one = comma == std::string::npos
                  ? complete_graph(parse_int(rest, spec))
                  : complete_bipartite(parse_int(rest.substr(0, comma), spec),
                                       parse_int(rest.substr(comma + 1), spec));
        break;
      }
      default: throw Error("bad graph spec '" + spec + "'");
    }
  } else {
    throw Error("bad graph spec '" + spec + "'");
  }
  Graph out(0);
  for (int i = 0; i < copies; ++i) out = disjoint_union(out, one);
  return out;
}

}  // namespace

Graph graph_from_spec(const std::string& spec) {
  if (std::filesystem::exists(spec)) return read_plain_graph_file(spec);
  Graph out(0);
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t plus = spec.find('+', pos);
    std::string part = spec.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    out = disjoint_union(out, part_from_spec(part, spec));
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return out;
}

// --- corpus ------------------------------------------------------------------

namespace {

struct Job {
  enum class Kind { pair, degree } kind = Kind::pair;
  std::string id;
  Graph g, h;
  int k_max = 2;
  int d = 1;
};

std::string summary_line(const PairReport& r) {
  auto mark = [&](const std::string& key) {
    auto v = r.get(key);
    if (v) return *v ? "+" : "-";
    for (const Verdict& x : r.items)
      if (x.key == key) return "?";
    return "";
  };
  std::ostringstream os;
  os << r.id << " |";
  auto sys = [&](const std::string& name) {
    bool present = false;
    for (const Verdict& x : r.items) present |= x.key == name + ".rat";
    if (present) os << " " << name << ":" << mark(name + ".rat") << mark(name + ".nn");
  };
  sys("fiso");
  for (int k = 1; k <= 9; ++k) {
    std::string K = std::to_string(k);
    if (!r.get("wl" + K) && mark("wl" + K)[0] == '\0') continue;
    os << " wl" << K << ":" << mark("wl" + K);
  }
  for (int k = 1; k <= 9; ++k) sys("pw" + std::to_string(k));
  for (int k = 1; k <= 9; ++k) sys("liso" + std::to_string(k));
  for (int k = 1; k <= 9; ++k) sys("td" + std::to_string(k));
  os << " paths:" << mark("paths.gram") << " trees:" << mark("trees.gram");
  os << " | " << (r.violations.empty() ? "ok" : "VIOLATION");
  os.setf(std::ios::fixed);
  os.precision(2);
  os << " " << r.seconds << "s";
  return os.str();
}

}  // namespace

CorpusSummary run_corpus(std::istream& in, int jobs, std::ostream* progress, const std::string& base_dir) {
  auto resolve = [&](const std::string& spec) {
    if (base_dir.empty() || std::filesystem::exists(spec)) return graph_from_spec(spec);
    std::filesystem::path p = std::filesystem::path(base_dir) / spec;
    return std::filesystem::exists(p) ? read_plain_graph_file(p.string()) : graph_from_spec(spec);
  };
  std::vector<Job> work;
  int k_max = 2;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string cmd;
    if (!(ls >> cmd)) continue;
    std::vector<std::string> args;
    for (std::string a; ls >> a;) args.push_back(a);
    auto need = [&](std::size_t n) {
      if (args.size() != n) throw ParseError(line_no, "'" + cmd + "' takes " + std::to_string(n) + " argument(s)");
    };
    auto number = [&](const std::string& s) {
      try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size() && v >= 0) return v;
      } catch (const std::exception&) {
      }
      throw ParseError(line_no, "expected a non-negative integer, got '" + s + "'");
    };
    try {
      if (cmd == "kmax") {
        need(1);
        k_max = number(args[0]);
      } else if (cmd == "pair") {
        need(2);
        Job j;
        j.id = args[0] + " vs " + args[1];
        j.g = resolve(args[0]);
        j.h = resolve(args[1]);
        j.k_max = k_max;
        work.push_back(std::move(j));
      } else if (cmd == "all-pairs") {
        need(1);
        int n = number(args[0]);
        auto graphs = enumerate_graphs(n);
        for (std::size_t i = 0; i < graphs.size(); ++i)
          for (std::size_t k = i; k < graphs.size(); ++k) {
            Job j;
            j.id = "g" + std::to_string(i) + ":" + short_graph(graphs[i]) + " vs g" + std::to_string(k) + ":" +
                   short_graph(graphs[k]);
            j.g = graphs[i];
            j.h = graphs[k];
            j.k_max = k_max;
            work.push_back(std::move(j));
          }
      } else if (cmd == "degree-pair") {
        need(1);
        Job j;
        j.kind = Job::Kind::degree;
        j.d = number(args[0]);
        j.id = "degree-pair d=" + args[0];
        work.push_back(std::move(j));
      } else {
        throw ParseError(line_no, "unknown corpus command '" + cmd + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const CapError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }

  struct Result {
    std::optional<PairReport> report;
    std::vector<std::string> harness;
    bool ok = true;
    bool done = false;
  };
  std::vector<Result> results(work.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t printed = 0;

  auto emit_ready = [&] {
    // caller holds mu
    while (printed < results.size() && results[printed].done) {
      const Result& res = results[printed];
      if (progress) {
        if (res.report) *progress << summary_line(*res.report) << "\n";
        for (const std::string& s : res.harness) *progress << s << "\n";
        progress->flush();
      }
      ++printed;
    }
  };

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      const Job& j = work[i];
      Result res;
      if (j.kind == Job::Kind::pair) {
        ReportOptions opt;
        opt.k_max = j.k_max;
        res.report = run_pair_report(j.id, j.g, j.h, opt);
        res.ok = res.report->violations.empty();
      } else {
        try {
          DegreePair p = generate_degree_pair(j.d);
          DegreeReport rep = verify_degree_pair(p, DegreeBounds{});
          for (const HarnessItem& it : rep.items)
            res.harness.push_back(j.id + " item=" + it.name + " " + (it.passed ? "pass" : "FAIL") +
                                  (it.detail.empty() ? "" : " " + it.detail));
          res.ok = rep.passed;
        } catch (const std::exception& e) {
          res.harness.push_back(j.id + " error=" + e.what());
          res.ok = false;
        }
      }
      res.done = true;
      std::lock_guard<std::mutex> lock(mu);
      results[i] = std::move(res);
      emit_ready();
    }
  };

  int threads = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CorpusSummary s;
  for (Result& res : results) {
    s.consistent &= res.ok;
    if (res.report) s.reports.push_back(std::move(*res.report));
    for (std::string& h : res.harness) s.harness.push_back(std::move(h));
  }
  return s;
}

std::string format_summary(const CorpusSummary& s) {
  std::ostringstream os;
  for (const PairReport& r : s.reports) os << summary_line(r) << "\n";
  for (const std::string& h : s.harness) os << h << "\n";
  std::size_t bad = 0;
  for (const PairReport& r : s.reports) bad += !r.violations.empty();
  os << "pairs=" << s.reports.size() << " violations=" << bad << " consistent=" << (s.consistent ? "yes" : "no")
     << "\n";
  return os.str();
}

}  // namespace homlab
