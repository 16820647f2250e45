// homlab command-line interface.
//
// Exit codes: 0 ok / indistinguishable / feasible, 1 distinguished or
// infeasible, 2 usage or parse error, 3 internal consistency violation,
// 4 equivalent only up to a length bound.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "homlab/basal.hpp"
#include "homlab/counterexamples.hpp"
#include "homlab/graph.hpp"
#include "homlab/hom.hpp"
#include "homlab/linsys.hpp"
#include "homlab/report.hpp"
#include "homlab/spectra.hpp"
#include "homlab/widths.hpp"
#include "homlab/wl.hpp"

using namespace homlab;

namespace {

constexpr int kOk = 0;
constexpr int kDistinguished = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;
constexpr int kBounded = 4;

FamilyKind parse_kind(const std::string& s) {
  if (s == "pw") return FamilyKind::pw;
  if (s == "wl") return FamilyKind::wl;
  if (s == "td") return FamilyKind::td;
  throw Error("unknown family kind '" + s + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string bags_str(const Decomposition& d) {
  std::ostringstream os;
  for (std::size_t t = 0; t < d.bags.size(); ++t) {
    os << "bag " << t << ":";
    for (int v : d.bags[t]) os << " " << v;
    os << "\n";
  }
  for (const Edge& e : d.skeleton.edges()) os << "link " << e.first << " " << e.second << "\n";
  return os.str();
}

// --- subcommands -------------------------------------------------------------

int cmd_hom(const std::string& f, const std::string& g) {
  std::cout << hom_count(graph_from_spec(f), graph_from_spec(g)).get_str() << "\n";
  return kOk;
}

int cmd_tensor(const std::string& f, const std::string& g) {
  AnyGraph pattern = read_graph_file(f);
  Graph target = graph_from_spec(g);
  HomTensor t;
  if (auto* l = std::get_if<LabelledGraph>(&pattern)) t = hom_tensor(*l, target);
  else if (auto* b = std::get_if<BilabelledGraph>(&pattern)) t = hom_tensor(*b, target);
  else t = hom_tensor(LabelledGraph{std::get<Graph>(pattern), {}}, target);
  std::cout << format_tensor(t);
  return kOk;
}

int cmd_width(const std::string& param, const std::string& f, bool show, bool word) {
  Graph g = graph_from_spec(f);
  if (param == "tw") {
    std::cout << "tw " << treewidth(g) << "\n";
    if (show) std::cout << bags_str(optimal_tree_decomposition(g));
  } else if (param == "pw") {
    int w = pathwidth(g);
    std::cout << "pw " << w << "\n";
    if (show) std::cout << bags_str(optimal_path_decomposition(g));
    if (word) std::cout << format_word(compile_pathwidth_word(g, w)) << "\n";
  } else if (param == "td") {
    EliminationForest ef = optimal_elimination_forest(g);
    std::cout << "td " << ef.depth << "\n";
    if (show) {
      for (std::size_t v = 0; v < ef.parent.size(); ++v) std::cout << "parent " << v << " " << ef.parent[v] << "\n";
    }
    if (word) std::cout << format_word(compile_treedepth_word(g, ef.depth)) << "\n";
  } else {
    throw Error("unknown width parameter '" + param + "'");
  }
  return kOk;
}

int cmd_basal(const std::string& kind, int k, bool list, const std::string& word, const std::string& target,
              const std::string& mode) {
  BasalFamily fam = basal_family(parse_kind(kind), k);
  if (!word.empty()) {
    if (target.empty()) throw Error("--word needs --graph");
    Word w = parse_word(word);
    EvalMode m = mode == "tr" ? EvalMode::tr : EvalMode::soe;
    std::cout << evaluate_word(w, graph_from_spec(target), m).get_str() << "\n";
    return kOk;
  }
  std::cout << "# family " << family_name(fam.kind, fam.k) << " members " << fam.members.size() << "\n";
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const BasalMember& m = fam.members[i];
    if (list) {
      std::cout << "# " << i << " " << m.name << "\n" << format_graph(m.graph);
    } else {
      std::cout << i << " " << m.name << "\n";
    }
  }
  return kOk;
}

int cmd_check(const std::string& system, int k, bool nonneg, const std::string& gs, const std::string& hs,
              const std::string& dump, const std::string& witness_out) {
  Graph g = graph_from_spec(gs), h = graph_from_spec(hs);
  LinearSystem sys;
  if (system == "fiso") sys = build_fiso(g, h);
  else if (system == "liso") sys = build_liso(g, h, k);
  else if (system == "pw") sys = build_pw(g, h, k);
  else if (system == "td") sys = build_td(g, h, k);
  else throw Error("unknown system '" + system + "'");
  if (nonneg) sys = with_nonneg(std::move(sys));
  if (!dump.empty()) write_file(dump, sys.dump());

  Feasibility f = nonneg ? solve_nonneg(sys) : solve_rational(sys);
  std::cout << "system=" << system << " k=" << k << " mode=" << (nonneg ? "nonneg" : "rational")
            << " vars=" << sys.vars.size() << " rows=" << sys.rows.size() << " eliminated=" << sys.eliminated << "\n";
  if (f.feasible) {
    if (!satisfies(sys, f.witness, nonneg)) throw InternalError("witness failed substitution");
    std::cout << "feasible=yes witness=verified\n";
    if (!witness_out.empty()) write_file(witness_out, format_witness(sys, f.witness));
    return kOk;
  }
  std::cout << "feasible=no";
  if (f.has_certificate()) {
    if (!certificate_valid(sys, f.certificate)) throw InternalError("certificate failed check");
    std::cout << " certificate=verified rows=" << f.certificate.size() << "\n";
    for (const auto& [row, c] : f.certificate) std::cout << "cert " << row << " " << rational_str(c) << "\n";
  } else {
    std::cout << "\n";
  }
  return kDistinguished;
}

int cmd_wl(int k, const std::string& gs, const std::string& hs) {
  WLComparison c = wl_compare(graph_from_spec(gs), graph_from_spec(hs), k);
  std::cout << "k=" << k << " rounds=" << c.rounds << " classes=" << c.classes.size() << "\n";
  if (c.indistinguishable) {
    std::cout << "indistinguishable\n";
    return kOk;
  }
  std::cout << "distinguished round=" << c.separating_round << "\n";
  for (const auto& cl : c.classes)
    if (cl[1] != cl[2]) std::cout << "class " << cl[0] << " g=" << cl[1] << " h=" << cl[2] << "\n";
  return kDistinguished;
}

int enumeration_check(const std::vector<Graph>& members, const Graph& g, const Graph& h) {
  for (const Graph& f : members) {
    Integer x = hom_count(f, g), y = hom_count(f, h);
    if (x != y) {
      std::cout << "enumeration: distinguished by\n" << format_graph(f) << "# hom " << x.get_str() << " vs "
                << y.get_str() << "\n";
      return kDistinguished;
    }
  }
  std::cout << "enumeration: equal over " << members.size() << " members\n";
  return kOk;
}

int cmd_indist(const std::string& family, int bound, int max_len, const std::string& gs, const std::string& hs) {
  Graph g = graph_from_spec(gs), h = graph_from_spec(hs);
  auto colon = family.find(':');
  std::string name = family.substr(0, colon);
  int param = colon == std::string::npos ? 0 : std::stoi(family.substr(colon + 1));

  if (name == "paths" || name == "trees" || name == "dary") {
    FamilySpec spec = FamilySpec::parse(family);
    GramResult r = gram_indistinguishable(spec, g, h);
    std::cout << "family=" << spec.name() << " dimension=" << r.dimension << "\n";
    int code = r.indistinguishable ? kOk : kDistinguished;
    if (r.indistinguishable) {
      std::cout << "indistinguishable\n";
    } else {
      std::cout << "distinguished\n";
      if (r.witness) {
        Graph w = underlying(*r.witness);
        std::cout << format_graph(w) << "# hom " << hom_count(w, g).get_str() << " vs " << hom_count(w, h).get_str()
                  << "\n";
      }
    }
    if (bound > 0 && enumeration_check(family_enumerate(spec, bound), g, h) != code)
      throw InternalError("closure verdict disagrees with enumeration");
    return code;
  }
  if (name == "pathwidth" || name == "treedepth") {
    LinearSystem sys = name == "pathwidth" ? build_pw(g, h, param) : build_td(g, h, param);
    Feasibility f = solve_rational(sys);
    std::cout << "family=" << family << (f.feasible ? " indistinguishable\n" : " distinguished\n");
    int code = f.feasible ? kOk : kDistinguished;
    if (bound > 0) {
      auto pred = name == "pathwidth" ? GraphPredicate([&](const Graph& x) { return pathwidth(x) <= param; })
                                      : GraphPredicate([&](const Graph& x) { return treedepth(x) <= param; });
      int e = enumeration_check(enumerate_graphs(bound, pred), g, h);
      if (f.feasible && e != kOk) throw InternalError("feasible system but enumeration separates");
    }
    return code;
  }
  if (name == "cyclewidth") {
    BasalFamily fam = basal_pw(param);
    WordsResult r = words_equivalent(basal_matrices(fam, g), basal_matrices(fam, h), EvalMode::tr, max_len);
    std::cout << "family=" << family << " dimension=" << r.dimension << "\n";
    if (r.equivalent) {
      if (r.bounded) {
        std::cout << "equivalent up to length " << max_len << "\n";
        return kBounded;
      }
      std::cout << "indistinguishable\n";
      return kOk;
    }
    Word w{FamilyKind::pw, param, r.failing};
    LabelledGraph closure = trace_closure(w);
    Graph c = underlying(closure);
    std::cout << "distinguished\n" << format_word(w) << "\n# trace " << r.value_g.get_str() << " vs "
              << r.value_h.get_str() << "\n" << format_graph(c) << "# hom " << hom_count(c, g).get_str() << " vs "
              << hom_count(c, h).get_str() << "\n";
    return kDistinguished;
  }
  throw Error("unknown family '" + family + "'");
}

int cmd_gen(int d, const std::string& prefix) {
  DegreePair p = generate_degree_pair(d);
  write_file(prefix + "_G.g", format_graph(p.g));
  write_file(prefix + "_H.g", format_graph(p.h));
  write_file(prefix + "_meta.txt", format_meta(p));
  std::cout << "wrote " << prefix << "_G.g " << prefix << "_H.g " << prefix << "_meta.txt ("
            << p.g.vertex_count() << " vertices, " << p.g.edge_count() << " edges each)\n";
  return kOk;
}

int cmd_enum(int n, const std::string& param, int max_width, bool connected, bool count_only) {
  GraphPredicate pred = [&](const Graph& g) {
    if (connected && !g.connected()) return false;
    if (max_width < 0) return true;
    if (param == "tw") return treewidth(g) <= max_width;
    if (param == "pw") return pathwidth(g) <= max_width;
    if (param == "td") return treedepth(g) <= max_width;
    throw Error("unknown width parameter '" + param + "'");
  };
  auto graphs = enumerate_graphs(n, pred);
  if (count_only) {
    std::cout << graphs.size() << "\n";
    return kOk;
  }
  for (std::size_t i = 0; i < graphs.size(); ++i) std::cout << "# graph " << i << "\n" << format_graph(graphs[i]);
  return kOk;
}

int cmd_report(const std::string& gs, const std::string& hs, int k_max, bool no_transport) {
  ReportOptions opt;
  opt.k_max = k_max;
  opt.transport = !no_transport;
  PairReport r = run_pair_report(gs + " vs " + hs, graph_from_spec(gs), graph_from_spec(hs), opt);
  std::cout << r.to_text();
  return r.violations.empty() ? kOk : kInternal;
}

int cmd_corpus(const std::string& file, int jobs) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read " + file);
  CorpusSummary s = run_corpus(in, jobs, &std::cout, std::filesystem::path(file).parent_path().string());
  std::size_t bad = 0;
  for (const PairReport& r : s.reports) {
    if (r.violations.empty()) continue;
    ++bad;
    std::cout << "--- " << r.id << "\n" << r.to_text();
  }
  std::cout << "pairs=" << s.reports.size() << " violations=" << bad << " consistent=" << (s.consistent ? "yes" : "no")
            << "\n";
  return s.consistent ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homlab: homomorphism indistinguishability toolkit.\n"
               "Desk-scale caps can be overridden with HOMLAB_CAP (e.g. HOMLAB_CAP=unlimited or\n"
               "HOMLAB_CAP=linsys_vertices=7,linsys_k=3), at your own runtime risk."};
  app.require_subcommand(1);
  bool force = false;
  app.add_flag("--force", force, "lift all desk-scale caps (at your own runtime risk)");

  std::string f, g, h, param = "tw", kind = "pw", system = "fiso", family, word, target, mode = "soe", dump,
                       witness_out, prefix, file;
  int k = 1, bound = 0, max_len = -1, d = 1, n = 4, max_width = -1, k_max = 2;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool list = false, nonneg = false, show = false, as_word = false, connected = false, count_only = false,
       no_transport = false;

  auto* hom = app.add_subcommand("hom", "count homomorphisms F -> G");
  hom->add_option("F", f)->required();
  hom->add_option("G", g)->required();

  auto* tensor = app.add_subcommand("tensor", "homomorphism tensor of a (bi)labelled graph file");
  tensor->add_option("F", f)->required();
  tensor->add_option("G", g)->required();

  auto* width = app.add_subcommand("width", "exact treewidth / pathwidth / treedepth");
  width->add_option("--param", param)->check(CLI::IsMember({"tw", "pw", "td"}));
  width->add_flag("--show", show, "print the decomposition");
  width->add_flag("--word", as_word, "print the compiled basal word (pw, td)");
  width->add_option("F", f)->required();

  auto* basal = app.add_subcommand("basal", "basal families");
  basal->add_option("--kind", kind)->check(CLI::IsMember({"pw", "wl", "td"}));
  basal->add_option("--k", k)->check(CLI::NonNegativeNumber);
  basal->add_flag("--list", list, "print members in graph file format");
  basal->add_option("--word", word, "evaluate a word line 'w <family> <letters...>'");
  basal->add_option("--graph", target, "target graph for --word");
  basal->add_option("--mode", mode)->check(CLI::IsMember({"soe", "tr"}));

  auto* check = app.add_subcommand("check", "decide feasibility of a linear system");
  check->add_option("--system", system)->check(CLI::IsMember({"fiso", "liso", "pw", "td"}));
  check->add_option("--k", k)->check(CLI::NonNegativeNumber);
  check->add_flag("--nonneg", nonneg);
  check->add_option("--dump", dump, "write the system to a file");
  check->add_option("--witness", witness_out, "write the witness to a file");
  check->add_option("G", g)->required();
  check->add_option("H", h)->required();

  auto* wl = app.add_subcommand("wl", "k-dimensional Weisfeiler-Leman");
  wl->add_option("--k", k)->check(CLI::PositiveNumber);
  wl->add_option("G", g)->required();
  wl->add_option("H", h)->required();

  auto* indist = app.add_subcommand("indist", "homomorphism indistinguishability over a family");
  indist->add_option("--family", family)->required();
  indist->add_option("--bound", bound, "also compare over enumerated members up to this size");
  indist->add_option("--max-len", max_len, "word length bound (cyclewidth)");
  indist->add_option("G", g)->required();
  indist->add_option("H", h)->required();

  auto* gen = app.add_subcommand("gen", "generators");
  auto* ptm = gen->add_subcommand("ptm-pair", "bounded-degree tree counterexample pair");
  gen->require_subcommand(1);
  ptm->add_option("--d", d)->check(CLI::PositiveNumber);
  ptm->add_option("--out-prefix", prefix)->required();

  auto* en = app.add_subcommand("enum", "graphs up to isomorphism");
  en->add_option("--n", n)->check(CLI::NonNegativeNumber);
  en->add_option("--param", param)->check(CLI::IsMember({"tw", "pw", "td"}));
  en->add_option("--max-width", max_width);
  en->add_flag("--connected", connected);
  en->add_flag("--count", count_only);

  auto* report = app.add_subcommand("report", "all decision procedures on one pair");
  report->add_option("--k-max", k_max)->check(CLI::PositiveNumber);
  report->add_flag("--no-transport", no_transport);
  report->add_option("G", g)->required();
  report->add_option("H", h)->required();

  auto* corpus = app.add_subcommand("corpus", "run a corpus file");
  corpus->add_option("file", file)->required();
  corpus->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (force) Caps::set(Caps::unlimited());
    if (*hom) return cmd_hom(f, g);
    if (*tensor) return cmd_tensor(f, g);
    if (*width) return cmd_width(param, f, show, as_word);
    if (*basal) return cmd_basal(kind, k, list, word, target, mode);
    if (*check) return cmd_check(system, k, nonneg, g, h, dump, witness_out);
    if (*wl) return cmd_wl(k, g, h);
    if (*indist) return cmd_indist(family, bound, max_len, g, h);
    if (*ptm) return cmd_gen(d, prefix);
    if (*en) return cmd_enum(n, param, max_width, connected, count_only);
    if (*report) return cmd_report(g, h, k_max, no_transport);
    if (*corpus) return cmd_corpus(file, jobs);
  } catch (const InternalError& e) {
    std::cerr << "internal consistency violation: " << e.what() << "\n";
    return kInternal;
  } catch (const CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << " (use --force or HOMLAB_CAP)\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
