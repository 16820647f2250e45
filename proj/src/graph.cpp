#include "homlab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

namespace homlab {

namespace {

constexpr int kDenseLimit = 6000;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // keep the smallest index as representative
  }
};

// Collapses the union-find classes of a combined vertex set. Classes are
// renumbered by their smallest member, which keeps the first operand's
// vertex order stable.
struct Quotient {
  int n = 0;
  std::vector<int> map;
};

Quotient make_quotient(UnionFind& uf, int total) {
  Quotient q;
  q.map.assign(total, -1);
  std::vector<int> rep_id(total, -1);
  for (int v = 0; v < total; ++v) {
    int r = uf.find(v);
    if (rep_id[r] < 0) rep_id[r] = q.n++;
    q.map[v] = rep_id[r];
  }
  return q;
}

Graph quotient_graph(const Quotient& q, const std::vector<Edge>& edges, bool loop) {
  std::vector<Edge> mapped;
  mapped.reserve(edges.size());
  for (auto [u, v] : edges) mapped.emplace_back(q.map[u], q.map[v]);
  return Graph::normalized(q.n, mapped, loop);
}

std::vector<int> map_labels(const Quotient& q, const std::vector<int>& labels, int offset = 0) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) out.push_back(q.map[l + offset]);
  return out;
}

// Edges of a followed by edges of b shifted by a's vertex count.
std::vector<Edge> combined_edges(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  int off = a.vertex_count();
  for (auto [u, v] : b.edges()) edges.emplace_back(u + off, v + off);
  return edges;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

int pair_index(int i, int j) {  // i < j, colex order
  return j * (j - 1) / 2 + i;
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int n, const std::vector<Edge>& edges) : n_(n) {
  if (n < 0) throw Error("negative vertex count");
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error("edge endpoint out of range");
    if (u == v) throw Error("self-loop");
    Edge e = std::minmax(u, v);
    if (!seen.insert(e).second) throw Error("duplicate edge");
    edges_.push_back(e);
  }
  build();
}

Graph Graph::normalized(int n, const std::vector<Edge>& edges, bool had_loop) {
  Graph g;
  g.n_ = n;
  g.loop_ = had_loop;
  g.edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error("edge endpoint out of range");
    if (u == v) {
      g.loop_ = true;
      continue;
    }
    g.edges_.push_back(std::minmax(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
  g.build();
  return g;
}

void Graph::build() {
  std::sort(edges_.begin(), edges_.end());
  adj_.assign(n_, {});
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  matrix_.clear();
  if (n_ <= kDenseLimit) {
    matrix_.assign(static_cast<std::size_t>(n_) * n_, 0);
    for (auto [u, v] : edges_) {
      matrix_[static_cast<std::size_t>(u) * n_ + v] = 1;
      matrix_[static_cast<std::size_t>(v) * n_ + u] = 1;
    }
  }
}

bool Graph::adjacent(int u, int v) const {
  if (!matrix_.empty()) return matrix_[static_cast<std::size_t>(u) * n_ + v] != 0;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::relabel(const std::vector<int>& perm) const {
  std::vector<Edge> edges;
  for (auto [u, v] : edges_) edges.emplace_back(perm[u], perm[v]);
  return Graph::normalized(n_, edges, loop_);
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<int> pos(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : edges_)
    if (pos[u] >= 0 && pos[v] >= 0) edges.emplace_back(pos[u], pos[v]);
  return Graph::normalized(static_cast<int>(vertices.size()), edges);
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n_; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int w : adj_[members[i]])
        if (comp[w] < 0) {
          comp[w] = comp[s];
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool Graph::connected() const { return components().size() <= 1; }

// ---------------------------------------------------------------------------
// standard graphs

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph cycle_graph(int n) {
  require(n >= 3, "cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph star_graph(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  return Graph::normalized(a.vertex_count() + b.vertex_count(), combined_edges(a, b),
                           a.has_loop() || b.has_loop());
}

LabelledGraph ones_graph(int k) {
  LabelledGraph g{Graph(k), {}};
  for (int i = 0; i < k; ++i) g.labels.push_back(i);
  return g;
}

BilabelledGraph identity_graph(int k) {
  BilabelledGraph g{Graph(k), {}, {}};
  for (int i = 0; i < k; ++i) {
    g.in.push_back(i);
    g.out.push_back(i);
  }
  return g;
}

BilabelledGraph adjacency_graph() { return {Graph(2, {{0, 1}}), {0}, {1}}; }

// ---------------------------------------------------------------------------
// algebra

LabelledGraph glue(const LabelledGraph& a, const LabelledGraph& b) {
  require(a.arity() == b.arity(), "glue: label arity mismatch");
  int na = a.graph.vertex_count(), total = na + b.graph.vertex_count();
  UnionFind uf(total);
  for (int i = 0; i < a.arity(); ++i) uf.unite(a.labels[i], na + b.labels[i]);
  Quotient q = make_quotient(uf, total);
  return {quotient_graph(q, combined_edges(a.graph, b.graph), a.graph.has_loop() || b.graph.has_loop()),
          map_labels(q, a.labels)};
}

BilabelledGraph concat(const BilabelledGraph& a, const BilabelledGraph& b) {
  require(a.arity_out() == b.arity_in(), "concat: inner arity mismatch");
  int na = a.graph.vertex_count(), total = na + b.graph.vertex_count();
  UnionFind uf(total);
  for (int i = 0; i < a.arity_out(); ++i) uf.unite(a.out[i], na + b.in[i]);
  Quotient q = make_quotient(uf, total);
  return {quotient_graph(q, combined_edges(a.graph, b.graph), a.graph.has_loop() || b.graph.has_loop()),
          map_labels(q, a.in), map_labels(q, b.out, na)};
}

LabelledGraph apply(const BilabelledGraph& a, const LabelledGraph& v) {
  require(a.arity_out() == v.arity(), "apply: arity mismatch");
  int na = a.graph.vertex_count(), total = na + v.graph.vertex_count();
  UnionFind uf(total);
  for (int i = 0; i < v.arity(); ++i) uf.unite(a.out[i], na + v.labels[i]);
  Quotient q = make_quotient(uf, total);
  return {quotient_graph(q, combined_edges(a.graph, v.graph), a.graph.has_loop() || v.graph.has_loop()),
          map_labels(q, a.in)};
}

BilabelledGraph parallel(const BilabelledGraph& a, const BilabelledGraph& b) {
  require(a.arity_in() == b.arity_in() && a.arity_out() == b.arity_out(),
          "parallel: arity mismatch");
  int na = a.graph.vertex_count(), total = na + b.graph.vertex_count();
  UnionFind uf(total);
  for (int i = 0; i < a.arity_in(); ++i) uf.unite(a.in[i], na + b.in[i]);
  for (int i = 0; i < a.arity_out(); ++i) uf.unite(a.out[i], na + b.out[i]);
  Quotient q = make_quotient(uf, total);
  return {quotient_graph(q, combined_edges(a.graph, b.graph), a.graph.has_loop() || b.graph.has_loop()),
          map_labels(q, a.in), map_labels(q, a.out)};
}

BilabelledGraph reverse(const BilabelledGraph& f) { return {f.graph, f.out, f.in}; }

LabelledGraph identify_ends(const BilabelledGraph& f) {
  require(f.arity_in() == f.arity_out(), "identify_ends: arity mismatch");
  int n = f.graph.vertex_count();
  UnionFind uf(n);
  for (int i = 0; i < f.arity_in(); ++i) uf.unite(f.in[i], f.out[i]);
  Quotient q = make_quotient(uf, n);
  return {quotient_graph(q, f.graph.edges(), f.graph.has_loop()), map_labels(q, f.in)};
}

Graph underlying(const LabelledGraph& f) { return f.graph; }
Graph underlying(const BilabelledGraph& f) { return f.graph; }

// ---------------------------------------------------------------------------
// io

ParseError::ParseError(int line, const std::string& msg)
    : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

AnyGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0, n = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::optional<std::vector<int>> labels, in_labels, out_labels;

  auto read_ints = [&](std::istringstream& ss) {
    std::vector<int> v;
    std::string tok;
    while (ss >> tok) {
      std::size_t pos = 0;
      long x;
      try {
        x = std::stol(tok, &pos);
      } catch (const std::exception&) {
        throw ParseError(lineno, "expected integer, got '" + tok + "'");
      }
      if (pos != tok.size()) throw ParseError(lineno, "expected integer, got '" + tok + "'");
      if (x < 0 || x >= n) throw ParseError(lineno, "vertex index " + tok + " out of range");
      v.push_back(static_cast<int>(x));
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string kw;
    if (!(ss >> kw) || kw[0] == '#') continue;
    if (kw == "n") {
      if (n >= 0) throw ParseError(lineno, "duplicate 'n' line");
      long count;
      std::string extra;
      if (!(ss >> count) || count < 0 || (ss >> extra)) throw ParseError(lineno, "malformed 'n' line");
      n = static_cast<int>(count);
      continue;
    }
    if (n < 0) throw ParseError(lineno, "'" + kw + "' before 'n' line");
    if (kw == "e") {
      auto v = read_ints(ss);
      if (v.size() != 2) throw ParseError(lineno, "edge line needs two endpoints");
      if (v[0] == v[1]) throw ParseError(lineno, "self-loop");
      Edge e = std::minmax(v[0], v[1]);
      if (!seen.insert(e).second) throw ParseError(lineno, "duplicate edge");
      edges.push_back(e);
    } else if (kw == "l") {
      if (labels || in_labels || out_labels) throw ParseError(lineno, "conflicting label lines");
      labels = read_ints(ss);
    } else if (kw == "in") {
      if (labels || in_labels) throw ParseError(lineno, "conflicting label lines");
      in_labels = read_ints(ss);
    } else if (kw == "out") {
      if (labels || out_labels) throw ParseError(lineno, "conflicting label lines");
      out_labels = read_ints(ss);
    } else {
      throw ParseError(lineno, "unknown line type '" + kw + "'");
    }
  }
  if (n < 0) throw ParseError(lineno, "missing 'n' line");
  if (in_labels.has_value() != out_labels.has_value())
    throw ParseError(lineno, "'in' and 'out' must appear together");
  Graph g(n, edges);
  if (labels) return LabelledGraph{g, *labels};
  if (in_labels) return BilabelledGraph{g, *in_labels, *out_labels};
  return g;
}

AnyGraph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_graph(ss.str());
}

Graph read_plain_graph_file(const std::string& path) {
  AnyGraph g = read_graph_file(path);
  if (auto* p = std::get_if<Graph>(&g)) return *p;
  throw Error(path + ": expected an unlabelled graph");
}

namespace {

std::string format_body(const Graph& g) {
  std::ostringstream os;
  if (g.has_loop()) os << "# collapsed self-loop: no homomorphisms into loopless graphs\n";
  os << "n " << g.vertex_count() << "\n";
  for (auto [u, v] : g.edges()) os << "e " << u << " " << v << "\n";
  return os.str();
}

std::string join_line(const char* kw, const std::vector<int>& v) {
  std::string s = kw;
  for (int x : v) s += " " + std::to_string(x);
  return s + "\n";
}

}  // namespace

std::string format_graph(const Graph& g) { return format_body(g); }
std::string format_graph(const LabelledGraph& g) { return format_body(g.graph) + join_line("l", g.labels); }
std::string format_graph(const BilabelledGraph& g) {
  return format_body(g.graph) + join_line("in", g.in) + join_line("out", g.out);
}

// ---------------------------------------------------------------------------
// isomorphism

namespace {

struct IsoSearch {
  const Graph& g;
  const Graph& h;
  std::vector<int> order, map, used;

  bool extend(std::size_t pos) {
    if (pos == order.size()) return true;
    int v = order[pos];
    for (int w = 0; w < h.vertex_count(); ++w) {
      if (used[w] || h.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (std::size_t p = 0; p < pos && ok; ++p) {
        int u = order[p];
        ok = g.adjacent(u, v) == h.adjacent(map[u], w);
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      if (extend(pos + 1)) return true;
      used[w] = 0;
    }
    map[v] = -1;
    return false;
  }
};

}  // namespace

bool are_isomorphic(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  if (g.has_loop() != h.has_loop()) return false;
  std::vector<int> dg, dh;
  for (int v = 0; v < g.vertex_count(); ++v) dg.push_back(g.degree(v));
  for (int v = 0; v < h.vertex_count(); ++v) dh.push_back(h.degree(v));
  std::sort(dg.begin(), dg.end());
  std::sort(dh.begin(), dh.end());
  if (dg != dh) return false;
  // BFS order so that each vertex sees mapped neighbours early
  IsoSearch s{g, h, {}, std::vector<int>(g.vertex_count(), -1), std::vector<int>(h.vertex_count(), 0)};
  std::vector<char> seen(g.vertex_count(), 0);
  for (int r = 0; r < g.vertex_count(); ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    std::size_t start = s.order.size();
    s.order.push_back(r);
    for (std::size_t i = start; i < s.order.size(); ++i)
      for (int w : g.neighbours(s.order[i]))
        if (!seen[w]) {
          seen[w] = 1;
          s.order.push_back(w);
        }
  }
  return s.extend(0);
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

// Colour refinement with canonical (signature-sorted) colour names.
std::vector<int> refined_colours(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> col(n, 0);
  int classes = n ? 1 : 0;
  while (true) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> s{col[v]};
      std::vector<int> nb;
      for (int w : g.neighbours(v)) nb.push_back(col[w]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v] = {std::move(s), v};
    }
    std::map<std::vector<int>, int> ids;
    for (auto& [s, v] : sig) ids.emplace(s, 0);
    int next = 0;
    for (auto& [s, id] : ids) id = next++;
    for (int v = 0; v < n; ++v) col[v] = ids[sig[v].first];
    if (next == classes) break;
    classes = next;
  }
  return col;
}

struct CanonSearch {
  const Graph& g;
  int n;
  int bits;
  std::vector<int> cell_of_pos;       // required colour at each position
  std::vector<std::vector<int>> cell;  // vertices per colour
  std::vector<int> placed;            // vertex at position
  std::vector<char> used;
  std::uint64_t best = ~std::uint64_t{0};
  bool have_best = false;

  // value contributed by pairs among positions < p, as a prefix of `bits` bits
  void dfs(int p, std::uint64_t value) {
    if (p > 1 && have_best) {
      int prefix_bits = p * (p - 1) / 2;
      std::uint64_t mask = prefix_bits >= bits ? ~std::uint64_t{0}
                                               : ~((std::uint64_t{1} << (bits - prefix_bits)) - 1);
      if ((value & mask) > (best & mask)) return;
    }
    if (p == n) {
      if (!have_best || value < best) {
        best = value;
        have_best = true;
      }
      return;
    }
    for (int v : cell[cell_of_pos[p]]) {
      if (used[v]) continue;
      std::uint64_t nv = value;
      for (int q = 0; q < p; ++q)
        if (g.adjacent(placed[q], v)) nv |= std::uint64_t{1} << (bits - 1 - pair_index(q, p));
      used[v] = 1;
      placed[p] = v;
      dfs(p + 1, nv);
      used[v] = 0;
    }
  }
};

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  int n = g.vertex_count();
  require(n <= 11, "canonical_code supports at most 11 vertices");
  if (n <= 1) return 0;
  std::vector<int> col = refined_colours(g);
  int ncol = *std::max_element(col.begin(), col.end()) + 1;
  CanonSearch s{g, n, n * (n - 1) / 2, {}, std::vector<std::vector<int>>(ncol), std::vector<int>(n),
                std::vector<char>(n, 0)};
  for (int v = 0; v < n; ++v) s.cell[col[v]].push_back(v);
  for (int c = 0; c < ncol; ++c)
    for (std::size_t i = 0; i < s.cell[c].size(); ++i) s.cell_of_pos.push_back(c);
  s.dfs(0, 0);
  return s.best;
}

Graph from_code(int n, std::uint64_t code) {
  std::vector<Edge> edges;
  int bits = n * (n - 1) / 2;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (code >> (bits - 1 - pair_index(i, j)) & 1) edges.emplace_back(i, j);
  return Graph(n, edges);
}

std::vector<Graph> enumerate_graphs(int n_max, const GraphPredicate& pred, bool include_empty) {
  if (n_max > Caps::get().enum_vertices)
    throw CapError("enumerate_graphs: n_max " + std::to_string(n_max) + " exceeds cap " +
                   std::to_string(Caps::get().enum_vertices));
  std::vector<Graph> out;
  if (include_empty && (!pred || pred(Graph(0)))) out.emplace_back(0);
  std::set<std::uint64_t> level;
  if (n_max >= 1) level.insert(0);
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      std::set<std::uint64_t> next;
      for (std::uint64_t code : level) {
        Graph base = from_code(n - 1, code);
        for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
          std::vector<Edge> edges = base.edges();
          for (int i = 0; i < n - 1; ++i)
            if (mask >> i & 1) edges.emplace_back(i, n - 1);
          next.insert(canonical_code(Graph(n, edges)));
        }
      }
      level = std::move(next);
    }
    for (std::uint64_t code : level) {
      Graph g = from_code(n, code);
      if (!pred || pred(g)) out.push_back(std::move(g));
    }
  }
  return out;
}

bool is_forest(const Graph& g) {
  return g.edge_count() + static_cast<int>(g.components().size()) == g.vertex_count();
}

bool is_tree(const Graph& g) {
  return g.vertex_count() >= 1 && g.connected() && g.edge_count() == g.vertex_count() - 1;
}

}  // namespace homlab
