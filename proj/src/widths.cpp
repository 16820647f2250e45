#include "homlab/widths.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "homlab/basal.hpp"

namespace homlab {

namespace {

using Mask = std::uint32_t;

void check_cap(const Graph& g) {
  if (g.vertex_count() > Caps::get().width_vertices)
    throw CapError("width computation limited to " + std::to_string(Caps::get().width_vertices) +
                   " vertices");
  if (g.vertex_count() > 30) throw CapError("width computation limited to 30 vertices");
}

std::vector<Mask> neighbour_masks(const Graph& g) {
  std::vector<Mask> nb(g.vertex_count(), 0);
  for (auto [u, v] : g.edges()) {
    nb[u] |= Mask{1} << v;
    nb[v] |= Mask{1} << u;
  }
  return nb;
}

// Vertices outside S + v reachable from v through S.
Mask reach_out(const std::vector<Mask>& nb, Mask s, int v) {
  Mask seen = Mask{1} << v, frontier = seen, out = 0;
  while (frontier) {
    int u = std::countr_zero(frontier);
    frontier &= frontier - 1;
    Mask next = nb[u] & ~seen;
    seen |= next;
    out |= next & ~s;
    frontier |= next & s;
  }
  return out;
}

std::vector<int> members(Mask m) {
  std::vector<int> v;
  while (m) {
    v.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return v;
}

std::vector<int> elimination_order(const Graph& g, int* width) {
  int n = g.vertex_count();
  auto nb = neighbour_masks(g);
  std::size_t states = std::size_t{1} << n;
  std::vector<int> tw(states, 0);
  std::vector<signed char> choice(states, -1);
  tw[0] = -1;
  for (Mask s = 1; s < states; ++s) {
    int best = n + 1;
    for (Mask rest = s; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      Mask prev = s & ~(Mask{1} << v);
      int val = std::max(tw[prev], std::popcount(reach_out(nb, prev, v)));
      if (val < best) {
        best = val;
        choice[s] = static_cast<signed char>(v);
      }
    }
    tw[s] = best;
  }
  Mask full = static_cast<Mask>(states - 1);
  if (width) *width = tw[full];
  std::vector<int> order;
  for (Mask s = full; s; s &= ~(Mask{1} << choice[s])) order.push_back(choice[s]);
  std::reverse(order.begin(), order.end());
  return order;
}

std::vector<int> vertex_layout(const Graph& g, int* width) {
  int n = g.vertex_count();
  auto nb = neighbour_masks(g);
  std::size_t states = std::size_t{1} << n;
  std::vector<int> f(states, 0);
  std::vector<signed char> choice(states, -1);
  for (Mask s = 1; s < states; ++s) {
    int boundary = 0;
    for (Mask rest = s; rest; rest &= rest - 1)
      if (nb[std::countr_zero(rest)] & ~s) ++boundary;
    int best = n + 1;
    for (Mask rest = s; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      int val = f[s & ~(Mask{1} << v)];
      if (val < best) {
        best = val;
        choice[s] = static_cast<signed char>(v);
      }
    }
    f[s] = std::max(best, boundary);
  }
  Mask full = static_cast<Mask>(states - 1);
  if (width) *width = n == 0 ? -1 : f[full];
  std::vector<int> layout;
  for (Mask s = full; s; s &= ~(Mask{1} << choice[s])) layout.push_back(choice[s]);
  std::reverse(layout.begin(), layout.end());
  return layout;
}

struct TreedepthSolver {
  std::vector<Mask> nb;
  std::vector<signed char> memo;
  std::vector<signed char> choice;

  explicit TreedepthSolver(const Graph& g)
      : nb(neighbour_masks(g)), memo(std::size_t{1} << g.vertex_count(), -1),
        choice(std::size_t{1} << g.vertex_count(), -1) {}

  std::vector<Mask> components(Mask s) const {
    std::vector<Mask> out;
    while (s) {
      Mask comp = s & (~s + 1), frontier = comp;
      while (frontier) {
        int u = std::countr_zero(frontier);
        frontier &= frontier - 1;
        Mask next = nb[u] & s & ~comp;
        comp |= next;
        frontier |= next;
      }
      out.push_back(comp);
      s &= ~comp;
    }
    return out;
  }

  int solve(Mask s) {
    if (!s) return 0;
    if (memo[s] >= 0) return memo[s];
    auto comps = components(s);
    int best = 0;
    if (comps.size() > 1) {
      for (Mask c : comps) best = std::max(best, solve(c));
    } else {
      best = 1 << 20;
      for (Mask rest = s; rest; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        int val = 1 + solve(s & ~(Mask{1} << v));
        if (val < best) {
          best = val;
          choice[s] = static_cast<signed char>(v);
        }
      }
    }
    memo[s] = static_cast<signed char>(best);
    return best;
  }

  void build(Mask s, int parent, std::vector<int>& out) {
    for (Mask c : components(s)) {
      solve(c);
      int v = choice[c];
      out[v] = parent;
      build(c & ~(Mask{1} << v), v, out);
    }
  }
};

Graph path_skeleton(int len) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < len; ++i) e.emplace_back(i, i + 1);
  return Graph(len, e);
}

}  // namespace

int Decomposition::width() const {
  std::size_t m = 0;
  for (const auto& b : bags) m = std::max(m, b.size());
  return static_cast<int>(m) - 1;
}

int treewidth(const Graph& g) {
  check_cap(g);
  int w;
  elimination_order(g, &w);
  return w;
}

int pathwidth(const Graph& g) {
  check_cap(g);
  int w;
  vertex_layout(g, &w);
  return w;
}

int treedepth(const Graph& g) {
  check_cap(g);
  TreedepthSolver s(g);
  return s.solve(static_cast<Mask>((std::size_t{1} << g.vertex_count()) - 1));
}

Decomposition optimal_tree_decomposition(const Graph& g) {
  check_cap(g);
  int n = g.vertex_count();
  std::vector<int> order = elimination_order(g, nullptr);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  auto fill = neighbour_masks(g);
  Decomposition d;
  d.shape = Decomposition::Shape::tree;
  std::vector<Edge> tree_edges;
  std::vector<int> roots;
  Mask alive = static_cast<Mask>((std::size_t{1} << n) - 1);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    Mask higher = fill[v] & alive & ~(Mask{1} << v);
    std::vector<int> bag{v};
    for (int u : members(higher)) bag.push_back(u);
    std::sort(bag.begin(), bag.end());
    d.bags.push_back(bag);
    for (int a : members(higher)) fill[a] |= higher & ~(Mask{1} << a);
    alive &= ~(Mask{1} << v);
    if (higher) {
      int first = -1;
      for (int u : members(higher))
        if (first < 0 || pos[u] < pos[first]) first = u;
      tree_edges.emplace_back(i, pos[first]);
    } else {
      roots.push_back(i);
    }
  }
  for (std::size_t r = 0; r + 1 < roots.size(); ++r) tree_edges.emplace_back(roots[r], roots[r + 1]);
  d.skeleton = Graph(n, tree_edges);
  return d;
}

Decomposition optimal_path_decomposition(const Graph& g) {
  check_cap(g);
  int n = g.vertex_count();
  std::vector<int> layout = vertex_layout(g, nullptr);
  auto nb = neighbour_masks(g);
  Decomposition d;
  d.shape = Decomposition::Shape::path;
  Mask prefix = 0;
  for (int i = 0; i < n; ++i) {
    Mask bag = Mask{1} << layout[i];
    for (int u : members(prefix))
      if (nb[u] & ~prefix) bag |= Mask{1} << u;
    d.bags.push_back(members(bag));
    prefix |= Mask{1} << layout[i];
  }
  d.skeleton = path_skeleton(n);
  return d;
}

EliminationForest optimal_elimination_forest(const Graph& g) {
  check_cap(g);
  int n = g.vertex_count();
  TreedepthSolver s(g);
  Mask full = static_cast<Mask>((std::size_t{1} << n) - 1);
  EliminationForest f;
  f.depth = s.solve(full);
  f.parent.assign(n, -1);
  s.build(full, -1, f.parent);
  return f;
}

DecompositionCheck validate_decomposition(const Graph& g, const Decomposition& d) {
  int n = g.vertex_count();
  int t = d.skeleton.vertex_count();
  if (static_cast<int>(d.bags.size()) != t) return {false, 4, "bag count differs from skeleton size"};
  std::vector<std::vector<int>> holders(n);
  for (int b = 0; b < t; ++b)
    for (int v : d.bags[b]) {
      if (v < 0 || v >= n) return {false, 1, "bag " + std::to_string(b) + " holds unknown vertex"};
      holders[v].push_back(b);
    }
  for (int v = 0; v < n; ++v)
    if (holders[v].empty()) return {false, 1, "vertex " + std::to_string(v) + " in no bag"};
  for (auto [u, v] : g.edges()) {
    bool found = false;
    for (int b : holders[u])
      if (std::find(d.bags[b].begin(), d.bags[b].end(), v) != d.bags[b].end()) found = true;
    if (!found)
      return {false, 2, "edge " + std::to_string(u) + "-" + std::to_string(v) + " in no bag"};
  }
  for (int v = 0; v < n; ++v) {
    Graph sub = d.skeleton.induced(holders[v]);
    if (!sub.connected())
      return {false, 3, "bags holding vertex " + std::to_string(v) + " are disconnected"};
  }
  const Graph& s = d.skeleton;
  bool shape_ok = true;
  switch (d.shape) {
    case Decomposition::Shape::tree: shape_ok = t == 0 || is_tree(s); break;
    case Decomposition::Shape::path:
      shape_ok = t == 0 || is_tree(s);
      for (int b = 0; b < t; ++b) shape_ok = shape_ok && s.degree(b) <= 2;
      break;
    case Decomposition::Shape::cycle:
      shape_ok = t >= 3 && s.connected() && s.edge_count() == t;
      for (int b = 0; b < t; ++b) shape_ok = shape_ok && s.degree(b) == 2;
      break;
  }
  if (!shape_ok) return {false, 4, "skeleton does not have the declared shape"};
  return {};
}

bool validate_forest(const Graph& g, const EliminationForest& f) {
  int n = g.vertex_count();
  if (static_cast<int>(f.parent.size()) != n) return false;
  std::vector<int> depth(n, 0);
  int maxd = 0;
  for (int v = 0; v < n; ++v) {
    int d = 0;
    for (int u = v; u >= 0; u = f.parent[u]) {
      if (++d > n) return false;  // cycle in parent map
    }
    depth[v] = d;
    maxd = std::max(maxd, d);
  }
  auto ancestor = [&](int a, int b) {
    for (int u = f.parent[b]; u >= 0; u = f.parent[u])
      if (u == a) return true;
    return false;
  };
  for (auto [u, v] : g.edges())
    if (!ancestor(u, v) && !ancestor(v, u)) return false;
  return maxd == f.depth;
}

// ---------------------------------------------------------------------------
// word compilers

namespace {

std::string slot_name(int x) { return std::to_string(x + 1); }
std::string adj_name(int i, int j) {
  if (i > j) std::swap(i, j);
  return "A^{" + slot_name(i) + "," + slot_name(j) + "}";
}

}  // namespace

Word compile_pathwidth_word(const Graph& f, int k) {
  if (f.vertex_count() == 0) throw Error("compile_pathwidth_word: empty graph");
  int pw = pathwidth(f);
  if (pw > k) throw Error("compile_pathwidth_word: pathwidth " + std::to_string(pw) + " exceeds " + std::to_string(k));
  BasalFamily fam = basal_pw(k);
  int s = k + 1;
  Decomposition d = optimal_path_decomposition(f);
  Word w{FamilyKind::pw, k, {}};
  std::vector<int> slot(s, -1);  // vertex held by each slot
  std::vector<char> emitted_edge;
  std::vector<Edge> edges = f.edges();
  emitted_edge.assign(edges.size(), 0);

  auto slot_of = [&](int v) {
    for (int p = 0; p < s; ++p)
      if (slot[p] == v) return p;
    return -1;
  };
  auto emit_edges = [&](const std::vector<int>& bag) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (emitted_edge[e]) continue;
      auto [u, v] = edges[e];
      if (std::find(bag.begin(), bag.end(), u) == bag.end() || std::find(bag.begin(), bag.end(), v) == bag.end())
        continue;
      w.letters.push_back(fam.index_of(adj_name(slot_of(u), slot_of(v))));
      emitted_edge[e] = 1;
    }
  };

  const auto& first = d.bags[0];
  int m = static_cast<int>(first.size());
  for (int p = 0; p < s; ++p) slot[p] = first[std::min(p, m - 1)];
  for (int p = m; p < s; ++p)
    w.letters.push_back(fam.index_of("I^{" + slot_name(m - 1) + "," + slot_name(p) + "}"));
  emit_edges(first);

  for (std::size_t b = 1; b < d.bags.size(); ++b) {
    const auto& bag = d.bags[b];
    for (int x : bag) {
      if (slot_of(x) >= 0) continue;
      int free_slot = -1;
      for (int p = 0; p < s && free_slot < 0; ++p) {
        bool stale = std::find(bag.begin(), bag.end(), slot[p]) == bag.end();
        bool duplicate = false;
        for (int q = 0; q < s; ++q)
          if (q != p && slot[q] == slot[p]) duplicate = true;
        if (stale || duplicate) free_slot = p;
      }
      if (free_slot < 0) throw InternalError("compile_pathwidth_word: no free slot");
      w.letters.push_back(fam.index_of("F^{" + slot_name(free_slot) + "}"));
      slot[free_slot] = x;
    }
    emit_edges(bag);
  }
  if (w.letters.empty()) w.letters.push_back(fam.index_of("I"));
  return w;
}

Word compile_treedepth_word(const Graph& f, int k) {
  if (f.vertex_count() == 0) throw Error("compile_treedepth_word: empty graph");
  EliminationForest forest = optimal_elimination_forest(f);
  if (forest.depth > k)
    throw Error("compile_treedepth_word: treedepth " + std::to_string(forest.depth) + " exceeds " + std::to_string(k));
  BasalFamily fam = basal_td(k);
  int n = f.vertex_count();
  std::vector<std::vector<int>> children(n);
  std::vector<int> roots;
  for (int v = 0; v < n; ++v) (forest.parent[v] < 0 ? roots : children[forest.parent[v]]).push_back(v);

  // root-to-leaf paths in DFS order
  std::vector<std::vector<int>> paths;
  std::vector<int> stack_path;
  auto dfs = [&](auto&& self, int v) -> void {
    stack_path.push_back(v);
    if (children[v].empty()) paths.push_back(stack_path);
    for (int c : children[v]) self(self, c);
    stack_path.pop_back();
  };
  for (int r : roots) dfs(dfs, r);

  std::vector<Edge> edges = f.edges();
  std::vector<char> emitted(edges.size(), 0);
  // blocks in application order (first block acts on 1^k first)
  std::vector<std::vector<int>> blocks;
  std::vector<int> joins;  // joins[i] sits between block i and block i+1
  for (std::size_t pi = 0; pi < paths.size(); ++pi) {
    const auto& p = paths[pi];
    int m = static_cast<int>(p.size());
    std::vector<int> block;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (emitted[e]) continue;
      auto iu = std::find(p.begin(), p.end(), edges[e].first);
      auto iv = std::find(p.begin(), p.end(), edges[e].second);
      if (iu == p.end() || iv == p.end()) continue;
      block.push_back(fam.index_of(adj_name(static_cast<int>(iu - p.begin()), static_cast<int>(iv - p.begin()))));
      emitted[e] = 1;
    }
    for (int l = m; l < k; ++l) block.push_back(fam.index_of("I^{" + std::to_string(l) + "}"));
    blocks.push_back(block);
    if (pi + 1 < paths.size()) {
      const auto& q = paths[pi + 1];
      int c = 0;
      while (c < m && c < static_cast<int>(q.size()) && p[c] == q[c]) ++c;
      joins.push_back(fam.index_of("J^{" + std::to_string(c) + "}"));
    }
  }
  Word w{FamilyKind::td, k, {}};
  for (int bi = static_cast<int>(blocks.size()) - 1; bi >= 0; --bi) {
    w.letters.insert(w.letters.end(), blocks[bi].begin(), blocks[bi].end());
    if (bi > 0) w.letters.push_back(joins[bi - 1]);
  }
  if (w.letters.empty()) w.letters.push_back(fam.index_of("I"));
  return w;
}

LabelledGraph treedepth_word_graph(const Word& w) {
  BasalFamily fam = basal_family(w.kind, w.k);
  return apply(word_graph(w), ones_graph(fam.slots));
}

LabelledGraph trace_closure(const Word& w) { return identify_ends(word_graph(w)); }

CyclewidthSample cyclewidth_sample(int k, int length, std::uint64_t seed) {
  if (length < 1) throw Error("cyclewidth_sample: length must be positive");
  BasalFamily fam = basal_pw(k);
  std::mt19937_64 rng(seed);
  Word w{FamilyKind::pw, k, {}};
  for (int i = 0; i < length; ++i)
    w.letters.push_back(static_cast<int>(rng() % fam.members.size()));
  LabelledGraph closure = trace_closure(w);
  return {closure.graph, w, closure};
}

}  // namespace homlab
