#include "homlab/spectra.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace homlab {

std::string FamilySpec::name() const {
  switch (kind) {
    case Kind::paths: return "paths";
    case Kind::trees: return "trees";
    case Kind::dary: return "dary:" + std::to_string(d);
  }
  return "?";
}

FamilySpec FamilySpec::parse(const std::string& s) {
  if (s == "paths") return {Kind::paths, 1};
  if (s == "trees") return {Kind::trees, 1};
  if (s.rfind("dary:", 0) == 0) {
    int d = std::stoi(s.substr(5));
    if (d < 1) throw Error("dary family needs d >= 1");
    return {Kind::dary, d};
  }
  throw Error("unknown family '" + s + "'");
}

// ---------------------------------------------------------------------------
// Gram closure

namespace {

using Vec = std::vector<Integer>;

struct Recipe {
  enum class Op { one, adj, schur };
  Op op = Op::one;
  std::vector<int> parents;
};

class GramClosure {
public:
  GramClosure(const FamilySpec& spec, const Graph& g, const Graph& h) : spec_(spec), g_(g), h_(h) {}

  GramResult run() {
    GramResult res;
    int one = add_recipe({Recipe::Op::one, {}});
    queue_.push_back({Vec(g_.vertex_count(), 1), Vec(h_.vertex_count(), 1), one});
    while (!queue_.empty()) {
      Candidate c = std::move(queue_.front());
      queue_.pop_front();
      ++res.candidates;
      if (auto bad = examine(c)) {
        res.indistinguishable = false;
        res.witness = build(c.recipe);
        res.witness = glue(*res.witness, build(*bad));
        break;
      }
    }
    res.dimension = static_cast<int>(basis_.size());
    return res;
  }

private:
  struct Candidate {
    Vec g, h;
    int recipe;
  };
  struct Element {
    Vec g, h;
    int recipe;
  };

  static Integer dot(const Vec& a, const Vec& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  static Vec adjacency(const Graph& gr, const Vec& x) {
    Vec out(gr.vertex_count());
    for (int v = 0; v < gr.vertex_count(); ++v)
      for (int u : gr.neighbours(v)) out[v] += x[u];
    return out;
  }

  static Vec schur(const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
  }

  int add_recipe(Recipe r) {
    recipes_.push_back(std::move(r));
    return static_cast<int>(recipes_.size()) - 1;
  }

  LabelledGraph build(int id) const {
    const Recipe& r = recipes_[id];
    switch (r.op) {
      case Recipe::Op::one: return ones_graph(1);
      case Recipe::Op::adj: return apply(adjacency_graph(), build(r.parents[0]));
      case Recipe::Op::schur: {
        LabelledGraph out = build(r.parents[0]);
        for (std::size_t i = 1; i < r.parents.size(); ++i) out = glue(out, build(r.parents[i]));
        return out;
      }
    }
    throw InternalError("bad recipe");
  }

  // Returns the recipe to glue with on an inner-product mismatch.
  std::optional<int> examine(const Candidate& c) {
    std::size_t m = basis_.size();
    std::vector<Rational> proj(m);  // <y, q_j>
    for (std::size_t j = 0; j < m; ++j) {
      Integer ig = dot(c.g, basis_[j].g), ih = dot(c.h, basis_[j].h);
      if (ig != ih) return basis_[j].recipe;
      proj[j] = ig;
      for (std::size_t i = 0; i < j; ++i) proj[j] -= mu_[j][i] * proj[i];
    }
    Integer sg = dot(c.g, c.g), sh = dot(c.h, c.h);
    if (sg != sh) return c.recipe;
    Rational residual = sg;
    for (std::size_t j = 0; j < m; ++j) residual -= proj[j] * proj[j] / norm_[j];
    if (residual == 0) return std::nullopt;  // in the span, mirrored on the H side

    std::vector<Rational> mu(m);
    for (std::size_t j = 0; j < m; ++j) mu[j] = proj[j] / norm_[j];
    mu_.push_back(std::move(mu));
    norm_.push_back(residual);
    basis_.push_back({c.g, c.h, c.recipe});
    extend(static_cast<int>(m));
    return std::nullopt;
  }

  void push_adj(const Vec& g, const Vec& h, int parent) {
    queue_.push_back({adjacency(g_, g), adjacency(h_, h), add_recipe({Recipe::Op::adj, {parent}})});
  }

  void extend(int e) {
    const Element& el = basis_[e];
    switch (spec_.kind) {
      case FamilySpec::Kind::paths: push_adj(el.g, el.h, el.recipe); break;
      case FamilySpec::Kind::trees:
        push_adj(el.g, el.h, el.recipe);
        for (int i = 0; i <= e; ++i) {
          const Element& o = basis_[i];
          queue_.push_back({schur(el.g, o.g), schur(el.h, o.h),
                            add_recipe({Recipe::Op::schur, {el.recipe, o.recipe}})});
        }
        break;
      case FamilySpec::Kind::dary: {
        // multisets of size d from {0..e} that contain e
        std::vector<int> pick{e};
        std::function<void(int)> rec = [&](int max_index) {
          if (static_cast<int>(pick.size()) == spec_.d) {
            Vec g = basis_[pick[0]].g, h = basis_[pick[0]].h;
            std::vector<int> parents{basis_[pick[0]].recipe};
            for (std::size_t i = 1; i < pick.size(); ++i) {
              g = schur(g, basis_[pick[i]].g);
              h = schur(h, basis_[pick[i]].h);
              parents.push_back(basis_[pick[i]].recipe);
            }
            int s = parents.size() == 1 ? parents[0] : add_recipe({Recipe::Op::schur, parents});
            push_adj(g, h, s);
            return;
          }
          for (int i = 0; i <= max_index; ++i) {
            pick.push_back(i);
            rec(i);
            pick.pop_back();
          }
        };
        rec(e);
        break;
      }
    }
  }

  FamilySpec spec_;
  const Graph& g_;
  const Graph& h_;
  std::vector<Recipe> recipes_;
  std::deque<Candidate> queue_;
  std::vector<Element> basis_;
  std::vector<std::vector<Rational>> mu_;
  std::vector<Rational> norm_;
};

// AHU encoding of a tree rooted at r.
std::string ahu(const Graph& t, int r, int parent) {
  std::vector<std::string> kids;
  for (int u : t.neighbours(r))
    if (u != parent) kids.push_back(ahu(t, u, r));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

std::string tree_code(const Graph& t) {
  int n = t.vertex_count();
  if (n <= 1) return std::to_string(n);
  // centres: peel leaves
  std::vector<int> deg(n);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    deg[v] = t.degree(v);
    if (deg[v] <= 1) layer.push_back(v);
  }
  int left = n;
  while (left > 2) {
    left -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (int u : t.neighbours(v))
        if (--deg[u] == 1) next.push_back(u);
    layer = std::move(next);
  }
  std::string best;
  for (int c : layer) {
    std::string s = ahu(t, c, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

}  // namespace

GramResult gram_indistinguishable(const FamilySpec& spec, const Graph& g, const Graph& h) {
  return GramClosure(spec, g, h).run();
}

std::vector<Graph> family_enumerate(const FamilySpec& spec, int size_bound) {
  if (size_bound > Caps::get().family_size)
    throw CapError("family enumeration limited to " + std::to_string(Caps::get().family_size) + " vertices");
  std::vector<Graph> out;
  if (size_bound < 1) return out;
  if (spec.kind == FamilySpec::Kind::paths) {
    for (int n = 1; n <= size_bound; ++n) out.push_back(path_graph(n));
    return out;
  }
  int max_degree = spec.kind == FamilySpec::Kind::dary ? spec.d + 1 : size_bound;
  std::vector<Graph> layer{Graph(1)};
  for (int n = 1; n <= size_bound; ++n) {
    std::map<std::string, Graph> sorted;
    for (auto& t : layer) sorted.emplace(tree_code(t), std::move(t));
    for (auto& [code, t] : sorted) out.push_back(t);
    if (n == size_bound) break;
    std::map<std::string, Graph> next;
    for (const auto& [code, t] : sorted)
      for (int v = 0; v < n; ++v) {
        if (t.degree(v) >= max_degree) continue;
        std::vector<Edge> edges = t.edges();
        edges.emplace_back(v, n);
        Graph bigger(n + 1, edges);
        next.emplace(tree_code(bigger), bigger);
      }
    layer.clear();
    for (auto& [code, t] : next) layer.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word testers

MatrixFamily basal_matrices(const BasalFamily& fam, const Graph& g) {
  MatrixFamily out;
  for (const auto& m : fam.members) out.push_back(basal_tensor(m, fam, g));
  return out;
}

SparseTensor sparse_from_dense(const HomTensor& t) {
  if (t.rows() != t.cols()) throw Error("sparse_from_dense: tensor is not square");
  SparseTensor s;
  s.n = t.n;
  s.slots = t.arity_in;
  s.dim = t.rows();
  s.row_start.push_back(0);
  for (std::size_t r = 0; r < s.dim; ++r) {
    for (std::size_t c = 0; c < s.dim; ++c) {
      const Integer& v = t.at(r, c);
      if (v < 0 || !v.fits_uint_p()) throw Error("sparse_from_dense: entries must be small non-negative integers");
      for (unsigned long i = 0; i < v.get_ui(); ++i) s.cols.push_back(static_cast<std::uint32_t>(c));
    }
    s.row_start.push_back(s.cols.size());
  }
  return s;
}

namespace {

// Incrementally maintained reduced row echelon basis.
class SpanBasis {
public:
  // Returns true if x was independent (and adds it).
  bool add(const std::vector<Integer>& x) {
    std::map<std::size_t, Rational> v;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) v.emplace(i, x[i]);
    for (const auto& [p, row] : rows_) {
      auto it = v.find(p);
      if (it == v.end()) continue;
      Rational f = it->second;
      for (const auto& [i, c] : row) {
        Rational& e = v[i];
        e -= f * c;
        if (e == 0) v.erase(i);
      }
    }
    if (v.empty()) return false;
    std::size_t p = v.begin()->first;
    Rational inv = 1 / v.begin()->second;
    for (auto& [i, c] : v) c *= inv;
    for (auto& [q, row] : rows_) {
      auto it = row.find(p);
      if (it == row.end()) continue;
      Rational f = it->second;
      for (const auto& [i, c] : v) {
        Rational& e = row[i];
        e -= f * c;
        if (e == 0) row.erase(i);
      }
    }
    rows_.emplace(p, std::move(v));
    return true;
  }
  int dimension() const { return static_cast<int>(rows_.size()); }

private:
  std::map<std::size_t, std::map<std::size_t, Rational>> rows_;
};

struct WordState {
  std::vector<int> word;
  std::vector<Integer> g, h;  // vector (soe) or row-major matrix (tr)
};

std::vector<Integer> left_multiply(const SparseTensor& b, const std::vector<Integer>& x, bool matrix) {
  std::size_t d = b.dim;
  std::size_t width = matrix ? d : 1;
  std::vector<Integer> out(d * width);
  for (std::size_t r = 0; r < d; ++r)
    for (auto it = b.row_begin(r); it != b.row_end(r); ++it)
      for (std::size_t c = 0; c < width; ++c) out[r * width + c] += x[*it * width + c];
  return out;
}

Integer functional(const std::vector<Integer>& x, std::size_t d, bool matrix) {
  Integer s = 0;
  if (matrix) {
    for (std::size_t i = 0; i < d; ++i) s += x[i * d + i];
  } else {
    for (const auto& v : x) s += v;
  }
  return s;
}

}  // namespace

WordsResult words_equivalent(const MatrixFamily& fam_g, const MatrixFamily& fam_h, EvalMode mode, int max_len) {
  if (fam_g.size() != fam_h.size()) throw Error("words_equivalent: families differ in size");
  if (fam_g.empty()) throw Error("words_equivalent: empty family");
  std::size_t dg = fam_g[0].dim, dh = fam_h[0].dim;
  for (std::size_t i = 0; i < fam_g.size(); ++i)
    if (fam_g[i].dim != dg || fam_h[i].dim != dh) throw Error("words_equivalent: mixed matrix sizes");
  bool matrix = mode == EvalMode::tr;

  WordsResult res;
  SpanBasis basis;
  WordState start;
  if (matrix) {
    start.g.assign(dg * dg, 0);
    start.h.assign(dh * dh, 0);
    for (std::size_t i = 0; i < dg; ++i) start.g[i * dg + i] = 1;
    for (std::size_t i = 0; i < dh; ++i) start.h[i * dh + i] = 1;
  } else {
    start.g.assign(dg, 1);
    start.h.assign(dh, 1);
  }
  auto joint = [](const WordState& s) {
    std::vector<Integer> j = s.g;
    j.insert(j.end(), s.h.begin(), s.h.end());
    return j;
  };

  std::deque<WordState> queue{start};
  while (!queue.empty()) {
    WordState s = std::move(queue.front());
    queue.pop_front();
    if (!basis.add(joint(s))) continue;
    Integer fg = functional(s.g, dg, matrix), fh = functional(s.h, dh, matrix);
    if (fg != fh) {
      res.equivalent = false;
      res.failing = s.word;
      res.value_g = fg;
      res.value_h = fh;
      break;
    }
    if (max_len >= 0 && static_cast<int>(s.word.size()) >= max_len) {
      res.bounded = true;
      continue;
    }
    for (std::size_t l = 0; l < fam_g.size(); ++l) {
      WordState t;
      t.word.push_back(static_cast<int>(l));
      t.word.insert(t.word.end(), s.word.begin(), s.word.end());
      t.g = left_multiply(fam_g[l], s.g, matrix);
      t.h = left_multiply(fam_h[l], s.h, matrix);
      queue.push_back(std::move(t));
    }
  }
  if (!res.equivalent) res.bounded = false;
  res.dimension = basis.dimension();
  return res;
}

}  // namespace homlab
