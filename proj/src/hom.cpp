#include "homlab/hom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "homlab/basal.hpp"

namespace homlab {

HomTensor::HomTensor(int in, int out, int target_size) : arity_in(in), arity_out(out), n(target_size) {
  entries.assign(checked_entry_count(target_size, in + out), 0);
}

std::size_t HomTensor::rows() const { return static_cast<std::size_t>(ipow(n, arity_in)); }
std::size_t HomTensor::cols() const { return static_cast<std::size_t>(ipow(n, arity_out)); }

std::size_t checked_entry_count(int n, int arity) {
  std::uint64_t count;
  try {
    count = ipow(static_cast<std::uint64_t>(n), static_cast<unsigned>(arity));
  } catch (const CapError&) {
    throw CapError("tensor too large");
  }
  if (count > Caps::get().tensor_entries)
    throw CapError("tensor with " + std::to_string(count) + " entries exceeds cap " +
                   std::to_string(Caps::get().tensor_entries));
  return static_cast<std::size_t>(count);
}

std::size_t tuple_index(const std::vector<int>& t, int n) {
  std::size_t idx = 0;
  for (int x : t) idx = idx * n + x;
  return idx;
}

std::vector<int> index_tuple(std::size_t idx, int n, int arity) {
  std::vector<int> t(arity);
  for (int i = arity - 1; i >= 0; --i) {
    t[i] = static_cast<int>(idx % n);
    idx /= n;
  }
  return t;
}

// ---------------------------------------------------------------------------
// homomorphism counting

namespace {

// Counts extensions of a partial map V(F) -> V(G). The set of pinned
// vertices is fixed at construction; free vertices are split into
// components of F - pinned, each counted by backtracking.
class ExtensionCounter {
public:
  ExtensionCounter(const Graph& f, const Graph& g, const std::vector<char>& pinned)
      : f_(f), g_(g) {
    int n = f.vertex_count();
    std::vector<char> seen(pinned.begin(), pinned.end());
    for (int s = 0; s < n; ++s) {
      if (seen[s]) continue;
      // collect the component of s in F - pinned, starting BFS at a vertex
      // attached to a pinned vertex if possible
      std::vector<int> comp{s};
      seen[s] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (int w : f.neighbours(comp[i]))
          if (!seen[w]) {
            seen[w] = 1;
            comp.push_back(w);
          }
      auto attached = std::find_if(comp.begin(), comp.end(), [&](int v) {
        const auto& nb = f.neighbours(v);
        return std::any_of(nb.begin(), nb.end(), [&](int w) { return pinned[w] != 0; });
      });
      int root = attached == comp.end() ? comp[0] : *attached;
      Component c;
      std::vector<char> placed(n, 0);
      for (int v = 0; v < n; ++v) placed[v] = pinned[v];
      std::vector<int> order{root};
      std::vector<char> inorder(n, 0);
      inorder[root] = 1;
      for (std::size_t i = 0; i < order.size(); ++i)
        for (int w : f.neighbours(order[i]))
          if (!pinned[w] && !inorder[w]) {
            inorder[w] = 1;
            order.push_back(w);
          }
      for (int v : order) {
        Step st;
        st.vertex = v;
        for (int w : f.neighbours(v))
          if (placed[w]) st.anchors.push_back(w);
        placed[v] = 1;
        c.steps.push_back(std::move(st));
      }
      double bound = static_cast<double>(c.steps.size()) * std::log2(std::max(2, g.vertex_count()));
      c.small = bound < 62.0;
      comps_.push_back(std::move(c));
    }
  }

  // `map` holds images of pinned vertices; entries of free vertices are
  // used as scratch space.
  Integer count(std::vector<int>& map) const {
    Integer total = 1;
    for (const auto& c : comps_) {
      if (c.small) {
        std::uint64_t acc = 0;
        run(c, 0, map, acc);
        total *= Integer(static_cast<unsigned long>(acc));
      } else {
        Integer acc = 0;
        run(c, 0, map, acc);
        total *= acc;
      }
      if (total == 0) break;
    }
    return total;
  }

private:
  struct Step {
    int vertex;
    std::vector<int> anchors;
  };
  struct Component {
    std::vector<Step> steps;
    bool small = true;
  };

  bool fits(const Step& st, int x, const std::vector<int>& map) const {
    for (std::size_t i = 1; i < st.anchors.size(); ++i)
      if (!g_.adjacent(map[st.anchors[i]], x)) return false;
    return true;
  }

  template <typename Acc>
  void run(const Component& c, std::size_t pos, std::vector<int>& map, Acc& acc) const {
    const Step& st = c.steps[pos];
    bool last = pos + 1 == c.steps.size();
    auto visit = [&](int x) {
      if (!fits(st, x, map)) return;
      if (last) {
        acc += 1u;
      } else {
        map[st.vertex] = x;
        run(c, pos + 1, map, acc);
      }
    };
    if (st.anchors.empty()) {
      if (last) {
        acc += static_cast<unsigned long>(g_.vertex_count());
        return;
      }
      for (int x = 0; x < g_.vertex_count(); ++x) visit(x);
    } else {
      for (int x : g_.neighbours(map[st.anchors[0]])) visit(x);
    }
  }

  const Graph& f_;
  const Graph& g_;
  std::vector<Component> comps_;
};

// Enumerates all consistent images of the distinct label vertices and adds
// the extension counts into the tensor entries addressed by the label tuple.
HomTensor labelled_tensor(const Graph& f, const std::vector<int>& labels, int in_arity,
                          const Graph& g) {
  int out_arity = static_cast<int>(labels.size()) - in_arity;
  HomTensor t(in_arity, out_arity, g.vertex_count());
  if (f.has_loop()) return t;
  std::vector<int> distinct;
  std::vector<char> pinned(f.vertex_count(), 0);
  for (int l : labels)
    if (!pinned[l]) {
      pinned[l] = 1;
      distinct.push_back(l);
    }
  ExtensionCounter counter(f, g, pinned);
  std::vector<int> map(f.vertex_count(), -1);
  int n = g.vertex_count();
  std::size_t cols = t.cols();
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == distinct.size()) {
      Integer c = counter.count(map);
      if (c == 0) return;
      std::size_t row = 0, col = 0;
      for (int i = 0; i < in_arity; ++i) row = row * n + map[labels[i]];
      for (int i = in_arity; i < static_cast<int>(labels.size()); ++i) col = col * n + map[labels[i]];
      t.entries[row * cols + col] += c;
      return;
    }
    int v = distinct[pos];
    for (int x = 0; x < n; ++x) {
      bool ok = true;
      for (std::size_t p = 0; p < pos && ok; ++p) {
        int u = distinct[p];
        if (f.adjacent(u, v) && !g.adjacent(map[u], x)) ok = false;
      }
      if (!ok) continue;
      map[v] = x;
      self(self, pos + 1);
    }
    map[v] = -1;
  };
  rec(rec, 0);
  return t;
}

}  // namespace

namespace {

// Forests: product over components of sum_x t_root(x), where t_v(x) is the
// product over children c of the sum of t_c over neighbours of x.
Integer forest_hom_count(const Graph& f, const Graph& g) {
  int n = g.vertex_count();
  Integer total = 1;
  std::vector<char> seen(f.vertex_count(), 0);
  for (int root = 0; root < f.vertex_count(); ++root) {
    if (seen[root]) continue;
    std::vector<int> order{root}, parent(f.vertex_count(), -1);
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int u : f.neighbours(order[i]))
        if (!seen[u]) {
          seen[u] = 1;
          parent[u] = order[i];
          order.push_back(u);
        }
    std::vector<std::vector<Integer>> t(f.vertex_count());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      std::vector<Integer> tv(n, 1);
      for (int c : f.neighbours(v)) {
        if (parent[c] != v) continue;
        for (int x = 0; x < n; ++x) {
          Integer s = 0;
          for (int y : g.neighbours(x)) s += t[c][y];
          tv[x] *= s;
        }
        t[c].clear();
      }
      t[v] = std::move(tv);
    }
    Integer sum = 0;
    for (const Integer& x : t[root]) sum += x;
    total *= sum;
  }
  return total;
}

}  // namespace

Integer hom_count(const Graph& f, const Graph& g) {
  if (f.has_loop()) return 0;
  if (is_forest(f) && g.vertex_count() > 16) return forest_hom_count(f, g);
  std::vector<char> pinned(f.vertex_count(), 0);
  ExtensionCounter counter(f, g, pinned);
  std::vector<int> map(f.vertex_count(), -1);
  return counter.count(map);
}

HomTensor hom_tensor(const LabelledGraph& f, const Graph& g) {
  return labelled_tensor(f.graph, f.labels, f.arity(), g);
}

HomTensor hom_tensor(const BilabelledGraph& f, const Graph& g) {
  std::vector<int> labels = f.in;
  labels.insert(labels.end(), f.out.begin(), f.out.end());
  return labelled_tensor(f.graph, labels, f.arity_in(), g);
}

// ---------------------------------------------------------------------------
// tensor algebra

Integer soe(const HomTensor& t) {
  Integer s = 0;
  for (const auto& e : t.entries) s += e;
  return s;
}

Integer trace(const HomTensor& t) {
  if (t.arity_in != t.arity_out) throw Error("trace: arity mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < t.rows(); ++i) s += t.at(i, i);
  return s;
}

HomTensor matmul(const HomTensor& a, const HomTensor& b) {
  if (a.arity_out != b.arity_in || a.n != b.n) throw Error("matmul: shape mismatch");
  HomTensor c(a.arity_in, b.arity_out, a.n);
  std::size_t rows = a.rows(), inner = a.cols(), cols = b.cols();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      const Integer& x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        const Integer& y = b.at(k, j);
        if (y != 0) c.at(i, j) += x * y;
      }
    }
  return c;
}

HomTensor schur(const HomTensor& a, const HomTensor& b) {
  if (a.arity_in != b.arity_in || a.arity_out != b.arity_out || a.n != b.n)
    throw Error("schur: shape mismatch");
  HomTensor c = a;
  for (std::size_t i = 0; i < c.entries.size(); ++i) c.entries[i] *= b.entries[i];
  return c;
}

HomTensor matvec(const HomTensor& a, const HomTensor& v) {
  if (v.arity_out != 0 || a.arity_out != v.arity_in || a.n != v.n) throw Error("matvec: shape mismatch");
  HomTensor c(a.arity_in, 0, a.n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a.at(i, k) != 0) c.entries[i] += a.at(i, k) * v.entries[k];
  return c;
}

HomTensor transpose(const HomTensor& a) {
  HomTensor c(a.arity_out, a.arity_in, a.n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(j, i) = a.at(i, j);
  return c;
}

HomTensor identity_tensor(int n, int arity) {
  HomTensor c(arity, arity, n);
  for (std::size_t i = 0; i < c.rows(); ++i) c.at(i, i) = 1;
  return c;
}

HomTensor ones_tensor(int n, int arity) {
  HomTensor c(arity, 0, n);
  for (auto& e : c.entries) e = 1;
  return c;
}

std::string format_tensor(const HomTensor& t) {
  std::ostringstream os;
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c) {
      const Integer& e = t.at(r, c);
      if (e == 0) continue;
      os << "t";
      for (int x : index_tuple(r, t.n, t.arity_in)) os << " " << x;
      os << " |";
      for (int x : index_tuple(c, t.n, t.arity_out)) os << " " << x;
      os << " " << e.get_str() << "\n";
    }
  return os.str();
}

// ---------------------------------------------------------------------------
// words

std::string family_name(FamilyKind kind, int k) {
  const char* name = kind == FamilyKind::pw ? "pw" : kind == FamilyKind::wl ? "wl" : "td";
  return std::string(name) + ":" + std::to_string(k);
}

std::string format_word(const Word& w) {
  std::string s = "w " + family_name(w.kind, w.k);
  for (int l : w.letters) s += " " + std::to_string(l);
  return s;
}

Word parse_word(const std::string& line) {
  std::istringstream ss(line);
  std::string tag, fam;
  if (!(ss >> tag >> fam) || tag != "w") throw Error("malformed word line");
  auto colon = fam.find(':');
  if (colon == std::string::npos) throw Error("malformed family '" + fam + "'");
  Word w;
  std::string kind = fam.substr(0, colon);
  if (kind == "pw") w.kind = FamilyKind::pw;
  else if (kind == "wl") w.kind = FamilyKind::wl;
  else if (kind == "td") w.kind = FamilyKind::td;
  else throw Error("unknown family '" + kind + "'");
  w.k = std::stoi(fam.substr(colon + 1));
  int letter;
  while (ss >> letter) w.letters.push_back(letter);
  return w;
}

Integer evaluate_word(const Word& w, const Graph& g, EvalMode mode) {
  if (w.letters.empty()) throw Error("evaluate_word: empty word");
  BasalFamily fam = basal_family(w.kind, w.k);
  std::vector<SparseTensor> tensors;
  tensors.reserve(fam.members.size());
  for (const auto& m : fam.members) tensors.push_back(basal_tensor(m, fam, g));
  for (int l : w.letters)
    if (l < 0 || l >= static_cast<int>(fam.members.size()))
      throw Error("evaluate_word: letter " + std::to_string(l) + " not in family " + family_name(w.kind, w.k));
  std::size_t dim = tensors[0].dim;
  if (mode == EvalMode::soe) {
    std::vector<Integer> v(dim, 1);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = tensors[*it].apply(v);
    Integer s = 0;
    for (const auto& x : v) s += x;
    return s;
  }
  Integer tr = 0;
  for (std::size_t z = 0; z < dim; ++z) {
    std::vector<Integer> v(dim, 0);
    v[z] = 1;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = tensors[*it].apply(v);
    tr += v[z];
  }
  return tr;
}

}  // namespace homlab
