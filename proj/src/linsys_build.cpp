#include <algorithm>
#include <sstream>

#include "homlab/hom.hpp"
#include "homlab/linsys.hpp"

namespace homlab {

std::string VarKey::str() const {
  std::ostringstream os;
  if (kind == Kind::partial_map) {
    os << "{";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << "(" << w[i] << "," << v[i] << ")";
    os << "}";
    return os.str();
  }
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << "|";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

const char* row_tag_name(RowTag t) {
  switch (t) {
    case RowTag::row_sum: return "row_sum";
    case RowTag::col_sum: return "col_sum";
    case RowTag::commute: return "commute";
    case RowTag::continuity_g: return "continuity_g";
    case RowTag::continuity_h: return "continuity_h";
    case RowTag::unit: return "unit";
  }
  return "?";
}

int LinearSystem::add_var(VarKey key) {
  int id = static_cast<int>(vars.size());
  index_.emplace(key, id);
  vars.push_back(std::move(key));
  nonneg.push_back(0);
  return id;
}

void LinearSystem::add_row(std::vector<std::pair<int, Rational>> terms, Rational rhs, RowTag tag) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, Rational>> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().first == t.first) merged.back().second += t.second;
    else merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& t) { return t.second == 0; }),
               merged.end());
  if (merged.empty() && rhs == 0) return;  // 0 = 0
  rows.push_back({std::move(merged), std::move(rhs), tag});
}

std::optional<int> LinearSystem::find(const VarKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string LinearSystem::dump() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < vars.size(); ++i)
    os << "var " << i << " " << vars[i].str() << (nonneg[i] ? " nonneg" : "") << "\n";
  for (const auto& r : rows) {
    os << "row " << rational_str(r.rhs);
    for (const auto& [v, c] : r.terms) os << " " << v << ":" << rational_str(c);
    os << "\n";
  }
  return os.str();
}

LinearSystem with_nonneg(LinearSystem sys) {
  std::fill(sys.nonneg.begin(), sys.nonneg.end(), 1);
  return sys;
}

std::string format_witness(const LinearSystem& sys, const std::vector<Rational>& x) {
  std::ostringstream os;
  for (std::size_t i = 0; i < sys.vars.size(); ++i) os << "X " << sys.vars[i].str() << " " << rational_str(x[i]) << "\n";
  return os.str();
}

bool satisfies(const LinearSystem& sys, const std::vector<Rational>& x, bool check_nonneg) {
  if (x.size() != sys.vars.size()) return false;
  if (check_nonneg)
    for (std::size_t i = 0; i < x.size(); ++i)
      if (sys.nonneg[i] && x[i] < 0) return false;
  for (const auto& r : sys.rows) {
    Rational s = 0;
    for (const auto& [v, c] : r.terms) s += c * x[v];
    if (s != r.rhs) return false;
  }
  return true;
}

bool certificate_valid(const LinearSystem& sys, const std::vector<std::pair<int, Rational>>& cert) {
  if (cert.empty()) return false;
  std::map<int, Rational> combo;
  Rational rhs = 0;
  for (const auto& [r, y] : cert) {
    if (r < 0 || r >= static_cast<int>(sys.rows.size())) return false;
    for (const auto& [v, c] : sys.rows[r].terms) combo[v] += y * c;
    rhs += y * sys.rows[r].rhs;
  }
  for (const auto& [v, c] : combo)
    if (c != 0) return false;
  return rhs != 0;
}

// ---------------------------------------------------------------------------

namespace {

VarKey matrix_key(std::vector<int> w, std::vector<int> v) {
  return {VarKey::Kind::matrix_entry, std::move(w), std::move(v)};
}

void check_desk(const Graph& g, const Graph& h, int k) {
  const Caps& caps = Caps::get();
  if (std::max(g.vertex_count(), h.vertex_count()) > caps.linsys_vertices)
    throw CapError("linear systems limited to " + std::to_string(caps.linsys_vertices) + " vertices");
  if (k > caps.linsys_k) throw CapError("linear systems limited to k <= " + std::to_string(caps.linsys_k));
}

void add_stochastic(LinearSystem& sys, std::size_t nh, std::size_t ng) {
  for (std::size_t w = 0; w < nh; ++w) {
    std::vector<std::pair<int, Rational>> t;
    for (std::size_t v = 0; v < ng; ++v) t.emplace_back(static_cast<int>(w * ng + v), 1);
    sys.add_row(std::move(t), 1, RowTag::row_sum);
  }
  for (std::size_t v = 0; v < ng; ++v) {
    std::vector<std::pair<int, Rational>> t;
    for (std::size_t w = 0; w < nh; ++w) t.emplace_back(static_cast<int>(w * ng + v), 1);
    sys.add_row(std::move(t), 1, RowTag::col_sum);
  }
}

}  // namespace

LinearSystem build_fiso(const Graph& g, const Graph& h) {
  check_desk(g, h, 0);
  int ng = g.vertex_count(), nh = h.vertex_count();
  LinearSystem sys;
  for (int w = 0; w < nh; ++w)
    for (int v = 0; v < ng; ++v) sys.add_var(matrix_key({w}, {v}));
  add_stochastic(sys, nh, ng);
  for (int w = 0; w < nh; ++w)
    for (int v = 0; v < ng; ++v) {
      std::vector<std::pair<int, Rational>> t;
      for (int y : g.neighbours(v)) t.emplace_back(w * ng + y, 1);
      for (int z : h.neighbours(w)) t.emplace_back(z * ng + v, -1);
      sys.add_row(std::move(t), 0, RowTag::commute);
    }
  return sys;
}

LinearSystem build_commutation(const Graph& g, const Graph& h, const BasalFamily& fam) {
  int s = fam.slots;
  std::size_t ng = checked_entry_count(g.vertex_count(), s);
  std::size_t nh = checked_entry_count(h.vertex_count(), s);
  checked_entry_count(std::max(g.vertex_count(), h.vertex_count()), 2 * s);
  LinearSystem sys;
  for (std::size_t w = 0; w < nh; ++w) {
    auto wt = index_tuple(w, h.vertex_count(), s);
    for (std::size_t v = 0; v < ng; ++v) sys.add_var(matrix_key(wt, index_tuple(v, g.vertex_count(), s)));
  }
  add_stochastic(sys, nh, ng);
  std::vector<char> fixed(nh * ng, 0);
  for (const auto& m : fam.members) {
    if (m.type == MemberType::identity) continue;
    SparseTensor tg = basal_tensor(m, fam, g), th = basal_tensor(m, fam, h);
    if (tg.diagonal() && th.diagonal()) {
      // (d_G(v) - d_H(w)) X(w,v) = 0
      for (std::size_t w = 0; w < nh; ++w)
        for (std::size_t v = 0; v < ng; ++v) {
          int c = static_cast<int>(tg.row_size(v)) - static_cast<int>(th.row_size(w));
          std::size_t id = w * ng + v;
          if (c == 0 || fixed[id]) continue;
          fixed[id] = 1;
          sys.add_row({{static_cast<int>(id), c}}, 0, RowTag::commute);
        }
      continue;
    }
    // members are symmetric, so column v of B_G equals row v
    for (std::size_t w = 0; w < nh; ++w)
      for (std::size_t v = 0; v < ng; ++v) {
        std::vector<std::pair<int, Rational>> t;
        for (auto it = tg.row_begin(v); it != tg.row_end(v); ++it) t.emplace_back(static_cast<int>(w * ng + *it), 1);
        for (auto it = th.row_begin(w); it != th.row_end(w); ++it) t.emplace_back(static_cast<int>(*it * ng + v), -1);
        sys.add_row(std::move(t), 0, RowTag::commute);
      }
  }
  return sys;
}

LinearSystem build_pw(const Graph& g, const Graph& h, int k) {
  check_desk(g, h, k);
  return build_commutation(g, h, basal_pw(k));
}

LinearSystem build_tdb(const Graph& g, const Graph& h, int k) {
  check_desk(g, h, k - 1);
  return build_commutation(g, h, basal_td(k));
}

// ---------------------------------------------------------------------------
// L_iso

namespace {

struct PartialMapEnumerator {
  const Graph& g;
  const Graph& h;
  int max_size;
  std::vector<int> w, v;
  std::vector<VarKey> out;

  bool compatible(int nw, int nv) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if ((w[i] == nw) != (v[i] == nv)) return false;
      if (w[i] == nw) return false;  // pair already present
      if (h.adjacent(w[i], nw) != g.adjacent(v[i], nv)) return false;
    }
    return true;
  }

  void run(int start) {
    out.push_back({VarKey::Kind::partial_map, w, v});
    if (static_cast<int>(w.size()) == max_size) return;
    int ng = g.vertex_count(), total = h.vertex_count() * ng;
    for (int p = start; p < total; ++p) {
      int nw = p / ng, nv = p % ng;
      if (!compatible(nw, nv)) continue;
      w.push_back(nw);
      v.push_back(nv);
      run(p + 1);
      w.pop_back();
      v.pop_back();
    }
  }
};

Integer binomial(long n, long r) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return b;
}

// Inserts (nw, nv) into a sorted pair set.
VarKey with_pair(const VarKey& key, int nw, int nv) {
  VarKey out{VarKey::Kind::partial_map, {}, {}};
  bool placed = false;
  for (std::size_t i = 0; i <= key.w.size(); ++i) {
    if (!placed && (i == key.w.size() || std::make_pair(nw, nv) <= std::make_pair(key.w[i], key.v[i]))) {
      placed = true;
      if (i < key.w.size() && key.w[i] == nw && key.v[i] == nv) {
        // already present
      } else {
        out.w.push_back(nw);
        out.v.push_back(nv);
      }
    }
    if (i < key.w.size()) {
      out.w.push_back(key.w[i]);
      out.v.push_back(key.v[i]);
    }
  }
  return out;
}

}  // namespace

LinearSystem build_liso(const Graph& g, const Graph& h, int k) {
  check_desk(g, h, k);
  if (k < 1) throw Error("build_liso: k must be at least 1");
  PartialMapEnumerator en{g, h, k + 1, {}, {}, {}};
  en.run(0);
  std::sort(en.out.begin(), en.out.end());
  LinearSystem sys;
  for (auto& key : en.out) sys.add_var(key);
  Integer all = 0;
  for (int j = 0; j <= k + 1; ++j) all += binomial(static_cast<long>(g.vertex_count()) * h.vertex_count(), j);
  sys.eliminated = static_cast<std::size_t>(Integer(all - static_cast<long>(sys.vars.size())).get_ui());

  int n = static_cast<int>(sys.vars.size());
  for (int id = 0; id < n; ++id) {
    const VarKey key = sys.vars[id];
    if (static_cast<int>(key.w.size()) > k) continue;
    for (int w = 0; w < h.vertex_count(); ++w) {
      std::vector<std::pair<int, Rational>> t{{id, -1}};
      for (int v = 0; v < g.vertex_count(); ++v)
        if (auto ext = sys.find(with_pair(key, w, v))) t.emplace_back(*ext, 1);
      sys.add_row(std::move(t), 0, RowTag::continuity_h);
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      std::vector<std::pair<int, Rational>> t{{id, -1}};
      for (int w = 0; w < h.vertex_count(); ++w)
        if (auto ext = sys.find(with_pair(key, w, v))) t.emplace_back(*ext, 1);
      sys.add_row(std::move(t), 0, RowTag::continuity_g);
    }
  }
  sys.add_row({{*sys.find({VarKey::Kind::partial_map, {}, {}}), 1}}, 1, RowTag::unit);
  return sys;
}

// ---------------------------------------------------------------------------
// TD^k

namespace {

bool pseudo_iso(const Graph& g, const Graph& h, const std::vector<int>& w, const std::vector<int>& v) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if ((w[i] == w[i + 1]) != (v[i] == v[i + 1])) return false;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (h.adjacent(w[i], w[j]) != g.adjacent(v[i], v[j])) return false;
  return true;
}

}  // namespace

LinearSystem build_td(const Graph& g, const Graph& h, int k) {
  check_desk(g, h, k - 1);
  if (k < 1) throw Error("build_td: k must be at least 1");
  int ng = g.vertex_count(), nh = h.vertex_count();
  checked_entry_count(std::max(ng, nh), 2 * k);
  LinearSystem sys;
  std::size_t total = 0;
  for (int l = 0; l <= k; ++l) {
    std::size_t cg = ipow(ng, l), ch = ipow(nh, l);
    total += cg * ch;
    for (std::size_t iw = 0; iw < ch; ++iw) {
      auto w = index_tuple(iw, nh, l);
      for (std::size_t iv = 0; iv < cg; ++iv) {
        auto v = index_tuple(iv, ng, l);
        if (pseudo_iso(g, h, w, v)) sys.add_var({VarKey::Kind::tuple_level, w, v});
      }
    }
  }
  sys.eliminated = total - sys.vars.size();
  int n = static_cast<int>(sys.vars.size());
  for (int id = 0; id < n; ++id) {
    const VarKey key = sys.vars[id];
    if (static_cast<int>(key.w.size()) >= k) continue;
    for (int w = 0; w < nh; ++w) {
      std::vector<std::pair<int, Rational>> t{{id, -1}};
      VarKey ext = key;
      ext.w.push_back(w);
      ext.v.push_back(0);
      for (int v = 0; v < ng; ++v) {
        ext.v.back() = v;
        if (auto e = sys.find(ext)) t.emplace_back(*e, 1);
      }
      sys.add_row(std::move(t), 0, RowTag::continuity_h);
    }
    for (int v = 0; v < ng; ++v) {
      std::vector<std::pair<int, Rational>> t{{id, -1}};
      VarKey ext = key;
      ext.w.push_back(0);
      ext.v.push_back(v);
      for (int w = 0; w < nh; ++w) {
        ext.w.back() = w;
        if (auto e = sys.find(ext)) t.emplace_back(*e, 1);
      }
      sys.add_row(std::move(t), 0, RowTag::continuity_g);
    }
  }
  sys.add_row({{*sys.find({VarKey::Kind::tuple_level, {}, {}}), 1}}, 1, RowTag::unit);
  return sys;
}

}  // namespace homlab
