#include "homlab/basal.hpp"

#include <algorithm>

namespace homlab {

namespace {

std::string idx(int x) { return std::to_string(x + 1); }

std::vector<int> iota_vec(int k) {
  std::vector<int> v(k);
  for (int i = 0; i < k; ++i) v[i] = i;
  return v;
}

BasalMember identity_member(int s) { return {"I", MemberType::identity, 0, 0, identity_graph(s)}; }

BasalMember adjacency_member(int s, int i, int j) {
  auto t = iota_vec(s);
  return {"A^{" + idx(i) + "," + idx(j) + "}", MemberType::adjacency, i, j, {Graph(s, {{i, j}}), t, t}};
}

// Position j carries vertex i; vertex j is deleted.
BasalMember identification_member(int s, int i, int j) {
  std::vector<int> renum(s);
  for (int v = 0, next = 0; v < s; ++v) renum[v] = v == j ? -1 : next++;
  std::vector<int> t(s);
  for (int p = 0; p < s; ++p) t[p] = renum[p == j ? i : p];
  return {"I^{" + idx(i) + "," + idx(j) + "}", MemberType::identification, i, j, {Graph(s - 1), t, t}};
}

BasalMember forgetting_member(int s, int i) {
  auto in = iota_vec(s), out = in;
  out[i] = s;
  return {"F^{" + idx(i) + "}", MemberType::forgetting, i, 0, {Graph(s + 1), in, out}};
}

BasalMember connecting_member(int s, int i) {
  auto in = iota_vec(s), out = in;
  out[i] = s;
  return {"C^{" + idx(i) + "}", MemberType::connecting, i, 0, {Graph(s + 1, {{i, s}}), in, out}};
}

// Keeps the first l positions, refreshes the rest.
BasalMember join_member(int s, int l) {
  auto in = iota_vec(s), out = in;
  for (int p = l; p < s; ++p) out[p] = s + (p - l);
  return {"J^{" + std::to_string(l) + "}", MemberType::join, l, 0, {Graph(2 * s - l), in, out}};
}

// 1-based level l: positions l and l+1 carry vertex l (0-based l-1).
BasalMember level_ident_member(int s, int l) {
  BasalMember m = identification_member(s, l - 1, l);
  m.name = "I^{" + std::to_string(l) + "}";
  m.type = MemberType::level_ident;
  m.i = l;
  return m;
}

void finish(BasalFamily& fam) {
  // every member is symmetric up to relabelling, so reversal fixes each index
  fam.reversal_map.resize(fam.members.size());
  for (std::size_t i = 0; i < fam.members.size(); ++i) fam.reversal_map[i] = static_cast<int>(i);
}

}  // namespace

int BasalFamily::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].name == name) return static_cast<int>(i);
  throw Error("no member " + name + " in family " + family_name(kind, k));
}

BasalFamily basal_pw(int k) {
  if (k < 0) throw Error("basal_pw: k must be non-negative");
  BasalFamily fam{FamilyKind::pw, k, k + 1, {}, {}};
  int s = k + 1;
  fam.members.push_back(identity_member(s));
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) fam.members.push_back(adjacency_member(s, i, j));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if (i != j) fam.members.push_back(identification_member(s, i, j));
  for (int i = 0; i < s; ++i) fam.members.push_back(forgetting_member(s, i));
  finish(fam);
  return fam;
}

BasalFamily basal_wl(int k) {
  if (k < 1) throw Error("basal_wl: k must be at least 1");
  BasalFamily fam{FamilyKind::wl, k, k, {}, {}};
  fam.members.push_back(identity_member(k));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) fam.members.push_back(adjacency_member(k, i, j));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) fam.members.push_back(identification_member(k, i, j));
  for (int i = 0; i < k; ++i) fam.members.push_back(connecting_member(k, i));
  for (int i = 0; i < k; ++i) fam.members.push_back(forgetting_member(k, i));
  finish(fam);
  return fam;
}

BasalFamily basal_td(int k) {
  if (k < 1) throw Error("basal_td: k must be at least 1");
  BasalFamily fam{FamilyKind::td, k, k, {}, {}};
  fam.members.push_back(identity_member(k));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) fam.members.push_back(adjacency_member(k, i, j));
  for (int l = 0; l <= k; ++l) fam.members.push_back(join_member(k, l));
  for (int l = 1; l < k; ++l) fam.members.push_back(level_ident_member(k, l));
  finish(fam);
  return fam;
}

BasalFamily basal_family(FamilyKind kind, int k) {
  switch (kind) {
    case FamilyKind::pw: return basal_pw(k);
    case FamilyKind::wl: return basal_wl(k);
    case FamilyKind::td: return basal_td(k);
  }
  throw Error("unknown family");
}

bool SparseTensor::diagonal() const {
  for (std::size_t r = 0; r < dim; ++r) {
    std::size_t sz = row_size(r);
    if (sz > 1 || (sz == 1 && *row_begin(r) != r)) return false;
  }
  return true;
}

SparseTensor basal_tensor(const BasalMember& m, const BasalFamily& fam, const Graph& g) {
  int n = g.vertex_count(), s = fam.slots;
  SparseTensor t;
  t.n = n;
  t.slots = s;
  t.dim = checked_entry_count(n, s);
  t.row_start.reserve(t.dim + 1);
  t.row_start.push_back(0);
  std::vector<std::size_t> weight(s);  // place value of each slot
  for (int p = s - 1, w = 1; p >= 0; --p, w *= std::max(n, 1)) weight[p] = static_cast<std::size_t>(w);

  for (std::size_t r = 0; r < t.dim; ++r) {
    std::vector<int> x = index_tuple(r, n, s);
    auto push = [&](std::size_t c) { t.cols.push_back(static_cast<std::uint32_t>(c)); };
    switch (m.type) {
      case MemberType::identity: push(r); break;
      case MemberType::adjacency:
        if (g.adjacent(x[m.i], x[m.j])) push(r);
        break;
      case MemberType::identification:
      case MemberType::level_ident:
        if (x[m.type == MemberType::identification ? m.i : m.i - 1] ==
            x[m.type == MemberType::identification ? m.j : m.i])
          push(r);
        break;
      case MemberType::forgetting: {
        std::size_t base = r - x[m.i] * weight[m.i];
        for (int y = 0; y < n; ++y) push(base + y * weight[m.i]);
        break;
      }
      case MemberType::connecting: {
        std::size_t base = r - x[m.i] * weight[m.i];
        for (int y : g.neighbours(x[m.i])) push(base + y * weight[m.i]);
        break;
      }
      case MemberType::join: {
        // keep positions < l, free the rest
        int l = m.i;
        std::size_t block = l == 0 ? t.dim : weight[l - 1];
        std::size_t base = (r / block) * block;
        for (std::size_t c = 0; c < block; ++c) push(base + c);
        break;
      }
    }
    t.row_start.push_back(t.cols.size());
  }
  return t;
}

HomTensor to_dense(const SparseTensor& t) {
  HomTensor d(t.slots, t.slots, t.n);
  for (std::size_t r = 0; r < t.dim; ++r)
    for (auto it = t.row_begin(r); it != t.row_end(r); ++it) d.at(r, *it) += 1;
  return d;
}

BilabelledGraph word_graph(const Word& w) {
  BasalFamily fam = basal_family(w.kind, w.k);
  BilabelledGraph g = identity_graph(fam.slots);
  for (int l : w.letters) {
    if (l < 0 || l >= static_cast<int>(fam.members.size())) throw Error("word letter out of range");
    g = concat(g, fam.members[l].graph);
  }
  return g;
}

}  // namespace homlab
