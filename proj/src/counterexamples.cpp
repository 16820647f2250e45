#include "homlab/counterexamples.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "homlab/hom.hpp"
#include "homlab/spectra.hpp"
#include "homlab/wl.hpp"

namespace homlab {

namespace {

Integer power_sum(const std::vector<long>& x, int p) {
  Integer s = 0;
  for (long v : x) {
    Integer t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(v), static_cast<unsigned long>(p));
    s += t;
  }
  return s;
}

using QVector = std::vector<Rational>;

Rational qdot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<IntVector> u_sequence(const std::vector<long>& a) {
  std::size_t n = a.size();
  std::vector<IntVector> u(n, IntVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    u[0][j] = 1 + a[j];
    if (n > 1) u[1][j] = 1 - a[j];
    for (std::size_t i = 2; i < n; ++i) {
      mpz_ui_pow_ui(u[i][j].get_mpz_t(), static_cast<unsigned long>(a[j]), static_cast<unsigned long>(i));
    }
  }
  return u;
}

std::vector<QVector> gram_schmidt(const std::vector<IntVector>& u) {
  std::vector<QVector> w;
  for (const auto& ui : u) {
    QVector x(ui.begin(), ui.end());
    QVector y = x;
    for (const auto& wj : w) {
      Rational c = qdot(x, wj) / qdot(wj, wj);
      for (std::size_t t = 0; t < y.size(); ++t) y[t] -= c * wj[t];
    }
    w.push_back(std::move(y));
  }
  return w;
}

// Smallest positive rational s with s * x integral for every x in vs.
Rational primitive_scale(const std::vector<const QVector*>& vs) {
  Integer den = 1, num = 0;
  for (const QVector* v : vs)
    for (const auto& q : *v) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
    }
  if (num == 0) return 1;
  Rational s(den, num);
  s.canonicalize();
  return s;
}

void validate_entries(const std::vector<long>& a) {
  if (a.size() < 3) throw Error("principal_sequence: need at least 3 entries");
  std::vector<long> s = a;
  std::sort(s.begin(), s.end());
  if (s.front() < 0) throw Error("principal_sequence: entries must be non-negative");
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw Error("principal_sequence: repeated entries");
}

PrincipalSequence assemble(const std::vector<long>& a, const std::vector<IntVector>& u,
                           const std::vector<QVector>& w, const std::vector<Rational>& scale) {
  PrincipalSequence s{a, u, {}, scale};
  for (std::size_t i = 0; i < w.size(); ++i) {
    IntVector v(w[i].size());
    for (std::size_t t = 0; t < v.size(); ++t) {
      Rational q = w[i][t] * scale[i];
      if (q.get_den() != 1) throw InternalError("principal_sequence: scaling left a fraction");
      v[t] = q.get_num();
    }
    s.v.push_back(std::move(v));
  }
  std::string why;
  if (!check_principal_sequence(s, &why)) throw InternalError("principal_sequence: " + why);
  return s;
}

int rank_of(std::vector<QVector> rows) {
  int rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank || rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t t = 0; t < cols; ++t) rows[r][t] -= f * rows[rank][t];
    }
    ++rank;
  }
  return rank;
}

QVector to_q(const IntVector& v) { return QVector(v.begin(), v.end()); }

IntVector mat_vec(const IntMatrix& m, const IntVector& x) {
  IntVector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += m[i][j] * x[j];
  return out;
}

}  // namespace

PtmPartition ptm_partition(int d) {
  if (d < 1) throw Error("ptm_partition: d must be at least 1");
  if (d > Caps::get().ptm_d) throw CapError("ptm_partition limited to d <= " + std::to_string(Caps::get().ptm_d));
  PtmPartition p;
  p.d = d;
  long size = 1L << (2 * d + 1);
  for (long x = 0; x < size; ++x) (std::popcount(static_cast<unsigned long>(x)) % 2 ? p.b : p.a).push_back(x);
  for (int i = 1; i <= 2 * d; ++i)
    if (power_sum(p.a, i) != power_sum(p.b, i)) throw InternalError("ptm_partition: power sums differ below 2d");
  for (int i = 2 * d + 1;; ++i) {
    Integer sa = power_sum(p.a, i), sb = power_sum(p.b, i);
    if (sa != sb) {
      p.ell = i;
      p.sum_a = sa;
      p.sum_b = sb;
      break;
    }
    if (i > 64) throw InternalError("ptm_partition: no differing power sum found");
  }
  return p;
}

bool check_principal_sequence(const PrincipalSequence& s, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::size_t n = s.v.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (qdot(to_q(s.v[i]), to_q(s.v[j])) != 0)
        return fail("v" + std::to_string(i) + " and v" + std::to_string(j) + " are not orthogonal");
  std::vector<QVector> us, vs, both;
  for (std::size_t i = 0; i < n; ++i) {
    us.push_back(to_q(s.u[i]));
    vs.push_back(to_q(s.v[i]));
    both.push_back(us.back());
    both.push_back(vs.back());
    int ru = rank_of(us), rv = rank_of(vs), rb = rank_of(both);
    if (ru != rv || rv != rb) return fail("span of v0..v" + std::to_string(i) + " differs from u-prefix");
  }
  if (n && s.v[0] != s.u[0]) return fail("v0 differs from 1 + a");
  return true;
}

PrincipalSequence principal_sequence(const std::vector<long>& a) {
  validate_entries(a);
  auto u = u_sequence(a);
  auto w = gram_schmidt(u);
  std::vector<Rational> scale{1};
  for (std::size_t i = 1; i < w.size(); ++i) scale.push_back(primitive_scale({&w[i]}));
  return assemble(a, u, w, scale);
}

std::pair<PrincipalSequence, PrincipalSequence> principal_sequence_pair(const std::vector<long>& a,
                                                                        const std::vector<long>& b) {
  validate_entries(a);
  validate_entries(b);
  if (a.size() != b.size()) throw Error("principal_sequence_pair: lengths differ");
  auto ua = u_sequence(a), ub = u_sequence(b);
  auto wa = gram_schmidt(ua), wb = gram_schmidt(ub);
  std::vector<Rational> scale{1};
  for (std::size_t i = 1; i < wa.size(); ++i) scale.push_back(primitive_scale({&wa[i], &wb[i]}));
  return {assemble(a, ua, wa, scale), assemble(b, ub, wb, scale)};
}

IntMatrix m_lambda(const PrincipalSequence& s, int d, const Integer& lambda) {
  std::size_t n = s.v.size();
  if (static_cast<int>(n) <= d + 1) throw Error("build_M: need n > d + 1");
  IntMatrix m(n, IntVector(n));
  const auto &v0 = s.v[0], &v1 = s.v[1], &vd = s.v[d + 1];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = lambda * v0[i] * v0[j] + v1[i] * v1[j] + vd[i] * vd[j];
  return m;
}

bool valid_lambda(const PrincipalSequence& s, int d, const Integer& lambda) {
  IntMatrix m = m_lambda(s, d, lambda);
  for (const auto& row : m)
    for (const auto& x : row)
      if (x <= 0) return false;
  IntVector r = mat_vec(m, IntVector(m.size(), 1));
  return std::any_of(r.begin(), r.end(), [&](const Integer& x) { return x != r[0]; });
}

Integer smallest_lambda(const PrincipalSequence& s, int d, const Integer& from) {
  // lambda above every |entry| of the other two terms gives positivity; the
  // eigenvector condition fails for at most one further value
  Integer bound = 0;
  IntMatrix rest = m_lambda(s, d, 0);
  for (const auto& row : rest)
    for (const auto& x : row) bound = std::max(bound, Integer(abs(x)));
  for (Integer l = std::max(from, Integer(1)); l <= std::max(from, Integer(1)) + bound + 2; ++l)
    if (valid_lambda(s, d, l)) return l;
  throw InternalError("build_M: no valid lambda found");
}

BuiltMatrix build_M(const PrincipalSequence& s, int d) {
  Integer l = smallest_lambda(s, d);
  BuiltMatrix b{m_lambda(s, d, l), l};
  if (matrix_rank(b.m) != 3) throw InternalError("build_M: rank is not 3");
  return b;
}

int matrix_rank(const IntMatrix& m) {
  std::vector<QVector> rows;
  for (const auto& r : m) rows.push_back(to_q(r));
  return rank_of(rows);
}

LiftedGraph lift_multigraph(const IntMatrix& m, long N) {
  std::size_t n = m.size();
  Integer max_entry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error("lift_multigraph: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] < 0 || m[i][j] != m[j][i]) throw Error("lift_multigraph: matrix must be symmetric non-negative");
      max_entry = std::max(max_entry, m[i][j]);
    }
  }
  if (!max_entry.fits_slong_p()) throw CapError("lift_multigraph: entries too large");
  long lo = max_entry.get_si() + 1;
  if (N == 0) N = lo + (lo % 2);
  if (N < lo || N % 2) throw Error("lift_multigraph: N must be even and exceed every entry");
  long total = static_cast<long>(n) * N;
  if (total > 200000) throw CapError("lift_multigraph: lifted graph too large");

  std::vector<Edge> edges;
  auto id = [&](std::size_t u, long j) { return static_cast<int>(u * N + ((j % N) + N) % N); };
  for (std::size_t u = 0; u < n; ++u) {
    long r = m[u][u].get_si();
    for (long j = 0; j < N; ++j) {
      for (long s = 1; s <= r / 2; ++s) {
        int a = id(u, j), b = id(u, j + s);
        edges.emplace_back(std::min(a, b), std::max(a, b));
      }
      if (r % 2 && j < N / 2) edges.emplace_back(id(u, j), id(u, j + N / 2));
    }
    for (std::size_t v = u + 1; v < n; ++v) {
      long r2 = m[u][v].get_si();
      for (long j = 0; j < N; ++j)
        for (long t = 0; t < r2; ++t) edges.emplace_back(id(u, j), id(v, j + t));
    }
  }
  std::sort(edges.begin(), edges.end());
  LiftedGraph l;
  l.base = m;
  l.N = N;
  l.graph = Graph(static_cast<int>(total), edges);
  l.layer.resize(total);
  for (long x = 0; x < total; ++x) l.layer[x] = static_cast<int>(x / N);
  return l;
}

bool check_lift(const LiftedGraph& l, std::string* why) {
  std::size_t n = l.base.size();
  for (int x = 0; x < l.graph.vertex_count(); ++x) {
    std::vector<long> census(n, 0);
    for (int y : l.graph.neighbours(x)) ++census[l.layer[y]];
    for (std::size_t v = 0; v < n; ++v)
      if (census[v] != l.base[l.layer[x]][v]) {
        if (why) *why = "vertex " + std::to_string(x) + " has " + std::to_string(census[v]) + " neighbours in layer " +
                        std::to_string(v);
        return false;
      }
  }
  // A (e_u (x) 1) = (M e_u) (x) 1 is the census above read column-wise; spot-check it anyway
  for (std::size_t u = 0; u < n; ++u) {
    for (int x = 0; x < l.graph.vertex_count(); ++x) {
      long s = 0;
      for (int y : l.graph.neighbours(x)) s += l.layer[y] == static_cast<int>(u);
      if (s != l.base[l.layer[x]][u]) {
        if (why) *why = "lift identity fails on e_" + std::to_string(u);
        return false;
      }
    }
  }
  return true;
}

DegreePair generate_degree_pair(int d) {
  DegreePair p;
  p.d = d;
  p.ptm = ptm_partition(d);
  std::tie(p.seq_a, p.seq_b) = principal_sequence_pair(p.ptm.a, p.ptm.b);
  Integer la = smallest_lambda(p.seq_a, d), lb = smallest_lambda(p.seq_b, d);
  Integer l = std::max(la, lb);
  while (!valid_lambda(p.seq_a, d, l) || !valid_lambda(p.seq_b, d, l)) ++l;
  p.lambda = l;
  p.m = m_lambda(p.seq_a, d, l);
  p.l = m_lambda(p.seq_b, d, l);
  if (matrix_rank(p.m) != 3 || matrix_rank(p.l) != 3) throw InternalError("generate_degree_pair: rank is not 3");
  Integer max_entry = 0;
  for (const auto* mat : {&p.m, &p.l})
    for (const auto& row : *mat)
      for (const auto& x : row) max_entry = std::max(max_entry, x);
  long lo = max_entry.get_si() + 1;
  p.N = lo + (lo % 2);
  p.star_leaves = p.ptm.ell;
  LiftedGraph lg = lift_multigraph(p.m, p.N), lh = lift_multigraph(p.l, p.N);
  std::string why;
  if (!check_lift(lg, &why) || !check_lift(lh, &why)) throw InternalError("generate_degree_pair: " + why);
  p.g = std::move(lg.graph);
  p.h = std::move(lh.graph);
  return p;
}

std::string format_meta(const DegreePair& p) {
  std::ostringstream os;
  auto vec = [&](const char* key, const std::vector<long>& v) {
    os << key;
    for (long x : v) os << " " << x;
    os << "\n";
  };
  os << "d " << p.d << "\n";
  vec("a", p.ptm.a);
  vec("b", p.ptm.b);
  os << "lambda " << p.lambda << "\n";
  os << "N " << p.N << "\n";
  os << "ell " << p.ptm.ell << "\n";
  os << "power_sum_a " << p.ptm.sum_a << "\npower_sum_b " << p.ptm.sum_b << "\n";
  auto grid = [&](const char* key, const IntMatrix& m) {
    os << key << " " << m.size() << "\n";
    for (const auto& row : m) {
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
      os << "\n";
    }
  };
  grid("M", p.m);
  grid("L", p.l);
  return os.str();
}

Integer layered_hom_count(const Graph& tree, const IntMatrix& m, long N) {
  if (!is_tree(tree)) throw Error("layered_hom_count: pattern must be a tree");
  std::size_t n = m.size();
  int t = tree.vertex_count();
  // BFS order from vertex 0, then fold children into parents
  std::vector<int> order{0}, parent(t, -1);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : tree.neighbours(order[i]))
      if (c != parent[order[i]] && c != 0) {
        parent[c] = order[i];
        order.push_back(c);
      }
  std::vector<IntVector> val(t, IntVector(n, 1));
  for (int i = t - 1; i > 0; --i) {
    int v = order[i];
    IntVector up = mat_vec(m, val[v]);
    for (std::size_t u = 0; u < n; ++u) val[parent[v]][u] *= up[u];
  }
  Integer s = 0;
  for (const auto& x : val[0]) s += x;
  return s * N;
}

DegreeReport verify_degree_pair(const DegreePair& p, const DegreeBounds& bounds) {
  DegreeReport rep;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.items.push_back({std::move(name), ok, std::move(detail)});
    rep.passed = rep.passed && ok;
  };
  bool dense_check = p.g.vertex_count() <= 64;

  // (i) d-ary trees
  {
    int bound = std::min(bounds.tree_size, Caps::get().family_size);
    auto trees = family_enumerate({FamilySpec::Kind::dary, p.d}, bound);
    std::string bad;
    for (const auto& t : trees) {
      Integer cg = layered_hom_count(t, p.m, p.N), ch = layered_hom_count(t, p.l, p.N);
      if (dense_check && (cg != hom_count(t, p.g) || ch != hom_count(t, p.h))) bad = "layered count disagrees with dense count";
      if (cg != ch && bad.empty()) bad = "tree on " + std::to_string(t.vertex_count()) + " vertices: " + cg.get_str() +
                                         " vs " + ch.get_str();
    }
    add("dary_trees", bad.empty(), bad.empty() ? std::to_string(trees.size()) + " trees agree" : bad);
  }
  // (ii) paths
  {
    std::string bad;
    for (int len = 1; len <= bounds.path_len && bad.empty(); ++len) {
      Graph path = path_graph(len);
      Integer cg = layered_hom_count(path, p.m, p.N), ch = layered_hom_count(path, p.l, p.N);
      if (cg != ch) bad = "path on " + std::to_string(len) + " vertices: " + cg.get_str() + " vs " + ch.get_str();
    }
    add("paths", bad.empty(), bad.empty() ? "paths up to " + std::to_string(bounds.path_len) + " agree" : bad);
  }
  // (iii) star census on the lifted graphs, cross-checked against the base formula
  {
    int ell = p.star_leaves;
    auto census = [&](const Graph& gr) {
      Integer s = 0;
      for (int v = 0; v < gr.vertex_count(); ++v) {
        Integer t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(gr.degree(v)), static_cast<unsigned long>(ell));
        s += t;
      }
      return s;
    };
    Integer cg = census(p.g), ch = census(p.h);
    Graph star = star_graph(ell);
    bool consistent = cg == layered_hom_count(star, p.m, p.N) && ch == layered_hom_count(star, p.l, p.N);
    add("star", cg != ch && consistent,
        "hom(K_{1," + std::to_string(ell) + "}) = " + cg.get_str() + " vs " + ch.get_str() +
            (consistent ? "" : " (census disagrees with layered count)"));
  }
  // (iv) Gram testers
  {
    GramResult dary = gram_indistinguishable({FamilySpec::Kind::dary, p.d}, p.g, p.h);
    add("gram_dary", dary.indistinguishable, "dimension " + std::to_string(dary.dimension));
    GramResult trees = gram_indistinguishable({FamilySpec::Kind::trees, 1}, p.g, p.h);
    std::string detail = "dimension " + std::to_string(trees.dimension);
    if (trees.witness) detail += ", witness on " + std::to_string(trees.witness->graph.vertex_count()) + " vertices";
    add("gram_trees", !trees.indistinguishable, detail);
  }
  // (v) colour refinement
  {
    WLComparison cr = wl_compare(p.g, p.h, 1);
    add("colour_refinement", !cr.indistinguishable, "separating round " + std::to_string(cr.separating_round));
  }
  return rep;
}

}  // namespace homlab
