#include <algorithm>
#include <numeric>
#include <optional>

#include "homlab/hom.hpp"
#include "homlab/linsys.hpp"

namespace homlab {

namespace {

struct TupleSpace {
  int ng, nh, s;
  std::size_t cg, ch;

  TupleSpace(const Graph& g, const Graph& h, int slots)
      : ng(g.vertex_count()), nh(h.vertex_count()), s(slots),
        cg(checked_entry_count(ng, slots)), ch(checked_entry_count(nh, slots)) {}

  std::size_t size() const { return cg * ch; }
  std::size_t index(const std::vector<int>& w, const std::vector<int>& v) const {
    return tuple_index(w, nh) * cg + tuple_index(v, ng);
  }
};

void require_solution(const LinearSystem& sys, const Assignment& x, const char* what) {
  if (!satisfies(sys, x, false)) throw Error(std::string(what) + ": input is not a solution");
}

void check_output(const LinearSystem& sys, const Assignment& x, const char* what) {
  if (!satisfies(sys, x, false)) throw InternalError(std::string(what) + ": output failed substitution");
}

std::vector<std::vector<int>> permutations(int s) {
  std::vector<int> p(s);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> permute(const std::vector<int>& t, const std::vector<int>& sigma) {
  std::vector<int> out(t.size());
  for (std::size_t p = 0; p < t.size(); ++p) out[p] = t[sigma[p]];
  return out;
}

bool pairs_partial_iso(const Graph& g, const Graph& h, const std::vector<int>& w, const std::vector<int>& v) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if ((w[i] == w[j]) != (v[i] == v[j])) return false;
      if (h.adjacent(w[i], w[j]) != g.adjacent(v[i], v[j])) return false;
    }
  return true;
}

}  // namespace

Assignment symmetrise_solution(const Graph& g, const Graph& h, int k, const Assignment& x) {
  LinearSystem sys = build_pw(g, h, k);
  require_solution(sys, x, "symmetrise_solution");
  TupleSpace sp(g, h, k + 1);
  auto perms = permutations(sp.s);
  Assignment y(sp.size());
  Rational scale(1, static_cast<long>(perms.size()));
  for (std::size_t iw = 0; iw < sp.ch; ++iw) {
    auto w = index_tuple(iw, sp.nh, sp.s);
    for (std::size_t iv = 0; iv < sp.cg; ++iv) {
      auto v = index_tuple(iv, sp.ng, sp.s);
      Rational sum = 0;
      for (const auto& sigma : perms) sum += x[sp.index(permute(w, sigma), permute(v, sigma))];
      y[iw * sp.cg + iv] = sum * scale;
    }
  }
  check_output(sys, y, "symmetrise_solution");
  return y;
}

bool is_symmetric_solution(const Graph& g, const Graph& h, int k, const Assignment& x) {
  TupleSpace sp(g, h, k + 1);
  if (x.size() != sp.size()) return false;
  auto perms = permutations(sp.s);
  for (std::size_t iw = 0; iw < sp.ch; ++iw) {
    auto w = index_tuple(iw, sp.nh, sp.s);
    for (std::size_t iv = 0; iv < sp.cg; ++iv) {
      auto v = index_tuple(iv, sp.ng, sp.s);
      for (const auto& sigma : perms)
        if (x[sp.index(permute(w, sigma), permute(v, sigma))] != x[iw * sp.cg + iv]) return false;
    }
  }
  return true;
}

Assignment project_solution(const Graph& g, const Graph& h, int k, const Assignment& x) {
  if (k < 1) throw Error("project_solution: k must be at least 1");
  require_solution(build_pw(g, h, k), x, "project_solution");
  if (!is_symmetric_solution(g, h, k, x)) throw Error("project_solution: input is not symmetric");
  TupleSpace big(g, h, k + 1), small(g, h, k);
  Assignment y(small.size());
  Rational scale(1, k);
  for (std::size_t iw = 0; iw < small.ch; ++iw) {
    auto w = index_tuple(iw, small.nh, k);
    for (std::size_t iv = 0; iv < small.cg; ++iv) {
      auto v = index_tuple(iv, small.ng, k);
      auto we = w, ve = v;
      we.push_back(0);
      ve.push_back(0);
      Rational sum = 0;
      for (int i = 0; i < k; ++i) {
        we.back() = w[i];
        ve.back() = v[i];
        sum += x[big.index(we, ve)];
      }
      Rational val = sum * scale;
      // continuity: the marginals over the appended pair equal the projection
      for (int a = 0; a < small.nh; ++a) {
        we.back() = a;
        Rational m = 0;
        for (int b = 0; b < small.ng; ++b) {
          ve.back() = b;
          m += x[big.index(we, ve)];
        }
        if (m != val) throw InternalError("project_solution: continuity identity fails");
      }
      for (int b = 0; b < small.ng; ++b) {
        ve.back() = b;
        Rational m = 0;
        for (int a = 0; a < small.nh; ++a) {
          we.back() = a;
          m += x[big.index(we, ve)];
        }
        if (m != val) throw InternalError("project_solution: continuity identity fails");
      }
      y[iw * small.cg + iv] = std::move(val);
    }
  }
  check_output(build_pw(g, h, k - 1), y, "project_solution");
  if (!is_symmetric_solution(g, h, k - 1, y)) throw InternalError("project_solution: output not symmetric");
  return y;
}

Assignment pw_to_liso(const Graph& g, const Graph& h, int k, const Assignment& x) {
  std::vector<Assignment> level(k + 2);
  level[k + 1] = symmetrise_solution(g, h, k, x);
  for (int j = k; j >= 1; --j) level[j] = project_solution(g, h, j, level[j + 1]);

  // X_pi vanishes off partial isomorphisms (L4); check before dropping them.
  for (int j = 1; j <= k + 1; ++j) {
    TupleSpace sp(g, h, j);
    for (std::size_t iw = 0; iw < sp.ch; ++iw) {
      auto w = index_tuple(iw, sp.nh, j);
      for (std::size_t iv = 0; iv < sp.cg; ++iv) {
        auto v = index_tuple(iv, sp.ng, j);
        if (!pairs_partial_iso(g, h, w, v) && level[j][iw * sp.cg + iv] != 0)
          throw InternalError("pw_to_liso: nonzero value off partial isomorphisms");
      }
    }
  }

  LinearSystem sys = build_liso(g, h, k);
  Assignment y(sys.vars.size());
  for (std::size_t i = 0; i < sys.vars.size(); ++i) {
    const VarKey& key = sys.vars[i];
    int j = static_cast<int>(key.w.size());
    if (j == 0) {
      y[i] = 1;
      continue;
    }
    TupleSpace sp(g, h, j);
    y[i] = level[j][sp.index(key.w, key.v)];
  }
  check_output(sys, y, "pw_to_liso");
  return y;
}

Assignment liso_to_pw(const Graph& g, const Graph& h, int k, const Assignment& y) {
  LinearSystem liso = build_liso(g, h, k);
  require_solution(liso, y, "liso_to_pw");
  LinearSystem sys = build_pw(g, h, k);
  TupleSpace sp(g, h, k + 1);
  Assignment x(sp.size());
  for (std::size_t iw = 0; iw < sp.ch; ++iw) {
    auto w = index_tuple(iw, sp.nh, sp.s);
    for (std::size_t iv = 0; iv < sp.cg; ++iv) {
      auto v = index_tuple(iv, sp.ng, sp.s);
      std::vector<std::pair<int, int>> pi;
      for (int p = 0; p < sp.s; ++p) pi.emplace_back(w[p], v[p]);
      std::sort(pi.begin(), pi.end());
      pi.erase(std::unique(pi.begin(), pi.end()), pi.end());
      VarKey key{VarKey::Kind::partial_map, {}, {}};
      for (auto [a, b] : pi) {
        key.w.push_back(a);
        key.v.push_back(b);
      }
      if (auto id = liso.find(key)) x[iw * sp.cg + iv] = y[*id];
    }
  }
  check_output(sys, x, "liso_to_pw");
  return x;
}

Assignment td_top_block(const Graph& g, const Graph& h, int k, const Assignment& x) {
  LinearSystem td = build_td(g, h, k);
  require_solution(td, x, "td_top_block");
  LinearSystem sys = build_tdb(g, h, k);
  Assignment b(sys.vars.size());
  for (std::size_t i = 0; i < sys.vars.size(); ++i)
    if (auto id = td.find({VarKey::Kind::tuple_level, sys.vars[i].w, sys.vars[i].v})) b[i] = x[*id];
  check_output(sys, b, "td_top_block");
  return b;
}

Assignment td_project(const Graph& g, const Graph& h, int k, const Assignment& block) {
  if (k < 1) throw Error("td_project: k must be at least 1");
  require_solution(build_tdb(g, h, k), block, "td_project");
  TupleSpace big(g, h, k), small(g, h, k - 1);
  Assignment y(small.size());
  for (std::size_t iw = 0; iw < small.ch; ++iw) {
    auto w = index_tuple(iw, small.nh, k - 1);
    for (std::size_t iv = 0; iv < small.cg; ++iv) {
      auto v = index_tuple(iv, small.ng, k - 1);
      auto we = w, ve = v;
      we.push_back(0);
      ve.push_back(0);
      std::optional<Rational> val;
      auto agree = [&](const Rational& m) {
        if (!val) val = m;
        else if (*val != m) throw Error("td_project: marginal depends on the appended vertex");
      };
      for (int a = 0; a < small.nh; ++a) {
        we.back() = a;
        Rational m = 0;
        for (int b = 0; b < small.ng; ++b) {
          ve.back() = b;
          m += block[big.index(we, ve)];
        }
        agree(m);
      }
      for (int b = 0; b < small.ng; ++b) {
        ve.back() = b;
        Rational m = 0;
        for (int a = 0; a < small.nh; ++a) {
          we.back() = a;
          m += block[big.index(we, ve)];
        }
        agree(m);
      }
      y[iw * small.cg + iv] = val.value_or(0);
    }
  }
  if (k == 1) {
    if (y[0] != 1) throw InternalError("td_project: level-0 block is not 1");
  } else {
    check_output(build_tdb(g, h, k - 1), y, "td_project");
  }
  return y;
}

Assignment td_assemble(const Graph& g, const Graph& h, int k, const Assignment& top_block) {
  std::vector<Assignment> blocks(k + 1);
  blocks[k] = top_block;
  for (int j = k; j >= 1; --j) blocks[j - 1] = td_project(g, h, j, blocks[j]);
  LinearSystem sys = build_td(g, h, k);
  Assignment x(sys.vars.size());
  for (std::size_t i = 0; i < sys.vars.size(); ++i) {
    const VarKey& key = sys.vars[i];
    TupleSpace sp(g, h, static_cast<int>(key.w.size()));
    x[i] = blocks[key.w.size()][sp.index(key.w, key.v)];
  }
  // entries dropped by TD4 must vanish
  std::size_t nonzero_dropped = 0;
  for (int l = 0; l <= k; ++l) {
    TupleSpace sp(g, h, l);
    for (std::size_t iw = 0; iw < sp.ch; ++iw)
      for (std::size_t iv = 0; iv < sp.cg; ++iv) {
        if (blocks[l][iw * sp.cg + iv] == 0) continue;
        VarKey key{VarKey::Kind::tuple_level, index_tuple(iw, sp.nh, l), index_tuple(iv, sp.ng, l)};
        if (!sys.find(key)) ++nonzero_dropped;
      }
  }
  if (nonzero_dropped) throw InternalError("td_assemble: nonzero entries off partial pseudo-isomorphisms");
  check_output(sys, x, "td_assemble");
  return x;
}

}  // namespace homlab
