#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "homlab/linsys.hpp"

namespace homlab {

namespace {

using Terms = std::vector<std::pair<int, Rational>>;  // sorted by rank
using Combo = std::map<int, Rational>;

// a += f * b, both sorted by key.
void axpy(Terms& a, const Rational& f, const Terms& b) {
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f * b[j].second);
      ++j;
    } else {
      Rational c = a[i].second + f * b[j].second;
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

void axpy(Combo& a, const Rational& f, const Combo& b) {
  for (const auto& [k, v] : b) {
    Rational& c = a[k];
    c += f * v;
    if (c == 0) a.erase(k);
  }
}

struct StoredRow {
  Terms terms;  // leading term has coefficient 1
  Rational rhs;
  Combo combo;
};

// Echelon elimination over variables ordered by rank. Rows of length one fix
// their variable outright and are substituted eagerly; otherwise only the
// leading variable is eliminated.
class Eliminator {
public:
  Eliminator(const LinearSystem& sys, std::vector<int> order, bool track)
      : sys_(sys), order_(std::move(order)), track_(track) {
    int n = static_cast<int>(sys.vars.size());
    rank_.assign(n, 0);
    for (int r = 0; r < n; ++r) rank_[order_[r]] = r;
    fixed_.resize(n);
    pivot_.resize(n);
  }

  // Returns false on contradiction.
  bool run() {
    std::vector<int> rows(sys_.rows.size());
    std::iota(rows.begin(), rows.end(), 0);
    std::stable_sort(rows.begin(), rows.end(), [&](int a, int b) {
      return sys_.rows[a].terms.size() < sys_.rows[b].terms.size();
    });
    for (int r : rows)
      if (!insert(r)) return false;
    return true;
  }

  const Combo& contradiction() const { return contradiction_; }

  // Back substitution; variables without a pivot are set to zero.
  std::vector<Rational> solution() const {
    int n = static_cast<int>(rank_.size());
    std::vector<Rational> x(n);
    for (int r = n - 1; r >= 0; --r) {
      int v = order_[r];
      if (fixed_[v]) {
        x[v] = fixed_[v]->rhs;
      } else if (pivot_[v]) {
        Rational s = pivot_[v]->rhs;
        for (std::size_t t = 1; t < pivot_[v]->terms.size(); ++t) {
          const auto& [rk, c] = pivot_[v]->terms[t];
          s -= c * x[order_[rk]];
        }
        x[v] = s;
      }
    }
    return x;
  }

  // Reduced row echelon form restricted to pivot rows: every pivot row ends
  // up expressed in non-pivot, non-fixed variables only. Keyed by rank.
  std::map<int, StoredRow> rref() const {
    std::map<int, StoredRow> out;
    int n = static_cast<int>(rank_.size());
    for (int r = n - 1; r >= 0; --r) {
      int v = order_[r];
      if (!pivot_[v]) continue;
      StoredRow row{{}, pivot_[v]->rhs, {}};
      Terms rest;
      for (std::size_t t = 1; t < pivot_[v]->terms.size(); ++t) {
        const auto& [rk, c] = pivot_[v]->terms[t];
        int u = order_[rk];
        if (fixed_[u]) {
          row.rhs -= c * fixed_[u]->rhs;
        } else if (pivot_[u]) {
          const StoredRow& p = out.at(rk);
          row.rhs -= c * p.rhs;
          axpy(rest, -c, p.terms);
        } else {
          axpy(rest, 1, Terms{{rk, c}});
        }
      }
      row.terms = std::move(rest);
      out.emplace(r, std::move(row));
    }
    return out;
  }

  bool is_fixed(int v) const { return fixed_[v].has_value(); }
  bool has_pivot(int v) const { return pivot_[v].has_value(); }
  const Rational& fixed_value(int v) const { return fixed_[v]->rhs; }
  int rank(int v) const { return rank_[v]; }
  int var_at(int r) const { return order_[r]; }

private:
  bool insert(int idx) {
    const Row& src = sys_.rows[idx];
    StoredRow row;
    for (const auto& [v, c] : src.terms) row.terms.emplace_back(rank_[v], c);
    std::sort(row.terms.begin(), row.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    row.rhs = src.rhs;
    if (track_) row.combo[idx] = 1;

    for (;;) {
      // substitute fixed variables anywhere in the row
      Terms kept;
      for (auto& t : row.terms) {
        int v = order_[t.first];
        if (fixed_[v]) {
          row.rhs -= t.second * fixed_[v]->rhs;
          if (track_) axpy(row.combo, -t.second, fixed_[v]->combo);
        } else {
          kept.push_back(std::move(t));
        }
      }
      row.terms = std::move(kept);
      if (row.terms.empty()) {
        if (row.rhs == 0) return true;
        contradiction_ = std::move(row.combo);
        return false;
      }
      int lead = order_[row.terms.front().first];
      if (pivot_[lead]) {
        Rational f = -row.terms.front().second;
        const StoredRow& p = *pivot_[lead];
        axpy(row.terms, f, p.terms);
        row.rhs += f * p.rhs;
        if (track_) axpy(row.combo, f, p.combo);
        continue;
      }
      Rational c = row.terms.front().second;
      if (c != 1) {
        Rational inv = 1 / c;
        for (auto& t : row.terms) t.second *= inv;
        row.rhs *= inv;
        if (track_)
          for (auto& [k, y] : row.combo) y *= inv;
      }
      if (row.terms.size() == 1) fixed_[lead] = std::move(row);
      else pivot_[lead] = std::move(row);
      return true;
    }
  }

  const LinearSystem& sys_;
  std::vector<int> order_;
  std::vector<int> rank_;
  bool track_;
  std::vector<std::optional<StoredRow>> fixed_;
  std::vector<std::optional<StoredRow>> pivot_;
  Combo contradiction_;
};

std::vector<int> identity_order(std::size_t n) {
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

std::vector<std::pair<int, Rational>> certificate_for(const LinearSystem& sys, const std::vector<int>& order) {
  Eliminator e(sys, order, true);
  if (e.run()) throw InternalError("certificate pass found the system consistent");
  std::vector<std::pair<int, Rational>> cert(e.contradiction().begin(), e.contradiction().end());
  if (!certificate_valid(sys, cert)) throw InternalError("infeasibility certificate failed verification");
  return cert;
}

// Sparse tableau phase-1 simplex with Bland's rule.
class Simplex {
public:
  // rows: basic-form rows over columns [0, ncols); each must already hold its
  // basic column with coefficient 1 and rhs >= 0.
  Simplex(int ncols, std::vector<Terms> rows, std::vector<Rational> rhs, std::vector<int> basis,
          std::vector<char> artificial)
      : ncols_(ncols), rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)),
        artificial_(std::move(artificial)) {
    // objective: sum of artificial basics, written over nonbasic columns
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!artificial_[basis_[i]]) continue;
      value_ += rhs_[i];
      for (const auto& [c, a] : rows_[i])
        if (c != basis_[i]) axpy(cost_, -a, Terms{{c, 1}});
    }
  }

  // Returns the optimal phase-1 objective.
  const Rational& optimise() {
    for (;;) {
      int enter = -1;
      for (const auto& [c, d] : cost_)
        if (d < 0 && !artificial_[c]) {
          enter = c;
          break;
        }
      if (enter < 0) return value_;
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational* a = coef(rows_[i], enter);
        if (!a || *a <= 0) continue;
        Rational ratio = rhs_[i] / *a;
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) throw InternalError("phase-1 objective unbounded");
      pivot(leave, enter);
    }
  }

  std::vector<Rational> values() const {
    std::vector<Rational> x(ncols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) x[basis_[i]] = rhs_[i];
    return x;
  }

private:
  static const Rational* coef(const Terms& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& t, int c) { return t.first < c; });
    return it != row.end() && it->first == col ? &it->second : nullptr;
  }

  void pivot(int r, int e) {
    Rational inv = 1 / *coef(rows_[r], e);
    for (auto& t : rows_[r]) t.second *= inv;
    rhs_[r] *= inv;
    const Terms& pr = rows_[r];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const Rational* a = coef(rows_[i], e);
      if (!a) continue;
      Rational f = -*a;
      axpy(rows_[i], f, pr);
      rhs_[i] += f * rhs_[r];
    }
    if (const Rational* d = coef(cost_, e)) {
      Rational f = -*d;
      axpy(cost_, f, pr);
      value_ -= f * rhs_[r];
    }
    basis_[r] = e;
  }

  int ncols_;
  std::vector<Terms> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<char> artificial_;
  Terms cost_;
  Rational value_ = 0;
};

Feasibility verified(const LinearSystem& sys, std::vector<Rational> x, bool nonneg) {
  if (!satisfies(sys, x, nonneg)) throw InternalError("solver witness failed substitution");
  Feasibility f;
  f.feasible = true;
  f.witness = std::move(x);
  return f;
}

}  // namespace

Feasibility solve_rational(const LinearSystem& sys) {
  auto order = identity_order(sys.vars.size());
  Eliminator e(sys, order, false);
  if (e.run()) return verified(sys, e.solution(), false);
  Feasibility f;
  f.certificate = certificate_for(sys, order);
  return f;
}

Feasibility solve_nonneg(const LinearSystem& sys) {
  int n = static_cast<int>(sys.vars.size());
  // free variables first so their pivot rows can be dropped
  std::vector<int> order;
  for (int v = 0; v < n; ++v)
    if (!sys.nonneg[v]) order.push_back(v);
  for (int v = 0; v < n; ++v)
    if (sys.nonneg[v]) order.push_back(v);

  Eliminator e(sys, order, false);
  if (!e.run()) {
    Feasibility f;
    f.certificate = certificate_for(sys, order);
    return f;
  }
  for (int v = 0; v < n; ++v)
    if (sys.nonneg[v] && e.is_fixed(v) && e.fixed_value(v) < 0) return {};

  auto rref = e.rref();
  // Columns: ranks of the original variables, then one artificial per row
  // with negative right-hand side.
  std::vector<Terms> rows;
  std::vector<Rational> rhs;
  std::vector<int> basis;
  for (auto& [rk, row] : rref) {
    int v = e.var_at(rk);
    if (!sys.nonneg[v]) continue;  // free pivot: solved afterwards
    Terms t = std::move(row.terms);
    axpy(t, 1, Terms{{rk, 1}});
    rows.push_back(std::move(t));
    rhs.push_back(std::move(row.rhs));
    basis.push_back(rk);
  }
  int ncols = n;
  std::vector<char> artificial(n, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rhs[i] >= 0) continue;
    for (auto& t : rows[i]) t.second = -t.second;
    rhs[i] = -rhs[i];
    rows[i].emplace_back(ncols, 1);
    basis[i] = ncols++;
    artificial.push_back(1);
  }
  Simplex sx(ncols, std::move(rows), std::move(rhs), std::move(basis), std::move(artificial));
  if (sx.optimise() != 0) return {};
  auto vals = sx.values();

  std::vector<Rational> x(n);
  for (int v = 0; v < n; ++v) {
    if (e.is_fixed(v)) x[v] = e.fixed_value(v);
    else if (sys.nonneg[v]) x[v] = vals[e.rank(v)];
  }
  for (const auto& [rk, row] : rref) {
    int v = e.var_at(rk);
    if (sys.nonneg[v]) continue;
    Rational s = row.rhs;
    for (const auto& [c, a] : row.terms) s -= a * x[e.var_at(c)];
    x[v] = s;
  }
  return verified(sys, std::move(x), true);
}

}  // namespace homlab
