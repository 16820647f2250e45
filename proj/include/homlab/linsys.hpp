#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homlab/basal.hpp"
#include "homlab/common.hpp"
#include "homlab/graph.hpp"

namespace homlab {

struct VarKey {
  enum class Kind { matrix_entry, partial_map, tuple_level };
  Kind kind = Kind::matrix_entry;
  // matrix_entry / tuple_level: w is the H-tuple, v the G-tuple.
  // partial_map: pairs (w[i], v[i]) sorted ascending.
  std::vector<int> w;
  std::vector<int> v;

  auto operator<=>(const VarKey&) const = default;
  bool operator==(const VarKey&) const = default;
  std::string str() const;  // "(w|v)" or "{(w,v),...}"
};

enum class RowTag { row_sum, col_sum, commute, continuity_g, continuity_h, unit };
const char* row_tag_name(RowTag t);

struct Row {
  std::vector<std::pair<int, Rational>> terms;  // sorted by variable, nonzero
  Rational rhs;
  RowTag tag = RowTag::commute;
};

struct LinearSystem {
  std::vector<VarKey> vars;
  std::vector<char> nonneg;
  std::vector<Row> rows;
  // Keys fixed to zero by L4 / TD4 and therefore not materialised.
  std::size_t eliminated = 0;

  int add_var(VarKey key);
  void add_row(std::vector<std::pair<int, Rational>> terms, Rational rhs, RowTag tag);
  std::optional<int> find(const VarKey& key) const;
  std::string dump() const;

private:
  std::map<VarKey, int> index_;
};

LinearSystem with_nonneg(LinearSystem sys);

struct Feasibility {
  bool feasible = false;
  std::vector<Rational> witness;                   // aligned with vars
  std::vector<std::pair<int, Rational>> certificate;  // row multipliers
  bool has_certificate() const { return !certificate.empty(); }
};

std::string format_witness(const LinearSystem& sys, const std::vector<Rational>& x);

// Exact checks.
bool satisfies(const LinearSystem& sys, const std::vector<Rational>& x, bool check_nonneg = true);
bool certificate_valid(const LinearSystem& sys, const std::vector<std::pair<int, Rational>>& cert);

// Builders.
LinearSystem build_fiso(const Graph& g, const Graph& h);
LinearSystem build_liso(const Graph& g, const Graph& h, int k);
LinearSystem build_pw(const Graph& g, const Graph& h, int k);
LinearSystem build_td(const Graph& g, const Graph& h, int k);
// X B_G = B_H X for every member of `fam`, plus pseudo-stochasticity.
LinearSystem build_commutation(const Graph& g, const Graph& h, const BasalFamily& fam);
LinearSystem build_tdb(const Graph& g, const Graph& h, int k);

// Solvers. solve_nonneg only constrains variables flagged in `nonneg` (see
// with_nonneg). Witnesses are verified by substitution before being returned;
// rational infeasibility always ships a verified certificate.
Feasibility solve_rational(const LinearSystem& sys);
Feasibility solve_nonneg(const LinearSystem& sys);

// Transport maps between solutions (all outputs substitution-verified).
// Witnesses for PW systems are indexed like build_pw(g, h, k).vars.
using Assignment = std::vector<Rational>;

Assignment symmetrise_solution(const Graph& g, const Graph& h, int k, const Assignment& x);
bool is_symmetric_solution(const Graph& g, const Graph& h, int k, const Assignment& x);
// From a symmetric solution over (k+1)-tuples to one over k-tuples (k >= 1).
Assignment project_solution(const Graph& g, const Graph& h, int k, const Assignment& x);
// Full chain: symmetrise, project down to 1-tuples, read off X_pi.
Assignment pw_to_liso(const Graph& g, const Graph& h, int k, const Assignment& x);
Assignment liso_to_pw(const Graph& g, const Graph& h, int k, const Assignment& y);

// Level-k block of a TD^k solution, indexed like build_tdb(g, h, k).vars.
Assignment td_top_block(const Graph& g, const Graph& h, int k, const Assignment& x);
// X^(k) -> X^(k-1) via the join graph; block of level 0 is the scalar 1.
Assignment td_project(const Graph& g, const Graph& h, int k, const Assignment& block);
// Reassembles a TD^k solution from the projected chain of blocks.
Assignment td_assemble(const Graph& g, const Graph& h, int k, const Assignment& top_block);

}  // namespace homlab
