#pragma once

#include <string>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<std::vector<Integer>>;

struct PtmPartition {
  int d = 1;
  std::vector<long> a, b;   // even / odd popcount, ascending
  int ell = 0;              // least power where the sums differ
  Integer sum_a, sum_b;     // power sums at ell
};

PtmPartition ptm_partition(int d);

struct PrincipalSequence {
  std::vector<long> a;
  std::vector<IntVector> u;
  std::vector<IntVector> v;
  std::vector<Rational> scale;  // v[i] = scale[i] * (Gram-Schmidt vector i)
};

// Gram-Schmidt of u_0 = 1 + a, u_1 = 1 - a, u_i = a^i with v_0 = u_0 and
// every later vector scaled to a primitive integer vector.
PrincipalSequence principal_sequence(const std::vector<long>& a);
// Same, with one scale per index shared by both sequences.
std::pair<PrincipalSequence, PrincipalSequence> principal_sequence_pair(const std::vector<long>& a,
                                                                        const std::vector<long>& b);
// Orthogonality, integrality and prefix-span checks.
bool check_principal_sequence(const PrincipalSequence& s, std::string* why = nullptr);

// M_lambda = lambda v0 v0^T + v1 v1^T + v_{d+1} v_{d+1}^T.
IntMatrix m_lambda(const PrincipalSequence& s, int d, const Integer& lambda);
bool valid_lambda(const PrincipalSequence& s, int d, const Integer& lambda);
Integer smallest_lambda(const PrincipalSequence& s, int d, const Integer& from = 1);

struct BuiltMatrix {
  IntMatrix m;
  Integer lambda;
};
BuiltMatrix build_M(const PrincipalSequence& s, int d);

int matrix_rank(const IntMatrix& m);

struct LiftedGraph {
  IntMatrix base;
  long N = 0;
  Graph graph;
  std::vector<int> layer;  // vertex -> base index
};

// N = 0 picks the smallest even N above every entry.
LiftedGraph lift_multigraph(const IntMatrix& m, long N = 0);
// Degree census per block and the lift identity on base unit vectors.
bool check_lift(const LiftedGraph& l, std::string* why = nullptr);

struct DegreePair {
  int d = 1;
  PtmPartition ptm;
  PrincipalSequence seq_a, seq_b;
  Integer lambda;
  IntMatrix m, l;
  long N = 0;
  int star_leaves = 0;
  Graph g, h;
};

DegreePair generate_degree_pair(int d);
std::string format_meta(const DegreePair& p);

// hom(T, lift(M, N)) through the base matrix: N * sum_u t(u).
Integer layered_hom_count(const Graph& tree, const IntMatrix& m, long N);

struct DegreeBounds {
  int tree_size = 8;
  int path_len = 20;
};

struct HarnessItem {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct DegreeReport {
  bool passed = true;
  std::vector<HarnessItem> items;
};

DegreeReport verify_degree_pair(const DegreePair& p, const DegreeBounds& bounds);

}  // namespace homlab
