#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homlab/basal.hpp"
#include "homlab/graph.hpp"
#include "homlab/hom.hpp"

namespace homlab {

struct FamilySpec {
  enum class Kind { paths, trees, dary };
  Kind kind = Kind::paths;
  int d = 1;  // dary only

  std::string name() const;  // "paths", "trees", "dary:2"
  static FamilySpec parse(const std::string& s);
};

struct GramResult {
  bool indistinguishable = true;
  std::optional<LabelledGraph> witness;  // underlying graph separates G and H
  int dimension = 0;                      // dimension of the synced span
  int candidates = 0;                     // rule applications examined
};

// Synced span closure from (1_G, 1_H) under the family's generation rule.
GramResult gram_indistinguishable(const FamilySpec& spec, const Graph& g, const Graph& h);

// Members of the family with at most `size_bound` vertices, up to isomorphism,
// ordered by size.
std::vector<Graph> family_enumerate(const FamilySpec& spec, int size_bound);

// Square matrices acting on one side; same index order as SparseTensor.
using MatrixFamily = std::vector<SparseTensor>;

MatrixFamily basal_matrices(const BasalFamily& fam, const Graph& g);
SparseTensor sparse_from_dense(const HomTensor& t);

struct WordsResult {
  bool equivalent = true;
  bool bounded = false;       // true when the search stopped at max_len
  std::vector<int> failing;   // letters, leftmost applied last
  Integer value_g, value_h;   // functional on the failing word
  int dimension = 0;          // dimension of the joint span explored
};

// soe: functionals 1^T w 1; tr: traces. Explores the joint span generated by
// the families (from the ones vectors, resp. the identity) in order of word
// length; max_len < 0 means no bound.
WordsResult words_equivalent(const MatrixFamily& fam_g, const MatrixFamily& fam_h, EvalMode mode,
                             int max_len = -1);

}  // namespace homlab
