#pragma once

#include <string>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/hom.hpp"

namespace homlab {

enum class MemberType {
  identity,        // I
  adjacency,       // A^{ij}
  identification,  // I^{ij}: position j carries vertex i
  forgetting,      // F^i
  connecting,      // C^i
  join,            // J^l
  level_ident      // I^l (treedepth): positions l and l+1 carry the same vertex
};

struct BasalMember {
  std::string name;
  MemberType type = MemberType::identity;
  int i = 0;  // 0-based slot indices (or the level for join / level_ident)
  int j = 0;
  BilabelledGraph graph;
};

struct BasalFamily {
  FamilyKind kind = FamilyKind::pw;
  int k = 1;
  int slots = 2;  // label arity on each side
  std::vector<BasalMember> members;
  std::vector<int> reversal_map;

  int index_of(const std::string& name) const;  // throws if absent
};

BasalFamily basal_pw(int k);  // (k+1,k+1)-bilabelled; k = 0 gives {I, F^1}
BasalFamily basal_wl(int k);
BasalFamily basal_td(int k);
BasalFamily basal_family(FamilyKind kind, int k);

// 0/1 matrix over V(G)^slots in row-compressed form.
struct SparseTensor {
  int n = 0;
  int slots = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> row_start;  // size dim + 1
  std::vector<std::uint32_t> cols;

  std::size_t row_size(std::size_t r) const { return row_start[r + 1] - row_start[r]; }
  const std::uint32_t* row_begin(std::size_t r) const { return cols.data() + row_start[r]; }
  const std::uint32_t* row_end(std::size_t r) const { return cols.data() + row_start[r + 1]; }
  bool diagonal() const;  // every row is empty or {r}

  template <typename T>
  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (auto it = row_begin(r); it != row_end(r); ++it) out[r] += v[*it];
    return out;
  }
};

SparseTensor basal_tensor(const BasalMember& m, const BasalFamily& fam, const Graph& g);
HomTensor to_dense(const SparseTensor& t);

// Product graph of a word (concatenation of member graphs).
BilabelledGraph word_graph(const Word& w);

}  // namespace homlab
