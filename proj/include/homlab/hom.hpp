#pragma once

#include <string>
#include <vector>

#include "homlab/common.hpp"
#include "homlab/graph.hpp"

namespace homlab {

// Dense homomorphism tensor. Entry order: in-tuple (most significant
// coordinate first), then out-tuple.
struct HomTensor {
  int arity_in = 0;
  int arity_out = 0;
  int n = 0;
  std::vector<Integer> entries;

  HomTensor() = default;
  HomTensor(int in, int out, int target_size);  // zero tensor

  std::size_t rows() const;
  std::size_t cols() const;
  Integer& at(std::size_t row, std::size_t col) { return entries[row * cols() + col]; }
  const Integer& at(std::size_t row, std::size_t col) const { return entries[row * cols() + col]; }
  bool operator==(const HomTensor&) const = default;
};

std::size_t checked_entry_count(int n, int arity);

Integer hom_count(const Graph& f, const Graph& g);
HomTensor hom_tensor(const LabelledGraph& f, const Graph& g);
HomTensor hom_tensor(const BilabelledGraph& f, const Graph& g);

Integer soe(const HomTensor& t);
Integer trace(const HomTensor& t);
HomTensor matmul(const HomTensor& a, const HomTensor& b);
HomTensor schur(const HomTensor& a, const HomTensor& b);
HomTensor matvec(const HomTensor& a, const HomTensor& v);
HomTensor transpose(const HomTensor& a);
HomTensor identity_tensor(int n, int arity);
HomTensor ones_tensor(int n, int arity);

// Tuple <-> index helpers (base n, first coordinate most significant).
std::size_t tuple_index(const std::vector<int>& t, int n);
std::vector<int> index_tuple(std::size_t idx, int n, int arity);

std::string format_tensor(const HomTensor& t);

enum class FamilyKind { pw, wl, td };
enum class EvalMode { soe, tr };

// Word over one of the basal families; letters index family members.
struct Word {
  FamilyKind kind = FamilyKind::pw;
  int k = 1;
  std::vector<int> letters;
  bool operator==(const Word&) const = default;
};

std::string family_name(FamilyKind kind, int k);  // e.g. "pw:2"
std::string format_word(const Word& w);           // "w pw:2 1 4 ..."
Word parse_word(const std::string& line);

// soe mode folds right-to-left against the all-ones vector; tr mode traces
// the full product.
Integer evaluate_word(const Word& w, const Graph& g, EvalMode mode);

}  // namespace homlab
