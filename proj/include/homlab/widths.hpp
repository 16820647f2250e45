#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homlab/graph.hpp"
#include "homlab/hom.hpp"

namespace homlab {

// Width convention: max bag size - 1.

struct Decomposition {
  enum class Shape { tree, path, cycle };
  Shape shape = Shape::tree;
  Graph skeleton;                       // host graph on the bag indices
  std::vector<std::vector<int>> bags;   // bags[t] for skeleton vertex t

  int width() const;
};

struct DecompositionCheck {
  bool valid = true;
  int violated = 0;  // 1 = cover, 2 = edge, 3 = connectivity, 4 = shape
  std::string detail;
};

struct EliminationForest {
  std::vector<int> parent;  // -1 for roots
  int depth = 0;            // vertices on the longest root-leaf path
};

int treewidth(const Graph& g);
int pathwidth(const Graph& g);
int treedepth(const Graph& g);

Decomposition optimal_tree_decomposition(const Graph& g);
Decomposition optimal_path_decomposition(const Graph& g);
EliminationForest optimal_elimination_forest(const Graph& g);

DecompositionCheck validate_decomposition(const Graph& g, const Decomposition& d);
bool validate_forest(const Graph& g, const EliminationForest& f);

Word compile_pathwidth_word(const Graph& f, int k);
Word compile_treedepth_word(const Graph& f, int k);

// Graph realised by a treedepth word: word graph applied to 1^k.
LabelledGraph treedepth_word_graph(const Word& w);

struct CyclewidthSample {
  Graph graph;
  Word word;
  LabelledGraph closure;
};

CyclewidthSample cyclewidth_sample(int k, int length, std::uint64_t seed);
LabelledGraph trace_closure(const Word& w);

}  // namespace homlab
