#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

// Stable k-WL colouring of V(G)^k, indexed like tuple_index.
struct WLColouring {
  int k = 1;
  std::vector<int> colour;
  int rounds_to_stability = 0;
  int class_count = 0;
};

struct WLComparison {
  bool indistinguishable = true;
  int separating_round = -1;  // first round whose colour histograms differ
  int rounds = 0;             // rounds until the joint partition is stable
  // Stable colour class sizes (colour id, count in G, count in H).
  std::vector<std::array<long, 3>> classes;
  WLColouring g;
  WLColouring h;  // colour ids comparable with g
};

// Atomic type of a tuple: equality pattern plus induced adjacency.
std::uint64_t atomic_type(const Graph& g, const std::vector<int>& t);

WLColouring wl_colouring(const Graph& g, int k);
WLComparison wl_compare(const Graph& g, const Graph& h, int k);
bool wl_indistinguishable(const Graph& g, const Graph& h, int k);

struct CorrespondenceReport {
  bool passed = true;
  int checked = 0;  // sample members checked
  int skipped = 0;  // members outside TW^k with labels in one bag
  std::vector<std::string> violations;
};

// For each sampled k-labelled graph T, equal stable colours must give equal
// entries of T_G and T_H.
CorrespondenceReport verify_colour_tensor_correspondence(const Graph& g, const Graph& h, int k,
                                                          const std::vector<LabelledGraph>& sample);

}  // namespace homlab
