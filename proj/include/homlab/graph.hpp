#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "homlab/common.hpp"

namespace homlab {

using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1.
//
// Composition operations may collapse an edge into a self-loop. The loop is
// dropped from the edge set, but `has_loop()` remembers it: such a graph has
// no homomorphisms into any loopless target, so hom counts treat it as zero.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n) : Graph(n, {}) {}
  // Strict constructor: rejects loops, duplicates and out-of-range endpoints.
  Graph(int n, const std::vector<Edge>& edges);

  // Lenient constructor used by compositions: drops loops (recording them)
  // and duplicate edges.
  static Graph normalized(int n, const std::vector<Edge>& edges, bool had_loop = false);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }  // u < v, sorted
  const std::vector<int>& neighbours(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(int u, int v) const;
  bool has_loop() const { return loop_; }

  bool operator==(const Graph& o) const {
    return n_ == o.n_ && edges_ == o.edges_ && loop_ == o.loop_;
  }

  Graph relabel(const std::vector<int>& perm) const;  // vertex v -> perm[v]
  Graph induced(const std::vector<int>& vertices) const;
  std::vector<std::vector<int>> components() const;
  bool connected() const;

private:
  void build();

  int n_ = 0;
  bool loop_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint8_t> matrix_;  // dense adjacency when n is small
};

struct LabelledGraph {
  Graph graph;
  std::vector<int> labels;

  int arity() const { return static_cast<int>(labels.size()); }
  bool operator==(const LabelledGraph&) const = default;
};

struct BilabelledGraph {
  Graph graph;
  std::vector<int> in;
  std::vector<int> out;

  int arity_in() const { return static_cast<int>(in.size()); }
  int arity_out() const { return static_cast<int>(out.size()); }
  bool operator==(const BilabelledGraph&) const = default;
};

using AnyGraph = std::variant<Graph, LabelledGraph, BilabelledGraph>;

// --- standard graphs -------------------------------------------------------
Graph complete_graph(int n);
Graph path_graph(int n);  // n vertices
Graph cycle_graph(int n);
Graph star_graph(int leaves);
Graph disjoint_union(const Graph& a, const Graph& b);

LabelledGraph ones_graph(int k);         // k isolated, distinctly labelled vertices
BilabelledGraph identity_graph(int k);   // k vertices, in = out = (0..k-1)
BilabelledGraph adjacency_graph();       // K2 with in = (0), out = (1)

// --- algebra ---------------------------------------------------------------
LabelledGraph glue(const LabelledGraph& a, const LabelledGraph& b);
BilabelledGraph concat(const BilabelledGraph& a, const BilabelledGraph& b);
LabelledGraph apply(const BilabelledGraph& a, const LabelledGraph& v);  // a . v
BilabelledGraph parallel(const BilabelledGraph& a, const BilabelledGraph& b);
BilabelledGraph reverse(const BilabelledGraph& f);
LabelledGraph identify_ends(const BilabelledGraph& f);
Graph underlying(const LabelledGraph& f);
Graph underlying(const BilabelledGraph& f);

// --- io --------------------------------------------------------------------
class ParseError : public Error {
public:
  ParseError(int line, const std::string& msg);
  int line() const { return line_; }

private:
  int line_;
};

AnyGraph parse_graph(const std::string& text);
AnyGraph read_graph_file(const std::string& path);
Graph read_plain_graph_file(const std::string& path);
std::string format_graph(const Graph& g);
std::string format_graph(const LabelledGraph& g);
std::string format_graph(const BilabelledGraph& g);

// --- isomorphism and enumeration ------------------------------------------
bool are_isomorphic(const Graph& g, const Graph& h);

// Canonical edge bitmask (bit index of pair (i,j), i<j, is the position in
// the colex-free row order 01,02,..,0n-1,12,...). n <= 11.
std::uint64_t canonical_code(const Graph& g);
Graph from_code(int n, std::uint64_t code);

using GraphPredicate = std::function<bool(const Graph&)>;
std::vector<Graph> enumerate_graphs(int n_max, const GraphPredicate& pred = nullptr,
                                    bool include_empty = false);

bool is_forest(const Graph& g);
bool is_tree(const Graph& g);  // connected forest with at least one vertex

}  // namespace homlab
