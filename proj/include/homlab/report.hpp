#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "homlab/graph.hpp"

namespace homlab {

// Small-pattern oracle: all graphs on <= 6 vertices with their widths.
struct PatternLibrary {
  std::vector<Graph> graphs;
  std::vector<int> tw, pw, td;

  static const PatternLibrary& get();
};

// First pattern (in enumeration order) accepted by `use` whose hom counts into
// g and h differ.
std::optional<Graph> separating_pattern(const Graph& g, const Graph& h, const std::function<bool(int)>& use);

struct Verdict {
  enum class State { yes, no, skipped, error };
  std::string key;
  State state = State::skipped;
  std::string detail;
  double seconds = 0;
};

struct PairReport {
  std::string id;
  std::vector<Verdict> items;
  std::vector<std::string> violations;  // theorem-backed cross-checks that failed
  std::vector<std::string> notes;       // bounded-enumeration converses that failed
  double seconds = 0;

  std::optional<bool> get(const std::string& key) const;
  std::string to_text() const;  // key=value lines
};

struct ReportOptions {
  int k_max = 2;
  bool transport = true;  // run the solution transport maps on feasible witnesses
};

PairReport run_pair_report(const std::string& id, const Graph& g, const Graph& h, const ReportOptions& opt = {});

// Graph specs used by corpus files and the CLI: a file path, or
// '+'-separated parts such as C6, P4, K3, S3 (star), E2 (edgeless).
Graph graph_from_spec(const std::string& spec);

struct CorpusSummary {
  std::vector<PairReport> reports;
  std::vector<std::string> harness;  // degree-pair harness lines
  bool consistent = true;
};

// Corpus lines: `kmax K`, `pair G H`, `all-pairs N`, `degree-pair D`; `#`
// starts a comment. Relative graph file paths are tried against `base_dir`
// when they do not exist in the working directory.
CorpusSummary run_corpus(std::istream& in, int jobs, std::ostream* progress = nullptr,
                         const std::string& base_dir = "");
std::string format_summary(const CorpusSummary& s);

}  // namespace homlab
