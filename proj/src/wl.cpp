#include "homlab/wl.hpp"

#include <algorithm>
#include <map>

#include "homlab/hom.hpp"
#include "homlab/widths.hpp"

namespace homlab {

std::uint64_t atomic_type(const Graph& g, const std::vector<int>& t) {
  if (t.size() > 8) throw Error("atomic_type: tuples longer than 8 are not supported");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      unsigned v = t[i] == t[j] ? 2 : g.adjacent(t[i], t[j]) ? 1 : 0;
      code = code << 2 | v;
    }
  return code;
}

namespace {

using Signature = std::vector<long>;

struct Refinement {
  std::vector<std::vector<int>> colour;  // per graph
  std::vector<std::vector<std::vector<long>>> histograms;  // per round, per graph
  int rounds = 0;
  int classes = 0;
};

std::vector<long> histogram(const std::vector<int>& colour, int classes) {
  std::vector<long> h(classes, 0);
  for (int c : colour) ++h[c];
  return h;
}

// Replaces signatures by their rank among all distinct signatures.
int intern(const std::vector<std::vector<Signature>>& sigs, std::vector<std::vector<int>>& out) {
  std::map<Signature, int> ids;
  for (const auto& per : sigs)
    for (const auto& s : per) ids.emplace(s, 0);
  int next = 0;
  for (auto& [s, id] : ids) id = next++;
  out.resize(sigs.size());
  for (std::size_t g = 0; g < sigs.size(); ++g) {
    out[g].resize(sigs[g].size());
    for (std::size_t t = 0; t < sigs[g].size(); ++t) out[g][t] = ids.at(sigs[g][t]);
  }
  return next;
}

// One refinement round for k = 1: old colour, neighbour colours and the
// colour histogram of the whole graph determine the multiset in the update.
std::vector<Signature> round_k1(const Graph& g, const std::vector<int>& c, int hist_id) {
  std::vector<Signature> sigs(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    Signature s{c[v], hist_id};
    for (int u : g.neighbours(v)) s.push_back(c[u]);
    std::sort(s.begin() + 2, s.end());
    sigs[v] = std::move(s);
  }
  return sigs;
}

std::vector<Signature> round_general(const Graph& g, int k, const std::vector<int>& c) {
  int n = g.vertex_count();
  std::size_t count = ipow(n, k);
  std::vector<Signature> sigs(count);
  std::vector<std::size_t> weight(k);
  for (int p = k - 1, w = 1; p >= 0; --p, w *= n) weight[p] = w;
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<int> tuple = index_tuple(t, n, k);
    std::vector<int> ext = tuple;
    ext.push_back(0);
    std::vector<std::vector<long>> items(n);
    for (int x = 0; x < n; ++x) {
      ext.back() = x;
      auto& item = items[x];
      item.push_back(static_cast<long>(atomic_type(g, ext)));
      for (int p = 0; p < k; ++p)
        item.push_back(c[static_cast<std::size_t>(static_cast<long>(t) + (x - tuple[p]) * static_cast<long>(weight[p]))]);
    }
    std::sort(items.begin(), items.end());
    Signature s{c[t]};
    for (const auto& item : items) s.insert(s.end(), item.begin(), item.end());
    sigs[t] = std::move(s);
  }
  return sigs;
}

Refinement refine(const std::vector<const Graph*>& graphs, int k) {
  if (k < 1) throw Error("k-WL needs k >= 1");
  for (const Graph* g : graphs) {
    if (ipow(g->vertex_count(), k) > static_cast<std::uint64_t>(Caps::get().wl_tuples))
      throw CapError("k-WL tuple count exceeds cap");
  }
  Refinement r;
  std::vector<std::vector<Signature>> sigs(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = *graphs[i];
    std::size_t count = ipow(g.vertex_count(), k);
    sigs[i].resize(count);
    for (std::size_t t = 0; t < count; ++t)
      sigs[i][t] = {static_cast<long>(atomic_type(g, index_tuple(t, g.vertex_count(), k)))};
  }
  r.classes = intern(sigs, r.colour);
  for (;;) {
    std::vector<std::vector<long>> hist;
    for (const auto& c : r.colour) hist.push_back(histogram(c, r.classes));
    r.histograms.push_back(hist);

    std::map<std::vector<long>, int> hist_ids;
    for (const auto& h : hist) hist_ids.emplace(h, 0);
    int next_hist = 0;
    for (auto& [h, id] : hist_ids) id = next_hist++;

    for (std::size_t i = 0; i < graphs.size(); ++i)
      sigs[i] = k == 1 ? round_k1(*graphs[i], r.colour[i], hist_ids.at(hist[i]))
                       : round_general(*graphs[i], k, r.colour[i]);
    std::vector<std::vector<int>> next;
    int classes = intern(sigs, next);
    if (classes == r.classes) break;  // joint partition stable
    r.colour = std::move(next);
    r.classes = classes;
    ++r.rounds;
  }
  return r;
}

}  // namespace

WLColouring wl_colouring(const Graph& g, int k) {
  Refinement r = refine({&g}, k);
  return {k, std::move(r.colour[0]), r.rounds, r.classes};
}

WLComparison wl_compare(const Graph& g, const Graph& h, int k) {
  Refinement r = refine({&g, &h}, k);
  WLComparison out;
  out.rounds = r.rounds;
  for (std::size_t i = 0; i < r.histograms.size(); ++i)
    if (r.histograms[i][0] != r.histograms[i][1]) {
      out.indistinguishable = false;
      out.separating_round = static_cast<int>(i);
      break;
    }
  const auto& last = r.histograms.back();
  for (int c = 0; c < r.classes; ++c) out.classes.push_back({c, last[0][c], last[1][c]});
  out.g = {k, std::move(r.colour[0]), r.rounds, r.classes};
  out.h = {k, std::move(r.colour[1]), r.rounds, r.classes};
  return out;
}

bool wl_indistinguishable(const Graph& g, const Graph& h, int k) { return wl_compare(g, h, k).indistinguishable; }

CorrespondenceReport verify_colour_tensor_correspondence(const Graph& g, const Graph& h, int k,
                                                          const std::vector<LabelledGraph>& sample) {
  CorrespondenceReport rep;
  WLComparison cmp = wl_compare(g, h, k);
  for (std::size_t s = 0; s < sample.size(); ++s) {
    const LabelledGraph& t = sample[s];
    if (t.arity() != k) {
      ++rep.skipped;
      continue;
    }
    // labels in one bag of a width-k decomposition <=> tw(F + clique on labels) <= k
    std::vector<Edge> edges = t.graph.edges();
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (t.labels[a] != t.labels[b]) edges.emplace_back(t.labels[a], t.labels[b]);
    if (treewidth(Graph::normalized(t.graph.vertex_count(), edges)) > k) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    HomTensor tg = hom_tensor(t, g), th = hom_tensor(t, h);
    std::map<int, Integer> seen;
    auto check = [&](const std::vector<int>& colour, const HomTensor& tensor, const char* side) {
      for (std::size_t i = 0; i < colour.size(); ++i) {
        auto [it, fresh] = seen.emplace(colour[i], tensor.entries[i]);
        if (!fresh && it->second != tensor.entries[i]) {
          rep.passed = false;
          rep.violations.push_back("sample " + std::to_string(s) + ": colour " + std::to_string(colour[i]) +
                                   " has entries " + it->second.get_str() + " and " +
                                   tensor.entries[i].get_str() + " (" + side + " tuple " + std::to_string(i) + ")");
        }
      }
    };
    check(cmp.g.colour, tg, "G");
    check(cmp.h.colour, th, "H");
  }
  return rep;
}

}  // namespace homlab
