#pragma once
// Stable labeled graphs underlying the ancestor / B-model graph sums.
//
// A labeled graph carries: vertices with (genus g(v), chart marking beta(v)),
// edges (unordered vertex pairs, self-loops allowed), ordered or unordered
// ordinary leaves, dilaton leaves, and a height k >= 0 on every half-edge and
// leaf.  A graph is stable when 2 g(v) - 2 + val(v) > 0 at every vertex; its
// genus is sum_v g(v) + (|E| - |V| + 1).  Nonzero weights require the exact
// per-vertex height budget sum_{h at v} k(h) = 3 g(v) - 3 + val(v), so the
// enumeration only emits graphs satisfying it.  Dilaton leaves carry heights
// k >= 2: height 1 would pair with the identity part of the R-matrix and make
// the sum infinite, so finiteness forces the bound.

#include <string>
#include <vector>

namespace ftr {

struct GraphVertex {
  int g = 0;     // genus >= 0
  int beta = 0;  // chart marking in {0 .. n_markings-1}
};

// Edge with endpoints v1 <= v2 (self-loop when equal); k1 / k2 are the
// heights of the half-edges at v1 / v2.  Self-loops are stored with k1 <= k2.
struct GraphEdge {
  int v1 = 0, v2 = 0;
  int k1 = 0, k2 = 0;
};

// Leaf attached to `vertex` with psi-height k.
struct GraphLeaf {
  int vertex = 0;
  int k = 0;
};

struct StableGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphLeaf> leaves;    // ordinary leaves; index = slot label
  std::vector<GraphLeaf> dilatons;  // dilaton leaves, heights >= 2
  std::vector<GraphEdge> edges;
  bool ordered_leaves = true;
  long long aut = 1;  // |Aut|

  int genus() const;
  int valence(int v) const;       // edge half-edges + leaves + dilatons at v
  int height_budget(int v) const; // 3 g(v) - 3 + val(v)
  bool stable() const;            // every vertex satisfies 2g-2+val > 0
  bool heights_on_budget() const; // per-vertex height sums hit the budget
  std::string to_string() const;
};

// All isomorphism classes of stable labeled graphs of total genus g with n
// ordinary leaves, markings in {0 .. n_markings-1}, exact per-vertex height
// budgets, and dilaton heights in [2, max_dilaton_height].  In the ordered
// variant automorphisms fix every ordinary leaf pointwise; in the unordered
// variant they may permute leaves of equal height at a vertex.  The returned
// list is duplicate-free, deterministic, and carries correct |Aut|.
// Throws ConfigError("unstable target") when 2g - 2 + n <= 0.
std::vector<StableGraph> enumerate_stable_graphs(int g, int n, int n_markings,
                                                 int max_dilaton_height,
                                                 bool ordered_leaves = true);

}  // namespace ftr
