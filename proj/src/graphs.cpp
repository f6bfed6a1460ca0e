#include "ftr/graphs.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "ftr/error.hpp"

namespace ftr {

namespace {

long long factorial_ll(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Nondecreasing sequences of `len` integers in [lo, hi] with sum <= cap.
void gen_multisets(int len, int lo, int hi, int cap, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if ((int)cur.size() == len) {
    out.push_back(cur);
    return;
  }
  int start = cur.empty() ? lo : cur.back();
  for (int v = start; v <= hi && v <= cap; ++v) {
    cur.push_back(v);
    gen_multisets(len, lo, hi, cap - v, cur, out);
    cur.pop_back();
  }
}

// Ordered compositions of `total` into `len` parts >= 0.
void gen_compositions(int len, int total, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (len == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    gen_compositions(len - 1, total - v, cur, out);
    cur.pop_back();
  }
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Per-vertex label choice: marking, dilaton heights, and heights for the
// vertex's ordinary-leaf and edge-half slots (in the caller's slot order).
struct VertexOption {
  int beta = 0;
  std::vector<int> dil;          // sorted, entries >= 2
  std::vector<int> slot_heights; // leaves first, then edge halves
};

std::vector<VertexOption> vertex_options(int gv, int n_leaf_slots,
                                         int n_edge_slots, int n_markings,
                                         int max_dil) {
  std::vector<VertexOption> opts;
  int base = n_leaf_slots + n_edge_slots;
  int dmax = 3 * gv - 3 + base;  // from 2D <= budget(D) = 3g-3+base+D
  for (int D = 0; D <= std::max(0, dmax); ++D) {
    int val = base + D;
    if (2 * gv - 2 + val <= 0) continue;  // stability
    int budget = 3 * gv - 3 + val;
    if (budget < 0 || 2 * D > budget) continue;
    std::vector<std::vector<int>> dils;
    std::vector<int> cur;
    gen_multisets(D, 2, max_dil, budget, cur, dils);
    for (const auto& dil : dils) {
      int rem = budget - std::accumulate(dil.begin(), dil.end(), 0);
      std::vector<std::vector<int>> comps;
      gen_compositions(base, rem, cur, comps);
      for (const auto& comp : comps)
        for (int b = 0; b < n_markings; ++b) opts.push_back({b, dil, comp});
    }
  }
  return opts;
}

using Key = std::vector<long long>;

// Faithful encoding of the graph after relabeling vertices by perm
// (new index = perm[old index]).
Key encode(const StableGraph& G, const std::vector<int>& perm) {
  int V = (int)G.vertices.size();
  Key key;
  key.push_back(V);
  key.push_back((long long)G.edges.size());
  key.push_back((long long)G.leaves.size());
  // Vertex records in new-label order: (g, beta, dilaton multiset,
  // and for the unordered variant the leaf-height multiset).
  std::vector<int> inv(V);
  for (int v = 0; v < V; ++v) inv[perm[v]] = v;
  for (int i = 0; i < V; ++i) {
    int v = inv[i];
    key.push_back(G.vertices[v].g);
    key.push_back(G.vertices[v].beta);
    std::vector<int> dil;
    for (const auto& d : G.dilatons)
      if (d.vertex == v) dil.push_back(d.k);
    std::sort(dil.begin(), dil.end());
    key.push_back((long long)dil.size());
    for (int k : dil) key.push_back(k);
    if (!G.ordered_leaves) {
      std::vector<int> lf;
      for (const auto& l : G.leaves)
        if (l.vertex == v) lf.push_back(l.k);
      std::sort(lf.begin(), lf.end());
      key.push_back((long long)lf.size());
      for (int k : lf) key.push_back(k);
    }
  }
  if (G.ordered_leaves) {
    for (const auto& l : G.leaves) {
      key.push_back(perm[l.vertex]);
      key.push_back(l.k);
    }
  }
  std::vector<std::array<long long, 4>> es;
  for (const auto& e : G.edges) {
    long long a = perm[e.v1], b = perm[e.v2];
    long long ka = e.k1, kb = e.k2;
    if (a > b || (a == b && ka > kb)) {
      std::swap(a, b);
      std::swap(ka, kb);
    }
    es.push_back({a, b, ka, kb});
  }
  std::sort(es.begin(), es.end());
  for (const auto& e : es)
    for (long long x : e) key.push_back(x);
  return key;
}

// |Aut| = (# vertex permutations fixing the labeled structure) x (internal
// symmetries at fixed vertices: permutations of identical parallel edges,
// half-edge swaps of equal-height self-loops, permutations of identical
// dilaton leaves, and -- unordered variant only -- of identical leaves).
long long automorphism_order(const StableGraph& G) {
  int V = (int)G.vertices.size();
  std::vector<int> perm(V);
  std::iota(perm.begin(), perm.end(), 0);
  Key id_key = encode(G, perm);
  long long n_stab = 0;
  do {
    if (encode(G, perm) == id_key) ++n_stab;
  } while (std::next_permutation(perm.begin(), perm.end()));

  long long K = 1;
  std::map<std::array<int, 4>, int> ecls;
  for (const auto& e : G.edges) {
    if (e.v1 == e.v2) {
      ecls[{e.v1, -1, std::min(e.k1, e.k2), std::max(e.k1, e.k2)}]++;
      if (e.k1 == e.k2) K *= 2;  // half-edge swap of the self-loop
    } else {
      ecls[{e.v1, e.v2, e.k1, e.k2}]++;
    }
  }
  for (const auto& [cls, m] : ecls) K *= factorial_ll(m);
  std::map<std::pair<int, int>, int> dcls;
  for (const auto& d : G.dilatons) dcls[{d.vertex, d.k}]++;
  for (const auto& [cls, m] : dcls) K *= factorial_ll(m);
  if (!G.ordered_leaves) {
    std::map<std::pair<int, int>, int> lcls;
    for (const auto& l : G.leaves) lcls[{l.vertex, l.k}]++;
    for (const auto& [cls, m] : lcls) K *= factorial_ll(m);
  }
  return n_stab * K;
}

}  // namespace

int StableGraph::genus() const {
  int s = (int)edges.size() - (int)vertices.size() + 1;
  for (const auto& v : vertices) s += v.g;
  return s;
}

int StableGraph::valence(int v) const {
  int val = 0;
  for (const auto& e : edges) val += (e.v1 == v) + (e.v2 == v);
  for (const auto& l : leaves) val += (l.vertex == v);
  for (const auto& d : dilatons) val += (d.vertex == v);
  return val;
}

int StableGraph::height_budget(int v) const {
  return 3 * vertices[v].g - 3 + valence(v);
}

bool StableGraph::stable() const {
  for (int v = 0; v < (int)vertices.size(); ++v)
    if (2 * vertices[v].g - 2 + valence(v) <= 0) return false;
  return true;
}

bool StableGraph::heights_on_budget() const {
  for (int v = 0; v < (int)vertices.size(); ++v) {
    int s = 0;
    for (const auto& e : edges) {
      if (e.v1 == v) s += e.k1;
      if (e.v2 == v) s += e.k2;
    }
    for (const auto& l : leaves)
      if (l.vertex == v) s += l.k;
    for (const auto& d : dilatons)
      if (d.vertex == v) s += d.k;
    if (s != height_budget(v)) return false;
  }
  return true;
}

std::string StableGraph::to_string() const {
  std::ostringstream os;
  os << "V[";
  for (size_t v = 0; v < vertices.size(); ++v)
    os << (v ? " " : "") << "g" << vertices[v].g << "b" << vertices[v].beta;
  os << "] E[";
  for (size_t e = 0; e < edges.size(); ++e)
    os << (e ? " " : "") << edges[e].v1 << "-" << edges[e].v2 << ":"
       << edges[e].k1 << "," << edges[e].k2;
  os << "] L[";
  for (size_t l = 0; l < leaves.size(); ++l)
    os << (l ? " " : "") << leaves[l].vertex << ":" << leaves[l].k;
  os << "] D[";
  for (size_t d = 0; d < dilatons.size(); ++d)
    os << (d ? " " : "") << dilatons[d].vertex << ":" << dilatons[d].k;
  os << "] aut=" << aut;
  return os.str();
}

std::vector<StableGraph> enumerate_stable_graphs(int g, int n, int n_markings,
                                                 int max_dilaton_height,
                                                 bool ordered_leaves) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0)
    throw ConfigError("unstable target");
  if (n_markings < 1) throw ConfigError("need at least one marking");
  if (max_dilaton_height < 2)
    throw ConfigError("max dilaton height below the minimum height 2");

  std::map<Key, StableGraph> found;
  int e_cap = 3 * g - 3 + n;

  for (int b1 = 0; b1 <= g; ++b1) {
    int gsum = g - b1;
    for (int V = 1; V - 1 + b1 <= std::max(0, e_cap); ++V) {
      int E = V - 1 + b1;
      // Edge skeletons: multisets of E slots among the V + V(V-1)/2 pairs.
      std::vector<std::pair<int, int>> slots;
      for (int u = 0; u < V; ++u)
        for (int w = u; w < V; ++w) slots.emplace_back(u, w);
      std::vector<std::vector<int>> skels;
      std::vector<int> cur;
      gen_multisets(E, 0, (int)slots.size() - 1, INT32_MAX, cur, skels);
      for (const auto& skel : skels) {
        // Connectivity.
        Dsu dsu(V);
        for (int si : skel) dsu.unite(slots[si].first, slots[si].second);
        bool conn = true;
        for (int v = 1; v < V && conn; ++v) conn &= dsu.find(v) == dsu.find(0);
        if (!conn) continue;

        std::vector<std::vector<int>> gass;
        gen_compositions(V, gsum, cur, gass);
        // Leaf assignments: every map {0..n-1} -> {0..V-1}.
        std::vector<std::vector<int>> lass;
        {
          std::vector<int> la(n, 0);
          while (true) {
            lass.push_back(la);
            int j = 0;
            while (j < n && ++la[j] == V) la[j++] = 0;
            if (j == n) break;
          }
        }

        // Edge-half ports per vertex, in a fixed order.
        std::vector<std::vector<std::pair<int, int>>> ports(V);  // (edge, side)
        for (int ei = 0; ei < E; ++ei) {
          ports[slots[skel[ei]].first].push_back({ei, 0});
          ports[slots[skel[ei]].second].push_back({ei, 1});
        }

        for (const auto& gs : gass) {
          for (const auto& la : lass) {
            std::vector<std::vector<int>> leaves_at(V);
            for (int j = 0; j < n; ++j) leaves_at[la[j]].push_back(j);
            // Options per vertex, then their cartesian product.
            std::vector<std::vector<VertexOption>> vopts(V);
            bool any = true;
            for (int v = 0; v < V && any; ++v) {
              vopts[v] = vertex_options(gs[v], (int)leaves_at[v].size(),
                                        (int)ports[v].size(), n_markings,
                                        max_dilaton_height);
              any = !vopts[v].empty();
            }
            if (!any) continue;
            std::vector<size_t> pick(V, 0);
            while (true) {
              StableGraph G;
              G.ordered_leaves = ordered_leaves;
              G.vertices.resize(V);
              G.leaves.resize(n);
              std::vector<GraphEdge> ed(E);
              for (int ei = 0; ei < E; ++ei) {
                ed[ei].v1 = slots[skel[ei]].first;
                ed[ei].v2 = slots[skel[ei]].second;
              }
              for (int v = 0; v < V; ++v) {
                const VertexOption& o = vopts[v][pick[v]];
                G.vertices[v] = {gs[v], o.beta};
                int nl = (int)leaves_at[v].size();
                for (int i = 0; i < nl; ++i)
                  G.leaves[leaves_at[v][i]] = {v, o.slot_heights[i]};
                for (size_t i = 0; i < ports[v].size(); ++i) {
                  int h = o.slot_heights[nl + (int)i];
                  if (ports[v][i].second == 0)
                    ed[ports[v][i].first].k1 = h;
                  else
                    ed[ports[v][i].first].k2 = h;
                }
                for (int k : o.dil) G.dilatons.push_back({v, k});
              }
              for (auto& e : ed)
                if (e.v1 == e.v2 && e.k1 > e.k2) std::swap(e.k1, e.k2);
              G.edges = ed;

              std::vector<int> perm(V);
              std::iota(perm.begin(), perm.end(), 0);
              Key best = encode(G, perm);
              while (std::next_permutation(perm.begin(), perm.end())) {
                Key k = encode(G, perm);
                if (k < best) best = k;
              }
              if (!found.count(best)) {
                G.aut = automorphism_order(G);
                found.emplace(std::move(best), std::move(G));
              }

              int v = 0;
              while (v < V && ++pick[v] == vopts[v].size()) pick[v++] = 0;
              if (v == V) break;
            }
          }
        }
      }
    }
  }

  std::vector<StableGraph> out;
  out.reserve(found.size());
  for (auto& [k, G] : found) out.push_back(std::move(G));
  return out;
}

}  // namespace ftr
