#include "ftr/graphsum.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ftr/error.hpp"
#include "ftr/scalar.hpp"

namespace ftr {

namespace {

// principal branch: sqrt(-2) = i sqrt(2)
const CD kInvSqrtM2 = CD(1.0, 0.0) / std::sqrt(CD(-2.0, 0.0));

}  // namespace

CD hcheck(const MirrorCurve& curve, int alpha, int k) {
  if (k < 1) throw ConfigError("hcheck height must be positive");
  const Chart& ch = curve.chart(alpha);
  if (2 * k - 1 >= (int)ch.h.size())
    throw OrderError("curve order too small for the dilaton weight");
  const double df = to_double(odd_double_factorial(k));  // (2k-1)!!
  return CD(df * std::ldexp(1.0, 1 - k), 0.0) * ch.h[(std::size_t)(2 * k - 1)];
}

OmegaForm graph_weight_b(const StableGraph& G, const MirrorCurve& curve,
                         const BergmanTable& table, TauCorrelators& taus,
                         const GraphSumConventions& conv) {
  const int g = G.genus();
  const int N = (int)G.leaves.size();
  const int E = (int)G.edges.size();
  const int D = (int)G.dilatons.size();
  const double sq2 = std::sqrt(2.0);

  CD w = ((g - 1 + N) % 2) ? CD(-1.0, 0.0) : CD(1.0, 0.0);
  for (int v = 0; v < (int)G.vertices.size(); ++v) {
    const GraphVertex& gv = G.vertices[(std::size_t)v];
    const Chart& ch = curve.chart(gv.beta);
    w *= cd_pow(ch.h1 / sq2, 2 - 2 * gv.g - G.valence(v));
    std::vector<int> heights;
    for (const GraphLeaf& l : G.leaves)
      if (l.vertex == v) heights.push_back(l.k);
    for (const GraphLeaf& d : G.dilatons)
      if (d.vertex == v) heights.push_back(d.k);
    for (const GraphEdge& e : G.edges) {
      if (e.v1 == v) heights.push_back(e.k1);
      if (e.v2 == v) heights.push_back(e.k2);
    }
    w *= to_cd(taus.psi_intersection(gv.g, std::move(heights)));
  }
  for (const GraphEdge& edge : G.edges)
    w *= table.Bcheck(G.vertices[(std::size_t)edge.v1].beta, edge.k1,
                      G.vertices[(std::size_t)edge.v2].beta, edge.k2);
  for (int j = 0; j < N; ++j) w *= kInvSqrtM2;
  for (const GraphLeaf& d : G.dilatons)
    w *= kInvSqrtM2 * hcheck(curve, G.vertices[(std::size_t)d.vertex].beta, d.k);
  w /= CD((double)G.aut, 0.0);
  w *= conv.global * cd_pow(conv.genus, g) * cd_pow(conv.point, N) *
       cd_pow(conv.edge, E) * cd_pow(conv.dilaton, D);

  OmegaForm out;
  out.g = g;
  out.n = N;
  std::vector<int> alphas((std::size_t)N), ks((std::size_t)N);
  for (int j = 0; j < N; ++j) {
    alphas[(std::size_t)j] = G.vertices[(std::size_t)G.leaves[(std::size_t)j].vertex].beta;
    ks[(std::size_t)j] = G.leaves[(std::size_t)j].k;
  }
  out.add_term(std::move(alphas), std::move(ks), w);
  return out;
}

OmegaForm omega_graphsum(int g, int n, const MirrorCurve& curve,
                         const BergmanTable& table, TauCorrelators& taus,
                         const GraphSumConventions& conv) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) throw ConfigError("unstable target");
  const auto graphs = enumerate_stable_graphs(g, n, curve.n_charts(),
                                              3 * g - 3 + n + 2, true);
  OmegaForm acc;
  acc.g = g;
  acc.n = n;
  for (const StableGraph& G : graphs) {
    OmegaForm part = graph_weight_b(G, curve, table, taus, conv);
    for (const auto& [key, v] : part.terms) acc.add_term(key.first, key.second, v);
  }
  return acc;
}

AModelWeights::AModelWeights(const MirrorCurve& curve, const RMatrix& R)
    : curve_(&curve), nc_(curve.n_charts()) {
  if (R.n != nc_) throw ConfigError("R-matrix size does not match the curve");
  r_ = R.entries;
  K_ = r_.front().trunc - 1;
  for (const SeriesCD& e : r_) K_ = std::min(K_, e.trunc - 1);
  if (K_ < 1) throw OrderError("R-matrix order too small for the weight tables");

  // Edge tables: divide delta_{ab} - sum_g R_g^a(-z) R_g^b(-w) by (z + w).
  // With N = (z+w) Q the coefficients satisfy q_{p,0} = n_{p+1,0} and
  // q_{p,s} = n_{p+1,s} - q_{p+1,s-1}; the chain for p + s <= K_ - 1 stays
  // inside the region where the numerator is known, so exactly those entries
  // are exact.
  edge_.assign((std::size_t)nc_ * nc_, {});
  for (int a = 0; a < nc_; ++a)
    for (int b = 0; b < nc_; ++b) {
      std::vector<std::vector<CD>> nm((std::size_t)K_ + 1,
                                      std::vector<CD>((std::size_t)K_ + 1));
      for (int p = 0; p <= K_; ++p)
        for (int q = 0; q <= K_; ++q) {
          CD s(0.0, 0.0);
          for (int c = 0; c < nc_; ++c) s += rdisp(c, a, p) * rdisp(c, b, q);
          nm[(std::size_t)p][(std::size_t)q] =
              ((p == 0 && q == 0 && a == b) ? CD(1.0, 0.0) : CD(0.0, 0.0)) - s;
        }
      std::vector<CD>& qt = edge_[(std::size_t)(a * nc_ + b)];
      qt.assign((std::size_t)K_ * K_, CD(0.0, 0.0));
      for (int s = 0; s < K_; ++s)
        for (int p = K_ - 1; p >= 0; --p) {
          CD v = nm[(std::size_t)p + 1][(std::size_t)s];
          if (s > 0 && p + 1 < K_) v -= qt[(std::size_t)((p + 1) * K_ + s - 1)];
          qt[(std::size_t)(p * K_ + s)] = v;
        }
    }
}

CD AModelWeights::rdisp(int a, int b, int j) const {
  // The stored matrix is the reflection of the display's argument, so the
  // coefficient of z^j in the display's R(-z) is the stored coefficient.
  return r_[(std::size_t)(a * nc_ + b)].at(j);
}

CD AModelWeights::leaf(const USeries& utilde, int beta, int k) const {
  if ((int)utilde.size() != nc_) throw ConfigError("insertion chart count mismatch");
  if (k < 0 || k > K_) throw OrderError("R-matrix order too small for the leaf weight");
  CD s(0.0, 0.0);
  for (int a = 0; a < nc_; ++a) {
    const std::vector<CD>& u = utilde[(std::size_t)a];
    const int imax = std::min(k, (int)u.size() - 1);
    for (int i = 0; i <= imax; ++i) s += u[(std::size_t)i] * rdisp(a, beta, k - i);
  }
  return s;
}

CD AModelWeights::dilaton(int beta, int k) const {
  if (k < 2) throw ConfigError("dilaton height must be at least 2");
  if (k - 1 > K_) throw OrderError("R-matrix order too small for the dilaton weight");
  CD s(0.0, 0.0);
  for (int a = 0; a < nc_; ++a)
    s += rdisp(a, beta, k - 1) / curve_->chart(a).sqrt_Delta;
  return -s;
}

CD AModelWeights::edge(int a, int k, int b, int l) const {
  if (k < 0 || l < 0) throw ConfigError("negative edge height");
  if (k + l >= K_) throw OrderError("R-matrix order too small for the edge weight");
  return edge_[(std::size_t)(a * nc_ + b)][(std::size_t)(k * K_ + l)];
}

CD AModelWeights::vertex(int beta, int gv, std::vector<int> heights,
                         TauCorrelators& taus) const {
  const int val = (int)heights.size();
  return cd_pow(curve_->chart(beta).sqrt_Delta, 2 * gv - 2 + val) *
         to_cd(taus.psi_intersection(gv, std::move(heights)));
}

CD a_model_graphsum(int g, int n, const MirrorCurve& curve, const RMatrix& R,
                    const std::vector<USeries>& utilde, TauCorrelators& taus) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) throw ConfigError("unstable target");
  if ((int)utilde.size() != n) throw ConfigError("insertion count mismatch");
  const AModelWeights W(curve, R);
  const auto graphs = enumerate_stable_graphs(g, n, curve.n_charts(),
                                              3 * g - 3 + n + 2, true);
  CD acc(0.0, 0.0);
  for (const StableGraph& G : graphs) {
    CD w(1.0, 0.0);
    for (int v = 0; v < (int)G.vertices.size(); ++v) {
      const GraphVertex& gv = G.vertices[(std::size_t)v];
      std::vector<int> heights;
      for (const GraphLeaf& l : G.leaves)
        if (l.vertex == v) heights.push_back(l.k);
      for (const GraphLeaf& d : G.dilatons)
        if (d.vertex == v) heights.push_back(d.k);
      for (const GraphEdge& e : G.edges) {
        if (e.v1 == v) heights.push_back(e.k1);
        if (e.v2 == v) heights.push_back(e.k2);
      }
      w *= W.vertex(gv.beta, gv.g, std::move(heights), taus);
    }
    for (const GraphEdge& e : G.edges)
      w *= W.edge(G.vertices[(std::size_t)e.v1].beta, e.k1,
                  G.vertices[(std::size_t)e.v2].beta, e.k2);
    for (std::size_t j = 0; j < G.leaves.size(); ++j)
      w *= W.leaf(utilde[j], G.vertices[(std::size_t)G.leaves[j].vertex].beta,
                  G.leaves[j].k);
    for (const GraphLeaf& d : G.dilatons)
      w *= W.dilaton(G.vertices[(std::size_t)d.vertex].beta, d.k);
    acc += w / CD((double)G.aut, 0.0);
  }
  return acc;
}

}  // namespace ftr
