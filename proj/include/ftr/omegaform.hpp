#pragma once
// A stable correlation form written in the canonical odd-differential basis:
//   omega = sum over assignments  coeff * prod_j dxi_{ks[j]}^{alphas[j]}(Y_j).
// This is the exchange format between the residue recursion and the graph
// sum: both sides produce an OmegaForm and the comparison is coefficientwise.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "ftr/scalar.hpp"

namespace ftr {

struct OmegaForm {
  int g = 0, n = 0;
  // key: (alphas, ks), one entry per slot j = 0..n-1
  std::map<std::pair<std::vector<int>, std::vector<int>>, CD> terms;

  void add_term(std::vector<int> alphas, std::vector<int> ks, CD w) {
    if (w == CD(0.0, 0.0)) return;
    auto key = std::make_pair(std::move(alphas), std::move(ks));
    auto [it, fresh] = terms.emplace(std::move(key), w);
    if (!fresh) it->second += w;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [k, v] : terms) m = std::max(m, std::abs(v));
    return m;
  }

  void drop_below(double tol) {
    for (auto it = terms.begin(); it != terms.end();)
      it = (std::abs(it->second) <= tol) ? terms.erase(it) : std::next(it);
  }

  static double max_diff(const OmegaForm& A, const OmegaForm& B) {
    double m = 0.0;
    for (const auto& [k, v] : A.terms) {
      auto it = B.terms.find(k);
      m = std::max(m, std::abs(v - (it == B.terms.end() ? CD(0.0, 0.0)
                                                        : it->second)));
    }
    for (const auto& [k, v] : B.terms)
      if (!A.terms.count(k)) m = std::max(m, std::abs(v));
    return m;
  }

  // Average over all simultaneous slot permutations; a symmetric form is a
  // fixed point, so the defect against the original measures asymmetry.
  OmegaForm symmetrized() const {
    OmegaForm out;
    out.g = g;
    out.n = n;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    std::map<std::pair<std::vector<int>, std::vector<int>>, CD> acc;
    do {
      ++count;
      for (const auto& [key, v] : terms) {
        std::vector<int> a(n), k(n);
        for (int j = 0; j < n; ++j) {
          a[j] = key.first[perm[j]];
          k[j] = key.second[perm[j]];
        }
        acc[std::make_pair(std::move(a), std::move(k))] += v;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto& [key, v] : acc) out.terms[key] = v / (double)count;
    return out;
  }
};

}  // namespace ftr
