#pragma once
// Pairwise local expansions of the Bergman kernel on the spectral curve.
//
// For charts a, b the kernel is
//   B(zeta, eta) = [ delta_{ab} / (zeta - eta)^2 + bracket_{ab}(zeta, eta) ] dzeta deta,
// and this table stores the coefficients of the regular double series
// bracket_{ab}(zeta, eta) = sum_{s,t} B^{a,b}_{s,t} zeta^s eta^t
// up to total degree K, computed from log-derivatives of Y_a(zeta) - Y_b(eta).

#include <vector>

#include "ftr/curve.hpp"

namespace ftr {

class BergmanTable {
 public:
  BergmanTable(const MirrorCurve& curve, int K);

  int K() const { return K_; }
  int n() const { return n_; }

  // [zeta^s eta^t] bracket_{ab} with zeta in chart a, eta in chart b.
  CD B(int a, int s, int b, int t) const {
    if (s < 0 || t < 0 || s + t > K_) throw OrderError("Bergman table index out of range");
    return tab_[(size_t)(a * n_ + b)][(size_t)(s * (K_ + 1) + t)];
  }

  // Bcheck_{k,l}^{a,b} = (2k-1)!!(2l-1)!! 2^{-(k+l+1)} B^{a,b}_{2k,2l}
  CD Bcheck(int a, int k, int b, int l) const;

 private:
  int K_, n_;
  std::vector<std::vector<CD>> tab_;
};

}  // namespace ftr
