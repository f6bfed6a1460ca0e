#pragma once

// R-matrices on both sides of the correspondence:
//   - b_model_rmatrix: stationary-phase (formal Gaussian-moment) expansion of
//     the thimble integral  sqrt(-z)/(2 sqrt(pi)) * int_{gamma_beta}
//     exp((W(P_beta) - W(Y))/z) dxi_{alpha,0},
//     normalized so the diagonal leading term is 1;
//   - a_model_block: the large-radius block, a character sum over Z/nZ of
//     exponentials of Bernoulli-polynomial series in z/w;
//   - gamma_sum_block: the same block assembled from the Stirling expansion of
//     the closed Gamma-function sum (bookkeeping crosscheck);
//   - unitarity_defect and compare_rmatrices diagnostics.

#include <complex>
#include <vector>

#include "ftr/curve.hpp"
#include "ftr/series.hpp"

namespace ftr {

struct RMatrix {
  int n = 0;
  // Row-major entries; at(a, b) stores the series R_a^b (lower index a = row).
  std::vector<SeriesCD> entries;

  SeriesCD& at(int a, int b) { return entries[static_cast<std::size_t>(a) * n + b]; }
  const SeriesCD& at(int a, int b) const {
    return entries[static_cast<std::size_t>(a) * n + b];
  }
};

// Identity matrix of size n as series in z through order K (trunc K+1).
RMatrix rmatrix_identity(int n, int K);

// B-model R-matrix R~_alpha^beta(z) of the curve through order z^K.
// Entry (alpha, beta) integrates dxi_{alpha,0} over the thimble of chart beta
// by formal Gaussian moments: the coefficient of zeta^{2j} contributes
// (2j-1)!! (z/2)^{j+1} (1/sqrt(-1)), the j = -1 term being the principal-value
// moment of the double pole (diagonal only), which supplies the unit leading
// term.  Requires curve.order() >= 2K + 2.
RMatrix b_model_rmatrix(const MirrorCurve& curve, int K);

// Large-radius A-model block of size n: entry at(j, i) = (P)_j^i =
// (1/n) sum_{t=0}^{n-1} e^{2 pi i t (j-i)/n} exp( sum_{s>=1}
//   (-1)^{s+1} B_{s+1}(t/n) / (s(s+1)) (z/w)^s ),
// through order z^K.
RMatrix a_model_block(int n, CD w, int K);

// The same block from the closed Gamma-sum display: entry at(beta, alpha) =
// e^lambda/(n sqrt(2 pi lambda)) sum_h omega_{alpha,beta}^{-h}
// Gamma(lambda + h/n) lambda^{1 - lambda - h/n}, with lambda = w/z, each
// summand expanded by the asymptotic log-Gamma (Stirling) series.
RMatrix gamma_sum_block(int n, CD w, int K);

// max |coefficient| of (R(z) R^T(-z) - I) per z-order 0..K, where the product
// contracts the lower index: defect[k] = max_{a,b} |[z^k] sum_g R_g^a(z) R_g^b(-z) - delta|.
std::vector<double> unitarity_defect(const RMatrix& R);

// Per-order entrywise max deviation |A_a^b - B_a^b| (or |A_a^b - B_b^a| when
// transpose_second), orders 0..K.  Throws ConfigError on size mismatch.
std::vector<double> compare_rmatrices(const RMatrix& A, const RMatrix& B, int K,
                                      bool transpose_second = false);

// Normalized formal Gaussian moment: PV int zeta^{2j} e^{-zeta^2/a} dzeta
// equals gauss_moment(j) * (a/2)^j times int e^{-zeta^2/a} dzeta; defined for
// j >= -1 (j = -1 is the principal-value/finite-part moment).
Rat gauss_moment(int j);

}  // namespace ftr
