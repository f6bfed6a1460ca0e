#pragma once
// The auxiliary one-forms attached to each critical point of the curve:
// xi_{alpha,0} and the tower dxi_k^alpha, in two independent presentations —
// global rational functions of Y (via repeated d/dx differentiation) and
// local chart expansions (via residues of the Bergman kernel).

#include <vector>

#include "ftr/bergman.hpp"
#include "ftr/curve.hpp"

namespace ftr {

// coeff * N(Y) * Y^e / ((Y - P)^a * F(Y)^b), with F the critical polynomial.
struct RatTerm {
  std::vector<CD> N;
  int e = 0;
  int a = 0;
  int b = 0;
  CD P = CD(0.0, 0.0);
};

using RatSum = std::vector<RatTerm>;

class XiForms {
 public:
  XiForms(const MirrorCurve& curve, const BergmanTable& table)
      : curve_(curve), table_(table) {}

  // xi_{alpha,0} = (1/sqrt(-1)) h1^alpha P_alpha / (Y - P_alpha).
  RatSum xi0(int alpha) const;

  // Coefficient function of W_k^alpha = d((-1)^k (d/dx)^k xi_{alpha,0}):
  // returns g with W_k = g(Y) dY.
  RatSum W_form(int alpha, int k) const;

  // Coefficient function of dxi_k^alpha = W_k^alpha - sum_{i<k} sum_beta
  // Bcheck_{k-1-i,0}^{alpha,beta} W_i^beta  (global rational form).
  RatSum dxi_form(int alpha, int k) const;

  // Local expansion in chart beta from the Bergman residue formula:
  // dxi_k^alpha = g(zeta) dzeta with
  //   g = s_k [ (2k+1) delta_{alpha beta} zeta^{-2k-2} + sum_s B^{beta,alpha}_{s,2k} zeta^s ],
  //   s_k = (2k-1)!! 2^{-k} / sqrt(-1)   (phase pinned by the rational route).
  SeriesCD dxi_in_chart(int alpha, int k, int beta) const;

  // Laurent expansion of a rational sum around Y = 0, known through Y^{trunc-1}.
  SeriesCD expand_at_origin(const RatSum& s, int trunc) const;

  // Expansion around chart beta in the local variable: substitutes Y = Y_beta(zeta)
  // and, when form = true, multiplies by dY/dzeta (expanding a one-form g dY).
  SeriesCD expand_in_chart(const RatSum& s, int beta, bool form) const;

  static RatSum add(const RatSum& x, const RatSum& y);
  static RatSum scale_sum(const RatSum& x, CD c);

  const MirrorCurve& curve() const { return curve_; }
  const BergmanTable& table() const { return table_; }

 private:
  RatTerm theta(const RatTerm& t) const;  // (1/f) d/dy = (Y^{m+1}/F) d/dY
  RatTerm ddY(const RatTerm& t) const;    // plain d/dY
  const MirrorCurve& curve_;
  const BergmanTable& table_;
};

}  // namespace ftr
