#pragma once
// Mirror curve of a football orbifold line: the spectral data of the
// superpotential x = W(Y), its critical points, and the local square-root
// charts at each critical point.

#include <map>
#include <vector>

#include "ftr/error.hpp"
#include "ftr/scalar.hpp"
#include "ftr/series.hpp"

namespace ftr {

struct CurveConfig {
  int m = 0;
  int r = 1;
  // Laurent coefficients of the potential: ell in [-m, r], ell != 0, with
  // qtilde[r] == 1.  qtilde[0] (if present) only shifts critical values.
  std::map<int, CD> qtilde;
  CD ptilde = CD(0.0, 0.0);  // equivariant shift in dW/dy
  int order = 26;            // chart expansion order in the local variable
};

struct Chart {
  CD P;                // critical point in the Y-plane
  CD u;                // critical value x = W(P)
  CD Delta;            // P * f'(P) = second derivative of W in y at P
  CD sqrt_Delta;       // principal square root
  CD h1;               // sqrt(2)/sqrt_Delta; the chart satisfies sqrt(Delta)*h1 = +sqrt(2)
  SeriesCD s;          // log(Y/P) as a series in the local variable zeta, x = u + zeta^2
  SeriesCD Y;          // Y(zeta) = P * exp(s)
  SeriesCD dY;         // dY/dzeta
  std::vector<CD> h;   // h[k] = -s_k (so y(zeta) = v - sum_k h[k] zeta^k), h[0] unused
};

class MirrorCurve {
 public:
  explicit MirrorCurve(const CurveConfig& cfg);

  int m() const { return cfg_.m; }
  int r() const { return cfg_.r; }
  int n_charts() const { return (int)charts_.size(); }
  int order() const { return cfg_.order; }
  const CurveConfig& config() const { return cfg_; }
  const Chart& chart(int a) const { return charts_.at((size_t)a); }

  // F(Y) = Y^m * dW/dy: the critical polynomial, ascending coefficients,
  // degree m + r with leading coefficient r.
  const std::vector<CD>& F_poly() const { return F_; }

  CD f_at(CD Y) const;       // dW/dy = F(Y)/Y^m
  CD F_at(CD Y) const { return poly_eval_local(F_, Y); }
  CD Fprime_at(CD Y) const;
  CD W_at(CD Y) const;       // principal branch for the log term

  // Laurent expansion of x = W(Y) - qtilde[0] around Y = 0 (no log term
  // allowed: requires ptilde == 0), known through Y^trunc.
  SeriesCD x_series_at0(int trunc) const;

 private:
  static CD poly_eval_local(const std::vector<CD>& c, CD z);
  CurveConfig cfg_;
  std::vector<CD> F_;
  std::vector<Chart> charts_;
};

}  // namespace ftr
