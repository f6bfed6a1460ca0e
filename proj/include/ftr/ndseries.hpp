#pragma once
// Dense multivariate Laurent coefficient windows for up to five variables:
// the local-expansion storage behind the residue recursion.  An NdSeries
// holds coefficients of prod_j zeta_j^{e_j} for lo[j] <= e_j <= hi[j];
// exponents outside the window are zero by the pole bounds of the recursion
// (writing a non-negligible coefficient below lo is an error), and
// valid_hi[j] records the highest exponent on axis j actually computed, so
// comparisons never read past what a source of limited order could fill.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ftr/error.hpp"
#include "ftr/scalar.hpp"

namespace ftr {

struct NdSeries {
  int rank = 0;
  std::array<int, 5> lo{}, hi{}, valid_hi{};
  std::vector<CD> c;

  static NdSeries zeros(int rank, const std::array<int, 5>& lo,
                        const std::array<int, 5>& hi) {
    NdSeries s;
    s.rank = rank;
    s.lo = lo;
    s.hi = hi;
    s.valid_hi = hi;
    std::size_t n = 1;
    for (int a = 0; a < rank; ++a) {
      if (hi[a] < lo[a]) throw SeriesError("empty tensor window");
      n *= (std::size_t)(hi[a] - lo[a] + 1);
    }
    s.c.assign(n, CD(0.0, 0.0));
    return s;
  }

  int axis_size(int a) const { return hi[a] - lo[a] + 1; }

  bool in_window(const std::array<int, 5>& e) const {
    for (int a = 0; a < rank; ++a)
      if (e[a] < lo[a] || e[a] > hi[a]) return false;
    return true;
  }

  std::size_t flat(const std::array<int, 5>& e) const {
    std::size_t idx = 0;
    for (int a = 0; a < rank; ++a)
      idx = idx * (std::size_t)axis_size(a) + (std::size_t)(e[a] - lo[a]);
    return idx;
  }

  CD at(const std::array<int, 5>& e) const {
    return in_window(e) ? c[flat(e)] : CD(0.0, 0.0);
  }

  CD& ref(const std::array<int, 5>& e) { return c[flat(e)]; }

  // Accumulate a contribution.  Above hi: beyond the stored order, dropped.
  // Below lo: violates the declared pole bound unless numerically negligible.
  void add_at(const std::array<int, 5>& e, CD v, double pole_tol = 1e-8) {
    if (in_window(e)) {
      c[flat(e)] += v;
      return;
    }
    for (int a = 0; a < rank; ++a)
      if (e[a] < lo[a] && std::abs(v) > pole_tol)
        throw SeriesError("coefficient below the declared pole bound");
  }

  // Visit every stored entry as fn(exponents, value).
  template <class Fn>
  void for_each(Fn&& fn) const {
    if (c.empty()) return;
    std::array<int, 5> e = lo;
    for (std::size_t i = 0; i < c.size(); ++i) {
      fn(e, c[i]);
      for (int a = rank - 1; a >= 0; --a) {
        if (++e[a] <= hi[a]) break;
        e[a] = lo[a];
      }
    }
  }
};

}  // namespace ftr
