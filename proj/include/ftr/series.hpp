#pragma once
// Truncated Laurent/power series in one formal variable.
//
// Representation:
//   - min_deg : degree of coeffs[0] (may be negative);
//   - trunc   : first UNKNOWN degree (coefficients at degree >= trunc are
//               unknown, not zero);
//   - coeffs  : stored coefficients; degrees in [min_deg + coeffs.size(), trunc)
//               are known to be zero (implicit zero tail, keeps polynomials
//               compact);
//   - var     : cosmetic variable tag.
//
// Truncation metadata propagates through every operation by the min rule
// (shifted by min-degrees for multiplication), so comparing coefficients
// beyond what either operand knows is impossible by construction.

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <vector>

#include "ftr/error.hpp"
#include "ftr/scalar.hpp"

namespace ftr {

// "Effectively infinite" truncation order used for exactly-known polynomials.
inline constexpr int kPolyTrunc = 1 << 20;

template <class T>
struct TruncSeries {
  int min_deg = 0;
  int trunc = kPolyTrunc;
  std::vector<T> coeffs;
  char var = 'z';

  TruncSeries() = default;
  TruncSeries(int md, int tr, std::vector<T> cs, char v = 'z')
      : min_deg(md), trunc(tr), coeffs(std::move(cs)), var(v) {
    if ((long)coeffs.size() > (long)trunc - min_deg) coeffs.resize(std::max(0, trunc - min_deg));
  }

  bool known(int k) const { return k < trunc; }

  // Coefficient at degree k. Degrees below the stored window are known zero;
  // degrees at or beyond trunc are unknown and must not be read.
  T at(int k) const {
    if (!known(k)) throw OrderError("coefficient read at/beyond truncation order");
    long idx = (long)k - min_deg;
    if (idx < 0 || idx >= (long)coeffs.size()) return T(0);
    return coeffs[idx];
  }

  bool is_known_zero() const {
    for (const auto& c : coeffs)
      if (!is_zero(c)) return false;
    return true;
  }

  // Degree of the first nonzero stored coefficient, or trunc when the series
  // is zero as far as it is known.
  int order() const {
    for (size_t i = 0; i < coeffs.size(); ++i)
      if (!is_zero(coeffs[i])) return min_deg + (int)i;
    return trunc;
  }

  TruncSeries truncated(int new_trunc) const {
    TruncSeries r = *this;
    r.trunc = std::min(trunc, new_trunc);
    long keep = (long)r.trunc - min_deg;
    if (keep < 0) keep = 0;
    if ((long)r.coeffs.size() > keep) r.coeffs.resize(keep);
    if (r.coeffs.empty()) r.min_deg = std::min(r.min_deg, r.trunc);
    return r;
  }
};

template <class T>
TruncSeries<T> make_const(const T& c, char var = 'z') {
  return TruncSeries<T>(0, kPolyTrunc, {c}, var);
}

// Exactly-known polynomial with ascending coefficients starting at min_deg.
template <class T>
TruncSeries<T> make_poly(int min_deg, std::vector<T> cs, char var = 'z') {
  return TruncSeries<T>(min_deg, kPolyTrunc, std::move(cs), var);
}

// Monomial c * var^k, exactly known.
template <class T>
TruncSeries<T> make_monomial(const T& c, int k, char var = 'z') {
  return TruncSeries<T>(k, kPolyTrunc, {c}, var);
}

template <class T>
TruncSeries<T> series_zero(int trunc, char var = 'z') {
  return TruncSeries<T>(trunc, trunc, {}, var);
}

// ---------------------------------------------------------------------------

template <class T>
TruncSeries<T> add(const TruncSeries<T>& a, const TruncSeries<T>& b) {
  int tr = std::min(a.trunc, b.trunc);
  int lo = std::min(a.min_deg, b.min_deg);
  if (lo >= tr) return TruncSeries<T>(tr, tr, {}, a.var);
  int hi_stored = std::min(
      tr, std::max(a.min_deg + (int)a.coeffs.size(), b.min_deg + (int)b.coeffs.size()));
  std::vector<T> cs;
  for (int k = lo; k < hi_stored; ++k) {
    T v(0);
    if (k >= a.min_deg && k < a.min_deg + (int)a.coeffs.size()) v += a.coeffs[k - a.min_deg];
    if (k >= b.min_deg && k < b.min_deg + (int)b.coeffs.size()) v += b.coeffs[k - b.min_deg];
    cs.push_back(v);
  }
  return TruncSeries<T>(lo, tr, std::move(cs), a.var);
}

template <class T>
TruncSeries<T> negate(const TruncSeries<T>& a) {
  TruncSeries<T> r = a;
  for (auto& c : r.coeffs) c = -c;
  return r;
}

template <class T>
TruncSeries<T> sub(const TruncSeries<T>& a, const TruncSeries<T>& b) {
  return add(a, negate(b));
}

template <class T>
TruncSeries<T> scale(const TruncSeries<T>& a, const T& s) {
  TruncSeries<T> r = a;
  for (auto& c : r.coeffs) c = c * s;
  return r;
}

template <class T>
TruncSeries<T> add_scalar(const TruncSeries<T>& a, const T& s) {
  return add(a, make_const<T>(s, a.var));
}

// var^k * a
template <class T>
TruncSeries<T> shift(const TruncSeries<T>& a, int k) {
  TruncSeries<T> r = a;
  r.min_deg += k;
  if (r.trunc < kPolyTrunc) r.trunc += k;
  return r;
}

template <class T>
TruncSeries<T> mul(const TruncSeries<T>& a, const TruncSeries<T>& b) {
  long tr_l = std::min((long)a.trunc + b.min_deg, (long)b.trunc + a.min_deg);
  int tr = (int)std::min(tr_l, (long)kPolyTrunc);
  int lo = a.min_deg + b.min_deg;
  if (a.coeffs.empty() || b.coeffs.empty() || lo >= tr) {
    return TruncSeries<T>(std::min(lo, tr), tr, {}, a.var);
  }
  long n_full = (long)a.coeffs.size() + (long)b.coeffs.size() - 1;
  long n = std::min(n_full, (long)tr - lo);
  if (n <= 0) return TruncSeries<T>(std::min(lo, tr), tr, {}, a.var);
  std::vector<T> cs((size_t)n, T(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (is_zero(a.coeffs[i])) continue;
    size_t jmax = std::min(b.coeffs.size(), (size_t)std::max<long>(0, n - (long)i));
    for (size_t j = 0; j < jmax; ++j) cs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return TruncSeries<T>(lo, tr, std::move(cs), a.var);
}

// 1/a.  Requires a nonzero leading coefficient within the known window.
template <class T>
TruncSeries<T> reciprocal(const TruncSeries<T>& a) {
  int d = a.order();
  if (d >= a.trunc) throw SeriesError("non-unit divisor");
  if (a.trunc >= kPolyTrunc)
    throw SeriesError("reciprocal of exact polynomial requires explicit truncation order");
  long L = (long)a.trunc - d;  // number of known relative coefficients
  std::vector<T> av((size_t)L, T(0));
  for (long i = 0; i < L; ++i) {
    long idx = (long)(d - a.min_deg) + i;
    if (idx < (long)a.coeffs.size()) av[i] = a.coeffs[idx];
  }
  std::vector<T> bv((size_t)L, T(0));
  bv[0] = scalar_one<T>() / av[0];
  for (long n2 = 1; n2 < L; ++n2) {
    T s(0);
    for (long j = 1; j <= n2; ++j) s += av[j] * bv[n2 - j];
    bv[n2] = -s / av[0];
  }
  int lo = -d;
  long tr = (long)a.trunc - 2L * d;
  return TruncSeries<T>(lo, (int)std::min(tr, (long)kPolyTrunc), std::move(bv), a.var);
}

// 1/a expanded to `order` known relative coefficients past the leading one.
template <class T>
TruncSeries<T> reciprocal(const TruncSeries<T>& a, int order_trunc) {
  return reciprocal(a.truncated(order_trunc));
}

template <class T>
TruncSeries<T> div(const TruncSeries<T>& a, const TruncSeries<T>& b) {
  if (b.trunc >= kPolyTrunc) {
    if (a.trunc >= kPolyTrunc)
      throw SeriesError("division of exact polynomials requires explicit truncation order");
    int d = b.order();
    long bt = (long)a.trunc + d - a.min_deg;
    return mul(a, reciprocal(b.truncated((int)std::min(bt, (long)kPolyTrunc - 1))));
  }
  return mul(a, reciprocal(b));
}

template <class T>
TruncSeries<T> div(const TruncSeries<T>& a, const TruncSeries<T>& b, int order_trunc) {
  return mul(a.truncated(order_trunc), reciprocal(b.truncated(order_trunc)));
}

namespace detail {
// Dense fixed-window arithmetic used inside compose/reversion: plain vectors
// c[0..n), c[i] = coefficient of var^(i).
template <class T>
std::vector<T> dense_mul(const std::vector<T>& a, const std::vector<T>& b, size_t n) {
  std::vector<T> r(n, T(0));
  for (size_t i = 0; i < a.size() && i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}
}  // namespace detail

// a(b(var)).  The inner series must have positive true order.
template <class T>
TruncSeries<T> compose(const TruncSeries<T>& a, const TruncSeries<T>& b) {
  int d = b.order();
  if (d < 1) throw SeriesError("compose requires inner series of positive min-degree");
  long t1 = (a.min_deg >= 0) ? (long)b.trunc + (long)std::max(0, a.min_deg - 1) * d
                             : (long)b.trunc + (long)(a.min_deg - 1) * d;
  long t2 = (long)a.trunc * d;
  long tr_l = std::min(std::min(t1, t2), (long)kPolyTrunc);
  if (tr_l >= kPolyTrunc) {
    // Both operands exact.  Exact nonnegative-power composition stays a
    // polynomial; anything with negative powers needs an explicit truncation.
    if (a.min_deg < 0)
      throw SeriesError("compose of exact polynomials with negative powers requires truncation");
    int a_top = a.min_deg + (int)a.coeffs.size() - 1;
    int b_top = b.min_deg + (int)b.coeffs.size() - 1;
    tr_l = (long)std::max(0, a_top) * std::max(1, b_top) + 1;
  }
  bool exact = (a.trunc >= kPolyTrunc && b.trunc >= kPolyTrunc && a.min_deg >= 0);
  int out_trunc = exact ? kPolyTrunc : (int)tr_l;
  if (tr_l <= (long)a.min_deg * d) {
    int tshort = (int)std::max(tr_l, (long)a.min_deg * d);
    return TruncSeries<T>(tshort, tshort, {}, b.var);
  }

  // Work on a shifted dense axis: position i holds the coefficient of
  // var^(i - shift_amt), where shift_amt = m*d absorbs the most negative
  // power b^{-m} so that every intermediate lives at nonnegative positions.
  int m = (a.min_deg < 0) ? -a.min_deg : 0;
  long shift_amt = (long)m * d;
  long W = tr_l + shift_amt;
  if (W <= 0) {
    int tshort = (int)tr_l;
    return TruncSeries<T>(tshort, tshort, {}, b.var);
  }

  // Dense copy of b on the unshifted axis (zero-extended beyond its stored
  // window; degrees >= b.trunc cannot reach output degrees < tr_l by the
  // choice of tr_l above).
  std::vector<T> bd((size_t)W, T(0));
  for (size_t i = 0; i < b.coeffs.size(); ++i) {
    long deg = (long)b.min_deg + (long)i;
    if (deg >= 0 && deg < W) bd[(size_t)deg] = b.coeffs[i];
  }

  // Nonnegative part of a via Horner (unshifted axis).
  std::vector<T> pos((size_t)W, T(0));
  {
    int top = a.min_deg + (int)a.coeffs.size() - 1;
    for (int k = top; k >= 0; --k) {
      pos = detail::dense_mul(pos, bd, (size_t)W);
      T ak = (k >= a.min_deg && k - a.min_deg < (int)a.coeffs.size()) ? a.coeffs[k - a.min_deg]
                                                                      : T(0);
      pos[0] += ak;
    }
  }

  if (m == 0) {
    std::vector<T> cs(pos.begin(), pos.begin() + (size_t)tr_l);
    return TruncSeries<T>(0, out_trunc, std::move(cs), b.var);
  }

  // Negative part: sum_{k=-m}^{-1} a_k b^k = P(b) * b^{-m} with
  // P(X) = sum_{j=0}^{m-1} a_{j-m} X^j, and b^{-m} = var^{-shift_amt} * u^m
  // where u = var^d * (1/b) is a unit power series on the unshifted axis.
  TruncSeries<T> binv =
      reciprocal(b.truncated((int)std::min((long)kPolyTrunc - 1, W + (long)d)));
  std::vector<T> u((size_t)W, T(0));
  for (size_t i = 0; i < binv.coeffs.size(); ++i) {
    long deg = (long)binv.min_deg + (long)i + d;
    if (deg >= 0 && deg < W) u[(size_t)deg] = binv.coeffs[i];
  }
  std::vector<T> P((size_t)W, T(0));
  for (int j = m - 1; j >= 0; --j) {
    P = detail::dense_mul(P, bd, (size_t)W);
    T ak = (j < (int)a.coeffs.size()) ? a.coeffs[(size_t)j] : T(0);  // a_{j - m}
    P[0] += ak;
  }
  std::vector<T> um((size_t)W, T(0));
  um[0] = scalar_one<T>();
  for (int j = 0; j < m; ++j) um = detail::dense_mul(um, u, (size_t)W);
  std::vector<T> neg = detail::dense_mul(P, um, (size_t)W);  // shifted axis

  // Combine on the shifted axis: shifted[i] = neg[i] + pos[i - shift_amt].
  std::vector<T> cs;
  cs.reserve((size_t)W);
  for (long i = 0; i < W; ++i) {
    T v = neg[(size_t)i];
    long from = i - shift_amt;
    if (from >= 0 && from < W) v += pos[(size_t)from];
    cs.push_back(v);
  }
  return TruncSeries<T>((int)(-shift_amt), out_trunc, std::move(cs), b.var);
}

// Compositional inverse: g with f(g) = id.  Requires true order exactly 1.
// For exact-polynomial input, pass the desired truncation order explicitly.
template <class T>
TruncSeries<T> reversion(const TruncSeries<T>& f, int exact_order = 0) {
  if (f.order() != 1 || f.min_deg > 1)
    throw SeriesError("reversion requires series of min-degree exactly 1");
  if (f.min_deg < 1) {
    // stored leading zeros below degree 1 are fine as long as they are zero
    for (int k = f.min_deg; k < std::min(1, f.trunc); ++k)
      if (!is_zero(f.at(k))) throw SeriesError("reversion requires series of min-degree exactly 1");
  }
  int Tn = f.trunc;
  if (Tn >= kPolyTrunc) {
    if (exact_order < 2)
      throw SeriesError("reversion of exact polynomial requires explicit truncation order");
    Tn = exact_order;
  }
  if (Tn < 2) throw SeriesError("reversion needs at least the linear coefficient");
  T f1 = f.at(1);
  if (is_zero(f1)) throw SeriesError("reversion requires invertible leading coefficient");
  std::vector<T> fd((size_t)Tn, T(0));
  for (int k = 1; k < Tn; ++k) fd[(size_t)k] = (f.known(k) ? f.at(k) : T(0));
  std::vector<T> g((size_t)Tn, T(0));
  g[1] = scalar_one<T>() / f1;
  for (int n2 = 2; n2 < Tn; ++n2) {
    // e = f(g) mod var^{n2+1} with current g (g[n2] = 0 so far)
    size_t w = (size_t)n2 + 1;
    std::vector<T> e(w, T(0));
    // Horner over fd
    for (int k = Tn - 1; k >= 1; --k) {
      e = detail::dense_mul(e, g, w);
      e[0] += fd[(size_t)k];
    }
    e = detail::dense_mul(e, g, w);
    g[(size_t)n2] = -e[(size_t)n2] / f1;
  }
  std::vector<T> cs(g.begin() + 1, g.end());
  return TruncSeries<T>(1, Tn, std::move(cs), f.var);
}

// Principal-branch square root; true order must be even.
template <class T>
TruncSeries<T> sqrt_series(const TruncSeries<T>& a) {
  int d = a.order();
  if (d >= a.trunc) throw SeriesError("sqrt of series with no known nonzero coefficient");
  if (d % 2 != 0) throw SeriesError("sqrt of series with odd leading degree");
  if (a.trunc >= kPolyTrunc)
    throw SeriesError("sqrt of exact polynomial requires explicit truncation order");
  long L = (long)a.trunc - d;
  std::vector<T> av((size_t)L, T(0));
  for (long i = 0; i < L; ++i) {
    long idx = (long)(d - a.min_deg) + i;
    if (idx >= 0 && idx < (long)a.coeffs.size()) av[i] = a.coeffs[idx];
  }
  std::vector<T> sv((size_t)L, T(0));
  sv[0] = sqrt_scalar(av[0]);
  T two_s0 = sv[0] + sv[0];
  for (long n2 = 1; n2 < L; ++n2) {
    T s(0);
    for (long j = 1; j < n2; ++j) s += sv[j] * sv[n2 - j];
    sv[n2] = (av[n2] - s) / two_s0;
  }
  long tr = (long)a.trunc - d / 2;
  return TruncSeries<T>(d / 2, (int)std::min(tr, (long)kPolyTrunc), std::move(sv), a.var);
}

template <class T>
TruncSeries<T> sqrt_series(const TruncSeries<T>& a, int order_trunc) {
  return sqrt_series(a.truncated(order_trunc));
}

// exp(a) for a series with positive true order.
template <class T>
TruncSeries<T> exp_series(const TruncSeries<T>& a) {
  if (a.order() < 1) throw SeriesError("exp_series requires positive min-degree");
  int Tn = a.trunc;
  if (Tn >= kPolyTrunc) throw SeriesError("exp of exact polynomial requires explicit truncation");
  std::vector<T> e;
  T f = scalar_one<T>();
  for (int n2 = 0; n2 < Tn; ++n2) {
    if (n2 > 0) f = f / T(n2);
    e.push_back(f);
  }
  return compose(TruncSeries<T>(0, Tn, std::move(e), a.var), a);
}

// log(c + a) - log(c) for a series with positive true order and unit c = a_0;
// here the argument must have nonzero constant term: returns log(a/a_0).
template <class T>
TruncSeries<T> log_series_rel(const TruncSeries<T>& a) {
  if (a.trunc < 1 || is_zero(a.at(0))) throw SeriesError("log_series_rel requires a unit");
  int Tn = a.trunc;
  if (Tn >= kPolyTrunc) throw SeriesError("log of exact polynomial requires explicit truncation");
  T a0 = a.at(0);
  auto u = scale(add_scalar(a, -a0), scalar_one<T>() / a0);  // (a - a0)/a0, min-degree >= 1
  // log(1 + u) = sum (-1)^{k+1} u^k / k
  std::vector<T> l;
  l.push_back(T(0));
  T sgn = scalar_one<T>();
  for (int n2 = 1; n2 < Tn; ++n2) {
    l.push_back(sgn / T(n2));
    sgn = -sgn;
  }
  return compose(TruncSeries<T>(0, Tn, std::move(l), a.var), u);
}

template <class T>
TruncSeries<T> derivative(const TruncSeries<T>& a) {
  std::vector<T> cs;
  cs.reserve(a.coeffs.size());
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    int k = a.min_deg + (int)i;
    cs.push_back(a.coeffs[i] * T(k));
  }
  int tr = (a.trunc >= kPolyTrunc) ? kPolyTrunc : a.trunc - 1;
  return TruncSeries<T>(a.min_deg - 1, tr, std::move(cs), a.var);
}

// Antiderivative with zero constant term; the var^{-1} coefficient must vanish.
template <class T>
TruncSeries<T> antiderivative(const TruncSeries<T>& a) {
  std::vector<T> cs;
  cs.reserve(a.coeffs.size());
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    int k = a.min_deg + (int)i;
    if (k == -1) {
      if (!is_zero(a.coeffs[i])) throw SeriesError("antiderivative of var^{-1} term");
      cs.push_back(T(0));
      continue;
    }
    cs.push_back(a.coeffs[i] / T(k + 1));
  }
  int tr = (a.trunc >= kPolyTrunc) ? kPolyTrunc : a.trunc + 1;
  return TruncSeries<T>(a.min_deg + 1, tr, std::move(cs), a.var);
}

// Substitute var -> -var.
template <class T>
TruncSeries<T> flip_var(const TruncSeries<T>& a) {
  TruncSeries<T> r = a;
  for (size_t i = 0; i < r.coeffs.size(); ++i) {
    int k = r.min_deg + (int)i;
    if (k & 1) r.coeffs[i] = -r.coeffs[i];
  }
  return r;
}

// Substitute var -> s*var.
template <class T>
TruncSeries<T> scale_var(const TruncSeries<T>& a, const T& s) {
  TruncSeries<T> r = a;
  T sinv = (a.min_deg < 0) ? scalar_one<T>() / s : T(0);
  for (size_t i = 0; i < r.coeffs.size(); ++i) {
    int k = r.min_deg + (int)i;
    T f = scalar_one<T>();
    if (k >= 0)
      for (int j = 0; j < k; ++j) f = f * s;
    else
      for (int j = 0; j < -k; ++j) f = f * sinv;
    r.coeffs[i] = r.coeffs[i] * f;
  }
  return r;
}

template <class T>
T evaluate(const TruncSeries<T>& a, const T& x) {
  T acc(0);
  // positive part via Horner from the top
  int top = a.min_deg + (int)a.coeffs.size() - 1;
  for (int k = top; k >= std::max(a.min_deg, 0); --k) {
    acc = acc * x;
    acc += a.at(k);
  }
  if (a.min_deg < 0) {
    T xinv = scalar_one<T>() / x;
    T accn(0);
    for (int k = a.min_deg; k <= std::min(-1, top); ++k) {
      // accumulate a_k x^k
      T p = scalar_one<T>();
      for (int j = 0; j < -k; ++j) p = p * xinv;
      accn += a.at(k) * p;
    }
    acc += accn;
  }
  return acc;
}

// Max |difference| over the shared known window [lo, hi).
template <class T>
double max_abs_diff(const TruncSeries<T>& a, const TruncSeries<T>& b) {
  int hi = std::min(a.trunc, b.trunc);
  int lo = std::min(a.min_deg, b.min_deg);
  double m = 0.0;
  for (int k = lo; k < hi; ++k) {
    double d = abs_val(a.at(k) - b.at(k));
    if (d > m) m = d;
  }
  return m;
}

template <class T>
bool series_equal(const TruncSeries<T>& a, const TruncSeries<T>& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

template <class T>
std::string to_string(const TruncSeries<T>& a) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (is_zero(a.coeffs[i])) continue;
    if (!first) os << " + ";
    os << "(" << a.coeffs[i] << ")*" << a.var << "^" << (a.min_deg + (int)i);
    first = false;
  }
  if (first) os << "0";
  if (a.trunc < kPolyTrunc) os << " + O(" << a.var << "^" << a.trunc << ")";
  return os.str();
}

using SeriesCD = TruncSeries<CD>;
using SeriesRat = TruncSeries<Rat>;

}  // namespace ftr
