#include "ftr/dxi.hpp"

namespace ftr {

namespace {

std::vector<CD> poly_mul(const std::vector<CD>& a, const std::vector<CD>& b) {
  std::vector<CD> r(a.size() + b.size() - 1, CD(0.0, 0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<CD> poly_add(std::vector<CD> a, const std::vector<CD>& b, CD cb) {
  if (a.size() < b.size()) a.resize(b.size(), CD(0.0, 0.0));
  for (size_t j = 0; j < b.size(); ++j) a[j] += cb * b[j];
  return a;
}

std::vector<CD> poly_deriv(const std::vector<CD>& a) {
  if (a.size() <= 1) return {CD(0.0, 0.0)};
  std::vector<CD> r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * CD((double)i, 0.0);
  return r;
}

// Taylor shift: N(P + w) as a polynomial in w.
std::vector<CD> poly_shift(const std::vector<CD>& a, CD P) {
  std::vector<CD> r(a.size(), CD(0.0, 0.0));
  for (size_t i = a.size(); i-- > 0;) {
    // multiply r by (w + P) and add a[i]
    std::vector<CD> nr(r.size(), CD(0.0, 0.0));
    for (size_t j = 0; j + 1 < r.size(); ++j) nr[j + 1] += r[j];
    for (size_t j = 0; j < r.size(); ++j) nr[j] += P * r[j];
    nr[0] += a[i];
    r = std::move(nr);
  }
  return r;
}

SeriesCD series_pow_recip(const SeriesCD& s, int p, int trunc) {
  // s^{-p} with p >= 0
  SeriesCD acc = make_const<CD>(CD(1.0, 0.0), s.var).truncated(trunc + std::abs(s.min_deg * p) + 4);
  if (p == 0) return acc;
  SeriesCD inv = reciprocal(s);
  for (int i = 0; i < p; ++i) acc = mul(acc, inv);
  return acc;
}

}  // namespace

RatSum XiForms::xi0(int alpha) const {
  const Chart& ch = curve_.chart(alpha);
  CD c = CD(0.0, -1.0) * ch.h1;  // 1/sqrt(-1) = -i
  RatTerm t;
  t.N = {c * ch.P};
  t.e = 0;
  t.a = 1;
  t.b = 0;
  t.P = ch.P;
  return {t};
}

namespace {

// Shared numerator of the quotient-rule step for N(Y) Y^e / ((Y-P)^a F^b):
//   (N' Y + e N)(Y - P) F  -  N Y (a F + b (Y - P) F')
std::vector<CD> deriv_numerator(const RatTerm& t, const std::vector<CD>& F) {
  const std::vector<CD> YmP = {-t.P, CD(1.0, 0.0)};
  const std::vector<CD> Ypoly = {CD(0.0, 0.0), CD(1.0, 0.0)};
  std::vector<CD> NpY = poly_mul(poly_deriv(t.N), Ypoly);
  std::vector<CD> A = poly_add(NpY, t.N, CD((double)t.e, 0.0));
  std::vector<CD> lhs = poly_mul(poly_mul(A, YmP), F);
  std::vector<CD> inner = poly_add(poly_mul({CD((double)t.a, 0.0)}, F),
                                   poly_mul(YmP, poly_deriv(F)), CD((double)t.b, 0.0));
  std::vector<CD> rhs = poly_mul(poly_mul(t.N, Ypoly), inner);
  return poly_add(lhs, rhs, CD(-1.0, 0.0));
}

}  // namespace

RatTerm XiForms::theta(const RatTerm& t) const {
  RatTerm out;
  out.N = deriv_numerator(t, curve_.F_poly());
  out.e = t.e + curve_.m();
  out.a = t.a + 1;
  out.b = t.b + 2;
  out.P = t.P;
  return out;
}

RatTerm XiForms::ddY(const RatTerm& t) const {
  RatTerm out;
  out.N = deriv_numerator(t, curve_.F_poly());
  out.e = t.e - 1;
  out.a = t.a + 1;
  out.b = t.b + 1;
  out.P = t.P;
  return out;
}

RatSum XiForms::W_form(int alpha, int k) const {
  RatTerm t = xi0(alpha)[0];
  for (int i = 0; i < k; ++i) t = theta(t);
  t = ddY(t);
  if (k % 2 == 1)
    for (auto& c : t.N) c = -c;
  return {t};
}

RatSum XiForms::dxi_form(int alpha, int k) const {
  RatSum acc = W_form(alpha, k);
  for (int i = 0; i < k; ++i)
    for (int beta = 0; beta < curve_.n_charts(); ++beta) {
      CD w = -table_.Bcheck(alpha, k - 1 - i, beta, 0);
      if (w == CD(0.0, 0.0)) continue;
      acc = add(acc, scale_sum(W_form(beta, i), w));
    }
  return acc;
}

SeriesCD XiForms::dxi_in_chart(int alpha, int k, int beta) const {
  const int K = table_.K();
  if (2 * k > K) throw OrderError("Bergman table too shallow for dxi_in_chart");
  double fac = to_double(odd_double_factorial(k)) / std::pow(2.0, (double)k);
  // s_k = (2k-1)!! 2^{-k} / sqrt(-1); the phase is pinned by requiring agreement
  // with the chart-independent rational form of dxi_k for every k (for k = 0
  // this is dxi_0 = d(xi_{alpha,0})).
  CD sk = CD(0.0, -fac);
  int reg_len = K - 2 * k;  // regular coefficients s = 0 .. reg_len
  int lo = (alpha == beta) ? (-2 * k - 2) : 0;
  std::vector<CD> cs((size_t)(reg_len + 1 - lo), CD(0.0, 0.0));
  if (alpha == beta) cs[0] = sk * CD((double)(2 * k + 1), 0.0);
  for (int s = 0; s <= reg_len; ++s) cs[(size_t)(s - lo)] += sk * table_.B(beta, s, alpha, 2 * k);
  return SeriesCD(lo, reg_len + 1, std::move(cs), 'z');
}

SeriesCD XiForms::expand_at_origin(const RatSum& sum, int trunc) const {
  const auto& F = curve_.F_poly();
  SeriesCD acc = series_zero<CD>(trunc, 'Y');
  for (const auto& t : sum) {
    int guard = trunc + std::abs(t.e) + (int)t.N.size() + 4;
    SeriesCD part = make_poly<CD>(0, t.N, 'Y').truncated(guard);
    part = shift(part, t.e);
    // (Y - P)^{-a}
    SeriesCD ymp = make_poly<CD>(0, {-t.P, CD(1.0, 0.0)}, 'Y').truncated(guard);
    part = mul(part, series_pow_recip(ymp, t.a, guard));
    // F^{-b}
    SeriesCD fs = make_poly<CD>(0, F, 'Y').truncated(guard);
    part = mul(part, series_pow_recip(fs, t.b, guard));
    acc = ftr::add(acc, part.truncated(trunc));
  }
  return acc;
}

SeriesCD XiForms::expand_in_chart(const RatSum& sum, int beta, bool form) const {
  const Chart& ch = curve_.chart(beta);
  SeriesCD Ytil = add_scalar(ch.Y, -ch.P);  // min-degree 1 in zeta
  SeriesCD acc = series_zero<CD>(Ytil.trunc, 'z');
  const auto& F = curve_.F_poly();
  for (const auto& t : sum) {
    // N(P + w) composed with w = Ytil
    SeriesCD part = compose(make_poly<CD>(0, poly_shift(t.N, ch.P), 'Y'), Ytil);
    // Y^e = (P + w)^e
    if (t.e != 0) {
      SeriesCD Yfull = compose(make_poly<CD>(0, {ch.P, CD(1.0, 0.0)}, 'Y'), Ytil);
      if (t.e > 0)
        for (int i = 0; i < t.e; ++i) part = mul(part, Yfull);
      else {
        SeriesCD inv = reciprocal(Yfull);
        for (int i = 0; i < -t.e; ++i) part = mul(part, inv);
      }
    }
    // (Y - P_t)^{-a} = (P_beta - P_t + w)^{-a}
    if (t.a > 0) {
      SeriesCD base = compose(make_poly<CD>(0, {ch.P - t.P, CD(1.0, 0.0)}, 'Y'), Ytil);
      SeriesCD inv = reciprocal(base);
      for (int i = 0; i < t.a; ++i) part = mul(part, inv);
    }
    // F^{-b}: F(P_beta + w) has a simple zero at w = 0.  The constant term is
    // zero only up to root-finding error, so flush it before inverting.
    if (t.b > 0) {
      std::vector<CD> Fsh = poly_shift(F, ch.P);
      double scale_n = 0.0;
      for (auto& c : Fsh) scale_n = std::max(scale_n, std::abs(c));
      if (std::abs(Fsh[0]) > 1e-6 * scale_n)
        throw DegenerateError("degenerate spectrum");
      Fsh[0] = CD(0.0, 0.0);
      SeriesCD fs = compose(make_poly<CD>(0, Fsh, 'Y'), Ytil);
      SeriesCD inv = reciprocal(fs);
      for (int i = 0; i < t.b; ++i) part = mul(part, inv);
    }
    acc = ftr::add(acc, part);
  }
  if (form) acc = mul(acc, ch.dY);
  return acc;
}

RatSum XiForms::add(const RatSum& x, const RatSum& y) {
  RatSum r = x;
  r.insert(r.end(), y.begin(), y.end());
  return r;
}

RatSum XiForms::scale_sum(const RatSum& x, CD c) {
  RatSum r = x;
  for (auto& t : r)
    for (auto& cc : t.N) cc *= c;
  return r;
}

}  // namespace ftr
