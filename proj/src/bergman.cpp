#include "ftr/bergman.hpp"

namespace ftr {

namespace {

// Dense bivariate series truncated by total degree K: c[i*(K+1)+j] with i+j <= K.
struct Biv {
  int K;
  std::vector<CD> c;
  explicit Biv(int k) : K(k), c((size_t)(k + 1) * (size_t)(k + 1), CD(0.0, 0.0)) {}
  CD& at(int i, int j) { return c[(size_t)(i * (K + 1) + j)]; }
  CD at(int i, int j) const { return c[(size_t)(i * (K + 1) + j)]; }
};

Biv biv_mul(const Biv& a, const Biv& b) {
  Biv r(a.K);
  for (int i = 0; i <= a.K; ++i)
    for (int j = 0; i + j <= a.K; ++j) {
      CD v = a.at(i, j);
      if (v == CD(0.0, 0.0)) continue;
      for (int p = 0; i + p <= a.K; ++p)
        for (int q = 0; i + p + j + q <= a.K; ++q) {
          CD w = b.at(p, q);
          if (w == CD(0.0, 0.0)) continue;
          r.at(i + p, j + q) += v * w;
        }
    }
  return r;
}

// log(c0 * (1 + u)) up to additive constant: returns sum (-1)^{k+1} u^k / k
// for a bivariate u with no constant term.
Biv biv_log1p(const Biv& u) {
  Biv acc(u.K);
  Biv p = u;
  double sgn = 1.0;
  for (int k = 1; k <= u.K; ++k) {
    for (size_t idx = 0; idx < acc.c.size(); ++idx) acc.c[idx] += CD(sgn / (double)k, 0.0) * p.c[idx];
    if (k < u.K) p = biv_mul(p, u);
    sgn = -sgn;
  }
  return acc;
}

// d^2/(dzeta deta)
Biv biv_dd(const Biv& a) {
  Biv r(a.K);
  for (int i = 1; i <= a.K; ++i)
    for (int j = 1; i + j <= a.K; ++j)
      r.at(i - 1, j - 1) = a.at(i, j) * CD((double)i * (double)j, 0.0);
  return r;
}

}  // namespace

BergmanTable::BergmanTable(const MirrorCurve& curve, int K) : K_(K), n_(curve.n_charts()) {
  const int KW = K + 2;  // need log to total degree K+2 before the mixed derivative
  if (curve.order() < KW + 1) throw ConfigError("curve order too small for Bergman table");
  tab_.assign((size_t)n_ * (size_t)n_, std::vector<CD>());

  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      const Chart& ca = curve.chart(a);
      const Chart& cb = curve.chart(b);
      Biv logd(KW);
      if (a != b) {
        // u = [ (Y_a(zeta) - P_a) - (Y_b(eta) - P_b) ] / (P_a - P_b)
        CD C = ca.P - cb.P;
        Biv u(KW);
        for (int i = 1; i <= KW; ++i) {
          if (ca.Y.known(i)) u.at(i, 0) += ca.Y.at(i) / C;
          if (cb.Y.known(i)) u.at(0, i) -= cb.Y.at(i) / C;
        }
        logd = biv_log1p(u);
      } else {
        // Q(zeta, eta) = (Y(zeta) - Y(eta)) / (zeta - eta)
        //             = sum_k a_k * sum_{i+j=k-1} zeta^i eta^j,  a_1 != 0.
        Biv Q(KW);
        for (int k = 1; k <= KW + 1 && ca.Y.known(k); ++k) {
          CD ak = ca.Y.at(k);
          for (int i = 0; i <= k - 1; ++i) {
            int j = k - 1 - i;
            if (i + j <= KW) Q.at(i, j) += ak;
          }
        }
        CD a1 = Q.at(0, 0);
        Biv u(KW);
        for (int i = 0; i <= KW; ++i)
          for (int j = 0; i + j <= KW; ++j) {
            if (i == 0 && j == 0) continue;
            u.at(i, j) = Q.at(i, j) / a1;
          }
        logd = biv_log1p(u);
      }
      Biv br = biv_dd(logd);
      std::vector<CD> flat((size_t)(K + 1) * (size_t)(K + 1), CD(0.0, 0.0));
      for (int s = 0; s <= K; ++s)
        for (int t = 0; s + t <= K; ++t) flat[(size_t)(s * (K + 1) + t)] = br.at(s, t);
      tab_[(size_t)(a * n_ + b)] = std::move(flat);
    }
  }
}

CD BergmanTable::Bcheck(int a, int k, int b, int l) const {
  double num = to_double(odd_double_factorial(k) * odd_double_factorial(l));
  double den = std::pow(2.0, (double)(k + l + 1));
  return CD(num / den, 0.0) * B(a, 2 * k, b, 2 * l);
}

}  // namespace ftr
