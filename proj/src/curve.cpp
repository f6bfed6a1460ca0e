#include "ftr/curve.hpp"

#include <cmath>

#include "ftr/polyroots.hpp"

namespace ftr {

CD MirrorCurve::poly_eval_local(const std::vector<CD>& c, CD z) { return poly_eval(c, z); }

CD MirrorCurve::f_at(CD Y) const {
  CD num = F_at(Y);
  return num / cd_pow(Y, cfg_.m);
}

CD MirrorCurve::Fprime_at(CD Y) const {
  CD acc(0.0, 0.0);
  for (size_t i = F_.size(); i-- > 1;) acc = acc * Y + F_[i] * CD((double)i, 0.0);
  return acc;
}

CD MirrorCurve::W_at(CD Y) const {
  CD w(0.0, 0.0);
  for (const auto& [ell, q] : cfg_.qtilde) {
    if (ell == 0) {
      w += q;
      continue;
    }
    w += q * cd_pow(Y, ell);
  }
  if (cfg_.ptilde != CD(0.0, 0.0)) w -= cfg_.ptilde * std::log(Y);
  return w;
}

SeriesCD MirrorCurve::x_series_at0(int trunc) const {
  if (cfg_.ptilde != CD(0.0, 0.0))
    throw ConfigError("expansion of x around Y=0 requires vanishing equivariant shift");
  int lo = -cfg_.m;
  std::vector<CD> cs((size_t)std::max(0, trunc - lo), CD(0.0, 0.0));
  for (const auto& [ell, q] : cfg_.qtilde) {
    if (ell == 0 || ell < lo || ell >= trunc) continue;
    cs[(size_t)(ell - lo)] += q;
  }
  return SeriesCD(lo, trunc, std::move(cs), 'Y');
}

MirrorCurve::MirrorCurve(const CurveConfig& cfg) : cfg_(cfg) {
  const int m = cfg_.m, r = cfg_.r;
  if (m < 0 || r < 1) throw ConfigError("curve requires m >= 0 and r >= 1");
  auto it_r = cfg_.qtilde.find(r);
  if (it_r == cfg_.qtilde.end() || it_r->second != CD(1.0, 0.0))
    throw ConfigError("qtilde[r] must equal 1");
  for (const auto& [ell, q] : cfg_.qtilde) {
    (void)q;
    if (ell < -m || ell > r) throw ConfigError("qtilde index out of range [-m, r]");
  }
  if (m >= 1) {
    auto it_m = cfg_.qtilde.find(-m);
    if (it_m == cfg_.qtilde.end() || it_m->second == CD(0.0, 0.0))
      throw ConfigError("qtilde[-m] must be nonzero");
  }

  // F(Y) = Y^m * dW/dy = sum_{ell != 0} ell * qtilde[ell] * Y^{m + ell} - ptilde * Y^m.
  F_.assign((size_t)(m + r + 1), CD(0.0, 0.0));
  for (const auto& [ell, q] : cfg_.qtilde) {
    if (ell == 0) continue;
    F_[(size_t)(m + ell)] += CD((double)ell, 0.0) * q;
  }
  F_[(size_t)m] -= cfg_.ptilde;

  auto roots = poly_roots(F_);
  for (CD root : roots)
    if (std::abs(root) < 1e-10) throw DegenerateError("degenerate spectrum");

  const int ord = cfg_.order;
  if (ord < 6) throw ConfigError("chart order too small");

  for (CD P : roots) {
    Chart ch;
    ch.P = P;
    ch.u = W_at(P);
    ch.Delta = P * Fprime_at(P) / cd_pow(P, m) - CD((double)m, 0.0) * f_at(P);
    // f(P) = 0 at a critical point, so Delta = P f'(P) with
    // f'(Y) = F'(Y)/Y^m - m F(Y)/Y^{m+1}; the second term vanishes at P.
    ch.sqrt_Delta = std::sqrt(ch.Delta);
    if (std::abs(ch.Delta) < 1e-12) throw DegenerateError("degenerate spectrum");

    // G(s) = W(P e^s) - u = sum_{j>=2} T_j s^j / j!,  T_j = sum_ell ell^j qtilde_ell P^ell.
    int gtrunc = ord + 2;
    std::vector<CD> g((size_t)gtrunc, CD(0.0, 0.0));
    for (const auto& [ell, q] : cfg_.qtilde) {
      if (ell == 0) continue;
      CD base = q * cd_pow(P, ell);
      CD acc = base;  // ell^j * base / j! accumulated iteratively
      for (int j = 1; j < gtrunc; ++j) {
        acc = acc * CD((double)ell, 0.0) / CD((double)j, 0.0);
        if (j >= 2) g[(size_t)j] += acc;
      }
    }
    SeriesCD G(0, gtrunc, std::move(g), 's');

    // zeta(s) = sqrt(G), then s(zeta) by reversion; branch fixed below.
    auto zs = sqrt_series(G);
    auto s_of_zeta = reversion(zs);
    // Enforce sqrt(Delta) * h1 = +sqrt(2) with h1 = -s_1.
    CD s1 = s_of_zeta.at(1);
    CD probe = ch.sqrt_Delta * (-s1);
    const double sq2 = 1.4142135623730950488;
    if (std::abs(probe - CD(sq2, 0.0)) > std::abs(probe + CD(sq2, 0.0)))
      s_of_zeta = flip_var(s_of_zeta);
    ch.h1 = -s_of_zeta.at(1);
    if (std::abs(ch.sqrt_Delta * ch.h1 - CD(sq2, 0.0)) > 1e-8)
      throw DegenerateError("degenerate spectrum");

    ch.s = s_of_zeta.truncated(ord + 1);
    ch.Y = scale(exp_series(ch.s), P);
    ch.dY = derivative(ch.Y);
    ch.h.assign((size_t)(ord + 1), CD(0.0, 0.0));
    for (int k = 1; k <= ord && ch.s.known(k); ++k) ch.h[(size_t)k] = -ch.s.at(k);
    charts_.push_back(std::move(ch));
  }
}

}  // namespace ftr
