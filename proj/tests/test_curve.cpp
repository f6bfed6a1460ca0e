#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ftr/bergman.hpp"
#include "ftr/curve.hpp"
#include "ftr/dxi.hpp"

using namespace ftr;

namespace {

CurveConfig cfg_11() {
  CurveConfig c;
  c.m = 1;
  c.r = 1;
  c.qtilde = {{1, CD(1, 0)}, {-1, CD(0.3, 0)}};
  c.ptilde = CD(0.2, 0);
  c.order = 26;
  return c;
}

CurveConfig cfg_12() {
  CurveConfig c;
  c.m = 1;
  c.r = 2;
  c.qtilde = {{2, CD(1, 0)}, {1, CD(0.1, 0)}, {-1, CD(0.25, 0)}};
  c.ptilde = CD(0.15, 0);
  c.order = 26;
  return c;
}

}  // namespace

TEST_CASE("quadratic critical points for the (1,1) geometry") {
  MirrorCurve cv(cfg_11());
  REQUIRE(cv.n_charts() == 2);
  // F(Y) = Y^2 - 0.2 Y - 0.3: roots (0.2 +- sqrt(0.04 + 1.2))/2 computed directly
  double disc = std::sqrt(0.04 + 1.2);
  CD zp((0.2 + disc) / 2, 0), zm((0.2 - disc) / 2, 0);
  CHECK(close(cv.chart(0).P, zp, 1e-12));  // argument 0 sorts first
  CHECK(close(cv.chart(1).P, zm, 1e-12));
}

TEST_CASE("discriminants agree between direct and product-over-roots routes") {
  for (const auto& cfg : {cfg_11(), cfg_12()}) {
    MirrorCurve cv(cfg);
    int n = cv.n_charts();
    for (int a = 0; a < n; ++a) {
      CD P = cv.chart(a).P;
      CD prod(1, 0);
      for (int b = 0; b < n; ++b)
        if (b != a) prod *= (P - cv.chart(b).P);
      CD delta_roots = CD((double)cfg.r, 0) * prod / cd_pow(P, cfg.m - 1);
      CHECK(close(cv.chart(a).Delta, delta_roots, 1e-9 * std::abs(delta_roots)));
    }
  }
}

TEST_CASE("keystone chart expansion of Y - log Y") {
  CurveConfig c;
  c.m = 0;
  c.r = 1;
  c.qtilde = {{1, CD(1, 0)}};
  c.ptilde = CD(1, 0);
  c.order = 12;
  MirrorCurve cv(c);
  REQUIRE(cv.n_charts() == 1);
  const Chart& ch = cv.chart(0);
  CHECK(close(ch.P, CD(1, 0), 1e-12));
  CHECK(close(ch.Delta, CD(1, 0), 1e-12));
  double sq2 = std::sqrt(2.0);
  CHECK(close(ch.Y.at(0), CD(1, 0), 1e-12));
  CHECK(close(ch.Y.at(1), CD(-sq2, 0), 1e-12));
  CHECK(close(ch.Y.at(2), CD(2.0 / 3.0, 0), 1e-12));
  CHECK(close(ch.Y.at(3), CD(-sq2 / 18.0, 0), 1e-12));
  CHECK(close(ch.Y.at(4), CD(-2.0 / 135.0, 0), 1e-12));
  CHECK(close(ch.h1, CD(sq2, 0), 1e-12));
}

TEST_CASE("x = u + zeta^2 holds along every chart") {
  MirrorCurve cv(cfg_12());
  for (int a = 0; a < cv.n_charts(); ++a) {
    const Chart& ch = cv.chart(a);
    // W(Y(zeta)) - u as a series must equal zeta^2 exactly
    SeriesCD W = series_zero<CD>(ch.Y.trunc, 'z');
    for (const auto& [ell, q] : cv.config().qtilde) {
      if (ell == 0) continue;
      SeriesCD p = make_const<CD>(CD(1, 0), 'z').truncated(ch.Y.trunc);
      if (ell > 0)
        for (int i = 0; i < ell; ++i) p = mul(p, ch.Y);
      else {
        SeriesCD inv = reciprocal(ch.Y);
        for (int i = 0; i < -ell; ++i) p = mul(p, inv);
      }
      W = add(W, scale(p, q));
    }
    // -ptilde * log(Y/P) (the log P part sits inside u together with qtilde[0])
    W = add(W, scale(log_series_rel(ch.Y), -cv.config().ptilde));
    CD lead = W.at(0) - cv.config().ptilde * std::log(ch.P) - ch.u;
    CHECK(std::abs(lead) < 1e-10);
    CHECK(std::abs(W.at(1)) < 1e-10);
    CHECK(std::abs(W.at(2) - CD(1, 0)) < 1e-10);
    for (int k = 3; k < W.trunc; ++k) CHECK(std::abs(W.at(k)) < 1e-8);
  }
}

TEST_CASE("sqrt(Delta) h1 = sqrt(2) and h1^2 Delta = 2 in every chart") {
  for (const auto& cfg : {cfg_11(), cfg_12()}) {
    MirrorCurve cv(cfg);
    for (int a = 0; a < cv.n_charts(); ++a) {
      const Chart& ch = cv.chart(a);
      CHECK(close(ch.sqrt_Delta * ch.h1, CD(std::sqrt(2.0), 0), 1e-10));
      CHECK(close(ch.h1 * ch.h1 * ch.Delta, CD(2, 0), 1e-10));
    }
  }
}

TEST_CASE("limit curve with pure power and log term") {
  // W = Y^3 - 0.7 log Y: critical points (0.7/3)^{1/3} times cube roots of unity,
  // discriminant 3 * 0.7 at every chart.
  CurveConfig c;
  c.m = 0;
  c.r = 3;
  c.qtilde = {{3, CD(1, 0)}};
  c.ptilde = CD(0.7, 0);
  c.order = 16;
  MirrorCurve cv(c);
  REQUIRE(cv.n_charts() == 3);
  double rad = std::cbrt(0.7 / 3.0);
  for (int b = 0; b < 3; ++b) {
    CHECK(close(cv.chart(b).P, CD(rad, 0) * root_of_unity(3, b), 1e-10));
    CHECK(close(cv.chart(b).Delta, CD(3 * 0.7, 0), 1e-10));
  }
}

TEST_CASE("Bergman bracket symmetry") {
  MirrorCurve cv(cfg_12());
  BergmanTable bt(cv, 14);
  int n = bt.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int s = 0; s <= 6; ++s)
        for (int t = 0; s + t <= 6; ++t) {
          CD lhs = bt.B(a, s, b, t);
          CD rhs = bt.B(b, t, a, s);
          CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(lhs)));
        }
}

TEST_CASE("Bergman residue form of dxi_0 equals the differential of xi_0") {
  for (const auto& cfg : {cfg_11(), cfg_12()}) {
    MirrorCurve cv(cfg);
    BergmanTable bt(cv, 16);
    XiForms xf(cv, bt);
    for (int alpha = 0; alpha < cv.n_charts(); ++alpha) {
      RatSum geometric = xf.W_form(alpha, 0);  // d(xi_{alpha,0})
      for (int beta = 0; beta < cv.n_charts(); ++beta) {
        SeriesCD lhs = xf.dxi_in_chart(alpha, 0, beta);
        SeriesCD rhs = xf.expand_in_chart(geometric, beta, true);
        int hi = std::min(lhs.trunc, rhs.trunc);
        for (int k = std::min(lhs.min_deg, rhs.min_deg); k < hi; ++k) {
          CD l = lhs.known(k) ? lhs.at(k) : CD(0, 0);
          CD r = rhs.known(k) ? rhs.at(k) : CD(0, 0);
          CHECK(std::abs(l - r) < 1e-8 * (1.0 + std::abs(l)));
        }
      }
    }
  }
}

TEST_CASE("triangular decomposition reproduces the residue expansion for k >= 1") {
  MirrorCurve cv(cfg_11());
  BergmanTable bt(cv, 16);
  XiForms xf(cv, bt);
  for (int alpha = 0; alpha < cv.n_charts(); ++alpha) {
    for (int k = 1; k <= 3; ++k) {
      RatSum global = xf.dxi_form(alpha, k);
      for (int beta = 0; beta < cv.n_charts(); ++beta) {
        SeriesCD lhs = xf.dxi_in_chart(alpha, k, beta);
        SeriesCD rhs = xf.expand_in_chart(global, beta, true);
        int hi = std::min(lhs.trunc, rhs.trunc);
        for (int d = std::min(lhs.min_deg, rhs.min_deg); d < hi; ++d) {
          CD l = lhs.known(d) ? lhs.at(d) : CD(0, 0);
          CD r = rhs.known(d) ? rhs.at(d) : CD(0, 0);
          CHECK(std::abs(l - r) < 2e-7 * (1.0 + std::abs(l)));
        }
      }
    }
  }
}

TEST_CASE("own-chart singular part of dxi_k is a single power") {
  MirrorCurve cv(cfg_12());
  BergmanTable bt(cv, 16);
  XiForms xf(cv, bt);
  for (int alpha = 0; alpha < cv.n_charts(); ++alpha)
    for (int k = 1; k <= 3; ++k) {
      RatSum global = xf.dxi_form(alpha, k);
      SeriesCD own = xf.expand_in_chart(global, alpha, true);
      // expected singular coefficient: s_k (2k+1) at zeta^{-2k-2}, nothing between
      double fac = to_double(odd_double_factorial(k)) / std::pow(2.0, k);
      CD sk = CD(0, -fac);
      CHECK(std::abs(own.at(-2 * k - 2) - sk * CD(2.0 * k + 1.0, 0)) < 1e-7);
      for (int d = -2 * k - 1; d <= -1; ++d)
        CHECK(std::abs(own.at(d)) < 1e-7);
    }
}

TEST_CASE("expansion of x around the origin") {
  CurveConfig c;
  c.m = 2;
  c.r = 1;
  c.qtilde = {{1, CD(1, 0)}, {-2, CD(0.09, 0)}};
  c.ptilde = CD(0, 0);
  c.order = 12;
  MirrorCurve cv(c);
  auto x = cv.x_series_at0(4);
  CHECK(close(x.at(-2), CD(0.09, 0), 1e-14));
  CHECK(close(x.at(-1), CD(0, 0), 1e-14));
  CHECK(close(x.at(0), CD(0, 0), 1e-14));
  CHECK(close(x.at(1), CD(1, 0), 1e-14));
}
