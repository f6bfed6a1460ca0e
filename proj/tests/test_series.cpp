#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "ftr/series.hpp"

using namespace ftr;

TEST_CASE("reciprocal of 1+z is the alternating geometric series") {
  // 1/(1+z) = 1 - z + z^2 - z^3 + ...
  auto a = make_poly<Rat>(0, {Rat(1), Rat(1)});
  auto r = reciprocal(a.truncated(4));
  CHECK(r.min_deg == 0);
  CHECK(r.trunc == 4);
  CHECK(r.at(0) == Rat(1));
  CHECK(r.at(1) == Rat(-1));
  CHECK(r.at(2) == Rat(1));
  CHECK(r.at(3) == Rat(-1));
  auto prod = mul(a, r);
  CHECK(prod.at(0) == Rat(1));
  for (int k = 1; k < prod.trunc; ++k) CHECK(prod.at(k) == Rat(0));
}

TEST_CASE("reciprocal error message for series with no known nonzero coefficient") {
  auto z = series_zero<Rat>(5);
  CHECK_THROWS_WITH_AS(reciprocal(z), "non-unit divisor", SeriesError);
}

TEST_CASE("Laurent reciprocal") {
  // a = z^{-2} (1 + z);  1/a = z^2 (1 - z + z^2 - ...)
  auto a = TruncSeries<Rat>(-2, 3, {Rat(1), Rat(1)});
  auto r = reciprocal(a);
  CHECK(r.min_deg == 2);
  CHECK(r.at(2) == Rat(1));
  CHECK(r.at(3) == Rat(-1));
  CHECK(r.at(4) == Rat(1));
  CHECK(r.trunc == 7);
}

TEST_CASE("reversion of z - z^2 gives the Catalan generating series") {
  // g with g - g^2 = z:  g = z + z^2 + 2 z^3 + 5 z^4 + 14 z^5 + ...
  auto f = make_poly<Rat>(1, {Rat(1), Rat(-1)});
  auto g = reversion(f, 6);
  CHECK(g.at(1) == Rat(1));
  CHECK(g.at(2) == Rat(1));
  CHECK(g.at(3) == Rat(2));
  CHECK(g.at(4) == Rat(5));
  CHECK(g.at(5) == Rat(14));
  // compose both ways reproduces the identity up to the shared truncation
  auto fg = compose(f, g);
  auto gf = compose(g, f.truncated(6));
  for (int k = std::min(fg.min_deg, 0); k < fg.trunc; ++k)
    CHECK(fg.at(k) == (k == 1 ? Rat(1) : Rat(0)));
  for (int k = std::min(gf.min_deg, 0); k < gf.trunc; ++k)
    CHECK(gf.at(k) == (k == 1 ? Rat(1) : Rat(0)));
}

TEST_CASE("sqrt of 1+2z matches binomial expansion") {
  // (1+2z)^{1/2} = 1 + z - z^2/2 + z^3/2 - ...
  auto a = make_poly<Rat>(0, {Rat(1), Rat(2)});
  auto s = sqrt_series(a, 4);
  CHECK(s.at(0) == Rat(1));
  CHECK(s.at(1) == Rat(1));
  CHECK(s.at(2) == rat(-1, 2));
  CHECK(s.at(3) == rat(1, 2));
  auto sq = mul(s, s);
  CHECK(sq.at(0) == Rat(1));
  CHECK(sq.at(1) == Rat(2));
  for (int k = 2; k < sq.trunc; ++k) CHECK(sq.at(k) == Rat(0));
}

TEST_CASE("sqrt requires even leading degree") {
  auto a = make_poly<Rat>(1, {Rat(1), Rat(2)});
  CHECK_THROWS_AS(sqrt_series(a, 4), SeriesError);
}

TEST_CASE("exact rational product matches direct convolution to order 12") {
  // deterministic pseudo-random rationals
  auto gen = [](long seed) {
    std::vector<Rat> cs;
    long x = seed;
    for (int i = 0; i < 12; ++i) {
      x = (x * 1103515245 + 12345) % 2147483647;
      long num = (x % 19) - 9;
      long den = 1 + (x % 7);
      cs.push_back(rat(num, den));
    }
    return cs;
  };
  auto av = gen(17), bv = gen(91);
  auto a = TruncSeries<Rat>(0, 12, av);
  auto b = TruncSeries<Rat>(0, 12, bv);
  auto p = mul(a, b);
  CHECK(p.trunc == 12);
  for (int k = 0; k < 12; ++k) {
    Rat expect(0);
    for (int i = 0; i <= k; ++i) expect += av[(size_t)i] * bv[(size_t)(k - i)];
    CHECK(p.at(k) == expect);
  }
}

TEST_CASE("composition with Fibonacci oracle") {
  // 1/(1-w) evaluated at w = z + z^2 gives 1/(1 - z - z^2): Fibonacci numbers
  auto one_minus = make_poly<Rat>(0, {Rat(1), Rat(-1)});
  auto geo = reciprocal(one_minus.truncated(8));  // 1 + w + w^2 + ...
  auto inner = make_poly<Rat>(1, {Rat(1), Rat(1)});
  auto c = compose(geo, inner);
  long fib[8] = {1, 1, 2, 3, 5, 8, 13, 21};
  for (int k = 0; k < std::min(8, c.trunc); ++k) CHECK(c.at(k) == Rat(fib[k]));
}

TEST_CASE("Laurent composition") {
  // a = z^{-1} + z at b = 2z:  (1/2) z^{-1} + 2 z
  auto a = make_poly<Rat>(-1, {Rat(1), Rat(0), Rat(1)});
  auto b = make_poly<Rat>(1, {Rat(2)}).truncated(6);
  auto c = compose(a, b);
  CHECK(c.at(-1) == rat(1, 2));
  CHECK(c.at(0) == Rat(0));
  CHECK(c.at(1) == Rat(2));
}

TEST_CASE("truncation metadata follows the min rule") {
  auto a = TruncSeries<Rat>(0, 4, {Rat(1), Rat(2), Rat(3), Rat(4)});
  auto b = TruncSeries<Rat>(0, 3, {Rat(5), Rat(6), Rat(7)});
  auto s = add(a, b);
  CHECK(s.trunc == 3);
  auto p = mul(a, b);
  CHECK(p.trunc == 3);  // min(4+0, 3+0)
  CHECK_THROWS_AS(p.at(3), OrderError);
  // shifted operand shifts the product's window
  auto bs = shift(b, 2);
  auto p2 = mul(a, bs);
  CHECK(p2.min_deg == 2);
  CHECK(p2.trunc == 5);  // min(4+2, 5+0)
}

TEST_CASE("derivative and antiderivative") {
  auto a = TruncSeries<Rat>(-3, 4, {Rat(2), Rat(-1), Rat(0), Rat(7), Rat(3), Rat(1), Rat(5)});
  // coefficient at z^{-1} is 0 (index -1 - (-3) = 2), so antiderivative is legal
  auto ad = antiderivative(a);
  auto back = derivative(ad);
  for (int k = a.min_deg; k < std::min(a.trunc, back.trunc); ++k) CHECK(back.at(k) == a.at(k));
  // derivative of the constant term vanishes
  auto c = make_const<Rat>(Rat(42));
  auto dc = derivative(c);
  CHECK(dc.is_known_zero());
  // antiderivative rejects a z^{-1} term
  auto bad = make_poly<Rat>(-1, {Rat(1)});
  CHECK_THROWS_AS(antiderivative(bad), SeriesError);
}

TEST_CASE("stored zeros equal the zero series up to truncation") {
  auto a = TruncSeries<Rat>(0, 5, {Rat(0), Rat(0), Rat(0)});
  auto z = series_zero<Rat>(5);
  CHECK(max_abs_diff(a, z) == 0.0);
  CHECK(a.is_known_zero());
}

TEST_CASE("evaluate with negative powers") {
  auto p = make_poly<CD>(0, {CD(3, 0), CD(-2, 0), CD(0, 0), CD(1, 0)});
  CHECK(close(evaluate(p, CD(2, 0)), CD(7, 0), 1e-14));
  auto l = make_poly<CD>(-2, {CD(1, 0)});
  CHECK(close(evaluate(l, CD(2, 0)), CD(0.25, 0), 1e-14));
}

TEST_CASE("flip_var and scale_var") {
  auto a = make_poly<Rat>(-1, {Rat(1), Rat(2), Rat(3), Rat(4)});
  auto f = flip_var(a);
  CHECK(f.at(-1) == Rat(-1));
  CHECK(f.at(0) == Rat(2));
  CHECK(f.at(1) == Rat(-3));
  CHECK(f.at(2) == Rat(4));
  auto s = scale_var(a, Rat(2));
  CHECK(s.at(-1) == rat(1, 2));
  CHECK(s.at(0) == Rat(2));
  CHECK(s.at(1) == Rat(6));
  CHECK(s.at(2) == Rat(16));
}

TEST_CASE("reversion followed by composition is the identity for a longer series") {
  std::vector<Rat> cs = {Rat(2), rat(1, 3), Rat(-1), rat(5, 7), Rat(0), rat(-2, 5),
                         Rat(1),  rat(3, 2), Rat(-4)};
  auto f = TruncSeries<Rat>(1, 10, cs);
  auto g = reversion(f);
  auto fg = compose(f, g);
  auto gf = compose(g, f);
  for (int k = fg.min_deg; k < fg.trunc; ++k) CHECK(fg.at(k) == (k == 1 ? Rat(1) : Rat(0)));
  for (int k = gf.min_deg; k < gf.trunc; ++k) CHECK(gf.at(k) == (k == 1 ? Rat(1) : Rat(0)));
  CHECK(fg.trunc >= 9);
}

TEST_CASE("division") {
  // (1 - z^2) / (1 - z) = 1 + z exactly
  auto num = make_poly<Rat>(0, {Rat(1), Rat(0), Rat(-1)}).truncated(8);
  auto den = make_poly<Rat>(0, {Rat(1), Rat(-1)});
  auto q = div(num, den);
  CHECK(q.at(0) == Rat(1));
  CHECK(q.at(1) == Rat(1));
  for (int k = 2; k < q.trunc; ++k) CHECK(q.at(k) == Rat(0));
}
