#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ftr/polyroots.hpp"

using namespace ftr;

TEST_CASE("quadratic z^2 - 1: ordering by argument") {
  auto r = poly_roots({CD(-1, 0), CD(0, 0), CD(1, 0)});
  REQUIRE(r.size() == 2);
  CHECK(close(r[0], CD(1, 0), 1e-12));   // arg 0
  CHECK(close(r[1], CD(-1, 0), 1e-12));  // arg pi
}

TEST_CASE("quadratic z^2 - 4z + 3: equal arguments ordered by modulus") {
  auto r = poly_roots({CD(3, 0), CD(-4, 0), CD(1, 0)});
  REQUIRE(r.size() == 2);
  CHECK(close(r[0], CD(1, 0), 1e-12));
  CHECK(close(r[1], CD(3, 0), 1e-12));
}

TEST_CASE("fifth roots of unity in argument order") {
  // z^5 - 1
  std::vector<CD> c(6, CD(0, 0));
  c[0] = CD(-1, 0);
  c[5] = CD(1, 0);
  auto r = poly_roots(c);
  REQUIRE(r.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(close(r[(size_t)k], root_of_unity(5, k), 1e-12));
}

TEST_CASE("degree-5 polynomial satisfies Vieta and residual bounds") {
  // p(z) = 2 z^5 + (3-i) z^4 - 7 z^3 + 0.5 z^2 + (1+2i) z - 11
  std::vector<CD> c = {CD(-11, 0), CD(1, 2), CD(0.5, 0), CD(-7, 0), CD(3, -1), CD(2, 0)};
  auto r = poly_roots(c);
  REQUIRE(r.size() == 5);
  CD sum(0, 0), prod(1, 0);
  for (auto z : r) {
    sum += z;
    prod *= z;
    // residual bound
    double scale = 0.0, p = 1.0;
    for (auto a : c) {
      scale += std::abs(a) * p;
      p *= std::abs(z);
    }
    CHECK(std::abs(poly_eval(c, z)) <= 1e-12 * scale);
  }
  CHECK(close(sum, -c[4] / c[5], 1e-9));                  // -a4/a5
  CHECK(close(prod, -c[0] / c[5], 1e-9));                 // (-1)^5 a0/a5
}

TEST_CASE("repeated root raises degenerate spectrum") {
  // (z-1)^2 = z^2 - 2z + 1
  CHECK_THROWS_WITH_AS(poly_roots({CD(1, 0), CD(-2, 0), CD(1, 0)}), "degenerate spectrum",
                       DegenerateError);
}

TEST_CASE("zero root included once, repeated zero root degenerate") {
  // z(z-2) = z^2 - 2z
  auto r = poly_roots({CD(0, 0), CD(-2, 0), CD(1, 0)});
  REQUIRE(r.size() == 2);
  // both roots have snapped argument 0; the smaller modulus sorts first
  CHECK(close(r[0], CD(0, 0), 1e-12));
  CHECK(close(r[1], CD(2, 0), 1e-12));
  // z^2
  CHECK_THROWS_AS(poly_roots({CD(0, 0), CD(0, 0), CD(1, 0)}), DegenerateError);
}

TEST_CASE("deterministic: same input gives identical output") {
  std::vector<CD> c = {CD(1, 1), CD(0, -2), CD(3, 0), CD(0, 0), CD(1, 0)};
  auto r1 = poly_roots(c);
  auto r2 = poly_roots(c);
  REQUIRE(r1.size() == r2.size());
  for (size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].real() == r2[i].real());
    CHECK(r1[i].imag() == r2[i].imag());
  }
}
