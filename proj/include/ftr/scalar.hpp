#pragma once
// Scalar kernels: exact rationals (GMP), complex doubles, and the small
// combinatorial helpers (factorials, double factorials, binomials, Bernoulli
// numbers/polynomials) used throughout the library.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ftr/error.hpp"

namespace ftr {

using Rat = mpq_class;
using CD = std::complex<double>;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }
inline CD to_cd(const Rat& q) { return CD(q.get_d(), 0.0); }

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// ---- generic scalar traits used by TruncSeries<T> ------------------------

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const CD& x) { return x == CD(0.0, 0.0); }

inline double abs_val(const Rat& x) { return std::abs(x.get_d()); }
inline double abs_val(const CD& x) { return std::abs(x); }

// Principal square root: argument of the result lies in (-pi/2, pi/2].
inline CD sqrt_scalar(const CD& x) { return std::sqrt(x); }

// Exact rational square root; throws unless numerator and denominator are
// perfect squares.
inline Rat sqrt_scalar(const Rat& x) {
  if (sgn(x) < 0) throw SeriesError("rational sqrt of negative value");
  mpz_class num = x.get_num(), den = x.get_den();
  mpz_class sn, sd, rn, rd;
  mpz_sqrtrem(sn.get_mpz_t(), rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrtrem(sd.get_mpz_t(), rd.get_mpz_t(), den.get_mpz_t());
  if (rn != 0 || rd != 0) throw SeriesError("rational sqrt is irrational");
  Rat out(sn, sd);
  out.canonicalize();
  return out;
}

template <class T>
T scalar_one();
template <>
inline Rat scalar_one<Rat>() { return Rat(1); }
template <>
inline CD scalar_one<CD>() { return CD(1.0, 0.0); }

// ---- combinatorics --------------------------------------------------------

inline Rat factorial_rat(long n) {
  if (n < 0) throw ConfigError("factorial of negative integer");
  Rat f(1);
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// Odd double factorial (2j-1)!! with the standard continuation
// (-1)!! = 1, (-3)!! = -1 used by the Gaussian finite-part moments.
inline Rat odd_double_factorial(long j) {
  // value of (2j-1)!!
  if (j >= 0) {
    Rat f(1);
    for (long i = 1; i <= j; ++i) f *= (2 * i - 1);
    return f;
  }
  // Downward recursion n!! = (n+2)!!/(n+2) from (-1)!! = 1:
  // j=-1 -> (-3)!! = -1, j=-2 -> (-5)!! = 1/3, ...
  Rat f(1);
  for (long t = -1; t >= j; --t) f /= Rat(2 * t + 1);
  return f;
}

inline Rat binomial_rat(long n, long k) {
  // C(n,k) for integer n (possibly negative), k >= 0; C(n,k)=0 for k<0.
  if (k < 0) return Rat(0);
  Rat b(1);
  for (long i = 0; i < k; ++i) {
    b *= Rat(n - i);
    b /= Rat(i + 1);
  }
  return b;
}

// Bernoulli numbers B_n (B_1 = -1/2 convention), exact.
inline const Rat& bernoulli_number(long n) {
  static std::vector<Rat> cache;  // guarded by caller-side single thread or mutex in cpp users
  if (n < 0) throw ConfigError("Bernoulli index negative");
  while ((long)cache.size() <= n) {
    long m = (long)cache.size();
    if (m == 0) {
      cache.push_back(Rat(1));
      continue;
    }
    // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1,k) B_k
    Rat s(0);
    for (long k = 0; k < m; ++k) s += binomial_rat(m + 1, k) * cache[k];
    cache.push_back(-s / Rat(m + 1));
  }
  return cache[n];
}

// Bernoulli polynomial B_n(x), exact rational argument.
inline Rat bernoulli_poly(long n, const Rat& x) {
  Rat s(0);
  Rat xp(1);
  // B_n(x) = sum_k C(n,k) B_{n-k} x^k
  for (long k = 0; k <= n; ++k) {
    s += binomial_rat(n, k) * bernoulli_number(n - k) * xp;
    if (k < n) xp *= x;
  }
  return s;
}

// ---- misc small helpers ---------------------------------------------------

inline bool close(const CD& a, const CD& b, double tol) { return std::abs(a - b) <= tol; }

inline long ifloor_div(long a, long b) {
  // floor division for possibly-negative a, b > 0
  long q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline long imod(long a, long b) { return a - b * ifloor_div(a, b); }

// exp(2*pi*i*k/n)
inline CD root_of_unity(long n, long k) {
  const double two_pi = 6.283185307179586476925286766559;
  long kk = imod(k, n);
  return CD(std::cos(two_pi * (double)kk / (double)n), std::sin(two_pi * (double)kk / (double)n));
}

inline CD cd_pow(CD b, long e) {
  if (e < 0) return CD(1.0, 0.0) / cd_pow(b, -e);
  CD r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Rat rat_pow(const Rat& b, long e) {
  if (e < 0) {
    Rat inv = 1 / b;
    return rat_pow(inv, -e);
  }
  Rat r(1), base = b;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

}  // namespace ftr
