#pragma once

#include <map>
#include <vector>

#include "ftr/scalar.hpp"

namespace ftr {

// Orbifold Hurwitz numbers and their verification against the residue
// recursion on the r-Lambert curve X = Y e^{-Y^r / (r w)}.
//
// Conventions.  For a partition mu = (mu_1,...,mu_n) of d with r | d, the
// connected Hurwitz number is
//
//   H(r; g; mu) = (1/d!) #{ (rho, tau_1, ..., tau_b) },
//
// counting tuples in S_d where rho has all cycles of length r, every tau_i
// is a transposition, the product tau_b ... tau_1 rho has cycle type mu, and
// the subgroup generated by the tuple acts transitively on the d points.
// The transposition count is fixed by Riemann-Hurwitz:
//
//   b = 2g - 2 + n + d/r.
//
// The value is 0 when r does not divide d or when b < 0.

// Exact connected count.  Routes to direct transitive enumeration for
// d <= 5 and b <= 8, and to the conjugacy-class walk with
// inclusion-exclusion over set partitions of the parts otherwise.
// Throws OracleBoundError("oracle bound") when d = |mu| > 8.
Rat hurwitz_oracle(int r, int g, const std::vector<int>& mu);

// Direct route: enumerate base permutations and transposition tuples,
// checking transitivity per tuple.  Parallel over the choice of the first
// transposition with a deterministic in-order reduction.  Exposed for
// cross-validation; same bound error as the oracle.
Rat hurwitz_oracle_direct(int r, int g, const std::vector<int>& mu);

// Inclusion-exclusion route: disconnected counts from the conjugacy-class
// walk, made connected by a signed sum over set partitions of the parts of
// mu.  Agrees with the direct route everywhere both are defined; exposed
// for cross-validation.
Rat hurwitz_oracle_partitions(int r, int g, const std::vector<int>& mu);

// Disconnected count with an explicit number b of transpositions (no
// transitivity requirement):
//   (1/d!) #{ (rho, tau_1..tau_b) : type(rho) = (r,...,r),
//             type(tau_b...tau_1 rho) = mu }.
// d! times the value is always a non-negative integer.
Rat hurwitz_disconnected(int r, int b, const std::vector<int>& mu);

// Disk coefficients of the limit curve X = Y e^{-Q(Y)} with
// Q(Y) = Y^r + sum_{i=1}^{r-1} q_i Y^i, computed two independent ways:
//
//   residue[m-1] : (1/mu) [Y^mu] e^{mu Q(Y)} by exact series exponentiation,
//   closed[m-1]  : the lattice sum over multi-indices d = (d_1..d_{r-1}),
//                    sum over d with e := (mu - sum i d_i)/r in Z_{>=0} of
//                    prod q_i^{d_i} mu^{sum d_i + e - 1} / (e! prod d_i!),
//
// for mu = 1..L.  Both are exact rationals and must agree entrywise.  The
// constant term of Q is excluded: it contributes a common non-rational
// factor e^{mu q_0} to both routes and nothing to their comparison.
struct DiskCoefficients {
  std::vector<Rat> residue;
  std::vector<Rat> closed;
};
DiskCoefficients disk_coefficients(int r, const std::map<int, Rat>& q, int L);

// Hurwitz numbers from the residue recursion: runs the recursion on the
// r-Lambert curve with parameter w (curve x = Y^r - r w log Y, i.e.
// X = Y e^{-Y^r/(r w)} after exponentiating), integrates each slot of
// omega_{g,n} in the global coordinate Z = Y e^{-Y^r/(r w)}, extracts the
// joint Z^{mu} coefficient, and applies the prefactor
// (-1)^{g-1+n} (r w)^{#{i : r does not divide mu_i}}.  At w = 1/r the
// result equals hurwitz_oracle; for other w it is w-independent (the
// prefactor exactly cancels the curve's w-dependence).
// K is the kernel order for the recursion engine; each mu_i must satisfy
// mu_i <= expansion range implied by K, else
// ConfigError("mu out of expansion range").
CD hurwitz_from_recursion(int r, double w, int g, const std::vector<int>& mu,
                          int K);

// The same numbers from the A-side graph sum with open leaves: vertex
// intersection numbers, edge weights from the limit R-matrix, and per-slot
// open-leaf weights carrying the Z^{mu_i} coefficient data.  Equals
// hurwitz_from_recursion on the stable range.
CD elsv_side(int r, double w, int g, const std::vector<int>& mu);

// Nearest rational with denominator <= den_bound by continued fractions.
Rat rational_reconstruct(double x, long den_bound = 1000000);

}  // namespace ftr
