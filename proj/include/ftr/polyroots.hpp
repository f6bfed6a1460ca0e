#pragma once
// Polynomial root finding over complex doubles with deterministic ordering.

#include <vector>

#include "ftr/error.hpp"
#include "ftr/scalar.hpp"

namespace ftr {

// Evaluate sum_i coeffs[i] * z^i (ascending coefficients).
CD poly_eval(const std::vector<CD>& coeffs, CD z);

// All complex roots of the polynomial with ascending coefficients `coeffs`
// (leading coefficient nonzero after trimming).  Deterministic: roots are
// returned sorted by argument in [0, 2*pi) — with arguments snapped to a
// 1e-9 grid and tiny imaginary parts flushed to zero — then by modulus.
//
// Throws DegenerateError("degenerate spectrum") if two roots coincide within
// `degeneracy_rel_tol` relative to their scale, and SeriesError if the
// residual backward-error bound is violated.
std::vector<CD> poly_roots(const std::vector<CD>& coeffs, double degeneracy_rel_tol = 1e-6);

}  // namespace ftr
