#include "ftr/polyroots.hpp"

#include <algorithm>
#include <cmath>

namespace ftr {

CD poly_eval(const std::vector<CD>& coeffs, CD z) {
  CD acc(0.0, 0.0);
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

namespace {

CD poly_eval_deriv(const std::vector<CD>& coeffs, CD z) {
  CD acc(0.0, 0.0);
  for (size_t i = coeffs.size(); i-- > 1;) acc = acc * z + coeffs[i] * CD((double)i, 0.0);
  return acc;
}

double residual_scale(const std::vector<CD>& coeffs, CD z) {
  double r = std::abs(z);
  double s = 0.0, p = 1.0;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    s += std::abs(coeffs[i]) * p;
    p *= r;
  }
  return s;
}

}  // namespace

std::vector<CD> poly_roots(const std::vector<CD>& coeffs_in, double degeneracy_rel_tol) {
  std::vector<CD> coeffs = coeffs_in;
  while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  if (coeffs.size() <= 1) throw SeriesError("root finding needs a nonconstant polynomial");

  std::vector<CD> roots;

  // Exact zero roots: strip factors of z.
  size_t nzero = 0;
  while (nzero < coeffs.size() - 1 && std::abs(coeffs[nzero]) == 0.0) ++nzero;
  for (size_t i = 0; i < nzero; ++i) roots.push_back(CD(0.0, 0.0));
  if (nzero > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + (long)nzero);

  size_t n = coeffs.size() - 1;
  if (n >= 1) {
    // Cauchy-type inclusion radius.
    double maxr = 0.0;
    for (size_t i = 0; i < n; ++i) maxr = std::max(maxr, std::abs(coeffs[i] / coeffs[n]));
    double R = 1.0 + maxr;

    std::vector<CD> z(n);
    const double two_pi = 6.283185307179586476925286766559;
    for (size_t k = 0; k < n; ++k) {
      double th = two_pi * ((double)k + 0.25) / (double)n + 0.4;
      z[k] = CD(R * 0.8 * std::cos(th), R * 0.8 * std::sin(th));
    }

    // Aberth–Ehrlich simultaneous iteration.
    for (int iter = 0; iter < 400; ++iter) {
      double max_step = 0.0;
      for (size_t i = 0; i < n; ++i) {
        CD p = poly_eval(coeffs, z[i]);
        CD dp = poly_eval_deriv(coeffs, z[i]);
        if (std::abs(dp) == 0.0) {
          z[i] += CD(1e-8 * (1.0 + std::abs(z[i])), 1e-8);
          max_step = 1.0;
          continue;
        }
        CD ratio = p / dp;
        CD s(0.0, 0.0);
        for (size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          CD d = z[i] - z[j];
          if (std::abs(d) == 0.0) d = CD(1e-14, 1e-14);
          s += CD(1.0, 0.0) / d;
        }
        CD denom = CD(1.0, 0.0) - ratio * s;
        CD step = (std::abs(denom) == 0.0) ? ratio : ratio / denom;
        z[i] -= step;
        max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
      }
      if (max_step < 1e-15) break;
    }

    // Newton polish.
    for (size_t i = 0; i < n; ++i) {
      for (int it = 0; it < 5; ++it) {
        CD p = poly_eval(coeffs, z[i]);
        CD dp = poly_eval_deriv(coeffs, z[i]);
        if (std::abs(dp) == 0.0) break;
        CD step = p / dp;
        z[i] -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z[i]))) break;
      }
    }

    for (size_t i = 0; i < n; ++i) {
      double res = std::abs(poly_eval(coeffs, z[i]));
      double scl = residual_scale(coeffs, z[i]);
      if (res > 1e-12 * scl) throw SeriesError("root residual exceeds backward-error bound");
      roots.push_back(z[i]);
    }
  }

  // Degeneracy detection (includes multiple zero roots).
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j) {
      double scale = std::max(1.0, std::max(std::abs(roots[i]), std::abs(roots[j])));
      if (std::abs(roots[i] - roots[j]) <= degeneracy_rel_tol * scale)
        throw DegenerateError("degenerate spectrum");
    }

  // Deterministic ordering: snapped argument in [0, 2*pi), then modulus.
  auto key = [](CD w) {
    double re = w.real(), im = w.imag();
    double r = std::abs(w);
    if (std::abs(im) < 1e-13 * std::max(1e-300, r)) im = 0.0;
    double th = std::atan2(im, re);
    const double two_pi = 6.283185307179586476925286766559;
    if (th < 0.0) th += two_pi;
    if (th >= two_pi) th -= two_pi;
    double ths = std::round(th / 1e-9) * 1e-9;
    return std::pair<double, double>(ths, r);
  };
  std::sort(roots.begin(), roots.end(), [&](CD a, CD b) { return key(a) < key(b); });
  return roots;
}

}  // namespace ftr
