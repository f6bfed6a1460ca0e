#include "ftr/rmatrix.hpp"

#include <cmath>

#include "ftr/bergman.hpp"
#include "ftr/dxi.hpp"
#include "ftr/error.hpp"

namespace ftr {

namespace {

SeriesCD dense_z(int K) {
  return SeriesCD(0, K + 1, std::vector<CD>(static_cast<std::size_t>(K) + 1, CD(0.0, 0.0)), 'z');
}

}  // namespace

RMatrix rmatrix_identity(int n, int K) {
  RMatrix R;
  R.n = n;
  R.entries.assign(static_cast<std::size_t>(n) * n, dense_z(K));
  for (int a = 0; a < n; ++a) R.at(a, a).coeffs[0] = CD(1.0, 0.0);
  return R;
}

Rat gauss_moment(int j) {
  if (j < -1) throw ConfigError("gauss_moment defined for j >= -1");
  return odd_double_factorial(j);
}

RMatrix b_model_rmatrix(const MirrorCurve& curve, int K) {
  if (K < 0) throw ConfigError("negative order");
  if (curve.order() < 2 * K + 2)
    throw OrderError("curve order too small for requested R-matrix order");
  const int n = curve.n_charts();
  BergmanTable table(curve, 2);  // XiForms dependency; brackets unused here
  XiForms xf(curve, table);

  RMatrix R;
  R.n = n;
  R.entries.assign(static_cast<std::size_t>(n) * n, dense_z(K));
  const CD inv_sqrt_m1(0.0, -1.0);  // 1/sqrt(-1), branch fixed by R(0) = I
  for (int alpha = 0; alpha < n; ++alpha) {
    RatSum dxi0 = xf.W_form(alpha, 0);
    for (int beta = 0; beta < n; ++beta) {
      SeriesCD c = xf.expand_in_chart(dxi0, beta, true);
      if (c.trunc < 2 * K - 1)
        throw OrderError("chart expansion too short for requested R-matrix order");
      SeriesCD& entry = R.at(alpha, beta);
      for (int j = -1; j <= K - 1; ++j) {
        CD moment = to_cd(gauss_moment(j)) * cd_pow(CD(0.5, 0.0), j + 1);
        entry.coeffs[static_cast<std::size_t>(j) + 1] = inv_sqrt_m1 * moment * c.at(2 * j);
      }
    }
  }
  return R;
}

namespace {

// exp( sum_{s=1}^{K} (-1)^{s+1} B_{s+1}(c) / (s(s+1)) (z/w)^s ) through z^K.
// This is also the Stirling remainder exponential
//   e^lambda Gamma(lambda + c) lambda^{1 - lambda - c} / sqrt(2 pi lambda)
// with lambda^{-1} = z/w.
SeriesCD bernoulli_exponential(const Rat& c, CD w, int K) {
  SeriesCD logs(1, K + 1, std::vector<CD>(static_cast<std::size_t>(K), CD(0.0, 0.0)), 'z');
  const CD winv = CD(1.0, 0.0) / w;
  CD wpow = winv;
  for (int s = 1; s <= K; ++s) {
    Rat b = bernoulli_poly(s + 1, c) / rat(s) / rat(s + 1);
    if (s % 2 == 0) b = -b;
    logs.coeffs[static_cast<std::size_t>(s) - 1] = to_cd(b) * wpow;
    wpow *= winv;
  }
  return exp_series(logs);
}

}  // namespace

RMatrix a_model_block(int n, CD w, int K) {
  if (n < 1) throw ConfigError("block size must be positive");
  if (w == CD(0.0, 0.0)) throw ConfigError("zero chart weight");
  std::vector<SeriesCD> per_h;
  per_h.reserve(n);
  for (int t = 0; t < n; ++t) per_h.push_back(bernoulli_exponential(rat(t, n), w, K));

  RMatrix R;
  R.n = n;
  R.entries.assign(static_cast<std::size_t>(n) * n, dense_z(K));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      SeriesCD acc = series_zero<CD>(K + 1, 'z');
      for (int t = 0; t < n; ++t) {
        CD phase = root_of_unity(n, static_cast<long>(t) * (j - i));
        acc = add(acc, scale(per_h[t], phase / CD(static_cast<double>(n), 0.0)));
      }
      R.at(j, i) = acc;
    }
  return R;
}

RMatrix gamma_sum_block(int n, CD w, int K) {
  if (n < 1) throw ConfigError("block size must be positive");
  if (w == CD(0.0, 0.0)) throw ConfigError("zero chart weight");
  // Each Gamma-sum summand reduces to the Stirling remainder exponential
  // (log Gamma(lambda + s) - (lambda + s - 1/2) log lambda + lambda
  //  - (1/2) log 2 pi), assembled here from its own Bernoulli-polynomial loop.
  std::vector<SeriesCD> summand;
  summand.reserve(n);
  for (int h = 0; h < n; ++h) {
    SeriesCD lg(1, K + 1, std::vector<CD>(static_cast<std::size_t>(K), CD(0.0, 0.0)), 'z');
    const CD winv = CD(1.0, 0.0) / w;
    CD wpow = winv;
    for (int t = 1; t <= K; ++t) {
      Rat b = bernoulli_poly(t + 1, rat(h, n)) / rat(t) / rat(t + 1);
      if (t % 2 == 0) b = -b;
      lg.coeffs[static_cast<std::size_t>(t) - 1] = to_cd(b) * wpow;
      wpow *= winv;
    }
    summand.push_back(exp_series(lg));
  }
  RMatrix R;
  R.n = n;
  R.entries.assign(static_cast<std::size_t>(n) * n, dense_z(K));
  for (int beta = 0; beta < n; ++beta)
    for (int alpha = 0; alpha < n; ++alpha) {
      SeriesCD acc = series_zero<CD>(K + 1, 'z');
      for (int h = 0; h < n; ++h) {
        // omega_{alpha,beta}^{-h} = e^{-2 pi i (alpha - beta) h / n}
        CD phase = root_of_unity(n, -static_cast<long>(h) * (alpha - beta));
        acc = add(acc, scale(summand[h], phase / CD(static_cast<double>(n), 0.0)));
      }
      R.at(beta, alpha) = acc;
    }
  return R;
}

std::vector<double> unitarity_defect(const RMatrix& R) {
  const int n = R.n;
  int K = 0;
  for (const auto& e : R.entries) K = std::max(K, e.trunc - 1);
  std::vector<double> defect(static_cast<std::size_t>(K) + 1, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      SeriesCD acc = series_zero<CD>(K + 1, 'z');
      for (int g = 0; g < n; ++g)
        acc = add(acc, mul(R.at(g, a), flip_var(R.at(g, b))));
      if (a == b) acc = sub(acc, make_const<CD>(CD(1.0, 0.0), 'z'));
      for (int k = 0; k <= K && k < acc.trunc; ++k)
        defect[static_cast<std::size_t>(k)] = std::max(defect[static_cast<std::size_t>(k)],
                                                       std::abs(acc.at(k)));
    }
  return defect;
}

std::vector<double> compare_rmatrices(const RMatrix& A, const RMatrix& B, int K,
                                      bool transpose_second) {
  if (A.n != B.n) throw ConfigError("index mismatch");
  std::vector<double> dev(static_cast<std::size_t>(K) + 1, 0.0);
  for (int a = 0; a < A.n; ++a)
    for (int b = 0; b < A.n; ++b) {
      const SeriesCD& x = A.at(a, b);
      const SeriesCD& y = transpose_second ? B.at(b, a) : B.at(a, b);
      for (int k = 0; k <= K; ++k) {
        if (k >= x.trunc || k >= y.trunc)
          throw OrderError("compare order exceeds stored order");
        dev[static_cast<std::size_t>(k)] =
            std::max(dev[static_cast<std::size_t>(k)], std::abs(x.at(k) - y.at(k)));
      }
    }
  return dev;
}

}  // namespace ftr
