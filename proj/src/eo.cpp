#include "ftr/eo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "ftr/error.hpp"

namespace ftr {

namespace {

// s_k = (2k-1)!! 2^{-k} / sqrt(-1): principal-part normalization of the k-th
// odd differential in its own chart.
CD s_factor(int k) {
  double df = 1.0;
  for (int j = 1; j <= k; ++j) df *= 2.0 * j - 1.0;
  return CD(0.0, -1.0) * CD(df * std::ldexp(1.0, -k), 0.0);
}

CD inv_coef(const SeriesCD& s, int k) {
  if (k < s.min_deg) return CD(0.0, 0.0);
  return s.at(k);
}

}  // namespace

std::size_t LocalExpansionForm::tuple_index(const std::vector<int>& beta) const {
  if ((int)beta.size() != n) throw ConfigError("chart tuple length mismatch");
  std::size_t t = 0;
  for (int j = 0; j < n; ++j) {
    if (beta[(std::size_t)j] < 0 || beta[(std::size_t)j] >= ncharts)
      throw ConfigError("chart index out of range");
    t = t * (std::size_t)ncharts + (std::size_t)beta[(std::size_t)j];
  }
  return t;
}

NdSeries& LocalExpansionForm::at_tuple(const std::vector<int>& beta) {
  return data[tuple_index(beta)];
}

const NdSeries& LocalExpansionForm::at_tuple(const std::vector<int>& beta) const {
  return data[tuple_index(beta)];
}

EOEngine::EOEngine(const MirrorCurve& curve, int bergman_order)
    : curve_(curve), table_(curve, bergman_order), xi_(curve_, table_) {
  invden_.reserve((std::size_t)curve_.n_charts());
  for (int a = 0; a < curve_.n_charts(); ++a) {
    const Chart& ch = curve_.chart(a);
    const int hmax = (int)ch.h.size() - 1;
    // recursion denominator 2 (s(z) - s(-z)) dx/dz = -8 sum_{k odd} h_k z^{k+1}
    std::vector<CD> cs((std::size_t)hmax, CD(0.0, 0.0));
    for (int k = 1; k <= hmax; k += 2)
      cs[(std::size_t)(k - 1)] = CD(-8.0, 0.0) * ch.h[(std::size_t)k];
    SeriesCD den(2, hmax + 2, std::move(cs), 'z');
    invden_.push_back(reciprocal(den));
  }
}

const SeriesCD& EOEngine::dxi_chart(int alpha, int k, int beta) const {
  auto key = std::make_tuple(alpha, k, beta);
  auto it = dxi_cache_.find(key);
  if (it == dxi_cache_.end())
    it = dxi_cache_.emplace(key, xi_.dxi_in_chart(alpha, k, beta)).first;
  return it->second;
}

const LocalExpansionForm& EOEngine::omega(int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) throw ConfigError("unstable target");
  const auto key = std::make_pair(g, n);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  LocalExpansionForm out;
  compute(g, n, out);
  return cache_.emplace(key, std::move(out)).first->second;
}

void EOEngine::compute(int g, int n, LocalExpansionForm& out) {
  const int nc = curve_.n_charts();
  if (n > 5) throw ConfigError("n-point storage supports at most five marked points");
  const int P = pole_bound(g, n);
  const int Q = qstore(n);
  const int K = table_.K();
  const int zlo = -2 * P;

  for (int a = 0; a < nc; ++a)
    if (invden_[(std::size_t)a].trunc <= 2 * P - 2)
      throw OrderError("curve order too small for the requested residue depth");

  out.g = g;
  out.n = n;
  out.ncharts = nc;
  std::array<int, 5> olo{}, ohi{};
  for (int j = 0; j < n; ++j) {
    olo[(std::size_t)j] = -P;
    ohi[(std::size_t)j] = Q;
  }
  std::size_t ntup = 1;
  for (int j = 0; j < n; ++j) ntup *= (std::size_t)nc;
  out.data.assign(ntup, NdSeries());
  for (auto& t : out.data) t = NdSeries::zeros(n, olo, ohi);

  // per-axis validated positive order for the spectator slots
  std::array<int, 5> valid{};
  for (int j = 0; j + 1 < n; ++j) valid[(std::size_t)j] = Q;

  // ---- recursive inputs (addresses are stable: the cache is node-based) --
  const LocalExpansionForm* aterm = nullptr;
  if (g >= 1 && !(g == 1 && n == 1)) {
    aterm = &omega(g - 1, n + 1);
    const NdSeries& d0 = aterm->data[0];
    const int psub = pole_bound(g - 1, n + 1);
    if (psub > d0.valid_hi[(std::size_t)(n - 1)] ||
        psub > d0.valid_hi[(std::size_t)n])
      throw OrderError("order shortfall in the residue recursion");
    for (int j = 0; j + 1 < n; ++j)
      valid[(std::size_t)j] =
          std::min(valid[(std::size_t)j], d0.valid_hi[(std::size_t)j]);
  }

  struct Split {
    int g1 = 0, g2 = 0;
    std::vector<int> I1, I2;                  // spectator slots, ascending
    const LocalExpansionForm* f1 = nullptr;   // null: bare two-point kernel
    const LocalExpansionForm* f2 = nullptr;
    int zlo1 = 0, zlo2 = 0;                   // deepest z power of each factor
  };
  std::vector<Split> splits;
  const int nspec_slots = n - 1;
  for (int g1 = 0; g1 <= g; ++g1) {
    for (unsigned mask = 0; mask < (1u << nspec_slots); ++mask) {
      Split sp;
      sp.g1 = g1;
      sp.g2 = g - g1;
      for (int j = 0; j < nspec_slots; ++j)
        (((mask >> j) & 1u) ? sp.I1 : sp.I2).push_back(j);
      if (sp.g1 == 0 && sp.I1.empty()) continue;  // vanishing one-point form
      if (sp.g2 == 0 && sp.I2.empty()) continue;
      const bool bare1 = (sp.g1 == 0 && sp.I1.size() == 1);
      const bool bare2 = (sp.g2 == 0 && sp.I2.size() == 1);
      sp.zlo1 = bare1 ? 0 : -pole_bound(sp.g1, (int)sp.I1.size() + 1);
      sp.zlo2 = bare2 ? 0 : -pole_bound(sp.g2, (int)sp.I2.size() + 1);
      if (!bare1) sp.f1 = &omega(sp.g1, (int)sp.I1.size() + 1);
      if (!bare2) sp.f2 = &omega(sp.g2, (int)sp.I2.size() + 1);
      // validity bookkeeping: a bare kernel factor is complete on rows
      // s <= K - z_need; a stored factor carries its own per-axis validity
      // and must supply positive z orders up to the partner's pole depth.
      if (bare1) {
        valid[(std::size_t)sp.I1[0]] =
            std::min(valid[(std::size_t)sp.I1[0]], std::min(Q, K + sp.zlo2));
      } else {
        const NdSeries& d0 = sp.f1->data[0];
        for (std::size_t t = 0; t < sp.I1.size(); ++t)
          valid[(std::size_t)sp.I1[t]] =
              std::min(valid[(std::size_t)sp.I1[t]], d0.valid_hi[t]);
        if (-sp.zlo2 > d0.valid_hi[sp.I1.size()])
          throw OrderError("order shortfall in the residue recursion");
      }
      if (bare2) {
        valid[(std::size_t)sp.I2[0]] =
            std::min(valid[(std::size_t)sp.I2[0]], std::min(Q, K + sp.zlo1));
      } else {
        const NdSeries& d0 = sp.f2->data[0];
        for (std::size_t t = 0; t < sp.I2.size(); ++t)
          valid[(std::size_t)sp.I2[t]] =
              std::min(valid[(std::size_t)sp.I2[t]], d0.valid_hi[t]);
        if (-sp.zlo1 > d0.valid_hi[sp.I2.size()])
          throw OrderError("order shortfall in the residue recursion");
      }
      splits.push_back(std::move(sp));
    }
  }

  // omega_{0,2}(Y_slot, zeta) with Y_slot in chart b, zeta in chart alpha:
  // axes (slot exponent, z exponent 0..z_need).
  auto make_kernel_factor = [&](int b, int alpha, int z_need) {
    NdSeries f = NdSeries::zeros(2, {-P, 0, 0, 0}, {Q, z_need, 0, 0});
    if (b == alpha)
      for (int s = 0; s <= std::min(z_need, P - 2); ++s)
        f.ref({-s - 2, s, 0, 0}) = CD((double)(s + 1), 0.0);
    for (int s = 0; s <= Q; ++s)
      for (int t = 0; t <= z_need && s + t <= K; ++t)
        f.ref({s, t, 0, 0}) += table_.B(b, s, alpha, t);
    return f;
  };

  std::array<int, 5> blo{}, bhi{};
  for (int j = 0; j + 1 < n; ++j) {
    blo[(std::size_t)j] = -P;
    bhi[(std::size_t)j] = Q;
  }
  blo[(std::size_t)(n - 1)] = zlo;
  bhi[(std::size_t)(n - 1)] = 0;

  std::size_t nspec = 1;
  for (int j = 0; j + 1 < n; ++j) nspec *= (std::size_t)nc;
  std::vector<int> spec((std::size_t)std::max(0, n - 1), 0);

  for (std::size_t si = 0; si < nspec; ++si) {
    {
      std::size_t t = si;
      for (int j = n - 2; j >= 0; --j) {
        spec[(std::size_t)j] = (int)(t % (std::size_t)nc);
        t /= (std::size_t)nc;
      }
    }
    for (int alpha = 0; alpha < nc; ++alpha) {
      NdSeries br = NdSeries::zeros(n, blo, bhi);

      // -- glued term: omega_{g-1,n+1}(Y_spec.., zeta, -zeta) --------------
      if (g == 1 && n == 1) {
        // the bare kernel glued to itself:
        // -[ 1/4 z^{-2} + sum_{s+t<=0} B^{aa}_{st} (-1)^t z^{s+t} ]
        br.add_at({-2, 0, 0, 0}, CD(-0.25, 0.0), 0.0);
        br.add_at({0, 0, 0, 0}, -table_.B(alpha, 0, alpha, 0), 0.0);
      } else if (aterm != nullptr) {
        std::vector<int> tb(spec.begin(), spec.end());
        tb.push_back(alpha);
        tb.push_back(alpha);
        const NdSeries& S = aterm->at_tuple(tb);
        S.for_each([&](const std::array<int, 5>& e, CD v) {
          if (v == CD(0.0, 0.0)) return;
          const int z = e[(std::size_t)(n - 1)] + e[(std::size_t)n];
          if (z > 0) return;
          std::array<int, 5> eo{};
          for (int j = 0; j + 1 < n; ++j) eo[(std::size_t)j] = e[(std::size_t)j];
          eo[(std::size_t)(n - 1)] = z;
          // substituting -zeta on a one-form slot: (-1)^{power} * (-1)
          br.add_at(eo, (e[(std::size_t)n] & 1) ? v : -v, 0.0);
        });
      }

      // -- split terms ------------------------------------------------------
      for (const Split& sp : splits) {
        NdSeries tmp1, tmp2;
        const NdSeries* pA;
        const NdSeries* pB;
        if (sp.f1 != nullptr) {
          std::vector<int> tb;
          tb.reserve(sp.I1.size() + 1);
          for (int s : sp.I1) tb.push_back(spec[(std::size_t)s]);
          tb.push_back(alpha);
          pA = &sp.f1->at_tuple(tb);
        } else {
          tmp1 = make_kernel_factor(spec[(std::size_t)sp.I1[0]], alpha, -sp.zlo2);
          pA = &tmp1;
        }
        if (sp.f2 != nullptr) {
          std::vector<int> tb;
          tb.reserve(sp.I2.size() + 1);
          for (int s : sp.I2) tb.push_back(spec[(std::size_t)s]);
          tb.push_back(alpha);
          pB = &sp.f2->at_tuple(tb);
        } else {
          tmp2 = make_kernel_factor(spec[(std::size_t)sp.I2[0]], alpha, -sp.zlo1);
          pB = &tmp2;
        }
        const int ra = pA->rank, rb = pB->rank;
        pA->for_each([&](const std::array<int, 5>& ea, CD va) {
          if (va == CD(0.0, 0.0)) return;
          const int za = ea[(std::size_t)(ra - 1)];
          if (za > -sp.zlo2) return;  // cannot reach a non-positive total z
          pB->for_each([&](const std::array<int, 5>& eb, CD vb) {
            if (vb == CD(0.0, 0.0)) return;
            const int zb = eb[(std::size_t)(rb - 1)];
            const int z = za + zb;
            if (z > 0) return;
            std::array<int, 5> eo{};
            for (std::size_t t = 0; t < sp.I1.size(); ++t)
              eo[(std::size_t)sp.I1[t]] = ea[t];
            for (std::size_t t = 0; t < sp.I2.size(); ++t)
              eo[(std::size_t)sp.I2[t]] = eb[t];
            eo[(std::size_t)(n - 1)] = z;
            // second factor sits at -zeta: (-1)^{zb} * (-1)
            br.add_at(eo, (zb & 1) ? va * vb : -(va * vb), 0.0);
          });
        });
      }

      // -- divide by the recursion denominator ------------------------------
      std::array<int, 5> tlo = blo, thi = bhi;
      tlo[(std::size_t)(n - 1)] = zlo - 2;
      thi[(std::size_t)(n - 1)] = -2;
      NdSeries T = NdSeries::zeros(n, tlo, thi);
      const SeriesCD& inv = invden_[(std::size_t)alpha];
      br.for_each([&](const std::array<int, 5>& e, CD v) {
        if (v == CD(0.0, 0.0)) return;
        const int w = e[(std::size_t)(n - 1)];
        std::array<int, 5> et = e;
        for (int p = -2; p <= -2 - w; ++p) {
          const CD ic = inv_coef(inv, p);
          if (ic == CD(0.0, 0.0)) continue;
          et[(std::size_t)(n - 1)] = w + p;
          T.ref(et) += v * ic;
        }
      });

      // -- contract with the integrated kernel and take the residue ---------
      double tmax = 0.0;
      T.for_each([&](const std::array<int, 5>&, CD v) {
        tmax = std::max(tmax, std::abs(v));
      });
      const double tol = 1e-9 * std::max(1.0, tmax);
      const std::size_t base = si * (std::size_t)nc;
      T.for_each([&](const std::array<int, 5>& e, CD tv) {
        if (tv == CD(0.0, 0.0)) return;
        const int u = -1 - e[(std::size_t)(n - 1)];
        if (!(u & 1)) return;  // only odd transfer orders couple
        std::array<int, 5> eo{};
        for (int j = 0; j + 1 < n; ++j) eo[(std::size_t)j] = e[(std::size_t)j];
        // double-pole part of the integrated kernel: 2 zeta^u eta^{-u-1}
        eo[(std::size_t)(n - 1)] = -u - 1;
        out.data[base + (std::size_t)alpha].add_at(eo, 2.0 * tv, tol);
        // regular part: (2/u) B^{b,alpha}_{e,u-1} eta^e zeta^u
        if (u - 1 + Q > K) {
          if (std::abs(tv) > tol)
            throw OrderError("kernel table order too small for the requested residue depth");
          return;
        }
        const CD w2 = CD(2.0 / (double)u, 0.0) * tv;
        for (int b = 0; b < nc; ++b) {
          NdSeries& acc = out.data[base + (std::size_t)b];
          for (int e2 = 0; e2 <= Q; ++e2) {
            eo[(std::size_t)(n - 1)] = e2;
            acc.ref(eo) += w2 * table_.B(b, e2, alpha, u - 1);
          }
        }
      });
    }
  }

  for (auto& t : out.data) {
    for (int j = 0; j + 1 < n; ++j) t.valid_hi[(std::size_t)j] = valid[(std::size_t)j];
    t.valid_hi[(std::size_t)(n - 1)] = Q;
  }
}

OmegaForm EOEngine::project_to_dxi(const LocalExpansionForm& f,
                                   double drop_tol) const {
  OmegaForm w;
  w.g = f.g;
  w.n = f.n;
  const int n = f.n;
  const int kmax = (-f.data[0].lo[0] - 2) / 2;
  std::vector<int> al((std::size_t)n, 0), ks((std::size_t)n, 0);
  std::size_t nk = 1;
  for (int j = 0; j < n; ++j) nk *= (std::size_t)(kmax + 1);
  for (std::size_t ia = 0; ia < f.data.size(); ++ia) {
    {
      std::size_t t = ia;
      for (int j = n - 1; j >= 0; --j) {
        al[(std::size_t)j] = (int)(t % (std::size_t)f.ncharts);
        t /= (std::size_t)f.ncharts;
      }
    }
    const NdSeries& S = f.data[ia];
    for (std::size_t ik = 0; ik < nk; ++ik) {
      {
        std::size_t t = ik;
        for (int j = n - 1; j >= 0; --j) {
          ks[(std::size_t)j] = (int)(t % (std::size_t)(kmax + 1));
          t /= (std::size_t)(kmax + 1);
        }
      }
      std::array<int, 5> e{};
      for (int j = 0; j < n; ++j) e[(std::size_t)j] = -2 * ks[(std::size_t)j] - 2;
      const CD num = S.at(e);
      if (num == CD(0.0, 0.0)) continue;
      CD den(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        den *= s_factor(ks[(std::size_t)j]) *
               CD(2.0 * ks[(std::size_t)j] + 1.0, 0.0);
      w.add_term(al, ks, num / den);
    }
  }
  if (drop_tol > 0.0) w.drop_below(drop_tol * w.max_abs());
  return w;
}

double EOEngine::reconstruction_residual(const LocalExpansionForm& f,
                                         const OmegaForm& w) const {
  const int n = f.n;
  double worst = 0.0;
  std::vector<int> beta((std::size_t)n, 0);
  for (std::size_t ib = 0; ib < f.data.size(); ++ib) {
    {
      std::size_t t = ib;
      for (int j = n - 1; j >= 0; --j) {
        beta[(std::size_t)j] = (int)(t % (std::size_t)f.ncharts);
        t /= (std::size_t)f.ncharts;
      }
    }
    const NdSeries& S = f.data[ib];
    struct View {
      CD c;
      std::array<const SeriesCD*, 5> s{};
    };
    std::vector<View> views;
    views.reserve(w.terms.size());
    int min_trunc = kPolyTrunc;
    for (const auto& [key, cv] : w.terms) {
      View v;
      v.c = cv;
      for (int j = 0; j < n; ++j) {
        const SeriesCD& ser = dxi_chart(key.first[(std::size_t)j],
                                        key.second[(std::size_t)j],
                                        beta[(std::size_t)j]);
        v.s[(std::size_t)j] = &ser;
        min_trunc = std::min(min_trunc, ser.trunc);
      }
      views.push_back(v);
    }
    std::array<int, 5> cap = S.valid_hi;
    for (int j = 0; j < n; ++j)
      cap[(std::size_t)j] = std::min(cap[(std::size_t)j], min_trunc - 1);
    S.for_each([&](const std::array<int, 5>& e, CD v) {
      for (int j = 0; j < n; ++j)
        if (e[(std::size_t)j] > cap[(std::size_t)j]) return;
      CD recon(0.0, 0.0);
      for (const View& vw : views) {
        CD p = vw.c;
        for (int j = 0; j < n && p != CD(0.0, 0.0); ++j) {
          const SeriesCD& ser = *vw.s[(std::size_t)j];
          p *= (e[(std::size_t)j] < ser.min_deg) ? CD(0.0, 0.0)
                                                 : ser.at(e[(std::size_t)j]);
        }
        recon += p;
      }
      worst = std::max(worst, std::abs(recon - v));
    });
  }
  return worst;
}

double EOEngine::symmetry_defect(const LocalExpansionForm& f) const {
  const int n = f.n;
  double worst = 0.0;
  std::vector<int> beta((std::size_t)n, 0);
  for (std::size_t ib = 0; ib < f.data.size(); ++ib) {
    {
      std::size_t t = ib;
      for (int j = n - 1; j >= 0; --j) {
        beta[(std::size_t)j] = (int)(t % (std::size_t)f.ncharts);
        t /= (std::size_t)f.ncharts;
      }
    }
    const NdSeries& S = f.data[ib];
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        std::vector<int> bs = beta;
        std::swap(bs[(std::size_t)a], bs[(std::size_t)b]);
        const NdSeries& S2 = f.at_tuple(bs);
        S.for_each([&](const std::array<int, 5>& e, CD v) {
          std::array<int, 5> es = e;
          std::swap(es[(std::size_t)a], es[(std::size_t)b]);
          for (int j = 0; j < n; ++j)
            if (e[(std::size_t)j] > S.valid_hi[(std::size_t)j] ||
                es[(std::size_t)j] > S2.valid_hi[(std::size_t)j])
              return;
          worst = std::max(worst, std::abs(v - S2.at(es)));
        });
      }
    }
  }
  return worst;
}

LocalExpansionForm omega_eo(const MirrorCurve& curve, int g, int n, int K) {
  EOEngine engine(curve, K);
  return engine.omega(g, n);
}

double annulus_kernel_check(const MirrorCurve& curve, CD product_factor) {
  if (curve.m() != 0 || curve.config().ptilde == CD(0.0, 0.0))
    throw ConfigError("non-limit curve");
  const int lo = -2, hi = 4;
  BergmanTable table(curve, hi + 2 + hi + 2);
  XiForms xi(curve, table);
  const int nc = curve.n_charts();

  // Chart expansions of the height-zero odd differentials: per source chart
  // gamma and observation chart a, the coefficient series of dxi_{gamma,0}.
  std::vector<SeriesCD> dc;
  dc.reserve((std::size_t)(nc * nc));
  for (int gamma = 0; gamma < nc; ++gamma) {
    const RatSum form = xi.dxi_form(gamma, 0);
    for (int a = 0; a < nc; ++a) dc.push_back(xi.expand_in_chart(form, a, true));
  }
  const auto dcoef = [&](int gamma, int a, int p) -> CD {
    return dc[(std::size_t)(gamma * nc + a)].at(p);
  };

  // Left side: the log-derivative image of the two-point kernel.  With
  // b_{s,t} the regular kernel coefficients of the chart pair, the (p,q)
  // coefficient is -[(p+1) b_{p+2,q} + (q+1) b_{p,q+2}]/2; on diagonal pairs
  // the kernel's own double pole contributes exactly +1/2 at (-2,-2).
  const auto breg = [&](int a, int s, int b, int t) -> CD {
    if (s < 0 || t < 0) return CD(0.0, 0.0);
    return table.B(a, s, b, t);
  };
  double defect = 0.0;
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      for (int p = lo; p <= hi; ++p)
        for (int q = lo; q <= hi; ++q) {
          CD lhs = CD(-0.5, 0.0) * (CD((double)(p + 1), 0.0) * breg(a, p + 2, b, q) +
                                    CD((double)(q + 1), 0.0) * breg(a, p, b, q + 2));
          if (a == b && p == -2 && q == -2) lhs += CD(0.5, 0.0);
          CD rhs(0.0, 0.0);
          for (int gamma = 0; gamma < nc; ++gamma)
            rhs += dcoef(gamma, a, p) * dcoef(gamma, b, q);
          rhs *= product_factor;
          defect = std::max(defect, std::abs(lhs - rhs));
        }
  return defect;
}

}  // namespace ftr
