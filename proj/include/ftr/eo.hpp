#pragma once
// The residue recursion on the spectral curve.  Stable correlation forms
// omega_{g,n} are computed as joint Laurent windows in the local chart
// variables around the critical points (LocalExpansionForm), by taking
// residues of the recursion kernel against lower forms.  A finished form can
// be projected onto the canonical odd-differential basis (OmegaForm) by
// reading its joint principal slices, and the projection can be validated by
// re-expanding the basis form and comparing over the computed windows.

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "ftr/bergman.hpp"
#include "ftr/curve.hpp"
#include "ftr/dxi.hpp"
#include "ftr/ndseries.hpp"
#include "ftr/omegaform.hpp"

namespace ftr {

// Chartwise local expansions of an n-form: data[t] holds, for the chart
// assignment (b_1..b_n) encoded row-major by t (last slot fastest), the
// coefficients of omega / (dzeta_1 ... dzeta_n).
struct LocalExpansionForm {
  int g = 0, n = 0, ncharts = 0;
  std::vector<NdSeries> data;

  std::size_t tuple_index(const std::vector<int>& beta) const;
  NdSeries& at_tuple(const std::vector<int>& beta);
  const NdSeries& at_tuple(const std::vector<int>& beta) const;
};

class EOEngine {
 public:
  // bergman_order: total order K of the kernel table (the curve must carry
  // at least K + 3 orders of local expansion).
  EOEngine(const MirrorCurve& curve, int bergman_order);

  const MirrorCurve& curve() const { return curve_; }
  const BergmanTable& bergman() const { return table_; }
  const XiForms& xi() const { return xi_; }

  // omega_{g,n} for a stable target (2g - 2 + n > 0), memoized.
  // Throws ConfigError("unstable target") otherwise.
  const LocalExpansionForm& omega(int g, int n);

  // Deepest pole order 6g - 4 + 2n kept on each axis, and the retained
  // positive order for an n-point computation.
  static int pole_bound(int g, int n) { return 6 * g - 4 + 2 * n; }
  static int qstore(int n) { return n <= 2 ? 16 : (n == 3 ? 8 : 6); }

  // Basis coefficients read off the joint principal slices: exact because
  // each basis differential has a pure zeta^{-2k-2} principal part in its
  // own chart.  drop_tol > 0 prunes coefficients below drop_tol * max.
  OmegaForm project_to_dxi(const LocalExpansionForm& f,
                           double drop_tol = 0.0) const;

  // Largest deviation between f and the re-expanded basis form w over the
  // validated windows.
  double reconstruction_residual(const LocalExpansionForm& f,
                                 const OmegaForm& w) const;

  // Largest violation of slot-exchange symmetry over validated windows.
  double symmetry_defect(const LocalExpansionForm& f) const;

 private:
  const SeriesCD& dxi_chart(int alpha, int k, int beta) const;
  void compute(int g, int n, LocalExpansionForm& out);

  const MirrorCurve& curve_;
  BergmanTable table_;
  XiForms xi_;
  std::vector<SeriesCD> invden_;  // 1 / (2 (s(z) - s(-z)) dx/dz) per chart
  std::map<std::pair<int, int>, LocalExpansionForm> cache_;
  mutable std::map<std::tuple<int, int, int>, SeriesCD> dxi_cache_;
};

// One-shot residue recursion: builds an engine with kernel order K and
// returns omega_{g,n} by value.
LocalExpansionForm omega_eo(const MirrorCurve& curve, int g, int n, int K);

// Annulus kernel identity on a limit curve (m = 0 with a nonzero equivariant
// shift): the log-derivative image of the two-point kernel must equal the
// product of the height-zero odd differentials summed over critical points.
// Both sides are expanded at every critical-point pair through order 4 and
// the largest coefficient deviation is returned.  The canonical odd forms
// carry a phase that squares to -1, so the product side enters with weight
// product_factor = -1/2; passing a different factor deliberately breaks the
// identity (perturbation control).  Throws ConfigError("non-limit curve")
// when the curve is not a limit curve.
double annulus_kernel_check(const MirrorCurve& curve,
                            CD product_factor = CD(-0.5, 0.0));

}  // namespace ftr
