#pragma once

// Psi-class intersection numbers <tau_{k_1} ... tau_{k_n}>_g on the moduli of
// stable curves, computed by the Dijkgraaf-Verlinde-Verlinde (Virasoro)
// recursion in exact rational arithmetic.  These are the vertex factors of
// every graph sum in this project.
//
// Conventions:
//   - value is 0 unless sum(k_j) = 3g - 3 + n    (dimension constraint)
//   - string equation:  <tau_0 prod tau_{k_j}>_g = sum_i <... tau_{k_i - 1} ...>_g
//   - dilaton equation: <tau_1 prod tau_{k_j}>_g = (2g - 2 + n) <prod tau_{k_j}>_g
//   - base cases: <tau_0^3>_0 = 1,  <tau_1>_1 = 1/24.

#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "ftr/scalar.hpp"

namespace ftr {

class TauCorrelators {
 public:
  // <tau_{k_1} ... tau_{k_n}>_g as an exact rational.  Heights may be given in
  // any order.  Requires g >= 0, every height >= 0, and stability
  // 2g - 2 + n > 0; an unstable (g, n) throws ConfigError("unstable vertex").
  // Off-dimension queries return 0 without recursing.
  Rat psi_intersection(int g, std::vector<int> heights);

  // Number of memoized correlator values.
  std::size_t cache_size() const;

  // Snapshot of the cache as (g, sorted heights) -> value.
  using Key = std::pair<int, std::vector<int>>;
  std::vector<std::pair<Key, Rat>> cache_snapshot() const;

  // Re-checks the string and dilaton equations against every memoized entry:
  // for each cached <X>_g with n insertions it verifies
  //   <tau_1 X>_g == (2g - 2 + n) <X>_g,
  //   <tau_0 X>_g == sum over reductions (both sides zero off-dimension),
  // and, when X itself contains a 0 or 1 height, the downward identities for
  // the cached value.  Returns the number of identity instances checked;
  // throws OracleBoundError on any mismatch.
  std::size_t verify_cache_identities();

 private:
  Rat corr(int g, std::vector<int> ks);  // ks sorted ascending
  Rat corr_of(int g, std::vector<int> ks_unsorted);

  mutable std::shared_mutex mutex_;
  std::map<Key, Rat> cache_;
};

// Process-wide shared instance (vertex factors for graph sums).
TauCorrelators& global_tau_correlators();

}  // namespace ftr
