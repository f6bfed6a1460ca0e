#include "ftr/intersections.hpp"

#include <algorithm>
#include <numeric>

#include "ftr/error.hpp"

namespace ftr {

namespace {

// (2j - 1)!! with the empty-product convention (-1)!! = 1.
Rat odf(long j) { return odd_double_factorial(j); }

}  // namespace

Rat TauCorrelators::psi_intersection(int g, std::vector<int> heights) {
  if (g < 0) throw ConfigError("unstable vertex");
  const int n = static_cast<int>(heights.size());
  if (2 * g - 2 + n <= 0) throw ConfigError("unstable vertex");
  for (int k : heights)
    if (k < 0) throw ConfigError("negative height");
  return corr_of(g, std::move(heights));
}

Rat TauCorrelators::corr_of(int g, std::vector<int> ks) {
  std::sort(ks.begin(), ks.end());
  return corr(g, std::move(ks));
}

Rat TauCorrelators::corr(int g, std::vector<int> ks) {
  if (g < 0) return rat(0);
  for (int k : ks)
    if (k < 0) return rat(0);
  const int n = static_cast<int>(ks.size());
  if (2 * g - 2 + n <= 0) return rat(0);

  // Dimension gate: no recursion (and no caching) off-dimension.
  const long total = std::accumulate(ks.begin(), ks.end(), 0L);
  if (total != 3L * g - 3 + n) return rat(0);

  // Base cases.
  if (g == 0 && n == 3) return rat(1);  // heights forced to (0,0,0)
  if (g == 1 && n == 1) return rat(1, 24);

  const Key key{g, ks};
  {
    std::shared_lock<std::shared_mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }

  // DVV recursion on the largest height k1 (>= 1 here: an all-zero stable
  // on-dimension correlator exists only at (g, n) = (0, 3)).
  const int k1 = ks.back();
  std::vector<int> rest(ks.begin(), ks.end() - 1);
  const int nr = static_cast<int>(rest.size());

  Rat acc = rat(0);

  // Joining term: tau_{k1} merges with one other insertion.
  for (int j = 0; j < nr; ++j) {
    std::vector<int> next = rest;
    next[j] = k1 + rest[j] - 1;
    acc += odf(k1 + rest[j]) / odf(rest[j]) * corr_of(g, std::move(next));
  }

  // Splitting terms: tau_{k1} breaks into tau_a tau_b with a + b = k1 - 2,
  // either non-separating (genus drops) or separating (genus and the other
  // insertions are distributed over two vertices); ordered (a, b) and ordered
  // splittings, with an overall 1/2.
  Rat split = rat(0);
  for (int a = 0; a <= k1 - 2; ++a) {
    const int b = k1 - 2 - a;
    const Rat c = odf(a + 1) * odf(b + 1);

    std::vector<int> joined = rest;
    joined.push_back(a);
    joined.push_back(b);
    Rat inner = corr_of(g - 1, std::move(joined));

    for (int g1 = 0; g1 <= g; ++g1)
      for (unsigned mask = 0; mask < (1u << nr); ++mask) {
        std::vector<int> left{a}, right{b};
        for (int i = 0; i < nr; ++i)
          (mask & (1u << i) ? left : right).push_back(rest[i]);
        const Rat lv = corr_of(g1, std::move(left));
        if (lv == 0) continue;
        inner += lv * corr_of(g - g1, std::move(right));
      }
    split += c * inner;
  }
  acc += split / 2;

  Rat value = acc / odf(k1 + 1);
  {
    std::unique_lock<std::shared_mutex> lock(mutex_);
    cache_.emplace(key, value);
  }
  return value;
}

std::size_t TauCorrelators::cache_size() const {
  std::shared_lock<std::shared_mutex> lock(mutex_);
  return cache_.size();
}

std::vector<std::pair<TauCorrelators::Key, Rat>> TauCorrelators::cache_snapshot() const {
  std::shared_lock<std::shared_mutex> lock(mutex_);
  return {cache_.begin(), cache_.end()};
}

std::size_t TauCorrelators::verify_cache_identities() {
  std::size_t checked = 0;
  // Snapshot first: the checks themselves may grow the cache.
  const auto entries = cache_snapshot();
  for (const auto& [key, value] : entries) {
    const int g = key.first;
    const std::vector<int>& ks = key.second;
    const int n = static_cast<int>(ks.size());

    // Upward dilaton: <tau_1 X>_g = (2g - 2 + n) <X>_g.
    {
      std::vector<int> up = ks;
      up.push_back(1);
      if (corr_of(g, std::move(up)) != rat(2 * g - 2 + n) * value)
        throw Error("dilaton identity violated");
      ++checked;
    }

    // Upward string: <tau_0 X>_g = sum_j <... k_j - 1 ...>_g
    // (both sides vanish off-dimension; still an identity instance).
    {
      std::vector<int> up = ks;
      up.push_back(0);
      Rat lhs = corr_of(g, std::move(up));
      Rat rhs = rat(0);
      for (int j = 0; j < n; ++j) {
        std::vector<int> red = ks;
        red[j] -= 1;
        rhs += corr_of(g, std::move(red));
      }
      if (lhs != rhs) throw Error("string identity violated");
      ++checked;
    }

    // Downward string: a zero height in X reduces the cached value itself.
    if (!ks.empty() && ks.front() == 0 && !(g == 0 && n == 3)) {
      std::vector<int> body(ks.begin() + 1, ks.end());
      Rat rhs = rat(0);
      for (std::size_t j = 0; j < body.size(); ++j) {
        std::vector<int> red = body;
        red[j] -= 1;
        rhs += corr_of(g, std::move(red));
      }
      if (value != rhs) throw Error("string identity violated");
      ++checked;
    }

    // Downward dilaton: a unit height in X rescales the reduced correlator.
    {
      auto it = std::find(ks.begin(), ks.end(), 1);
      if (it != ks.end() && 2 * g - 2 + (n - 1) > 0) {
        std::vector<int> body;
        body.reserve(n - 1);
        for (auto jt = ks.begin(); jt != ks.end(); ++jt)
          if (jt != it) body.push_back(*jt);
        if (value != rat(2 * g - 2 + (n - 1)) * corr_of(g, std::move(body)))
          throw Error("dilaton identity violated");
        ++checked;
      }
    }
  }
  return checked;
}

TauCorrelators& global_tau_correlators() {
  static TauCorrelators instance;
  return instance;
}

}  // namespace ftr
