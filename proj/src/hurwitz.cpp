#include "ftr/hurwitz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numeric>
#include <utility>

#include "ftr/error.hpp"

namespace ftr {

namespace {

using Perm = std::vector<int>;

int checked_degree(int r, const std::vector<int>& mu) {
  if (r < 1) throw ConfigError("invalid partition");
  if (mu.empty()) throw ConfigError("invalid partition");
  int d = 0;
  for (int m : mu) {
    if (m < 1) throw ConfigError("invalid partition");
    d += m;
  }
  return d;
}

std::vector<int> sorted_desc(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<int>());
  return v;
}

std::vector<int> cycle_type(const Perm& p) {
  const int d = (int)p.size();
  std::vector<char> seen((std::size_t)d, 0);
  std::vector<int> type;
  for (int i = 0; i < d; ++i) {
    if (seen[(std::size_t)i]) continue;
    int len = 0, x = i;
    while (!seen[(std::size_t)x]) {
      seen[(std::size_t)x] = 1;
      x = p[(std::size_t)x];
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<int>());
  return type;
}

mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), (unsigned long)n);
  return f;
}

// ---------------------------------------------------------------------------
// Direct route: depth-first enumeration of transposition tuples on top of
// each base permutation, with an exact running product and cycle-count
// pruning.  Transitivity is checked per surviving tuple by union-find.
// ---------------------------------------------------------------------------

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent((std::size_t)n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[(std::size_t)x] != x) {
      parent[(std::size_t)x] = parent[(std::size_t)parent[(std::size_t)x]];
      x = parent[(std::size_t)x];
    }
    return x;
  }
  void unite(int a, int b) { parent[(std::size_t)find(a)] = find(b); }
};

struct DirectSearch {
  int d = 0;
  int b = 0;
  int n_target = 0;
  std::vector<int> mu;                           // sorted descending
  std::vector<std::pair<int, int>> trans;        // all transpositions of S_d
  const std::vector<Perm>* rhos = nullptr;       // base permutations

  // Mutable per-branch state.
  Perm prod, pos;                                // product and its inverse
  int cycles = 0;
  std::vector<std::pair<int, int>> path;         // transpositions applied

  // Apply tau = (a b) on the left of prod; returns the cycle-count delta.
  int apply(int a, int b) {
    const int u = pos[(std::size_t)a], v = pos[(std::size_t)b];
    // Left multiplication by (a b) equals right multiplication by (u v);
    // it splits the cycle of prod through u iff v lies on that cycle.
    int delta = -1;
    for (int x = prod[(std::size_t)u]; ; x = prod[(std::size_t)x]) {
      if (x == v) {
        delta = 1;
        break;
      }
      if (x == u) break;
    }
    std::swap(prod[(std::size_t)u], prod[(std::size_t)v]);
    std::swap(pos[(std::size_t)a], pos[(std::size_t)b]);
    cycles += delta;
    return delta;
  }
  void undo(int a, int b, int delta) {
    const int u = pos[(std::size_t)a], v = pos[(std::size_t)b];
    std::swap(prod[(std::size_t)u], prod[(std::size_t)v]);
    std::swap(pos[(std::size_t)a], pos[(std::size_t)b]);
    cycles -= delta;
  }

  bool prune_ok(int depth) const {
    const int rem = b - depth;
    const int gap = std::abs(cycles - n_target);
    return gap <= rem && ((rem - gap) % 2 == 0);
  }

  bool leaf_accepts(const Perm& rho) {
    if (cycles != n_target) return false;
    if (cycle_type(prod) != mu) return false;
    Dsu dsu(d);
    for (int x = 0; x < d; ++x) dsu.unite(x, rho[(std::size_t)x]);
    for (const auto& [a, bb] : path) dsu.unite(a, bb);
    const int root = dsu.find(0);
    for (int x = 1; x < d; ++x)
      if (dsu.find(x) != root) return false;
    return true;
  }

  std::uint64_t descend(const Perm& rho, int depth) {
    if (depth == b) return leaf_accepts(rho) ? 1u : 0u;
    std::uint64_t hits = 0;
    for (const auto& [a, bb] : trans) {
      const int delta = apply(a, bb);
      if (prune_ok(depth + 1)) {
        path.push_back({a, bb});
        hits += descend(rho, depth + 1);
        path.pop_back();
      }
      undo(a, bb, delta);
    }
    return hits;
  }

  // Count all tuples whose first transposition is trans[t1] (or, for b = 0,
  // the bare base permutations; t1 < 0).
  std::uint64_t count_first(int t1) {
    std::uint64_t hits = 0;
    for (const Perm& rho : *rhos) {
      prod = rho;
      pos.assign((std::size_t)d, 0);
      for (int x = 0; x < d; ++x) pos[(std::size_t)prod[(std::size_t)x]] = x;
      cycles = (int)cycle_type(rho).size();
      path.clear();
      if (t1 < 0) {
        hits += leaf_accepts(rho) ? 1u : 0u;
        continue;
      }
      const auto [a, bb] = trans[(std::size_t)t1];
      const int delta = apply(a, bb);
      if (prune_ok(1)) {
        path.push_back({a, bb});
        hits += descend(rho, 1);
        path.pop_back();
      }
      undo(a, bb, delta);
    }
    return hits;
  }
};

std::vector<Perm> base_permutations(int r, int d) {
  std::vector<Perm> out;
  Perm p((std::size_t)d);
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> target((std::size_t)(d / r), r);
  do {
    if (cycle_type(p) == target) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Class-walk route: exact counts of (rho, tau_1..tau_b) tuples by cycle
// type of the running product, multiplying one uniform transposition per
// step.  Connectivity is restored afterwards by inclusion-exclusion over
// set partitions of the parts of mu.
// ---------------------------------------------------------------------------

void gen_partitions(int m, int maxpart, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(m, maxpart); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(m - p, p, cur, out);
    cur.pop_back();
  }
}

struct ClassWalk {
  int m = 0;
  std::vector<std::vector<int>> classes;           // partitions of m, descending
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<long>> step;             // step[c][c'] transition count
  std::vector<std::vector<mpz_class>> states;      // states[t][c], t = 0.. as grown

  explicit ClassWalk(int m_in, int r) : m(m_in) {
    std::vector<int> cur;
    gen_partitions(m, m, cur, classes);
    for (int i = 0; i < (int)classes.size(); ++i)
      index[classes[(std::size_t)i]] = i;

    const int nc = (int)classes.size();
    step.assign((std::size_t)nc, std::vector<long>((std::size_t)nc, 0));
    for (int c = 0; c < nc; ++c) {
      // Canonical representative with the given cycle type.
      Perm sigma((std::size_t)m);
      {
        int at = 0;
        for (int len : classes[(std::size_t)c]) {
          for (int j = 0; j < len; ++j)
            sigma[(std::size_t)(at + j)] = at + (j + 1) % len;
          at += len;
        }
      }
      Perm posv((std::size_t)m);
      for (int x = 0; x < m; ++x) posv[(std::size_t)sigma[(std::size_t)x]] = x;
      for (int a = 0; a < m; ++a)
        for (int bb = a + 1; bb < m; ++bb) {
          Perm t = sigma;
          std::swap(t[(std::size_t)posv[(std::size_t)a]],
                    t[(std::size_t)posv[(std::size_t)bb]]);
          ++step[(std::size_t)c][(std::size_t)index.at(cycle_type(t))];
        }
    }

    // t = 0: all base permutations, counted by their full class size.
    std::vector<mpz_class> w0((std::size_t)nc, mpz_class(0));
    if (m % r == 0) {
      std::vector<int> base((std::size_t)(m / r), r);
      mpz_class size = factorial(m);
      for (int i = 1; i <= m / r; ++i) size /= r;
      size /= factorial(m / r);
      w0[(std::size_t)index.at(base)] = size;
    }
    states.push_back(std::move(w0));
  }

  void grow_to(int b) {
    const int nc = (int)classes.size();
    while ((int)states.size() <= b) {
      const std::vector<mpz_class>& prev = states.back();
      std::vector<mpz_class> next((std::size_t)nc, mpz_class(0));
      for (int c = 0; c < nc; ++c) {
        if (prev[(std::size_t)c] == 0) continue;
        for (int c2 = 0; c2 < nc; ++c2)
          if (step[(std::size_t)c][(std::size_t)c2] != 0)
            next[(std::size_t)c2] +=
                prev[(std::size_t)c] * step[(std::size_t)c][(std::size_t)c2];
      }
      states.push_back(std::move(next));
    }
  }

  // Disconnected count at exactly t transpositions, normalized by m!.
  Rat disconnected(int t, const std::vector<int>& type) {
    grow_to(t);
    auto it = index.find(type);
    if (it == index.end()) return Rat(0);
    Rat v(states[(std::size_t)t][(std::size_t)it->second]);
    v /= Rat(factorial(m));
    return v;
  }
};

ClassWalk& walk_for(int m, int r) {
  // Keyed by (m, r): the transition matrix depends only on m, but the
  // base-class seeding depends on r.
  static std::map<std::pair<int, int>, ClassWalk> cache;
  auto it = cache.find({m, r});
  if (it == cache.end())
    it = cache.emplace(std::make_pair(m, r), ClassWalk(m, r)).first;
  return it->second;
}

void gen_set_partitions(int n, std::vector<int>& rgs, int nblocks,
                        const std::function<void(const std::vector<int>&, int)>& cb) {
  const int at = (int)rgs.size();
  if (at == n) {
    cb(rgs, nblocks);
    return;
  }
  for (int s = 0; s <= nblocks; ++s) {
    rgs.push_back(s);
    gen_set_partitions(n, rgs, std::max(nblocks, s + 1), cb);
    rgs.pop_back();
  }
}

// Product over distinct part values of (multiplicity!): converts between
// counts with unlabeled product cycles and counts where cycles of equal
// length are distinguished.  The set-partition inversion is multiplicative
// only for the labeled counts.
Rat label_factor(const std::vector<int>& sorted_type) {
  Rat f(1);
  std::size_t i = 0;
  while (i < sorted_type.size()) {
    std::size_t j = i;
    while (j < sorted_type.size() && sorted_type[j] == sorted_type[i]) ++j;
    f *= Rat(factorial((int)(j - i)));
    i = j;
  }
  return f;
}

Rat connected_by_class_walk(int r, int b, const std::vector<int>& mu) {
  const int n = (int)mu.size();
  Rat total(0);
  std::vector<int> rgs;
  gen_set_partitions(n, rgs, 0, [&](const std::vector<int>& s, int c) {
    // Split parts into blocks.
    std::vector<std::vector<int>> blocks((std::size_t)c);
    for (int i = 0; i < n; ++i)
      blocks[(std::size_t)s[(std::size_t)i]].push_back(mu[(std::size_t)i]);

    // EGF product over blocks of the labeled disconnected arrays.
    std::vector<Rat> poly(1, Rat(1));
    for (const auto& blk : blocks) {
      const int dB = std::accumulate(blk.begin(), blk.end(), 0);
      if (dB % r != 0) {
        poly.assign(1, Rat(0));
        break;
      }
      ClassWalk& walk = walk_for(dB, r);
      const std::vector<int> type = sorted_desc(blk);
      const Rat lf = label_factor(type);
      std::vector<Rat> fac((std::size_t)b + 1, Rat(0));
      for (int t = 0; t <= b; ++t)
        fac[(std::size_t)t] =
            walk.disconnected(t, type) * lf / Rat(factorial(t));
      std::vector<Rat> nxt(
          std::min(poly.size() + (std::size_t)b, (std::size_t)b + 1), Rat(0));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] == 0) continue;
        for (int t = 0; t + (int)i <= b; ++t)
          nxt[i + (std::size_t)t] += poly[i] * fac[(std::size_t)t];
      }
      poly = std::move(nxt);
    }

    Rat inner = ((std::size_t)b < poly.size()) ? poly[(std::size_t)b] : Rat(0);
    inner *= Rat(factorial(b));
    Rat moebius(factorial(c - 1));
    if ((c - 1) % 2 != 0) moebius = -moebius;
    total += moebius * inner;
  });
  return total / label_factor(sorted_desc(mu));
}

}  // namespace

Rat hurwitz_oracle_direct(int r, int g, const std::vector<int>& mu) {
  const int d = checked_degree(r, mu);
  if (d > 8) throw OracleBoundError("oracle bound");
  if (d % r != 0) return Rat(0);
  const int n = (int)mu.size();
  const int b = 2 * g - 2 + n + d / r;
  if (b < 0) return Rat(0);
  if (b > 12) throw OracleBoundError("oracle bound");

  DirectSearch proto;
  proto.d = d;
  proto.b = b;
  proto.n_target = n;
  proto.mu = sorted_desc(mu);
  for (int a = 0; a < d; ++a)
    for (int bb = a + 1; bb < d; ++bb) proto.trans.push_back({a, bb});
  const std::vector<Perm> rhos = base_permutations(r, d);
  proto.rhos = &rhos;

  std::uint64_t total = 0;
  if (b == 0 || proto.trans.empty()) {
    DirectSearch s = proto;
    s.rhos = &rhos;
    total = (b == 0) ? s.count_first(-1) : 0u;
  } else {
    // Parallel over the first transposition, reduced in index order.
    std::vector<std::future<std::uint64_t>> futs;
    futs.reserve(proto.trans.size());
    for (int t1 = 0; t1 < (int)proto.trans.size(); ++t1)
      futs.push_back(std::async(std::launch::async, [&proto, &rhos, t1]() {
        DirectSearch s = proto;
        s.rhos = &rhos;
        return s.count_first(t1);
      }));
    for (auto& f : futs) total += f.get();
  }

  Rat v(mpz_class((unsigned long)total));
  v /= Rat(factorial(d));
  return v;
}

Rat hurwitz_disconnected(int r, int b, const std::vector<int>& mu) {
  const int d = checked_degree(r, mu);
  if (d > 8) throw OracleBoundError("oracle bound");
  if (b < 0) throw ConfigError("invalid partition");
  if (d % r != 0) return Rat(0);
  return walk_for(d, r).disconnected(b, sorted_desc(mu));
}

Rat hurwitz_oracle_partitions(int r, int g, const std::vector<int>& mu) {
  const int d = checked_degree(r, mu);
  if (d > 8) throw OracleBoundError("oracle bound");
  if (d % r != 0) return Rat(0);
  const int b = 2 * g - 2 + (int)mu.size() + d / r;
  if (b < 0) return Rat(0);
  return connected_by_class_walk(r, b, sorted_desc(mu));
}

Rat hurwitz_oracle(int r, int g, const std::vector<int>& mu) {
  const int d = checked_degree(r, mu);
  if (d > 8) throw OracleBoundError("oracle bound");
  if (d % r != 0) return Rat(0);
  const int n = (int)mu.size();
  const int b = 2 * g - 2 + n + d / r;
  if (b < 0) return Rat(0);
  if (d <= 5 && b <= 8) return hurwitz_oracle_direct(r, g, mu);
  return hurwitz_oracle_partitions(r, g, mu);
}

// ---------------------------------------------------------------------------
// Disk coefficients.
// ---------------------------------------------------------------------------

DiskCoefficients disk_coefficients(int r, const std::map<int, Rat>& q, int L) {
  if (r < 1 || L < 1) throw ConfigError("invalid partition");
  for (const auto& [i, qi] : q)
    if (i < 1 || i >= r) throw ConfigError("disk q keys must lie in 1..r-1");

  DiskCoefficients out;
  out.residue.reserve((std::size_t)L);
  out.closed.reserve((std::size_t)L);

  // Q(Y) = Y^r + sum q_i Y^i as dense coefficients 0..r.
  std::vector<Rat> Q((std::size_t)r + 1, Rat(0));
  Q[(std::size_t)r] = Rat(1);
  for (const auto& [i, qi] : q) Q[(std::size_t)i] = qi;

  for (int mu = 1; mu <= L; ++mu) {
    // Residue route: f = e^{mu Q}, via k f_k = sum_j j (mu Q_j) f_{k-j}.
    std::vector<Rat> f((std::size_t)mu + 1, Rat(0));
    f[0] = Rat(1);
    for (int k = 1; k <= mu; ++k) {
      Rat acc(0);
      for (int j = 1; j <= std::min(k, r); ++j)
        if (Q[(std::size_t)j] != 0)
          acc += Rat(j) * Rat(mu) * Q[(std::size_t)j] * f[(std::size_t)(k - j)];
      f[(std::size_t)k] = acc / Rat(k);
    }
    out.residue.push_back(f[(std::size_t)mu] / Rat(mu));

    // Closed lattice sum over d = (d_1..d_{r-1}).
    Rat sum(0);
    std::vector<int> dvec((std::size_t)std::max(0, r - 1), 0);
    const std::function<void(int, int, int)> rec = [&](int i, int used,
                                                       int dtot) {
      if (i == r) {
        const int rest = mu - used;
        if (rest < 0 || rest % r != 0) return;
        const int e = rest / r;
        if (dtot + e == 0) return;  // mu >= 1 makes this unreachable
        Rat term(1);
        for (int j = 1; j < r; ++j)
          for (int c = 0; c < dvec[(std::size_t)(j - 1)]; ++c)
            term *= q.count(j) ? q.at(j) : Rat(0);
        mpz_class mpow;
        mpz_class base(mu);
        mpz_pow_ui(mpow.get_mpz_t(), base.get_mpz_t(),
                   (unsigned long)(dtot + e - 1));
        term *= Rat(mpow);
        term /= Rat(factorial(e));
        for (int j = 1; j < r; ++j)
          term /= Rat(factorial(dvec[(std::size_t)(j - 1)]));
        sum += term;
        return;
      }
      for (int di = 0; used + i * di <= mu; ++di) {
        dvec[(std::size_t)(i - 1)] = di;
        rec(i + 1, used + i * di, dtot + di);
      }
      dvec[(std::size_t)(i - 1)] = 0;
    };
    rec(1, 0, 0);
    out.closed.push_back(sum);
  }
  return out;
}

Rat rational_reconstruct(double x, long den_bound) {
  if (!std::isfinite(x)) throw ConfigError("invalid partition");
  const bool neg = x < 0;
  double y = std::fabs(x);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // h_{k-2}/k_{k-2}, h_{k-1}/k_{k-1}
  double t = y;
  for (int it = 0; it < 64; ++it) {
    const double fa = std::floor(t);
    if (fa > 9.0e17) break;
    const long long a = (long long)fa;
    const long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > den_bound && it > 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = t - fa;
    if (frac < 1e-12 * std::max(1.0, fa)) break;
    t = 1.0 / frac;
  }
  Rat v(mpz_class((long)p1), mpz_class((long)std::max(1LL, q1)));
  v.canonicalize();
  return neg ? Rat(-v) : v;
}

}  // namespace ftr
