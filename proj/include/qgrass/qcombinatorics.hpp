#pragma once

// Closed-form q-analog counting functions evaluated at a concrete integer q.

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgrass/rat.hpp"

namespace qgrass {

/// The base q (any integer >= 2) and the ambient dimension n.
struct QContext {
  long q = 2;
  int n = 0;

  QContext() = default;
  QContext(long q_, int n_) : q(q_), n(n_) {
    if (q < 2) throw std::invalid_argument("QContext: q must be >= 2, got " + std::to_string(q));
    if (n < 0) throw std::invalid_argument("QContext: n must be >= 0");
  }

  Rat qp(long e) const { return qpow(q, e); }
  Rat qinv() const { return Rat(1) / Rat(q); }
};

/// (u; b)_k = prod_{j<k} (1 - b^j u).
inline Rat q_pochhammer(const Rat& u, const Rat& base, long k) {
  if (k < 0) throw std::invalid_argument("q_pochhammer: k must be >= 0");
  Rat acc(1);
  Rat bj(1);
  for (long j = 0; j < k; ++j) {
    acc *= Rat(1) - bj * u;
    bj *= base;
  }
  return acc;
}

/// Product of several Pochhammer symbols sharing base and length.
inline Rat q_pochhammer_multi(std::initializer_list<Rat> us, const Rat& base, long k) {
  Rat acc(1);
  for (const auto& u : us) acc *= q_pochhammer(u, base, k);
  return acc;
}

/// (q^a; q^{-1})_k, the descending symbol that appears throughout.
inline Rat q_poch_down(const QContext& c, long a, long k) { return q_pochhammer(c.qp(a), c.qinv(), k); }

/// (q; q)_m.
inline Rat q_factorial(long m, const QContext& c) { return q_pochhammer(Rat(c.q), Rat(c.q), m); }

/// Gaussian binomial [m k]_q; zero outside 0 <= k <= m.
inline Rat q_binomial(long m, long k, const QContext& c) {
  if (m < 0 || k < 0 || k > m) return Rat(0);
  // Product form keeps the intermediate integers small.
  Rat acc(1);
  for (long j = 0; j < k; ++j) acc *= (c.qp(m - j) - Rat(1)) / (c.qp(j + 1) - Rat(1));
  return acc;
}

/// q-multinomial [m; parts]_q.  A negative part gives 0; otherwise the parts
/// must sum to m.
inline Rat q_multinomial(long m, std::span<const long> parts, const QContext& c) {
  for (long p : parts)
    if (p < 0) return Rat(0);
  const long total = std::accumulate(parts.begin(), parts.end(), 0L);
  if (total != m)
    throw std::invalid_argument("q_multinomial: parts sum to " + std::to_string(total) + ", expected " +
                                std::to_string(m));
  Rat acc(1);
  long remaining = m;
  for (long p : parts) {
    acc *= q_binomial(remaining, p, c);
    remaining -= p;
  }
  return acc;
}

inline Rat q_multinomial(long m, std::initializer_list<long> parts, const QContext& c) {
  return q_multinomial(m, std::span<const long>(parts.begin(), parts.size()), c);
}

/// |GL(n, F_q)| = (-1)^n q^{n(n-1)/2} (q;q)_n.
inline Rat gl_order(const QContext& c) {
  const long n = c.n;
  Rat v = c.qp(n * (n - 1) / 2) * q_factorial(n, c);
  return n % 2 == 0 ? v : -v;
}

/// Number of r-dimensional x with x1 < x < x2 for fixed nested x1, x2.
inline Rat count_between(long r1, long r, long r2, const QContext& c) { return q_binomial(r2 - r1, r - r1, c); }

/// Number of complements of a fixed r-dimensional subspace.
inline Rat count_complements(long r, const QContext& c) {
  if (r < 0 || r > c.n) throw std::invalid_argument("count_complements: r out of range");
  return c.qp(r * (c.n - r));
}

/// Interval I_n(r1, r2) of attainable distances d(x2, x1), as [lo, hi].
struct IndexRange {
  long lo = 0;
  long hi = -1;
  bool contains(long t) const { return lo <= t && t <= hi; }
  long size() const { return hi - lo + 1; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

inline IndexRange index_set(const QContext& c, long r1, long r2) {
  if (r1 < 0 || r2 < 0 || r1 > c.n || r2 > c.n)
    throw std::invalid_argument("index_set: dimensions must lie in [0, n]");
  return {std::max(0L, r2 - r1), std::min(r2, c.n - r1)};
}

/// N(r1, r2) = min(r1, r2, n - r1, n - r2).
inline long n_max(const QContext& c, long r1, long r2) {
  return std::min({r1, r2, c.n - r1, c.n - r2});
}

/// Ordered pairs (x1, x2) in X_{r1} x X_{r2} with d(x2, x1) = t.
inline Rat count_pairs_at_distance(long r1, long r2, long t, const QContext& c) {
  if (r1 < 0 || r2 < 0 || r1 > c.n || r2 > c.n) return Rat(0);
  if (!index_set(c, r1, r2).contains(t)) return Rat(0);
  return c.qp(t * (r1 - r2 + t)) * q_multinomial(c.n, {t, r2 - t, r1 - r2 + t, c.n - r1 - t}, c);
}

/// Number of r-dimensional x_r with d(x_r, x) = k, for a fixed x of
/// codimension t in F_q^n.
inline Rat m_count(long n, long r, long t, long k, const QContext& c) {
  if (k < 0 || k > std::min(t, r)) return Rat(0);
  return c.qp(k * (n - t - r + k)) * q_binomial(t, k, c) * q_binomial(n - t, r - k, c);
}

}  // namespace qgrass
