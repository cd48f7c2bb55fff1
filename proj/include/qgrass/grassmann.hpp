#pragma once

// Subspaces of F_p^n for prime p: canonical forms, enumeration, distances and
// the GL(n, p) action.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qgrass/errors.hpp"
#include "qgrass/parallel.hpp"
#include "qgrass/qcombinatorics.hpp"
#include "qgrass/rat.hpp"

namespace qgrass {

using Entry = std::uint16_t;

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(long p) {
  if (!is_prime(p)) throw std::invalid_argument("q must be prime for geometric commands (got " + std::to_string(p) + ")");
}

/// Point budget: QGRASS_BUDGET if set and positive, else 5000.
inline std::size_t default_budget() {
  if (const char* env = std::getenv("QGRASS_BUDGET")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 5000;
}

namespace ff {

inline Entry inv_mod(Entry a, long p) {
  // Fermat: a^{p-2}.
  long r = 1, b = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<Entry>(r);
}

/// In-place RREF of a rows x cols matrix over F_p; returns the rank.
inline std::size_t rref(std::vector<Entry>& m, std::size_t rows, std::size_t cols, long p,
                        std::vector<std::size_t>* pivots = nullptr) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && m[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[row * cols + j]);
    const long inv = inv_mod(m[row * cols + col], p);
    for (std::size_t j = 0; j < cols; ++j) m[row * cols + j] = static_cast<Entry>(m[row * cols + j] * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row) continue;
      const long f = m[i * cols + col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        m[i * cols + j] = static_cast<Entry>(((m[i * cols + j] - f * m[row * cols + j]) % p + p) % p);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return row;
}

inline std::size_t rank(std::vector<Entry> m, std::size_t rows, std::size_t cols, long p) {
  return rref(m, rows, cols, p);
}

}  // namespace ff

/// A subspace of F_p^n, stored as its unique RREF basis (dim x n, row-major).
struct Subspace {
  long p = 2;
  int n = 0;
  int dim = 0;
  std::vector<Entry> basis;

  /// Canonicalizes the row space of `rows` (any spanning set, k x n).
  static Subspace span(long p, int n, std::vector<Entry> rows, std::size_t k) {
    for (auto& e : rows) e = static_cast<Entry>(e % p);
    const std::size_t r = ff::rref(rows, k, static_cast<std::size_t>(n), p);
    rows.resize(r * static_cast<std::size_t>(n));
    return Subspace{p, n, static_cast<int>(r), std::move(rows)};
  }

  Entry at(int i, int j) const { return basis[static_cast<std::size_t>(i) * n + j]; }

  std::vector<int> pivot_columns() const {
    std::vector<int> piv;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < n; ++j)
        if (at(i, j) != 0) {
          piv.push_back(j);
          break;
        }
    return piv;
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const {
    std::size_t h = static_cast<std::size_t>(s.dim) * 1000003u + static_cast<std::size_t>(s.n);
    for (Entry e : s.basis) h = h * 31u + e;
    return h;
  }
};

inline void require_same_ambient(const Subspace& x, const Subspace& y) {
  if (x.p != y.p || x.n != y.n) throw std::invalid_argument("subspaces live in different ambient spaces");
}

/// rank of the stacked bases = dim(x + y).
inline int join_dim(const Subspace& x, const Subspace& y) {
  require_same_ambient(x, y);
  std::vector<Entry> m(x.basis);
  m.insert(m.end(), y.basis.begin(), y.basis.end());
  return static_cast<int>(ff::rank(std::move(m), static_cast<std::size_t>(x.dim + y.dim), x.n, x.p));
}

struct DistancePair {
  int d_xy = 0;  // dim x - dim(x cap y)
  int d_yx = 0;  // dim y - dim(x cap y)
  friend bool operator==(const DistancePair&, const DistancePair&) = default;
};

inline DistancePair distance(const Subspace& x, const Subspace& y) {
  const int j = join_dim(x, y);
  return {j - y.dim, j - x.dim};
}

inline bool contained_in(const Subspace& x, const Subspace& y) { return join_dim(x, y) == y.dim; }

inline bool trivially_intersecting(const Subspace& x, const Subspace& y) { return join_dim(x, y) == x.dim + y.dim; }

/// An invertible n x n matrix over F_p acting on column vectors.
class GroupElement {
 public:
  GroupElement(long p, int n, std::vector<Entry> m) : p_(p), n_(n), m_(std::move(m)) {
    if (m_.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("GroupElement: wrong entry count");
    for (auto& e : m_) e = static_cast<Entry>(e % p);
    if (ff::rank(m_, n, n, p) != static_cast<std::size_t>(n))
      throw std::invalid_argument("GroupElement: matrix is singular over F_p");
  }

  static GroupElement identity(long p, int n) {
    std::vector<Entry> m(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = 1;
    return GroupElement(p, n, std::move(m));
  }

  long p() const { return p_; }
  int n() const { return n_; }
  Entry at(int i, int j) const { return m_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<Entry>& entries() const { return m_; }

  GroupElement operator*(const GroupElement& o) const {
    std::vector<Entry> r(m_.size(), 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        long acc = 0;
        for (int k = 0; k < n_; ++k) acc += static_cast<long>(at(i, k)) * o.at(k, j);
        r[static_cast<std::size_t>(i) * n_ + j] = static_cast<Entry>(acc % p_);
      }
    return GroupElement(p_, n_, std::move(r));
  }

  GroupElement inverse() const {
    // Row-reduce [g | I].
    const std::size_t w = 2 * static_cast<std::size_t>(n_);
    std::vector<Entry> aug(static_cast<std::size_t>(n_) * w, 0);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) aug[i * w + j] = at(i, j);
      aug[i * w + n_ + i] = 1;
    }
    ff::rref(aug, n_, w, p_);
    std::vector<Entry> r(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r[static_cast<std::size_t>(i) * n_ + j] = aug[i * w + n_ + j];
    return GroupElement(p_, n_, std::move(r));
  }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  long p_;
  int n_;
  std::vector<Entry> m_;
};

/// g . x: basis rows b map to rows of b g^T, then re-canonicalize.
inline Subspace act(const GroupElement& g, const Subspace& x) {
  if (g.n() != x.n || g.p() != x.p) throw std::invalid_argument("act: dimension or field mismatch");
  std::vector<Entry> rows(x.basis.size(), 0);
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.n; ++j) {
      long acc = 0;
      for (int k = 0; k < x.n; ++k) acc += static_cast<long>(x.at(i, k)) * g.at(j, k);
      rows[static_cast<std::size_t>(i) * x.n + j] = static_cast<Entry>(acc % x.p);
    }
  return Subspace::span(x.p, x.n, std::move(rows), x.dim);
}

/// All r-dimensional subspaces of F_p^n, indexed in a fixed order: pivot-column
/// sets lexicographically, then free entries in row-major order with the first
/// free entry most significant.
class GrassmannSpace {
 public:
  GrassmannSpace(long p, int n, int r, std::size_t budget = default_budget()) : p_(p), n_(n), r_(r) {
    require_prime(p);
    if (n < 0 || r < 0 || r > n) throw std::invalid_argument("GrassmannSpace: need 0 <= r <= n");
    const Rat expected = q_binomial(n, r, QContext(p, n));
    if (expected > Rat(static_cast<long>(budget)))
      throw BudgetExceeded("GrassmannSpace: [" + std::to_string(n) + " " + std::to_string(r) + "]_" +
                           std::to_string(p) + " = " + expected.str() + " points exceeds budget " +
                           std::to_string(budget));
    enumerate();
    if (Rat(static_cast<long>(points_.size())) != expected)
      throw ConsistencyError("GrassmannSpace: enumeration count disagrees with the q-binomial");
  }

  long p() const { return p_; }
  int n() const { return n_; }
  int r() const { return r_; }
  std::size_t size() const { return points_.size(); }
  const Subspace& operator[](std::size_t i) const { return points_.at(i); }
  const std::vector<Subspace>& points() const { return points_; }

  std::size_t index_of(const Subspace& x) const {
    auto it = lookup_.find(x);
    if (it == lookup_.end()) throw std::invalid_argument("GrassmannSpace: subspace not in this space");
    return it->second;
  }

  /// Index of g . points[i].
  std::size_t act_index(const GroupElement& g, std::size_t i) const { return index_of(act(g, points_.at(i))); }

 private:
  void enumerate() {
    std::vector<int> piv(static_cast<std::size_t>(r_));
    std::iota(piv.begin(), piv.end(), 0);
    while (true) {
      emit_for_pivots(piv);
      // next combination in lexicographic order
      int i = r_ - 1;
      while (i >= 0 && piv[i] == n_ - r_ + i) --i;
      if (i < 0) break;
      ++piv[i];
      for (int j = i + 1; j < r_; ++j) piv[j] = piv[j - 1] + 1;
    }
    for (std::size_t i = 0; i < points_.size(); ++i) lookup_.emplace(points_[i], i);
  }

  void emit_for_pivots(const std::vector<int>& piv) {
    std::vector<bool> is_piv(static_cast<std::size_t>(n_), false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::size_t> free_slots;
    for (int i = 0; i < r_; ++i)
      for (int j = piv[i] + 1; j < n_; ++j)
        if (!is_piv[j]) free_slots.push_back(static_cast<std::size_t>(i) * n_ + j);
    std::vector<Entry> base(static_cast<std::size_t>(r_) * n_, 0);
    for (int i = 0; i < r_; ++i) base[static_cast<std::size_t>(i) * n_ + piv[i]] = 1;
    std::vector<Entry> digits(free_slots.size(), 0);
    while (true) {
      std::vector<Entry> m = base;
      for (std::size_t k = 0; k < free_slots.size(); ++k) m[free_slots[k]] = digits[k];
      points_.push_back(Subspace{p_, n_, r_, std::move(m)});
      std::size_t k = digits.size();
      while (k > 0 && digits[k - 1] == p_ - 1) digits[--k] = 0;
      if (k == 0) break;
      ++digits[k - 1];
    }
  }

  long p_;
  int n_;
  int r_;
  std::vector<Subspace> points_;
  std::unordered_map<Subspace, std::size_t, SubspaceHash> lookup_;
};

/// Indices y with d(x, y) = 1 (same dimension, so this is graph adjacency).
inline std::vector<std::size_t> sphere_neighbors(const GrassmannSpace& space, std::size_t x_index) {
  if (x_index >= space.size()) throw std::out_of_range("sphere_neighbors: invalid index");
  std::vector<std::size_t> out;
  const Subspace& x = space[x_index];
  for (std::size_t j = 0; j < space.size(); ++j)
    if (distance(x, space[j]).d_xy == 1) out.push_back(j);
  return out;
}

/// Table d(dst[i], src[j]) for all pairs, row-major over dst.
inline std::vector<int> distance_table(const GrassmannSpace& dst, const GrassmannSpace& src) {
  if (dst.p() != src.p() || dst.n() != src.n()) throw std::invalid_argument("distance_table: ambient mismatch");
  std::vector<int> d(dst.size() * src.size());
  parallel_for(dst.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < src.size(); ++j) d[i * src.size() + j] = distance(dst[i], src[j]).d_xy;
  });
  return d;
}

/// Distinct transvections 1 + w a^T (a . w = 0, both nonzero) of F_p^n.
inline std::vector<GroupElement> transvection_set(long p, int n) {
  require_prime(p);
  if (n < 2) throw std::invalid_argument("transvection_set: need n >= 2");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(p);
  auto vec = [&](std::size_t code) {
    std::vector<Entry> v(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
      v[i] = static_cast<Entry>(code % p);
      code /= p;
    }
    return v;
  };
  std::vector<std::vector<Entry>> mats;
  for (std::size_t wc = 1; wc < total; ++wc) {
    const auto w = vec(wc);
    for (std::size_t ac = 1; ac < total; ++ac) {
      const auto a = vec(ac);
      long dot = 0;
      for (int i = 0; i < n; ++i) dot += static_cast<long>(a[i]) * w[i];
      if (dot % p != 0) continue;
      std::vector<Entry> g(static_cast<std::size_t>(n) * n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          g[static_cast<std::size_t>(i) * n + j] =
              static_cast<Entry>(((i == j ? 1 : 0) + static_cast<long>(w[i]) * a[j]) % p);
      mats.push_back(std::move(g));
    }
  }
  std::sort(mats.begin(), mats.end());
  mats.erase(std::unique(mats.begin(), mats.end()), mats.end());
  std::vector<GroupElement> out;
  out.reserve(mats.size());
  for (auto& m : mats) out.emplace_back(p, n, std::move(m));
  return out;
}

/// Exhaustive count of pairs (a, b) in A x B satisfying pred(a, b).
inline Rat brute_count(const GrassmannSpace& a, const GrassmannSpace& b,
                       const std::function<bool(const Subspace&, const Subspace&)>& pred) {
  long count = 0;
  for (const auto& x : a.points())
    for (const auto& y : b.points())
      if (pred(x, y)) ++count;
  return Rat(count);
}

/// Exhaustive count of points of A satisfying pred.
inline Rat brute_count(const GrassmannSpace& a, const std::function<bool(const Subspace&)>& pred) {
  long count = 0;
  for (const auto& x : a.points())
    if (pred(x)) ++count;
  return Rat(count);
}

}  // namespace qgrass
