#pragma once

// Kernels of intertwining maps X_{r1} -> X_{r2}, as functions on I_n(r1, r2).

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgrass/qcombinatorics.hpp"
#include "qgrass/rat.hpp"

namespace qgrass {

enum class Normalization {
  PolyAtOne,  // interpolating polynomial in u = q^{-t} takes the value 1 at u = 1
  AnchorAtZero,  // value 1 at t = 0
  Raw,
};

struct IntertwinerKernel {
  QContext ctx;
  long r1 = 0;
  long r2 = 0;
  long s = -1;  // -1 when the kernel is not tied to an eigen-index
  IndexRange range;
  std::vector<Rat> values;  // values[t - range.lo]
  Normalization normalization = Normalization::Raw;

  IntertwinerKernel() = default;
  IntertwinerKernel(const QContext& c, long r1_, long r2_, long s_, std::vector<Rat> vals,
                    Normalization norm = Normalization::Raw)
      : ctx(c), r1(r1_), r2(r2_), s(s_), range(index_set(c, r1_, r2_)), values(std::move(vals)), normalization(norm) {
    if (static_cast<long>(values.size()) != range.size())
      throw std::invalid_argument("IntertwinerKernel: expected " + std::to_string(range.size()) + " values, got " +
                                  std::to_string(values.size()));
  }

  /// Kernel built from a function of t over the index set.
  template <typename F>
  static IntertwinerKernel from_function(const QContext& c, long r1, long r2, long s, F&& f,
                                         Normalization norm = Normalization::Raw) {
    const IndexRange rg = index_set(c, r1, r2);
    std::vector<Rat> vals;
    for (long t = rg.lo; t <= rg.hi; ++t) vals.push_back(f(t));
    return IntertwinerKernel(c, r1, r2, s, std::move(vals), norm);
  }

  const Rat& at(long t) const {
    if (!range.contains(t))
      throw std::out_of_range("IntertwinerKernel: t = " + std::to_string(t) + " outside [" + std::to_string(range.lo) +
                              ", " + std::to_string(range.hi) + "]");
    return values[static_cast<std::size_t>(t - range.lo)];
  }

  bool same_shape(const IntertwinerKernel& o) const {
    return ctx.q == o.ctx.q && ctx.n == o.ctx.n && r1 == o.r1 && r2 == o.r2;
  }

  /// Equality of the underlying functions (metadata beyond shape is ignored).
  bool same_values(const IntertwinerKernel& o) const { return same_shape(o) && values == o.values; }

  IntertwinerKernel scaled(const Rat& c) const {
    IntertwinerKernel k = *this;
    for (auto& v : k.values) v *= c;
    k.normalization = Normalization::Raw;
    return k;
  }
};

inline std::ostream& operator<<(std::ostream& os, const IntertwinerKernel& k) {
  os << "kernel(q=" << k.ctx.q << ", n=" << k.ctx.n << ", r1=" << k.r1 << ", r2=" << k.r2 << ", s=" << k.s << "){";
  for (long t = k.range.lo; t <= k.range.hi; ++t) os << (t == k.range.lo ? "" : ", ") << t << ": " << k.at(t);
  return os << "}";
}

inline void require_same_index_set(const IntertwinerKernel& a, const IntertwinerKernel& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("kernels live on different index sets");
}

/// Value at x of the interpolating polynomial through (xs[i], ys[i]).
inline Rat lagrange_eval(const std::vector<Rat>& xs, const std::vector<Rat>& ys, const Rat& x) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("lagrange_eval: bad node data");
  Rat acc(0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rat term = ys[i];
    if (term.is_zero()) continue;
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) term *= (x - xs[j]) / (xs[i] - xs[j]);
    acc += term;
  }
  return acc;
}

/// Polynomial extension of the kernel to an arbitrary u (u = q^{-t} on the grid).
inline Rat kernel_poly_eval(const IntertwinerKernel& k, const Rat& u) {
  std::vector<Rat> xs, ys;
  for (long t = k.range.lo; t <= k.range.hi; ++t) {
    xs.push_back(k.ctx.qp(-t));
    ys.push_back(k.at(t));
  }
  return lagrange_eval(xs, ys, u);
}

/// Coefficients c_0..c_d (ascending) of the interpolating polynomial in u.
inline std::vector<Rat> kernel_poly_coefficients(const IntertwinerKernel& k) {
  // Newton divided differences, then expand.
  std::vector<Rat> xs, dd;
  for (long t = k.range.lo; t <= k.range.hi; ++t) {
    xs.push_back(k.ctx.qp(-t));
    dd.push_back(k.at(t));
  }
  const std::size_t m = xs.size();
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  std::vector<Rat> coeffs(m, Rat(0));
  // Horner on the Newton form: p = dd[m-1]; p = p*(u - x_i) + dd[i].
  coeffs[0] = dd[m - 1];
  std::size_t deg = 0;
  for (std::size_t ii = m - 1; ii-- > 0;) {
    // multiply by (u - xs[ii])
    for (std::size_t d = deg + 1; d-- > 0;) {
      coeffs[d + 1] += coeffs[d];
      coeffs[d] *= -xs[ii];
    }
    ++deg;
    coeffs[0] += dd[ii];
  }
  return coeffs;
}

/// Degree of the interpolating polynomial (-1 for the zero function).
inline long kernel_poly_degree(const IntertwinerKernel& k) {
  const auto c = kernel_poly_coefficients(k);
  for (std::size_t d = c.size(); d-- > 0;)
    if (!c[d].is_zero()) return static_cast<long>(d);
  return -1;
}

}  // namespace qgrass
