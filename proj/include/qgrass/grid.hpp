#pragma once

// Finitely supported functions on the geometric grid u = q^{-m/2}, and the
// divided-difference operators S and D acting on them.

#include <map>
#include <stdexcept>
#include <string>

#include "qgrass/errors.hpp"
#include "qgrass/kernel.hpp"
#include "qgrass/quad_ext.hpp"

namespace qgrass {

/// Values are keyed by the doubled exponent m, so u = q^{-m/2}.  All keys of a
/// function share one parity: even keys are the integer grid (offset 0), odd
/// keys the half-integer grid (offset 1/2).  Missing keys read as zero.
class GridFunction {
 public:
  GridFunction(long q, int parity) : q_(q), parity_(((parity % 2) + 2) % 2) {
    if (q < 2) throw std::invalid_argument("GridFunction: q must be >= 2");
  }

  long q() const { return q_; }
  int parity() const { return parity_; }
  /// Offset of the grid in t-units: 0 or 1/2, returned doubled (0 or 1).
  int offset_doubled() const { return parity_; }

  void set(long m, const QuadExt& v) {
    if (((m % 2) + 2) % 2 != parity_)
      throw std::invalid_argument("GridFunction: key " + std::to_string(m) + " has the wrong parity");
    values_[m] = v;
  }

  /// Convenience setter on t with u = q^{-t - offset}.
  void set_t(long t, const QuadExt& v) { set(2 * t + parity_, v); }

  QuadExt at(long m) const {
    auto it = values_.find(m);
    return it == values_.end() ? QuadExt(0) : it->second;
  }
  QuadExt at_t(long t) const { return at(2 * t + parity_); }

  bool empty() const { return values_.empty(); }
  long min_key() const { return values_.begin()->first; }
  long max_key() const { return values_.rbegin()->first; }
  const std::map<long, QuadExt>& values() const { return values_; }

  /// u = q^{-m/2} as an element of Q(sqrt q).
  static QuadExt point(long q, long m) { return QuadExt::sqrt_q_pow(q, -m); }

  /// Integer-grid function sampled from a kernel over its index set.
  static GridFunction from_kernel(const IntertwinerKernel& k) {
    GridFunction g(k.ctx.q, 0);
    for (long t = k.range.lo; t <= k.range.hi; ++t) g.set_t(t, QuadExt(k.at(t)));
    return g;
  }

 private:
  long q_;
  int parity_;
  std::map<long, QuadExt> values_;
};

namespace detail {
template <typename Combine>
GridFunction grid_shift_op(const GridFunction& f, Combine&& combine) {
  GridFunction out(f.q(), f.parity() + 1);
  if (f.empty()) return out;
  for (long m = f.min_key() - 1; m <= f.max_key() + 1; m += 2) out.set(m, combine(m, f.at(m - 1), f.at(m + 1)));
  return out;
}
}  // namespace detail

/// Sf(u) = (f(q^{1/2}u) + f(q^{-1/2}u))/2.  The support widens by one
/// half-step on each side and the parity flips.
inline GridFunction grid_S(const GridFunction& f) {
  const QuadExt half(Rat(1, 2));
  return detail::grid_shift_op(f, [&](long, const QuadExt& up, const QuadExt& down) { return (up + down) * half; });
}

/// Df(u) = (f(q^{1/2}u) - f(q^{-1/2}u)) / ((q^{1/2} - q^{-1/2}) u).
inline GridFunction grid_D(const GridFunction& f) {
  const long q = f.q();
  const QuadExt delta = QuadExt::sqrt_q_pow(q, 1) - QuadExt::sqrt_q_pow(q, -1);
  return detail::grid_shift_op(f, [&](long m, const QuadExt& up, const QuadExt& down) {
    return (up - down) / (delta * GridFunction::point(q, m));
  });
}

inline GridFunction grid_D_pow(GridFunction f, long s) {
  for (long i = 0; i < s; ++i) f = grid_D(f);
  return f;
}

/// Polynomial c0 + c1 u + c2 u^2 with coefficients in Q(sqrt q).
struct QuadPoly {
  QuadExt c0, c1, c2;
  QuadExt operator()(const QuadExt& u) const { return c0 + u * (c1 + u * c2); }
};

/// chi^+(u) = q^{r1-r2-1/2}(1 - q^{r2} u)(1 - q^{n-r1} u),
/// chi^-(u) = q^{r1-r2-1/2}(1 - u)(1 - q^{r2-r1} u),
/// sigma = (chi^+ + chi^-)/2, tau = (chi^+ - chi^-)/((q^{-1/2} - q^{1/2}) u).
struct ChiPair {
  QContext ctx;
  long r1 = 0;
  long r2 = 0;
  QuadPoly chi_plus, chi_minus, sigma, tau;

  ChiPair(const QContext& c, long r1_, long r2_) : ctx(c), r1(r1_), r2(r2_) {
    const long q = c.q;
    const QuadExt lead = QuadExt::sqrt_q_pow(q, 2 * (r1 - r2) - 1);
    auto make = [&](const Rat& a, const Rat& b) {
      // lead * (1 - a u)(1 - b u)
      return QuadPoly{lead, lead * QuadExt(-(a + b)), lead * QuadExt(a * b)};
    };
    chi_plus = make(c.qp(r2), c.qp(c.n - r1));
    chi_minus = make(Rat(1), c.qp(r2 - r1));
    const QuadExt half(Rat(1, 2));
    sigma = QuadPoly{(chi_plus.c0 + chi_minus.c0) * half, (chi_plus.c1 + chi_minus.c1) * half,
                     (chi_plus.c2 + chi_minus.c2) * half};
    if (!(chi_plus.c0 == chi_minus.c0)) throw ConsistencyError("ChiPair: chi^+(0) != chi^-(0)");
    const QuadExt k = QuadExt::sqrt_q_pow(q, -1) - QuadExt::sqrt_q_pow(q, 1);
    tau = QuadPoly{(chi_plus.c1 - chi_minus.c1) / k, (chi_plus.c2 - chi_minus.c2) / k, QuadExt(0)};
  }
};

/// (sigma D^2 + tau S D) f, evaluated on the keys of f.  The three-point
/// stencil reads one guard point on each side; those read as zero, which is
/// harmless where the matching b/c coefficient vanishes.
inline GridFunction hyperop_apply(const ChiPair& chi, const GridFunction& f) {
  if (f.parity() != 0) throw std::invalid_argument("hyperop_apply: expects an integer-offset grid");
  if (f.empty()) return f;
  const GridFunction Df = grid_D(f);
  const GridFunction DDf = grid_D(Df);
  const GridFunction SDf = grid_S(Df);
  GridFunction out(f.q(), 0);
  for (const auto& [m, v] : f.values()) {
    const QuadExt u = GridFunction::point(f.q(), m);
    out.set(m, chi.sigma(u) * DDf.at(m) + chi.tau(u) * SDf.at(m));
  }
  return out;
}

/// Rational values of an integer-grid function over a kernel's index set;
/// throws if any sqrt(q) component survives.
inline IntertwinerKernel grid_to_kernel(const GridFunction& g, const IntertwinerKernel& shape) {
  if (g.parity() != 0) throw std::invalid_argument("grid_to_kernel: expects an integer-offset grid");
  std::vector<Rat> vals;
  for (long t = shape.range.lo; t <= shape.range.hi; ++t) {
    const QuadExt v = g.at_t(t);
    if (!v.is_rational()) throw ConsistencyError("grid value at t = " + std::to_string(t) + " is irrational: " + v.str());
    vals.push_back(v.a());
  }
  return IntertwinerKernel(shape.ctx, shape.r1, shape.r2, shape.s, std::move(vals));
}

}  // namespace qgrass
