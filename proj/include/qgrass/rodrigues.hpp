#pragma once

// Rodrigues weights rho, rho_s on the geometric grid and the Rodrigues
// representation of the kernels as D^s rho_s / rho.

#include <stdexcept>
#include <string>
#include <utility>

#include "qgrass/errors.hpp"
#include "qgrass/grid.hpp"
#include "qgrass/kernel.hpp"
#include "qgrass/qcombinatorics.hpp"
#include "qgrass/qhahn.hpp"

namespace qgrass {

/// rho(q^{-t}) = q^{t(r1-r2+t+1)} [n; t, r2-t, r1-r2+t, n-r1-t]_q, zero off I_n(r1, r2).
inline Rat rho_weight(const QContext& c, long r1, long r2, long t) {
  return c.qp(t * (r1 - r2 + t + 1)) * q_multinomial(c.n, {t, r2 - t, r1 - r2 + t, c.n - r1 - t}, c);
}

/// rho_s(q^{-t-s/2}) = q^{s(r1-r2-1/2) + t(r1-r2+t+1)} (q^n; q^{-1})_{2s}
///                     [n-2s; t, r2-s-t, r1-r2+t, n-r1-s-t]_q.
inline QuadExt rho_s_weight(const QContext& c, long r1, long r2, long s, long t) {
  const Rat mult = q_multinomial(c.n - 2 * s, {t, r2 - s - t, r1 - r2 + t, c.n - r1 - s - t}, c);
  if (mult.is_zero()) return QuadExt(0);
  const Rat rational = c.qp(t * (r1 - r2 + t + 1)) * q_poch_down(c, c.n, 2 * s) * mult;
  return QuadExt::sqrt_q_pow(c.q, s * (2 * (r1 - r2) - 1)) * QuadExt(rational);
}

/// Support of rho_s in t: I_{n-2s}(r1-s, r2-s), possibly empty.
inline IndexRange rho_s_support(const QContext& c, long r1, long r2, long s) {
  return {std::max(0L, r2 - r1), std::min(r2 - s, c.n - r1 - s)};
}

/// rho_s on its grid; the value at t sits at key m = 2t + s.
inline GridFunction rho_s_grid(const QContext& c, long r1, long r2, long s) {
  GridFunction g(c.q, static_cast<int>(s % 2));
  const IndexRange sup = rho_s_support(c, r1, r2, s);
  for (long t = sup.lo; t <= sup.hi; ++t) g.set(2 * t + s, rho_s_weight(c, r1, r2, s, t));
  return g;
}

/// The two ladder steps rho_s -> rho_{s+1}:
///   rho_{s+1}(u) = rho_s(q^{1/2}u) chi^+(q^{-(s-1)/2}u)   (reads key m-1)
///   rho_{s+1}(u) = rho_s(q^{-1/2}u) chi^-(q^{(s-1)/2}u)   (reads key m+1)
/// Evaluated on every key where rho_{s+1} can be nonzero plus one guard key
/// on each side.
inline std::pair<GridFunction, GridFunction> rho_recurrence_step(const ChiPair& chi, const GridFunction& rho_s,
                                                                 long s) {
  const long q = chi.ctx.q;
  GridFunction up(q, rho_s.parity() + 1), down(q, rho_s.parity() + 1);
  if (rho_s.empty()) return {up, down};
  for (long m = rho_s.min_key() - 1; m <= rho_s.max_key() + 1; m += 2) {
    // chi^+ at q^{-(s-1)/2} q^{-m/2} = q^{-(m+s-1)/2}; chi^- at q^{-(m-s+1)/2}.
    up.set(m, rho_s.at(m - 1) * chi.chi_plus(GridFunction::point(q, m + s - 1)));
    down.set(m, rho_s.at(m + 1) * chi.chi_minus(GridFunction::point(q, m - s + 1)));
  }
  return {up, down};
}

/// Functional-equation residuals rho(q^{-t}) chi^+(q^{-t}) - rho(q^{-t-1}) chi^-(q^{-t-1})
/// for consecutive t, t+1 in I_n(r1, r2).  All entries vanish when the law holds.
inline std::vector<QuadExt> rho_functional_equation_residuals(const QContext& c, long r1, long r2) {
  const ChiPair chi(c, r1, r2);
  const IndexRange I = index_set(c, r1, r2);
  std::vector<QuadExt> out;
  for (long t = I.lo; t + 1 <= I.hi; ++t) {
    const QuadExt lhs = QuadExt(rho_weight(c, r1, r2, t)) * chi.chi_plus(GridFunction::point(c.q, 2 * t));
    const QuadExt rhs = QuadExt(rho_weight(c, r1, r2, t + 1)) * chi.chi_minus(GridFunction::point(c.q, 2 * t + 2));
    out.push_back(lhs - rhs);
  }
  return out;
}

/// Normalizing constant C with rho f_s = C D^s rho_s:
/// (-1)^s q^{s(r2-r1) - C(s,2)/2} (q-1)^s / (q^{n-r1}, q^{r2}; q^{-1})_s.
inline QuadExt rodrigues_constant(const QContext& c, long r1, long r2, long s) {
  const long sc2 = s * (s - 1) / 2;
  const Rat sign = s % 2 == 0 ? Rat(1) : Rat(-1);
  const Rat core = sign * (Rat(c.q) - 1).pow(s) / (q_poch_down(c, c.n - r1, s) * q_poch_down(c, r2, s));
  return QuadExt::sqrt_q_pow(c.q, 2 * s * (r2 - r1) - sc2) * QuadExt(core);
}

/// Kernel obtained as C D^s rho_s / rho over I_n(r1, r2).
inline IntertwinerKernel rodrigues_eval(const QContext& c, long r1, long r2, long s) {
  require_eigen_index(c, r1, r2, s);
  const GridFunction Ds = grid_D_pow(rho_s_grid(c, r1, r2, s), s);
  const QuadExt C = rodrigues_constant(c, r1, r2, s);
  return IntertwinerKernel::from_function(
      c, r1, r2, s,
      [&](long t) {
        const Rat rho = rho_weight(c, r1, r2, t);
        if (rho.is_zero()) throw ConsistencyError("rodrigues_eval: rho vanishes inside the index set");
        const QuadExt v = C * Ds.at(2 * t) / QuadExt(rho);
        if (!v.is_rational())
          throw ConsistencyError("rodrigues_eval: irrational value " + v.str() + " at t = " + std::to_string(t));
        return v.a();
      },
      Normalization::PolyAtOne);
}

struct SumPair {
  QuadExt lhs;
  QuadExt rhs;
};

/// sum_{t in Z} f(q^{-t}) Dg(q^{-t}) q^{-t}  versus  -sum_{t in Z+1/2} Df(q^{-t}) g(q^{-t}) q^{-t}.
inline SumPair summation_by_parts_check(const GridFunction& f, const GridFunction& g) {
  if (f.parity() != 0 || g.parity() != 1)
    throw std::invalid_argument("summation_by_parts_check: f must sit on the integer grid and g on the half grid");
  if (f.q() != g.q()) throw std::invalid_argument("summation_by_parts_check: different q");
  const long q = f.q();
  SumPair out{QuadExt(0), QuadExt(0)};
  const GridFunction Dg = grid_D(g);
  for (const auto& [m, v] : f.values()) out.lhs += v * Dg.at(m) * GridFunction::point(q, m);
  const GridFunction Df = grid_D(f);
  for (const auto& [m, v] : g.values()) out.rhs -= Df.at(m) * v * GridFunction::point(q, m);
  return out;
}

/// sum over the support of rho_s(u) u (with u = q^{-t-s/2}); s = 0 is the plain
/// weight total.
inline Rat weight_sums(const QContext& c, long r1, long r2, long s) {
  QuadExt acc(0);
  const GridFunction g = rho_s_grid(c, r1, r2, s);
  for (const auto& [m, v] : g.values()) acc += v * GridFunction::point(c.q, m);
  if (!acc.is_rational()) throw ConsistencyError("weight_sums: irrational total " + acc.str());
  return acc.a();
}

/// Closed form of weight_sums: q^{s(r1-r2-1)} (q^n; q^{-1})_{2s} [n-2s r1-s]_q [n-2s r2-s]_q.
inline Rat weight_sum_closed_form(const QContext& c, long r1, long r2, long s) {
  return c.qp(s * (r1 - r2 - 1)) * q_poch_down(c, c.n, 2 * s) * q_binomial(c.n - 2 * s, r1 - s, c) *
         q_binomial(c.n - 2 * s, r2 - s, c);
}

/// <f, g> = sum_t rho(q^{-t}) q^{-t} f(t) g(t).
inline Rat kernel_inner_product(const IntertwinerKernel& a, const IntertwinerKernel& b) {
  require_same_index_set(a, b);
  Rat acc(0);
  for (long t = a.range.lo; t <= a.range.hi; ++t)
    acc += rho_weight(a.ctx, a.r1, a.r2, t) * a.ctx.qp(-t) * a.at(t) * b.at(t);
  return acc;
}

/// Expected constant value of D^s applied to f_s:
/// main_coefficient * (-1)^s q^{-C(s,2)/2} (q^s; q^{-1})_s / (q-1)^s.
inline QuadExt ds_leading_constant(const QContext& c, long r1, long r2, long s) {
  const Rat sign = s % 2 == 0 ? Rat(1) : Rat(-1);
  const Rat core = main_coefficient(c, r1, r2, s) * sign * q_poch_down(c, s, s) / (Rat(c.q) - 1).pow(s);
  return QuadExt::sqrt_q_pow(c.q, -(s * (s - 1) / 2)) * QuadExt(core);
}

/// D^s applied to the polynomial extension of k, sampled on a grid widened by
/// s points on each side; returns values on the keys not touched by the
/// zero padding.
inline std::vector<QuadExt> ds_of_kernel(const IntertwinerKernel& k, long s) {
  GridFunction g(k.ctx.q, 0);
  const long lo = k.range.lo - s, hi = k.range.hi + s;
  for (long t = lo; t <= hi; ++t) g.set_t(t, QuadExt(kernel_poly_eval(k, k.ctx.qp(-t))));
  const GridFunction Ds = grid_D_pow(g, s);
  std::vector<QuadExt> out;
  for (long m = 2 * lo + s; m <= 2 * hi - s; m += 2) out.push_back(Ds.at(m));
  return out;
}

}  // namespace qgrass
