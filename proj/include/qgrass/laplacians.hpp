#pragma once

// Graph and group Laplacians on X_r, and their action on kernels.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgrass/grassmann.hpp"
#include "qgrass/kernel.hpp"
#include "qgrass/matrix.hpp"
#include "qgrass/qcombinatorics.hpp"

namespace qgrass {

/// Degree of the Grassmann graph X_r: q(q^r-1)(q^{n-r}-1)/(q-1)^2.
inline Rat valence(long r, const QContext& c) {
  if (r < 0 || r > c.n) throw std::invalid_argument("valence: r out of range");
  const Rat q(c.q);
  return q * (c.qp(r) - 1) * (c.qp(c.n - r) - 1) / ((q - 1) * (q - 1));
}

/// (L phi)(x) = sum_{y ~ x} (phi(y) - phi(x)), i.e. A - val * I.
inline Mat graph_laplacian(const GrassmannSpace& space) {
  const std::size_t m = space.size();
  Mat L(m, m);
  const long deg = static_cast<long>(sphere_neighbors(space, 0).size());
  parallel_for(m, [&](std::size_t x) {
    for (std::size_t y : sphere_neighbors(space, x)) L(x, y) = Rat(1);
    L(x, x) = Rat(-deg);
  });
  return L;
}

/// (L_T phi)(x) = sum_{h in T} (phi(h x) - phi(x)).
inline Mat group_laplacian(const GrassmannSpace& space, const std::vector<GroupElement>& T) {
  for (const auto& h : T)
    if (h.p() != space.p() || h.n() != space.n())
      throw std::invalid_argument("group_laplacian: transvection field/dimension mismatch");
  const std::size_t m = space.size();
  Mat L(m, m);
  parallel_for(m, [&](std::size_t x) {
    for (const auto& h : T) L(x, space.act_index(h, x)) += Rat(1);
    L(x, x) -= Rat(static_cast<long>(T.size()));
  });
  return L;
}

/// Number of distinct transvections: (q^n - 1)(q^{n-1} - 1)/(q - 1).
inline Rat transvection_count(const QContext& c) {
  if (c.n < 2) throw std::invalid_argument("transvection_count: need n >= 2");
  return (c.qp(c.n) - 1) * (c.qp(c.n - 1) - 1) / (Rat(c.q) - 1);
}

struct GammaFactors {
  Rat gamma0;  // transvections fixing a given point
  Rat gamma1;  // transvections moving a point to a given neighbor
};

inline GammaFactors gamma_factors(const QContext& c, long r) {
  if (c.n < 2) throw std::invalid_argument("gamma_factors: need n >= 2");
  const Rat g1 = c.qp(c.n - 2) * (Rat(c.q) - 1);
  return {transvection_count(c) - valence(r, c) * g1, g1};
}

struct LaplacianCoefficients {
  QContext ctx;
  long r1 = 0;
  long r2 = 0;
  IndexRange range;
  std::vector<Rat> b;  // b[t - range.lo]
  std::vector<Rat> c;

  const Rat& b_at(long t) const { return b.at(static_cast<std::size_t>(t - range.lo)); }
  const Rat& c_at(long t) const { return c.at(static_cast<std::size_t>(t - range.lo)); }
};

/// b(t) = q^{r1-r2+1}(q^t-q^{r2})(q^t-q^{n-r1})/(q-1)^2,
/// c(t) = q^{r1-r2}(q^t-1)(q^t-q^{r2-r1})/(q-1)^2.
inline Rat bc_b(const QContext& ctx, long r1, long r2, long t) {
  const Rat qm1 = Rat(ctx.q) - 1;
  return ctx.qp(r1 - r2 + 1) * (ctx.qp(t) - ctx.qp(r2)) * (ctx.qp(t) - ctx.qp(ctx.n - r1)) / (qm1 * qm1);
}
inline Rat bc_c(const QContext& ctx, long r1, long r2, long t) {
  const Rat qm1 = Rat(ctx.q) - 1;
  return ctx.qp(r1 - r2) * (ctx.qp(t) - 1) * (ctx.qp(t) - ctx.qp(r2 - r1)) / (qm1 * qm1);
}

inline LaplacianCoefficients bc_coefficients(const QContext& ctx, long r1, long r2) {
  LaplacianCoefficients lc{ctx, r1, r2, index_set(ctx, r1, r2), {}, {}};
  for (long t = lc.range.lo; t <= lc.range.hi; ++t) {
    lc.b.push_back(bc_b(ctx, r1, r2, t));
    lc.c.push_back(bc_c(ctx, r1, r2, t));
  }
  return lc;
}

/// lambda'(t) = b(t)(lambda(t+1) - lambda(t)) + c(t)(lambda(t-1) - lambda(t)).
inline IntertwinerKernel kernel_difference_apply(const LaplacianCoefficients& lc, const IntertwinerKernel& k) {
  if (k.ctx.q != lc.ctx.q || k.ctx.n != lc.ctx.n || k.r1 != lc.r1 || k.r2 != lc.r2)
    throw std::invalid_argument("kernel_difference_apply: index-set mismatch");
  std::vector<Rat> out;
  for (long t = lc.range.lo; t <= lc.range.hi; ++t) {
    Rat v(0);
    const Rat& lt = k.at(t);
    if (!lc.b_at(t).is_zero()) v += lc.b_at(t) * (k.at(t + 1) - lt);
    if (!lc.c_at(t).is_zero()) v += lc.c_at(t) * (k.at(t - 1) - lt);
    out.push_back(std::move(v));
  }
  return IntertwinerKernel(k.ctx, k.r1, k.r2, k.s, std::move(out));
}

}  // namespace qgrass
