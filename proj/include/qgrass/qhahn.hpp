#pragma once

// Closed forms for the normalized intertwiner kernels lambda_s^{r1,r2}:
// four terminating 3phi2 representations, the leading coefficient, and the
// q-Gauss evaluations at the extremal levels.

#include <array>
#include <stdexcept>
#include <string>

#include "qgrass/kernel.hpp"
#include "qgrass/qcombinatorics.hpp"

namespace qgrass {

/// mu_s(n) = (q^s - 1)(q^{n-s+1} - 1)/(q - 1)^2; -mu_s(n) is the s-th
/// eigenvalue of the Grassmann graph Laplacian.
inline Rat mu_eigenvalue(const QContext& c, long s) {
  if (s < 0 || 2 * s > c.n) throw std::invalid_argument("mu_eigenvalue: need 0 <= s <= n/2");
  const Rat qm1 = Rat(c.q) - 1;
  return (c.qp(s) - 1) * (c.qp(c.n - s + 1) - 1) / (qm1 * qm1);
}

inline void require_eigen_index(const QContext& c, long r1, long r2, long s) {
  if (s < 0 || s > n_max(c, r1, r2))
    throw std::invalid_argument("eigen-index s = " + std::to_string(s) + " outside [0, " +
                                std::to_string(n_max(c, r1, r2)) + "]");
}

/// sum_{k=0}^{cutoff} (a1, a2, a3; b)_k / (b, d1, d2; b)_k * z^k.
inline Rat phi32_truncated(const std::array<Rat, 3>& a, const std::array<Rat, 2>& d, const Rat& b, const Rat& z,
                           long cutoff) {
  Rat sum(1);
  Rat term(1);
  Rat bk(1);  // b^k
  for (long k = 0; k < cutoff; ++k) {
    const Rat den = (Rat(1) - bk * b) * (Rat(1) - bk * d[0]) * (Rat(1) - bk * d[1]);
    if (den.is_zero())
      throw std::domain_error("phi32_truncated: denominator factor vanishes at k = " + std::to_string(k + 1));
    term *= (Rat(1) - bk * a[0]) * (Rat(1) - bk * a[1]) * (Rat(1) - bk * a[2]) * z / den;
    sum += term;
    bk *= b;
  }
  return sum;
}

enum class QHahnForm { H1 = 1, H2 = 2, H3 = 3, H4 = 4 };

/// f(anchor)/f(1) for forms 2-4, so that f(u)/f(1) = ratio * series(u).
inline Rat qhahn_anchor_ratio(const QContext& c, long r1, long r2, long s, QHahnForm form) {
  const long n = c.n;
  const long sc2 = s * (s - 1) / 2;
  const Rat sign = s % 2 == 0 ? Rat(1) : Rat(-1);
  switch (form) {
    case QHahnForm::H1:
      return Rat(1);
    case QHahnForm::H2:  // anchor u = q^{-r2}
      return sign * c.qp(sc2 - s * r1) * q_poch_down(c, r1, s) / q_poch_down(c, n - r1, s);
    case QHahnForm::H3:  // anchor u = q^{r1-n}
      return sign * c.qp(sc2 + s * (r2 - n)) * q_poch_down(c, n - r2, s) / q_poch_down(c, r2, s);
    case QHahnForm::H4:  // anchor u = q^{r1-r2}
      return c.qp(s * (r2 - r1)) * q_poch_down(c, r1, s) * q_poch_down(c, n - r2, s) /
             (q_poch_down(c, n - r1, s) * q_poch_down(c, r2, s));
  }
  throw std::invalid_argument("qhahn_anchor_ratio: unknown form");
}

/// The series of the given form at u, before the anchor ratio is applied.
inline Rat qhahn_series(const QContext& c, long r1, long r2, long s, QHahnForm form, const Rat& u) {
  const long n = c.n;
  const Rat b = c.qinv();
  const Rat qs = c.qp(s), qtop = c.qp(n - s + 1);
  switch (form) {
    case QHahnForm::H1:
      return phi32_truncated({qs, u.inverse(), qtop}, {c.qp(n - r1), c.qp(r2)}, b, c.qp(r2 - r1 - 1) * u, s);
    case QHahnForm::H2:
      return phi32_truncated({qs, c.qp(r2) * u, qtop}, {c.qp(r1), c.qp(r2)}, b, b, s);
    case QHahnForm::H3:
      return phi32_truncated({qs, c.qp(n - r1) * u, qtop}, {c.qp(n - r1), c.qp(n - r2)}, b, b, s);
    case QHahnForm::H4:
      return phi32_truncated({qs, c.qp(r1 - r2) * u.inverse(), qtop}, {c.qp(r1), c.qp(n - r2)}, b, b * u, s);
  }
  throw std::invalid_argument("qhahn_series: unknown form");
}

/// lambda_s^{r1,r2}(t) = f(q^{-t}) with f(1) = 1, from one of the four forms.
inline IntertwinerKernel qhahn_kernel(const QContext& c, long r1, long r2, long s, QHahnForm form) {
  require_eigen_index(c, r1, r2, s);
  const Rat ratio = qhahn_anchor_ratio(c, r1, r2, s, form);
  return IntertwinerKernel::from_function(
      c, r1, r2, s, [&](long t) { return ratio * qhahn_series(c, r1, r2, s, form, c.qp(-t)); },
      Normalization::PolyAtOne);
}

inline IntertwinerKernel qhahn_kernel(const QContext& c, long r1, long r2, long s, int form = 1) {
  if (form < 1 || form > 4) throw std::invalid_argument("qhahn_kernel: form must be 1..4");
  return qhahn_kernel(c, r1, r2, s, static_cast<QHahnForm>(form));
}

/// Leading coefficient (in u) of f_s^{r1,r2} under f(1) = 1.
inline Rat main_coefficient(const QContext& c, long r1, long r2, long s) {
  require_eigen_index(c, r1, r2, s);
  const long n = c.n;
  const Rat sign = s % 2 == 0 ? Rat(1) : Rat(-1);
  return sign * c.qp(s * (r2 - r1) + s * (s - 1) / 2) * q_poch_down(c, n - s + 1, s) /
         (q_poch_down(c, n - r1, s) * q_poch_down(c, r2, s));
}

enum class Extremal {
  RToS,   // lambda_s^{r,s}
  NSToR,  // lambda_s^{n-s,r}
};

/// Product closed forms at the extremal levels, normalized to 1 at t = 0.
inline IntertwinerKernel extremal_closed_form(const QContext& c, long r, long s, Extremal which) {
  if (s < 0 || s > r || r > c.n - s)
    throw std::invalid_argument("extremal_closed_form: need s <= r <= n - s");
  const long n = c.n;
  const long r1 = which == Extremal::RToS ? r : n - s;
  const long r2 = which == Extremal::RToS ? s : r;
  const long top = which == Extremal::RToS ? s - r - 1 : r + s - n - 1;
  const long bottom = which == Extremal::RToS ? n - r : r;
  return IntertwinerKernel::from_function(
      c, r1, r2, s, [&](long t) { return q_poch_down(c, top, t) / q_poch_down(c, bottom, t); },
      Normalization::AnchorAtZero);
}

}  // namespace qgrass
