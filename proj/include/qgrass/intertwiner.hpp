#pragma once

// Matrix realizations of intertwining operators between the levels X_r of
// F_p^n, the spectral-projection construction of Lambda_s^{r1,r2}, Radon
// transforms and the operator-level identities relating them.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qgrass/errors.hpp"
#include "qgrass/grassmann.hpp"
#include "qgrass/kernel.hpp"
#include "qgrass/laplacians.hpp"
#include "qgrass/matrix.hpp"
#include "qgrass/qcombinatorics.hpp"
#include "qgrass/qhahn.hpp"
#include "qgrass/rodrigues.hpp"

namespace qgrass {

/// Lazily built, memoized geometric data for F_p^n: the levels X_r, distance
/// tables, Laplacians, spectral projections and transvections.  Returned
/// references stay valid for the lifetime of the object.  Access is
/// serialized by an internal lock.
class Geometry {
 public:
  Geometry(long p, int n, std::size_t budget = default_budget()) : ctx_(p, n), budget_(budget) { require_prime(p); }

  const QContext& ctx() const { return ctx_; }
  long p() const { return ctx_.q; }
  int n() const { return ctx_.n; }
  std::size_t budget() const { return budget_; }

  const GrassmannSpace& space(long r) {
    std::lock_guard lock(mu_);
    check_level(r);
    auto& slot = spaces_[r];
    if (!slot) slot = std::make_unique<GrassmannSpace>(ctx_.q, ctx_.n, static_cast<int>(r), budget_);
    return *slot;
  }

  /// d(dst[i], src[j]) at index i * |src| + j.
  const std::vector<int>& distances(long r_dst, long r_src) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(r_dst, r_src);
    auto it = distances_.find(key);
    if (it != distances_.end()) return it->second;
    return distances_.emplace(key, distance_table(space(r_dst), space(r_src))).first->second;
  }

  const Mat& laplacian(long r) {
    std::lock_guard lock(mu_);
    auto it = laplacians_.find(r);
    if (it != laplacians_.end()) return it->second;
    return laplacians_.emplace(r, graph_laplacian(space(r))).first->second;
  }

  /// Orthogonal projection onto the eigenvalue -mu_s of the Laplacian on X_r.
  const Mat& projection(long r, long s) {
    std::lock_guard lock(mu_);
    const long top = std::min(r, ctx_.n - r);
    if (s < 0 || s > top)
      throw std::invalid_argument("projection: s = " + std::to_string(s) + " outside [0, " + std::to_string(top) + "]");
    auto key = std::make_pair(r, s);
    auto it = projections_.find(key);
    if (it != projections_.end()) return it->second;
    std::vector<Rat> eig;
    for (long j = 0; j <= top; ++j) eig.push_back(-mu_eigenvalue(ctx_, j));
    return projections_.emplace(key, lagrange_projection(laplacian(r), eig, static_cast<std::size_t>(s)))
        .first->second;
  }

  const std::vector<GroupElement>& transvections() {
    std::lock_guard lock(mu_);
    if (!transvections_) transvections_ = transvection_set(ctx_.q, ctx_.n);
    return *transvections_;
  }

 private:
  void check_level(long r) const {
    if (r < 0 || r > ctx_.n) throw std::invalid_argument("Geometry: level r = " + std::to_string(r) + " out of range");
  }

  QContext ctx_;
  std::size_t budget_;
  std::recursive_mutex mu_;
  std::map<long, std::unique_ptr<GrassmannSpace>> spaces_;
  std::map<std::pair<long, long>, std::vector<int>> distances_;
  std::map<long, Mat> laplacians_;
  std::map<std::pair<long, long>, Mat> projections_;
  std::optional<std::vector<GroupElement>> transvections_;
};

/// A G-map V_{r1} -> V_{r2}; matrix rows index X_{r2}, columns X_{r1}.
struct IntertwinerOp {
  QContext ctx;
  long r1 = 0;
  long r2 = 0;
  Mat matrix;
};

inline void require_geometry_for(const QContext& c, const Geometry& g) {
  if (!is_prime(c.q)) throw std::invalid_argument("q must be prime for geometric commands (got " + std::to_string(c.q) + ")");
  if (c.q != g.p() || c.n != g.n()) throw std::invalid_argument("kernel and geometry disagree on (q, n)");
}

/// Entry (x2, x1) = lambda(d(x2, x1)).
inline IntertwinerOp operator_from_kernel(const IntertwinerKernel& k, Geometry& geo) {
  require_geometry_for(k.ctx, geo);
  const auto& d = geo.distances(k.r2, k.r1);
  const std::size_t rows = geo.space(k.r2).size(), cols = geo.space(k.r1).size();
  std::vector<Rat> data;
  data.reserve(rows * cols);
  for (int t : d) data.push_back(k.at(t));
  return {k.ctx, k.r1, k.r2, Mat(rows, cols, std::move(data))};
}

/// Reads the kernel off an orbit-constant operator and rescales it so the
/// interpolating polynomial in u = q^{-t} is 1 at u = 1.
inline IntertwinerKernel kernel_from_operator(const IntertwinerOp& op, Geometry& geo, long s = -1) {
  require_geometry_for(op.ctx, geo);
  const auto& d = geo.distances(op.r2, op.r1);
  const IndexRange I = index_set(op.ctx, op.r1, op.r2);
  std::vector<std::optional<Rat>> seen(static_cast<std::size_t>(I.size()));
  const auto& entries = op.matrix.data();
  if (entries.size() != d.size()) throw std::invalid_argument("kernel_from_operator: matrix shape does not match levels");
  for (std::size_t k = 0; k < d.size(); ++k) {
    auto& slot = seen[static_cast<std::size_t>(d[k] - I.lo)];
    if (!slot) {
      slot = entries[k];
    } else if (!(*slot == entries[k])) {
      throw std::invalid_argument("kernel_from_operator: entries are not constant on distance classes");
    }
  }
  std::vector<Rat> vals;
  for (auto& v : seen) {
    if (!v) throw ConsistencyError("kernel_from_operator: a distance class is empty");
    vals.push_back(*v);
  }
  IntertwinerKernel raw(op.ctx, op.r1, op.r2, s, std::move(vals));
  const Rat at_one = kernel_poly_eval(raw, Rat(1));
  if (at_one.is_zero()) throw std::domain_error("kernel_from_operator: interpolated value at u = 1 is zero");
  IntertwinerKernel out = raw.scaled(at_one.inverse());
  out.normalization = Normalization::PolyAtOne;
  return out;
}

inline IntertwinerOp projection_P(Geometry& geo, long r, long s) {
  return {geo.ctx(), r, r, geo.projection(r, s)};
}

/// R phi(x2) = sum_{x1 in x2} phi(x1): entry 1 iff x1 is contained in x2.
inline IntertwinerOp radon_subset(Geometry& geo, long r1, long r2) {
  if (r1 > r2) throw std::invalid_argument("radon_subset: need r1 <= r2");
  const auto& d = geo.distances(r2, r1);
  std::vector<Rat> data;
  data.reserve(d.size());
  for (int t : d) data.emplace_back(t == r2 - r1 ? 1 : 0);
  return {geo.ctx(), r1, r2, Mat(geo.space(r2).size(), geo.space(r1).size(), std::move(data))};
}

/// R_c phi(z) = sum_{x : x cap z = 0} phi(x), mapping V_r -> V_{n-r}.
inline IntertwinerOp radon_complement(Geometry& geo, long r) {
  const long rz = geo.n() - r;
  const auto& d = geo.distances(rz, r);
  std::vector<Rat> data;
  data.reserve(d.size());
  for (int t : d) data.emplace_back(t == rz ? 1 : 0);
  return {geo.ctx(), r, rz, Mat(geo.space(rz).size(), geo.space(r).size(), std::move(data))};
}

inline IntertwinerOp compose(const IntertwinerOp& outer, const IntertwinerOp& inner) {
  if (outer.r1 != inner.r2) throw std::invalid_argument("compose: level mismatch");
  return {outer.ctx, inner.r1, outer.r2, mat_mul(outer.matrix, inner.matrix)};
}

inline IntertwinerOp transpose(const IntertwinerOp& op) { return {op.ctx, op.r2, op.r1, op.matrix.transpose()}; }

namespace detail {
/// A G-map X_{r1} -> X_{r2} with nonzero s-isotypic part: the inclusion Radon
/// transform in the appropriate direction.
inline Mat radon_seed(Geometry& geo, long r1, long r2) {
  return r1 <= r2 ? radon_subset(geo, r1, r2).matrix : radon_subset(geo, r2, r1).matrix.transpose();
}
}  // namespace detail

/// Lambda_s^{r1,r2} as P(r2, s) R P(r1, s), rescaled to f(1) = 1.
inline IntertwinerOp lambda_oracle(Geometry& geo, long r1, long r2, long s) {
  require_eigen_index(geo.ctx(), r1, r2, s);
  Mat m = mat_mul(mat_mul(geo.projection(r2, s), detail::radon_seed(geo, r1, r2)), geo.projection(r1, s));
  if (m.is_zero()) throw ConsistencyError("lambda_oracle: projected seed vanishes");
  IntertwinerOp raw{geo.ctx(), r1, r2, std::move(m)};
  const IntertwinerKernel k = kernel_from_operator(raw, geo, s);
  return operator_from_kernel(k, geo);
}

/// Kernel of the spectral oracle computed from a single row of
/// P(r2, s) R P(r1, s): enough to read every value since each distance class
/// meets the row of any fixed x2.  The row is checked for constancy on classes.
inline IntertwinerKernel lambda_oracle_kernel(Geometry& geo, long r1, long r2, long s) {
  require_eigen_index(geo.ctx(), r1, r2, s);
  const Mat& P2 = geo.projection(r2, s);
  const Mat& P1 = geo.projection(r1, s);
  const Mat seed = detail::radon_seed(geo, r1, r2);
  Mat row0(1, P2.cols());
  for (std::size_t j = 0; j < P2.cols(); ++j) row0(0, j) = P2(0, j);
  const Mat row = mat_mul(mat_mul(row0, seed), P1);
  const auto& d = geo.distances(r2, r1);
  const IndexRange I = index_set(geo.ctx(), r1, r2);
  std::vector<std::optional<Rat>> seen(static_cast<std::size_t>(I.size()));
  for (std::size_t j = 0; j < row.cols(); ++j) {
    auto& slot = seen[static_cast<std::size_t>(d[j] - I.lo)];
    if (!slot)
      slot = row(0, j);
    else if (!(*slot == row(0, j)))
      throw ConsistencyError("lambda_oracle_kernel: row is not constant on distance classes");
  }
  std::vector<Rat> vals;
  for (auto& v : seen) {
    if (!v) throw ConsistencyError("lambda_oracle_kernel: a distance class misses the row");
    vals.push_back(*v);
  }
  IntertwinerKernel raw(geo.ctx(), r1, r2, s, std::move(vals));
  const Rat at_one = kernel_poly_eval(raw, Rat(1));
  if (at_one.is_zero()) throw ConsistencyError("lambda_oracle_kernel: projected seed vanishes");
  IntertwinerKernel out = raw.scaled(at_one.inverse());
  out.normalization = Normalization::PolyAtOne;
  return out;
}

/// Lambda_s^{r1,r2} realized from the closed-form kernel.
inline IntertwinerOp lambda_op(Geometry& geo, long r1, long r2, long s) {
  return operator_from_kernel(qhahn_kernel(geo.ctx(), r1, r2, s, QHahnForm::H1), geo);
}

/// True iff entry (g x2, g x1) equals entry (x2, x1) everywhere, i.e. the
/// operator commutes with the permutation action of g.
inline bool commutes_with(const IntertwinerOp& op, Geometry& geo, const GroupElement& g) {
  const auto& src = geo.space(op.r1);
  const auto& dst = geo.space(op.r2);
  std::vector<std::size_t> ps(src.size()), pd(dst.size());
  for (std::size_t j = 0; j < src.size(); ++j) ps[j] = src.act_index(g, j);
  for (std::size_t i = 0; i < dst.size(); ++i) pd[i] = dst.act_index(g, i);
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j)
      if (!(op.matrix(pd[i], ps[j]) == op.matrix(i, j))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Closed-form constants.

/// k(r, s) = [n r]_q / ([n s]_q - [n s-1]_q).
inline Rat isotypic_dimension(const QContext& c, long s) { return q_binomial(c.n, s, c) - q_binomial(c.n, s - 1, c); }

inline Rat product_constant(const QContext& c, long r, long s) { return q_binomial(c.n, r, c) / isotypic_dimension(c, s); }

/// w_s(r1, r2) = [r2 r1]_q ([n s]_q - [n s-1]_q) / [n r1]_q.
inline std::vector<Rat> radon_decomposition(const QContext& c, long r1, long r2) {
  if (r1 > r2) throw std::invalid_argument("radon_decomposition: need r1 <= r2");
  std::vector<Rat> w;
  for (long s = 0; s <= n_max(c, r1, r2); ++s)
    w.push_back(q_binomial(r2, r1, c) * isotypic_dimension(c, s) / q_binomial(c.n, r1, c));
  return w;
}

/// [r3 r2]_q [r2 r1]_q / [r3 r1]_q.
inline Rat radon_composition_constant(const QContext& c, long r1, long r2, long r3) {
  return q_binomial(r3, r2, c) * q_binomial(r2, r1, c) / q_binomial(r3, r1, c);
}

/// m(r, s) = (-1)^s q^{(r-s)(n-r) + C(s,2)} (q^{n-r}; q^{-1})_s / (q^r; q^{-1})_s.
inline Rat complement_constant(const QContext& c, long r, long s) {
  const Rat sign = s % 2 == 0 ? Rat(1) : Rat(-1);
  return sign * c.qp((r - s) * (c.n - r) + s * (s - 1) / 2) * q_poch_down(c, c.n - r, s) / q_poch_down(c, r, s);
}

/// q^{s(r2-r1)} (q^{r1}, q^{n-r2}; q^{-1})_s / (q^{n-r1}, q^{r2}; q^{-1})_s.
inline Rat adjoint_ratio(const QContext& c, long r1, long r2, long s) {
  return c.qp(s * (r2 - r1)) * q_poch_down(c, r1, s) * q_poch_down(c, c.n - r2, s) /
         (q_poch_down(c, c.n - r1, s) * q_poch_down(c, r2, s));
}

/// Squared Hilbert-Schmidt norm: adjoint_ratio * [n r1]_q [n r2]_q / ([n s]_q - [n s-1]_q).
inline Rat hs_norm(const QContext& c, long r1, long r2, long s) {
  require_eigen_index(c, r1, r2, s);
  return adjoint_ratio(c, r1, r2, s) * q_binomial(c.n, r1, c) * q_binomial(c.n, r2, c) / isotypic_dimension(c, s);
}

/// Frobenius norm squared, tr(M^T M).
inline Rat frobenius_sq(const Mat& m) {
  Rat acc(0);
  for (const auto& v : m.data()) acc += v * v;
  return acc;
}

/// d(r, s) = q^{sr} (q^{n-r}; q^{-1})_s / (q^r; q^{-1})_s.
inline Rat adjoint_d(const QContext& c, long r, long s) {
  return c.qp(s * r) * q_poch_down(c, c.n - r, s) / q_poch_down(c, r, s);
}

/// The unique c with A = c B, or nullopt if none exists (B = 0 forces A = 0).
inline std::optional<Rat> proportionality(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  std::optional<Rat> c;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    const Rat& bv = b.data()[k];
    if (bv.is_zero()) {
      if (!a.data()[k].is_zero()) return std::nullopt;
      continue;
    }
    const Rat ratio = a.data()[k] / bv;
    if (!c)
      c = ratio;
    else if (!(*c == ratio))
      return std::nullopt;
  }
  return c ? c : std::optional<Rat>(Rat(0));
}

struct AdjointValues {
  Rat relations_value;    // adjoint_ratio(r1, r2, s)
  Rat quotient_value;   // d(r1, s) / d(r2, s)
  Rat oracle_value; // c with transpose(Lambda^{r1,r2}) = c Lambda^{r2,r1}
};

inline AdjointValues adjoint_constant(Geometry& geo, long r1, long r2, long s) {
  const QContext& c = geo.ctx();
  const IntertwinerOp a = lambda_oracle(geo, r1, r2, s);
  const IntertwinerOp b = lambda_oracle(geo, r2, r1, s);
  const auto ratio = proportionality(a.matrix.transpose(), b.matrix);
  if (!ratio) throw ConsistencyError("adjoint_constant: transpose is not proportional to the reversed operator");
  return {adjoint_ratio(c, r1, r2, s), adjoint_d(c, r1, s) / adjoint_d(c, r2, s), *ratio};
}

struct SphericalResult {
  Rat lhs;
  Rat rhs;
};

/// psi = lambda_s^{r,r}.  lhs = psi(d(x1,x0)) psi(d(x0,x2)); rhs is the mean of
/// psi(d(x,x2)) over the sphere {x : d(x,x0) = d(x1,x0)}.  The stabilizer of
/// x0 acts transitively on each such sphere (two-point homogeneity), with
/// equal-size fibres, so this mean equals the isotropy-group average.
inline SphericalResult spherical_check(Geometry& geo, long r, long s, std::size_t x0, std::size_t x1, std::size_t x2) {
  const auto& X = geo.space(r);
  if (x0 >= X.size() || x1 >= X.size() || x2 >= X.size()) throw std::out_of_range("spherical_check: invalid index");
  const IntertwinerKernel psi = qhahn_kernel(geo.ctx(), r, r, s, QHahnForm::H1);
  const auto& d = geo.distances(r, r);
  const std::size_t m = X.size();
  auto dist = [&](std::size_t a, std::size_t b) { return d[a * m + b]; };
  const int radius = dist(x1, x0);
  Rat sum(0);
  long count = 0;
  for (std::size_t x = 0; x < m; ++x) {
    if (dist(x, x0) != radius) continue;
    sum += psi.at(dist(x, x2));
    ++count;
  }
  return {psi.at(radius) * psi.at(dist(x0, x2)), sum / Rat(count)};
}

enum class FixedSVariant { A, B, C, D, E };

inline char variant_letter(FixedSVariant v) { return static_cast<char>('a' + static_cast<int>(v)); }

/// Whether variant v applies to (r1, r2, r3, s): ordering precondition and
/// every kernel involved exists.
inline bool fixed_s_applicable(const QContext& c, long r1, long r2, long r3, long s, FixedSVariant v) {
  auto ok = [&](long a, long b) { return s >= 0 && s <= n_max(c, a, b); };
  switch (v) {
    case FixedSVariant::A:
      return ok(r1, r3);
    case FixedSVariant::B:
      return r2 <= r3 && ok(r1, r3) && ok(r1, r2);
    case FixedSVariant::C:
      return r1 <= r2 && ok(r1, r3) && ok(r2, r3);
    case FixedSVariant::D:
      return r2 <= r1 && ok(r1, r3) && ok(r2, r3);
    case FixedSVariant::E:
      return r3 <= r2 && ok(r1, r3) && ok(r1, r2);
  }
  return false;
}

struct FixedSReport {
  bool pass = false;
  std::optional<Rat> constant;
  std::vector<long> failing_t;
  std::string detail;
};

/// Right-hand side of variant v at index t of lambda^{r1,r3}.
inline Rat fixed_s_rhs(const QContext& c, long r1, long r2, long r3, long s, FixedSVariant v, long t) {
  const long n = c.n;
  auto sum_over = [&](const IntertwinerKernel& k, auto&& weight) {
    Rat acc(0);
    for (long j = k.range.lo; j <= k.range.hi; ++j) {
      const Rat w = weight(j);
      if (!w.is_zero()) acc += w * k.at(j);
    }
    return acc;
  };
  switch (v) {
    case FixedSVariant::A: {
      const IntertwinerKernel k = qhahn_kernel(c, r3, r1, s, QHahnForm::H1);
      return k.at(r1 - r3 + t);
    }
    case FixedSVariant::B: {
      const IntertwinerKernel k = qhahn_kernel(c, r1, r2, s, QHahnForm::H1);
      return sum_over(k, [&](long j) { return m_count(r3, r2, t, j, c); });
    }
    case FixedSVariant::C: {
      const IntertwinerKernel k = qhahn_kernel(c, r2, r3, s, QHahnForm::H1);
      return sum_over(k, [&](long j) { return m_count(n - r1, n - r2, t, j, c); });
    }
    case FixedSVariant::D: {
      const IntertwinerKernel k = qhahn_kernel(c, r2, r3, s, QHahnForm::H1);
      return sum_over(k, [&](long j) { return m_count(r1, r2, r1 - r3 + t, r2 - r3 + j, c); });
    }
    case FixedSVariant::E: {
      const IntertwinerKernel k = qhahn_kernel(c, r1, r2, s, QHahnForm::H1);
      return sum_over(k, [&](long j) { return m_count(n - r3, n - r2, r1 - r3 + t, r1 - r2 + j, c); });
    }
  }
  throw std::invalid_argument("fixed_s_rhs: unknown variant");
}

/// Finds c from the first t where lambda^{r1,r3}(t) != 0, then checks
/// c lambda^{r1,r3}(t) = rhs(t) at every t in I_n(r1, r3).
inline FixedSReport fixed_s_check(const QContext& c, long r1, long r2, long r3, long s, FixedSVariant v) {
  if (!fixed_s_applicable(c, r1, r2, r3, s, v))
    throw std::invalid_argument(std::string("fixed_s_check: variant (") + variant_letter(v) +
                                ") does not apply to these parameters");
  const IntertwinerKernel lam = qhahn_kernel(c, r1, r3, s, QHahnForm::H1);
  FixedSReport rep;
  std::vector<Rat> rhs;
  for (long t = lam.range.lo; t <= lam.range.hi; ++t) rhs.push_back(fixed_s_rhs(c, r1, r2, r3, s, v, t));
  for (long t = lam.range.lo; t <= lam.range.hi && !rep.constant; ++t)
    if (!lam.at(t).is_zero()) rep.constant = rhs[static_cast<std::size_t>(t - lam.range.lo)] / lam.at(t);
  if (!rep.constant) {
    bool rhs_zero = true;
    for (const auto& v2 : rhs) rhs_zero = rhs_zero && v2.is_zero();
    if (!rhs_zero) throw ConsistencyError("fixed_s_check: left side vanishes identically but right side does not");
    rep.constant = Rat(0);
  }
  for (long t = lam.range.lo; t <= lam.range.hi; ++t)
    if (!(*rep.constant * lam.at(t) == rhs[static_cast<std::size_t>(t - lam.range.lo)])) rep.failing_t.push_back(t);
  rep.pass = rep.failing_t.empty();
  return rep;
}

}  // namespace qgrass
