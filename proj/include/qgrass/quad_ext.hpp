#pragma once

// Elements a + b*sqrt(q) of Q(sqrt(q)) for an integer q >= 2.

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qgrass/rat.hpp"

namespace qgrass {

namespace detail {

/// Integer square root when q is a perfect square, 0 otherwise.
inline long exact_isqrt(long q) {
  if (q < 0) return 0;
  auto r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(q))));
  while (r * r > q) --r;
  while ((r + 1) * (r + 1) <= q) ++r;
  return r * r == q ? r : 0;
}

}  // namespace detail

/// a + b*sqrt(q).  A perfect-square q folds b into a so the ring stays a field.
/// q == 0 marks a pure rational that adopts the radicand of whatever it meets.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rat& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(const Rat& a, const Rat& b, long q) : a_(a), b_(b), q_(q) {
    if (q < 2) throw std::invalid_argument("QuadExt: radicand must be >= 2");
    normalize();
  }

  /// sqrt(q)^k for any integer k.
  static QuadExt sqrt_q_pow(long q, long k) {
    const long half = k >= 0 ? k / 2 : -((-k + 1) / 2);  // floor(k/2)
    const Rat base = qpow(q, half);
    if (k - 2 * half == 0) return QuadExt(base, Rat(0), q);
    return QuadExt(Rat(0), base, q);
  }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  long q() const { return q_; }

  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  Rat to_rat() const {
    if (!is_rational()) throw std::domain_error("QuadExt: irrational part " + b_.str() + " is nonzero");
    return a_;
  }

  QuadExt conj() const {
    QuadExt r = *this;
    r.b_ = -r.b_;
    return r;
  }

  /// a^2 - q b^2.
  Rat norm() const { return a_ * a_ - Rat(q_) * b_ * b_; }

  QuadExt& operator+=(const QuadExt& o) {
    adopt(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadExt& operator-=(const QuadExt& o) {
    adopt(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadExt& operator*=(const QuadExt& o) {
    adopt(o);
    Rat a = a_ * o.a_ + Rat(q_) * b_ * o.b_;
    Rat b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QuadExt& operator/=(const QuadExt& o) {
    if (o.is_zero()) throw std::domain_error("QuadExt: division by zero");
    adopt(o);
    if (o.is_rational()) {
      a_ /= o.a_;
      b_ /= o.a_;
      return *this;
    }
    const Rat n = o.norm();
    *this *= o.conj();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
  friend QuadExt operator-(QuadExt x) {
    x.a_ = -x.a_;
    x.b_ = -x.b_;
    return x;
  }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    if (x.q_ != 0 && y.q_ != 0 && x.q_ != y.q_) return false;
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  /// "a + b*sqrt(q)"; pure rationals print as a plain Rat.
  std::string str() const {
    if (is_rational()) return a_.str();
    return a_.str() + " + " + b_.str() + "*sqrt(" + std::to_string(q_) + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.str(); }

 private:
  void adopt(const QuadExt& o) {
    if (o.q_ == 0) return;
    if (q_ == 0) {
      q_ = o.q_;
      return;
    }
    if (q_ != o.q_) throw std::invalid_argument("QuadExt: radicand mismatch");
  }

  void normalize() {
    const long r = detail::exact_isqrt(q_);
    if (r != 0 && !b_.is_zero()) {
      a_ += b_ * Rat(r);
      b_ = Rat(0);
    }
  }

  Rat a_{0};
  Rat b_{0};
  long q_ = 0;
};

}  // namespace qgrass
