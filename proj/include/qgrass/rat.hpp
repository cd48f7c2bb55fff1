#pragma once

// Exact rational scalar used throughout qgrass.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qgrass {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "num/den" or "num".
  static Rat parse(std::string_view text) {
    mpq_class v;
    if (v.set_str(std::string(text), 10) != 0) throw std::invalid_argument("Rat: cannot parse '" + std::string(text) + "'");
    if (v.get_den() == 0) throw std::domain_error("Rat: zero denominator");
    v.canonicalize();
    return Rat(v);
  }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rat inverse() const { return Rat(1) / *this; }

  /// Integer power; negative exponents invert.
  Rat pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
  }

  /// "num/den", with the denominator omitted when it is 1.
  std::string str() const { return v_.get_str(10); }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

/// q^e for an integer base q and any integer exponent.
inline Rat qpow(long q, long e) { return Rat(q).pow(e); }

}  // namespace qgrass
