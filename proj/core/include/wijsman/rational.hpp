#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace wijsman {

/// Arbitrary-precision rational kept in canonical reduced form
/// (positive denominator, gcd(|num|, den) = 1). Every operation is exact.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, unsigned long den);
  explicit Rational(mpq_class q);

  /// Parses "num/den" or "num"; throws Error(MalformedInput).
  static Rational parse(std::string_view text);
  /// 2^exponent for any integer exponent.
  static Rational pow2(long exponent);

  std::string str() const;
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }
  double approx() const { return q_.get_d(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

Rational abs(const Rational& r);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

/// A rational extended by -inf and +inf; used for subbasic bounds.
class ExtendedBound {
 public:
  enum class Kind { NegInfinity, Finite, PosInfinity };

  ExtendedBound() : kind_(Kind::Finite) {}
  ExtendedBound(const Rational& value) : kind_(Kind::Finite), value_(value) {}  // NOLINT
  ExtendedBound(long value) : kind_(Kind::Finite), value_(value) {}             // NOLINT

  static ExtendedBound neg_infinity() { return ExtendedBound(Kind::NegInfinity); }
  static ExtendedBound pos_infinity() { return ExtendedBound(Kind::PosInfinity); }
  /// "-inf", "+inf", "inf", or a rational literal.
  static ExtendedBound parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  /// Only meaningful when is_finite().
  const Rational& value() const { return value_; }
  std::string str() const;

  friend bool operator==(const ExtendedBound& a, const ExtendedBound& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtendedBound& a, const ExtendedBound& b);

 private:
  explicit ExtendedBound(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_{};
};

}  // namespace wijsman
