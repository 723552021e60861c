#pragma once

#include <wijsman/error.hpp>
#include <wijsman/rational.hpp>

#include <doctest.h>

#include <gmpxx.h>

#include <string>

namespace test {

template <class F>
wijsman::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const wijsman::Error& e) {
    return e.kind();
  }
  FAIL("expected wijsman::Error");
  return wijsman::ErrorKind::MalformedInput;
}

inline wijsman::Rational q(const char* text) { return wijsman::Rational::parse(text); }

// Independent references computed with raw GMP, not the library.
inline mpq_class raw_pow2(long e) {
  mpq_class r(1);
  if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), e);
  else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -e);
  return r;
}

inline mpq_class raw_dyadic(long n, long k) { return abs(raw_pow2(-n) - raw_pow2(-k)); }

inline mpq_class raw_f(const mpq_class& x) {
  mpq_class a = 1 / (2 - x);
  mpq_class b = 1 / x;
  return a - b;
}

inline wijsman::Rational lift(const mpq_class& v) { return wijsman::Rational(v); }

}  // namespace test

namespace doctest {
template <>
struct StringMaker<wijsman::Rational> {
  static String convert(const wijsman::Rational& r) { return r.str().c_str(); }
};
template <>
struct StringMaker<wijsman::ExtendedBound> {
  static String convert(const wijsman::ExtendedBound& b) { return b.str().c_str(); }
};
}  // namespace doctest

#define CHECK_ERROR(expr, expected) CHECK(test::kind_of([&] { (void)(expr); }) == (expected))
