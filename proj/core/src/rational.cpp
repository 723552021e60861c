#include <wijsman/error.hpp>
#include <wijsman/rational.hpp>

#include <cctype>

namespace wijsman {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PointOutOfSpace: return "PointOutOfSpace";
    case ErrorKind::MalformedSpec: return "MalformedSpec";
    case ErrorKind::RepSpecMismatch: return "RepSpecMismatch";
    case ErrorKind::BoundTooLarge: return "BoundTooLarge";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotSatisfied: return "NotSatisfied";
    case ErrorKind::NotDiscrete: return "NotDiscrete";
    case ErrorKind::NotFiniteValued: return "NotFiniteValued";
    case ErrorKind::MissingSummand: return "MissingSummand";
    case ErrorKind::SummandNotMissing: return "SummandNotMissing";
    case ErrorKind::ZeroPoint: return "ZeroPoint";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

Rational::Rational(long num, unsigned long den) {
  if (den == 0) throw Error(ErrorKind::MalformedInput, "zero denominator");
  q_ = mpq_class(mpz_class(num), mpz_class(den));
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
  if (sgn(q_.get_den()) == 0) throw Error(ErrorKind::MalformedInput, "zero denominator");
  q_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+')
    throw Error(ErrorKind::MalformedInput, "not a rational literal: '" + std::string(text) + "'");
  mpz_class d = parse_integer(den);
  if (sgn(d) == 0) throw Error(ErrorKind::MalformedInput, "zero denominator");
  return Rational(mpq_class(parse_integer(num), d));
}

Rational Rational::pow2(long exponent) {
  mpz_class p = 1;
  if (exponent >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
    return Rational(mpq_class(p));
  }
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent));
  return Rational(mpq_class(mpz_class(1), p));
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::MalformedInput, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

ExtendedBound ExtendedBound::parse(std::string_view text) {
  if (text == "-inf") return neg_infinity();
  if (text == "+inf" || text == "inf") return pos_infinity();
  return ExtendedBound(Rational::parse(text));
}

std::string ExtendedBound::str() const {
  switch (kind_) {
    case Kind::NegInfinity: return "-inf";
    case Kind::PosInfinity: return "+inf";
    case Kind::Finite: break;
  }
  return value_.str();
}

std::strong_ordering operator<=>(const ExtendedBound& a, const ExtendedBound& b) {
  if (a.kind_ != b.kind_) {
    return static_cast<int>(a.kind_) < static_cast<int>(b.kind_) ? std::strong_ordering::less
                                                                 : std::strong_ordering::greater;
  }
  if (a.kind_ != ExtendedBound::Kind::Finite) return std::strong_ordering::equal;
  return a.value_ <=> b.value_;
}

}  // namespace wijsman
