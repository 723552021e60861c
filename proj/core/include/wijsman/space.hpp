#pragma once

#include <wijsman/rational.hpp>
#include <wijsman/report.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wijsman {

using Index = std::uint64_t;

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

struct Point;

/// Atom a_i of a 0-1 space; atoms are numbered from 1.
struct Atom {
  Index index;
  auto operator<=>(const Atom&) const = default;
};

/// x_pair^side of the paired two-point space.
struct PairedPoint {
  Index pair;
  int side;  // 0 or 1
  auto operator<=>(const PairedPoint&) const = default;
};

/// n in N (1-based) for the dyadic metric d(n,k) = |2^-n - 2^-k|.
struct NatPoint {
  Index n;
  auto operator<=>(const NatPoint&) const = default;
};

/// A point of summand `tag` inside a free sum.
struct SummandPoint {
  Index tag;
  std::shared_ptr<const Point> inner;

  bool operator==(const SummandPoint& o) const;
  std::strong_ordering operator<=>(const SummandPoint& o) const;
};

/// <x, copy> with 0 < x < 2, a point of the interval-copies space.
struct CopyPoint {
  Index copy;
  Rational x;
  auto operator<=>(const CopyPoint&) const = default;
};

struct Point {
  std::variant<Atom, PairedPoint, NatPoint, SummandPoint, CopyPoint> value;

  bool operator==(const Point& o) const = default;
  std::strong_ordering operator<=>(const Point& o) const;

  std::string str() const;
};

Point atom(Index index);
Point paired(Index pair, int side);
Point nat(Index n);
Point summand(Index tag, Point inner);
Point copy_point(Index copy, Rational x);

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

struct SpaceSpec;

/// Cardinality parameter; nullopt means the universe is unbounded.
using Size = std::optional<Index>;

struct ZeroOneSpace {
  Size size;
  bool operator==(const ZeroOneSpace&) const = default;
};

struct PairedSpace {
  Size pair_count;
  bool operator==(const PairedSpace&) const = default;
};

struct DyadicNatSpace {
  bool operator==(const DyadicNatSpace&) const = default;
};

struct Summand {
  Index tag;
  std::shared_ptr<const SpaceSpec> space;
  bool operator==(const Summand& o) const;
};

/// Disjoint union, cross-summand distance 2. Summand metrics must take
/// values in [0,1].
struct FreeSumSpace {
  std::vector<Summand> summands;
  bool operator==(const FreeSumSpace&) const = default;
  const Summand* find(Index tag) const;
};

/// copies x (0,2), each copy metrized by the interval chart, distance 2
/// across copies.
struct IntervalCopiesSpace {
  Index copies;
  bool operator==(const IntervalCopiesSpace&) const = default;
};

struct SpaceSpec {
  std::variant<ZeroOneSpace, PairedSpace, DyadicNatSpace, FreeSumSpace, IntervalCopiesSpace> value;
  bool operator==(const SpaceSpec&) const = default;

  std::string str() const;
};

SpaceSpec zero_one(Size size);
SpaceSpec paired_two_point(Size pair_count);
SpaceSpec dyadic_nat();
SpaceSpec free_sum(std::vector<std::pair<Index, SpaceSpec>> summands);
SpaceSpec interval_copies(Index copies);

/// Throws MalformedSpec unless free-sum tags are distinct, every summand's
/// value set lies in [0,1], and interval copies >= 1. Recursive.
void validate(const SpaceSpec& spec);

/// True iff p is a well-formed point of the universe of spec.
bool contains(const SpaceSpec& spec, const Point& p);

/// Least upper bound of d(X x X).
Rational value_supremum(const SpaceSpec& spec);

/// The finite value set d(X x X) in increasing order, or nullopt when the
/// metric takes infinitely many values.
std::optional<std::vector<Rational>> finite_value_set(const SpaceSpec& spec);

/// Points with every index bounded by `bound` (atoms 1..bound, pairs
/// 0..bound-1, naturals 1..bound), intersected with the universe. Free sums
/// concatenate their summands' bounded universes. Throws NotRepresentable
/// for interval copies.
std::vector<Point> bounded_universe(const SpaceSpec& spec, Index bound);

/// Smallest point of the universe in the library's point order.
Point least_point(const SpaceSpec& spec);

// ---------------------------------------------------------------------------
// Interval chart
// ---------------------------------------------------------------------------

/// Order isomorphism f(x) = 1/(2-x) - 1/x of (0,2) onto R together with the
/// truncated metric rho(x,y) = min(1, |f(x) - f(y)|). f maps rationals to
/// rationals, so every chart value is exact.
struct IntervalChart {
  static constexpr const char* name = "reciprocal-chart";
  static constexpr const char* formula = "f(x) = 1/(2-x) - 1/x; rho(x,y) = min(1, |f(x)-f(y)|)";

  /// Throws PointOutOfSpace unless 0 < x < 2.
  static Rational f(const Rational& x);
  static Rational rho(const Rational& x, const Rational& y);
};

// ---------------------------------------------------------------------------
// Metric
// ---------------------------------------------------------------------------

/// Exact metric value. Throws PointOutOfSpace if p or q is not in spec and
/// MalformedSpec if spec is invalid.
Rational dist(const SpaceSpec& spec, const Point& p, const Point& q);

/// Dyadic metric |2^-n - 2^-k| (n, k >= 1).
Rational dyadic_dist(Index n, Index k);

/// Exhaustively checks non-negativity, identity of indiscernibles, symmetry
/// and the triangle inequality over all triples from `sample`. A failure is
/// reported as Refuted with the offending triple.
VerificationReport check_metric_axioms(const SpaceSpec& spec, const std::vector<Point>& sample);

}  // namespace wijsman
