#pragma once

#include <wijsman/report.hpp>
#include <wijsman/space.hpp>

#include <map>
#include <memory>
#include <set>
#include <vector>

namespace wijsman {

struct ClosedSetRep;

/// Nonempty finite set of points (closed in every space here).
struct FinitePoints {
  std::set<Point> points;
  bool operator==(const FinitePoints&) const = default;
};

/// base U {k in N : k >= tail_start}; DyadicNat only.
struct FinitePlusTail {
  std::set<Index> base;
  Index tail_start;
  bool operator==(const FinitePlusTail&) const = default;
};

/// U{(0, y_c] x {c} : y_c > 0} U extras; IntervalCopies only. Heights lie
/// in [0,1]; a zero height contributes nothing.
struct SegmentFamily {
  std::map<Index, Rational> segments;
  std::set<Point> extras;
  bool operator==(const SegmentFamily&) const = default;
};

/// Union of per-summand closed sets; a null or absent part is empty.
/// FreeSum only.
struct SummandTuple {
  std::map<Index, std::shared_ptr<const ClosedSetRep>> parts;
  bool operator==(const SummandTuple& o) const;
};

struct ClosedSetRep {
  std::variant<FinitePoints, FinitePlusTail, SegmentFamily, SummandTuple> value;
  bool operator==(const ClosedSetRep&) const = default;
  std::string str() const;
};

ClosedSetRep finite_set(std::set<Point> points);
ClosedSetRep finite_plus_tail(std::set<Index> base, Index tail_start);
ClosedSetRep segment_family(std::map<Index, Rational> segments, std::set<Point> extras = {});
ClosedSetRep summand_tuple(std::map<Index, std::shared_ptr<const ClosedSetRep>> parts);
ClosedSetRep nat_set(std::initializer_list<Index> ns);

/// Distance to a set is an infimum; `attained` records whether a member
/// realizes it.
struct InfResult {
  Rational value;
  bool attained = false;
  bool operator==(const InfResult&) const = default;
};

/// Throws RepSpecMismatch if F is not a valid nonempty representation in
/// spec.
void validate(const SpaceSpec& spec, const ClosedSetRep& set);

/// Exact inf{d(p, f) : f in F}.
InfResult dist_to_set(const SpaceSpec& spec, const Point& p, const ClosedSetRep& set);

bool member(const SpaceSpec& spec, const Point& p, const ClosedSetRep& set);

/// Canonical form: tails absorb adjacent base points, segments absorb the
/// extras they cover, zero heights and empty parts are dropped. Two
/// representations denote the same set iff their normal forms are equal.
ClosedSetRep normalize(const SpaceSpec& spec, const ClosedSetRep& set);

bool same_set(const SpaceSpec& spec, const ClosedSetRep& a, const ClosedSetRep& b);

/// Default ceiling on 2^|universe| for enumeration.
inline constexpr Index kDefaultEnumerationCap = Index{1} << 22;

/// All nonempty subsets of the bounded universe, in binary counting order of
/// their characteristic vectors (bit i <-> i-th universe point). With
/// include_tails (DyadicNat only) the 2^|universe| sets S U {k >= bound+1}
/// follow, S ranging over all subsets including the empty one. For a
/// FreeSum the subsets come back as SummandTuple values.
/// Throws BoundTooLarge if 2^|universe| exceeds cap.
std::vector<ClosedSetRep> enumerate_closed_sets(const SpaceSpec& spec, Index bound,
                                                bool include_tails,
                                                Index cap = kDefaultEnumerationCap);

/// Number of sets enumerate_closed_sets would return, without building them.
Index enumeration_count(const SpaceSpec& spec, Index bound, bool include_tails);

}  // namespace wijsman
