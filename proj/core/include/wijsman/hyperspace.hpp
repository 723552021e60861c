#pragma once

#include <wijsman/closed_set.hpp>
#include <wijsman/report.hpp>
#include <wijsman/space.hpp>

#include <functional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace wijsman {

/// {F in 2^X : lower < d(point, F) < upper}, strict on both sides.
struct SubbasicSet {
  Point point;
  ExtendedBound lower;
  ExtendedBound upper;
  bool operator==(const SubbasicSet&) const = default;
};

/// Throws MalformedInput unless lower < upper.
SubbasicSet make_subbasic(Point point, ExtendedBound lower, ExtendedBound upper);

bool satisfies(const SpaceSpec& spec, const SubbasicSet& s, const ClosedSetRep& set);

struct UniqueMember {
  ClosedSetRep set;
  bool operator==(const UniqueMember&) const = default;
};

struct DisjointFrom {
  std::string family;
  bool operator==(const DisjointFrom&) const = default;
};

/// A finite intersection of subbasic sets and what it is claimed to cut
/// out of the hyperspace.
struct NeighborhoodCertificate {
  std::vector<SubbasicSet> constraints;
  std::variant<UniqueMember, DisjointFrom> claim;
  bool operator==(const NeighborhoodCertificate&) const = default;
};

void to_json(nlohmann::json& j, const SubbasicSet& s);
void from_json(const nlohmann::json& j, SubbasicSet& s);
void to_json(nlohmann::json& j, const NeighborhoodCertificate& c);
void from_json(const nlohmann::json& j, NeighborhoodCertificate& c);

bool in_neighborhood(const SpaceSpec& spec, const NeighborhoodCertificate& cert,
                     const ClosedSetRep& set);

// --- dyadic space on N ------------------------------------------------------

/// W = {F : |d(k,F) - d(k,E)| < 2^(-m-1) for k <= m}, m = 2 + max E.
/// Throws EmptySet.
NeighborhoodCertificate dyadic_isolation_certificate(const std::set<Index>& e);

/// Symbolic proof that W cuts out exactly {E} among all subsets of N. The
/// trace lists every inequality instance used, each checked exactly.
VerificationReport prove_dyadic_isolation(const std::set<Index>& e);

/// Counts, over the enumerated representable family, the sets satisfying
/// cert and requires that exactly the claimed member does.
VerificationReport brute_force_unique_member(const SpaceSpec& spec,
                                             const NeighborhoodCertificate& cert, Index bound,
                                             bool include_tails,
                                             Index cap = kDefaultEnumerationCap);

// --- paired space --------------------------------------------------------------

/// {F : d(x_pair^(1-side), F) > 1}, claimed to equal {{x_pair^side}}.
/// Throws IndexOutOfRange if pair is outside spec or side not in {0,1}.
NeighborhoodCertificate paired_singleton_certificate(const SpaceSpec& spec, Index pair, int side);

/// Symbolic argument: every z != x^side lies within 1 of x^(1-side).
VerificationReport prove_paired_singleton(const SpaceSpec& spec, Index pair, int side);

// --- 0-1 space ------------------------------------------------------------------

/// For F satisfying cert over a 0-1 space, returns F U {p} for the least
/// atom p outside F and outside every constraint point. Throws NotSatisfied
/// if F fails cert, PointOutOfSpace if a bounded universe has no fresh atom.
ClosedSetRep no_isolated_point_witness(const SpaceSpec& spec, const NeighborhoodCertificate& cert,
                                       const ClosedSetRep& set);

// --- clopen separation ------------------------------------------------------------

/// G_x = {F : d(x,F) < radius}, whose complement is {F : d(x,F) > radius}.
struct ClopenFamily {
  Point x;
  Rational radius;

  bool contains(const SpaceSpec& spec, const ClosedSetRep& set) const;
  bool in_complement(const SpaceSpec& spec, const ClosedSetRep& set) const;
};

/// d(x, X \ {x}) in closed form for discrete specs; nullopt if X = {x}.
/// Throws NotDiscrete.
std::optional<Rational> isolation_distance(const SpaceSpec& spec, const Point& x);

/// radius = d(x, X \ {x}) / 2. Throws NotDiscrete for interval copies.
ClopenFamily clopen_membership_family(const SpaceSpec& spec, const Point& x);

VerificationReport verify_clopen_separation(const SpaceSpec& spec, Index bound,
                                            bool include_tails);

// --- zero-dimensionality --------------------------------------------------------------

/// For a finite-valued spec: every d(x,F) is a value of the metric, and
/// every sampled subbasic set is the union of the level sets it spans.
/// Throws NotFiniteValued.
VerificationReport verify_zero_dimensional_levels(const SpaceSpec& spec, Index bound);

}  // namespace wijsman
