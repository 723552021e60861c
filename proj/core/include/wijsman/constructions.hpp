#pragma once

#include <wijsman/closed_set.hpp>
#include <wijsman/hyperspace.hpp>
#include <wijsman/report.hpp>
#include <wijsman/space.hpp>

#include <map>
#include <optional>
#include <vector>

namespace wijsman {

/// A point of a finite-dimensional cube. Coordinates are rationals in
/// [0,1]; an absent coordinate is 0. Binary-cube points use only 0 and 1.
struct CubePoint {
  std::map<Index, Rational> coords;

  Rational at(Index i) const;
  bool is_zero() const;
  bool is_binary() const;
  /// Drops zero coordinates so equal points compare equal.
  CubePoint normalized() const;
  bool operator==(const CubePoint& o) const;
};

void to_json(nlohmann::json& j, const CubePoint& p);
void from_json(const nlohmann::json& j, CubePoint& p);

// --- 0-1 space as a cube minus zero ---------------------------------------------

/// Characteristic vector of F over ZeroOne(n), coordinates 1..n.
/// Throws EmptySet, RepSpecMismatch for non-finite or unbounded input.
CubePoint cube_identify(const SpaceSpec& spec, const ClosedSetRep& set);

/// Inverse of cube_identify. Throws ZeroPoint for the all-zero vector.
ClosedSetRep cube_to_closed_set(const SpaceSpec& spec, const CubePoint& v);

/// Bijection between enumerated hyperspace and nonzero binary vectors, and
/// subbasic set <-> cylinder correspondence, exhaustively for ZeroOne(n).
VerificationReport verify_cube_identification(Index n);

// --- free sums ----------------------------------------------------------------------

/// phi(<F_a>) = U F_a. Throws MissingSummand if a summand's part is absent
/// or null.
ClosedSetRep free_sum_phi(const SpaceSpec& spec,
                          const std::map<Index, ClosedSetRep>& parts);

/// phi^-1(F) = <F n X_a>. Throws MissingSummand if F misses a summand.
std::map<Index, ClosedSetRep> free_sum_phi_inverse(const SpaceSpec& spec, const ClosedSetRep& set);

/// Per-summand trace F n X_tag, or nullopt when empty.
std::optional<ClosedSetRep> summand_trace(const SpaceSpec& spec, const ClosedSetRep& set, Index tag);

/// Exhaustive over all tuples of enumerated summand sets (summand bound
/// `bound`) and all bounded probes: d(x, phi(t)) = d_nu(x, t_nu), the
/// subbasic sets correspond, and phi^-1 o phi = id.
VerificationReport verify_free_sum_subbase(const SpaceSpec& spec, Index bound);

struct ClosednessWitness {
  SubbasicSet neighborhood;
  VerificationReport report;
};

/// For F missing summand `tag`: U = {B : d(x0, B) > 1} at the least point
/// x0 of that summand contains F and misses every set meeting all
/// summands. Throws SummandNotMissing.
ClosednessWitness free_sum_closedness_witness(const SpaceSpec& spec, const ClosedSetRep& set,
                                              Index tag);

// --- interval copies ------------------------------------------------------------------

/// phi(y) = U{(0, y_c] x {c}}. Throws ZeroPoint if y = 0 and
/// PointOutOfSpace if a coordinate leaves [0,1] or exceeds the copy count.
ClosedSetRep interval_copies_embed(const SpaceSpec& spec, const CubePoint& y);

/// Closed-form d(<x,c>, phi(y)): 2 if y_c = 0, else min(1, max(0, f(x) - f(y_c))).
Rational interval_distance_law(const SpaceSpec& spec, const CubePoint& y, const Point& probe);

struct IntervalGrid {
  std::vector<Rational> heights;  // segment heights in (0,1]
  std::vector<Rational> probes;   // probe coordinates in (0,2)

  /// heights j/g for j = 1..g, probes k/4 for k = 1..7.
  static IntervalGrid uniform(Index g);
};

/// Distance law against grid brute force, monotonicity in y_c, pull-back of
/// subbasic constraints to a single coordinate interval, and injectivity,
/// over every y in ({0} U heights)^copies \ {0}.
VerificationReport verify_interval_copies_subbase(const SpaceSpec& spec, const IntervalGrid& grid);

/// The preimage y if F = phi(y), otherwise nullopt. Throws
/// NotRepresentable unless F is a SegmentFamily or a finite set of copy
/// points.
std::optional<CubePoint> interval_preimage(const SpaceSpec& spec, const ClosedSetRep& set);

/// Two-probe certificate that F lies outside the closed image of phi:
/// probes at an uncovered point x of F and at a point z strictly between
/// the covering segment and x. Refuted (with the preimage) when F is in
/// the image.
VerificationReport interval_copies_closedness(const SpaceSpec& spec, const ClosedSetRep& set,
                                              const IntervalGrid& oracle_grid = IntervalGrid::uniform(8));

// --- diagonal -----------------------------------------------------------------------

/// <a_y> in prod_y Y_y indexed by a finite index set.
using CubeTuple = std::map<Index, CubePoint>;

struct DiagonalPoint {
  std::set<Index> index_set;
  CubePoint common_value;

  CubeTuple tuple() const;
};

bool diagonal_member(const CubeTuple& tuple);

/// Open box {u : |u_coord - center_a| < radius} at index a times the same
/// at index b around center_b; it contains the tuple and misses the
/// diagonal because the two coordinate intervals are disjoint.
struct DiagonalSeparation {
  Index index_a;
  Index index_b;
  Index coord;
  Rational center_a;
  Rational center_b;
  Rational radius;

  bool contains(const CubeTuple& tuple) const;
};

/// nullopt for diagonal tuples; otherwise the first (index, coordinate)
/// difference in index order.
std::optional<DiagonalSeparation> diagonal_separation(const CubeTuple& tuple);

/// Exact checks of a separation certificate: positive radius, tuple inside,
/// coordinate intervals disjoint.
VerificationReport check_diagonal_separation(const CubeTuple& tuple, const DiagonalSeparation& sep);

/// Every non-diagonal tuple over the given coordinate values gets a
/// verified certificate, and no diagonal tuple enters any box.
VerificationReport verify_diagonal_closed(Index index_count, Index dimension,
                                          const std::vector<Rational>& values);

}  // namespace wijsman
