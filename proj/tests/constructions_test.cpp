#include "support.hpp"

#include <wijsman/constructions.hpp>
#include <wijsman/serialize.hpp>

using namespace wijsman;
using test::q;

namespace {

CubePoint cube(std::map<Index, Rational> coords) { return CubePoint{std::move(coords)}; }

std::shared_ptr<const ClosedSetRep> part(ClosedSetRep f) { return std::make_shared<const ClosedSetRep>(std::move(f)); }

// d(<x,c>, phi(y)) by minimizing rho over the lattice points t = j/64 in
// (0, y], with the chart evaluated in raw GMP.
mpq_class raw_segment_distance(const mpq_class& x, const mpq_class& y) {
  mpq_class best = 2;
  for (long j = 1; mpq_class(j, 64) <= y; ++j) {
    const mpq_class t(j, 64);
    mpq_class v = abs(test::raw_f(x) - test::raw_f(t));
    if (v > 1) v = 1;
    if (v < best) best = v;
  }
  return best;
}

}  // namespace

TEST_CASE("cube identification") {
  const auto s = zero_one(2);
  CHECK(cube_identify(s, finite_set({atom(1)})) == cube({{1, 1}}));
  CHECK(cube_identify(s, finite_set({atom(1)})).at(2).is_zero());
  CHECK(same_set(s, cube_to_closed_set(s, cube({{2, 1}})), finite_set({atom(2)})));
  CHECK_ERROR(cube_to_closed_set(s, cube({})), ErrorKind::ZeroPoint);
  CHECK_ERROR(cube_to_closed_set(s, cube({{1, Rational(1, 2)}})), ErrorKind::MalformedInput);
  CHECK_ERROR(cube_identify(zero_one(std::nullopt), finite_set({atom(1)})), ErrorKind::RepSpecMismatch);

  std::set<std::string> images;
  for (const auto& f : enumerate_closed_sets(zero_one(3), 3, false))
    images.insert(nlohmann::json(cube_identify(zero_one(3), f)).dump());
  CHECK(images.size() == 7);

  for (Index n = 1; n <= 4; ++n) {
    const auto r = verify_cube_identification(n);
    CHECK(r.verified());
    CHECK(r.witness->at("nonzeroVectors") == (Index{1} << n) - 1);
  }
}

TEST_CASE("subbasic set maps to a cylinder") {
  const auto s = zero_one(2);
  const auto u = make_subbasic(atom(1), ExtendedBound::neg_infinity(), Rational(1, 2));
  for (const auto& f : enumerate_closed_sets(s, 2, false))
    CHECK(satisfies(s, u, f) == (cube_identify(s, f).at(1) == Rational(1)));
}

TEST_CASE("free sum phi and its inverse") {
  const auto spec = free_sum({{1, zero_one(2)}, {2, dyadic_nat()}});
  const std::map<Index, ClosedSetRep> parts{{1, finite_set({atom(1)})}, {2, nat_set({2, 3})}};
  const auto f = free_sum_phi(spec, parts);
  CHECK(member(spec, summand(1, atom(1)), f));
  CHECK(member(spec, summand(2, nat(3)), f));
  CHECK_FALSE(member(spec, summand(1, atom(2)), f));
  const auto back = free_sum_phi_inverse(spec, f);
  CHECK(same_set(zero_one(2), back.at(1), parts.at(1)));
  CHECK(same_set(dyadic_nat(), back.at(2), parts.at(2)));
  CHECK_ERROR(free_sum_phi(spec, {{1, finite_set({atom(1)})}}), ErrorKind::MissingSummand);
  CHECK_ERROR(free_sum_phi_inverse(spec, summand_tuple({{1, part(finite_set({atom(1)}))}})),
              ErrorKind::MissingSummand);
  CHECK_FALSE(summand_trace(spec, summand_tuple({{1, part(finite_set({atom(1)}))}}), 2).has_value());
}

TEST_CASE("free sum distances agree with summand distances") {
  const auto spec = free_sum({{1, zero_one(2)}, {2, zero_one(2)}});
  const auto r = verify_free_sum_subbase(spec, 2);
  CHECK(r.verified());
  CHECK(r.witness->at("tuples") == 9);
  CHECK(verify_free_sum_subbase(free_sum({{1, zero_one(3)}, {2, zero_one(3)}}), 3).verified());
  CHECK(verify_free_sum_subbase(free_sum({{1, dyadic_nat()}}), 3).verified());

  // Own summand always wins over the cross distance 2.
  const std::map<Index, ClosedSetRep> parts{{1, finite_set({atom(2)})}, {2, finite_set({atom(1)})}};
  const auto f = free_sum_phi(spec, parts);
  CHECK(dist_to_set(spec, summand(1, atom(1)), f).value == Rational(1));
  CHECK(dist_to_set(spec, summand(1, atom(1)), f).value ==
        dist_to_set(zero_one(2), atom(1), parts.at(1)).value);
}

TEST_CASE("free sum closedness witness") {
  const auto spec = free_sum({{1, zero_one(2)}, {2, zero_one(3)}});
  const auto f = summand_tuple({{2, part(finite_set({atom(1), atom(3)}))}});
  const auto w = free_sum_closedness_witness(spec, f, 1);
  CHECK(w.report.verified());
  CHECK(well_formed(w.report));
  CHECK(w.neighborhood.point == summand(1, atom(1)));
  CHECK(w.neighborhood.lower == ExtendedBound(Rational(1)));
  CHECK(w.neighborhood.upper == ExtendedBound::pos_infinity());
  CHECK(dist_to_set(spec, summand(1, atom(1)), f).value == Rational(2));
  CHECK(satisfies(spec, w.neighborhood, f));
  const auto b = summand_tuple({{1, part(finite_set({atom(1)}))}});
  CHECK_FALSE(satisfies(spec, w.neighborhood, b));
  for (const auto& g : enumerate_closed_sets(spec, 3, false))
    if (summand_trace(spec, g, 1) && summand_trace(spec, g, 2)) CHECK_FALSE(satisfies(spec, w.neighborhood, g));
  CHECK_ERROR(free_sum_closedness_witness(spec, b, 1), ErrorKind::SummandNotMissing);
}

TEST_CASE("interval embedding distances") {
  const auto k1 = interval_copies(1);
  const auto k2 = interval_copies(2);
  CHECK(dist_to_set(k1, copy_point(0, q("1")), interval_copies_embed(k1, cube({{0, 1}}))).value.is_zero());
  CHECK(dist_to_set(k2, copy_point(0, q("1")), interval_copies_embed(k2, cube({{1, q("1/2")}}))).value == Rational(2));
  CHECK(dist_to_set(k1, copy_point(0, q("3/2")), interval_copies_embed(k1, cube({{0, q("1/2")}}))).value == Rational(1));
  CHECK(interval_distance_law(k1, cube({{0, q("3/4")}}), copy_point(0, q("3/4"))).is_zero());
  CHECK_ERROR(interval_copies_embed(k1, cube({})), ErrorKind::ZeroPoint);
  CHECK_ERROR(interval_copies_embed(k1, cube({{0, q("3/2")}})), ErrorKind::PointOutOfSpace);
  CHECK_ERROR(interval_copies_embed(k1, cube({{1, q("1/2")}})), ErrorKind::PointOutOfSpace);
}

TEST_CASE("distance law against a raw grid minimum") {
  const auto k1 = interval_copies(1);
  for (long yi = 1; yi <= 8; ++yi)
    for (long xi = 1; xi < 16; ++xi) {
      const mpq_class y(yi, 8);
      const mpq_class x(xi, 8);
      const Rational law = interval_distance_law(k1, cube({{0, test::lift(y)}}), copy_point(0, test::lift(x)));
      CHECK(law == test::lift(raw_segment_distance(x, y)));
    }
}

TEST_CASE("interval subbase verification") {
  auto g = IntervalGrid::uniform(8);
  CHECK(g.heights.size() == 8);
  CHECK(g.probes.size() == 7);
  for (Index k = 1; k <= 3; ++k) CHECK(verify_interval_copies_subbase(interval_copies(k), IntervalGrid::uniform(k == 3 ? 4 : 8)).verified());
  IntervalGrid custom{{Rational(1, 8), Rational(1, 2), Rational(1)}, {q("1/4"), q("1"), q("3/2")}};
  CHECK(verify_interval_copies_subbase(interval_copies(1), custom).verified());
}

TEST_CASE("monotone in the segment height") {
  const auto k1 = interval_copies(1);
  for (long xi = 1; xi < 8; ++xi) {
    const auto p = copy_point(0, Rational(xi, 4));
    CHECK(interval_distance_law(k1, cube({{0, 1}}), p) <= interval_distance_law(k1, cube({{0, q("1/8")}}), p));
  }
}

TEST_CASE("interval image is closed") {
  const auto k1 = interval_copies(1);
  const auto f = segment_family({{0, q("1/2")}}, {copy_point(0, q("3/2"))});
  auto r = interval_copies_closedness(k1, f);
  CHECK(r.verified());
  CHECK(well_formed(r));
  const auto cert = r.witness->at("certificate").get<NeighborhoodCertificate>();
  REQUIRE(cert.constraints.size() == 2);
  CHECK(cert.constraints[0].point == copy_point(0, q("3/2")));
  CHECK(cert.constraints[1].point == copy_point(0, q("1")));
  CHECK(in_neighborhood(k1, cert, f));

  r = interval_copies_closedness(k1, finite_set({copy_point(0, q("1"))}));
  CHECK(r.verified());

  const auto image = interval_copies_embed(k1, cube({{0, q("3/4")}}));
  r = interval_copies_closedness(k1, image);
  CHECK(r.outcome == Outcome::Refuted);
  CHECK(r.counterexample->at("preimage").get<CubePoint>() == cube({{0, q("3/4")}}));
  CHECK(interval_preimage(k1, image) == std::optional<CubePoint>(cube({{0, q("3/4")}})));
  CHECK_FALSE(interval_preimage(k1, f).has_value());
}

TEST_CASE("diagonal membership and separation") {
  const CubePoint v = cube({{1, q("1/2")}});
  const CubePoint w = cube({{1, q("1/2")}, {2, 1}});
  CHECK(diagonal_member({{1, v}, {2, v}}));
  CHECK_FALSE(diagonal_separation({{1, v}, {2, v}}).has_value());
  const CubeTuple t{{1, v}, {2, w}};
  CHECK_FALSE(diagonal_member(t));
  const auto sep = diagonal_separation(t);
  REQUIRE(sep.has_value());
  CHECK(sep->coord == 2);
  CHECK(sep->radius == Rational(1, 2));
  CHECK(sep->contains(t));
  CHECK(check_diagonal_separation(t, *sep).verified());
  const DiagonalPoint d{{1, 2}, w};
  CHECK(diagonal_member(d.tuple()));
  CHECK_FALSE(sep->contains(d.tuple()));
  CHECK(verify_diagonal_closed(3, 2, {Rational(0), Rational(1, 2), Rational(1)}).verified());
}
