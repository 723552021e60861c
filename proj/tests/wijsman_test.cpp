#include "support.hpp"

#include <wijsman/closed_set.hpp>
#include <wijsman/hyperspace.hpp>
#include <wijsman/serialize.hpp>

using namespace wijsman;
using test::q;

namespace {

// Members of W(E) among finite F in {1..bound}, counted with raw GMP.
long raw_w_members(const std::set<long>& e, long bound) {
  const long m = 2 + *e.rbegin();
  const mpq_class radius = test::raw_pow2(-m - 1);
  auto d = [](long k, const std::set<long>& f) {
    mpq_class best = -1;
    for (long j : f) {
      const mpq_class v = test::raw_dyadic(k, j);
      if (best < 0 || v < best) best = v;
    }
    return best;
  };
  long members = 0;
  for (long mask = 1; mask < (1L << bound); ++mask) {
    std::set<long> f;
    for (long i = 0; i < bound; ++i)
      if (mask >> i & 1) f.insert(i + 1);
    bool in = true;
    for (long k = 1; k <= m && in; ++k) in = abs(d(k, f) - d(k, e)) < radius;
    members += in;
  }
  return members;
}

std::set<Index> bits(Index mask) {
  std::set<Index> e;
  for (Index i = 0; i < 16; ++i)
    if (mask >> i & 1U) e.insert(i + 1);
  return e;
}

}  // namespace

TEST_CASE("subbasic bounds are strict") {
  const auto s = make_subbasic(nat(2), Rational(0), Rational(1, 4));
  CHECK(satisfies(dyadic_nat(), s, nat_set({3})));
  CHECK_FALSE(satisfies(dyadic_nat(), s, nat_set({1})));
  CHECK_FALSE(satisfies(dyadic_nat(), s, nat_set({2})));
  CHECK_ERROR(make_subbasic(nat(1), Rational(1), Rational(1)), ErrorKind::MalformedInput);
  const auto open = make_subbasic(atom(1), ExtendedBound::neg_infinity(), ExtendedBound::pos_infinity());
  for (const auto& f : enumerate_closed_sets(zero_one(3), 3, false)) CHECK(satisfies(zero_one(3), open, f));
}

TEST_CASE("dyadic certificate shape") {
  const auto c1 = dyadic_isolation_certificate({1});
  REQUIRE(c1.constraints.size() == 3);
  const std::vector<Rational> centers{0, Rational(1, 4), Rational(3, 8)};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& s = c1.constraints[i];
    CHECK(s.point == nat(i + 1));
    CHECK(s.lower == ExtendedBound(centers[i] - Rational(1, 16)));
    CHECK(s.upper == ExtendedBound(centers[i] + Rational(1, 16)));
  }
  CHECK(dyadic_isolation_certificate({1, 3}).constraints.size() == 5);
  const auto c2 = dyadic_isolation_certificate({2});
  CHECK(c2.constraints.size() == 4);
  CHECK(c2.constraints[1].lower == ExtendedBound(-Rational(1, 32)));
  CHECK_ERROR(dyadic_isolation_certificate({}), ErrorKind::EmptySet);
}

TEST_CASE("dyadic neighborhood membership") {
  const auto w = dyadic_isolation_certificate({1});
  CHECK(in_neighborhood(dyadic_nat(), w, nat_set({1})));
  CHECK_FALSE(in_neighborhood(dyadic_nat(), w, nat_set({1, 5})));
  CHECK_FALSE(in_neighborhood(dyadic_nat(), w, finite_plus_tail({1}, 4)));
  const NeighborhoodCertificate open{
      {make_subbasic(nat(4), ExtendedBound::neg_infinity(), ExtendedBound::pos_infinity())}, DisjointFrom{"none"}};
  CHECK(in_neighborhood(dyadic_nat(), open, finite_plus_tail({}, 2)));
}

TEST_CASE("dyadic prover") {
  const auto r = prove_dyadic_isolation({1});
  CHECK(r.verified());
  CHECK(r.scope == QuantifierScope::AllSubsets);
  CHECK(r.witness->at("membershipDerivations") == 3);
  CHECK(r.witness->at("tailExclusion") == true);
  CHECK(well_formed(r));
  CHECK_FALSE(recheck_trace(r.trace).has_value());
  // Each recorded step re-evaluates on its own.
  for (const auto& t : r.trace) CHECK(t.holds());

  const auto big = prove_dyadic_isolation({1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(big.verified());
  CHECK(big.witness->at("m") == 10);
  CHECK_ERROR(prove_dyadic_isolation({}), ErrorKind::EmptySet);
}

TEST_CASE("tampered traces are caught") {
  auto r = prove_dyadic_isolation({2, 3});
  REQUIRE(r.trace.size() > 4);
  r.trace[3].rhs = ExtendedBound(Rational(-1000));
  r.trace[3].rel = Relation::Lt;
  CHECK(recheck_trace(r.trace) == std::optional<std::size_t>(3));
  CHECK_FALSE(well_formed(r));
}

TEST_CASE("dyadic oracle counts") {
  const auto r = brute_force_unique_member(dyadic_nat(), dyadic_isolation_certificate({1}), 12, true);
  CHECK(r.verified());
  CHECK(r.stats.sets_enumerated == 2 * 4096 - 1);
  CHECK(r.scope == QuantifierScope::RepresentableOnly);
}

TEST_CASE("widened radius is refuted by the oracle") {
  auto cert = dyadic_isolation_certificate({1});
  const Rational wide = Rational::pow2(-3 + 2);
  for (auto& s : cert.constraints) {
    const Rational center = s.lower.value() + Rational(1, 16);
    s.lower = center - wide;
    s.upper = center + wide;
  }
  const auto r = brute_force_unique_member(dyadic_nat(), cert, 8, true);
  CHECK(r.outcome == Outcome::Refuted);
  CHECK(r.counterexample->contains("extraMember"));
  CHECK(well_formed(r));
}

TEST_CASE("raw oracle agrees with the neighborhood W") {
  for (const auto& e : {std::set<long>{1}, std::set<long>{2}, std::set<long>{1, 3}, std::set<long>{2, 4}})
    CHECK(raw_w_members(e, 10) == 1);
}

TEST_CASE("prover and oracle agree, property") {
  for (Index mask = 1; mask < 64; ++mask) {
    const auto e = bits(mask);
    const auto proof = prove_dyadic_isolation(e);
    const auto oracle = brute_force_unique_member(dyadic_nat(), dyadic_isolation_certificate(e), 10, true);
    CHECK(proof.verified());
    CHECK(oracle.verified());
  }
}

TEST_CASE("paired singleton certificates") {
  const auto spec = paired_two_point(3);
  const auto c = paired_singleton_certificate(spec, 0, 1);
  REQUIRE(c.constraints.size() == 1);
  CHECK(c.constraints[0].point == paired(0, 0));
  CHECK(c.constraints[0].lower == ExtendedBound(Rational(1)));
  CHECK(c.constraints[0].upper == ExtendedBound::pos_infinity());
  CHECK(std::get<UniqueMember>(c.claim).set.str() == finite_set({paired(0, 1)}).str());

  const auto small = brute_force_unique_member(paired_two_point(2), paired_singleton_certificate(paired_two_point(2), 0, 1), 2, false);
  CHECK(small.verified());
  CHECK(small.stats.sets_enumerated == 15);

  for (Index a = 0; a < 3; ++a)
    for (int side = 0; side <= 1; ++side) {
      const auto proof = prove_paired_singleton(spec, a, side);
      CHECK(proof.verified());
      CHECK(well_formed(proof));
      const auto oracle = brute_force_unique_member(spec, paired_singleton_certificate(spec, a, side), 3, false);
      CHECK(oracle.verified());
      CHECK(oracle.stats.sets_enumerated == 63);
    }
  CHECK_ERROR(paired_singleton_certificate(spec, 3, 0), ErrorKind::IndexOutOfRange);
  CHECK_ERROR(paired_singleton_certificate(spec, 0, 2), ErrorKind::IndexOutOfRange);
}

TEST_CASE("0-1 space has no isolated points") {
  const auto spec = zero_one(std::nullopt);
  const NeighborhoodCertificate cert{{make_subbasic(atom(1), Rational(1, 2), ExtendedBound::pos_infinity())},
                                     DisjointFrom{"none"}};
  const auto w = no_isolated_point_witness(spec, cert, finite_set({atom(2)}));
  CHECK(same_set(spec, w, finite_set({atom(2), atom(3)})));
  CHECK(in_neighborhood(spec, cert, w));

  const NeighborhoodCertificate open{
      {make_subbasic(atom(5), ExtendedBound::neg_infinity(), ExtendedBound::pos_infinity())}, DisjointFrom{"none"}};
  const auto f = finite_set({atom(1), atom(2), atom(3), atom(4)});
  const auto g = no_isolated_point_witness(spec, open, f);
  CHECK(same_set(spec, g, finite_set({atom(1), atom(2), atom(3), atom(4), atom(6)})));

  CHECK_ERROR(no_isolated_point_witness(spec, cert, finite_set({atom(1)})), ErrorKind::NotSatisfied);
  CHECK_ERROR(no_isolated_point_witness(zero_one(2), open, finite_set({atom(1), atom(2)})),
              ErrorKind::PointOutOfSpace);
}

TEST_CASE("clopen radii") {
  CHECK(clopen_membership_family(dyadic_nat(), nat(1)).radius == Rational(1, 8));
  CHECK(clopen_membership_family(zero_one(5), atom(3)).radius == Rational(1, 2));
  CHECK(clopen_membership_family(paired_two_point(3), paired(1, 0)).radius == Rational(1, 2));
  CHECK(clopen_membership_family(paired_two_point(1), paired(0, 0)).radius == Rational(1));
  CHECK_ERROR(clopen_membership_family(interval_copies(1), copy_point(0, Rational(1))), ErrorKind::NotDiscrete);
  // r_n = 2^(-n-2), cross-checked against a truncated minimum over k != n.
  for (long n = 1; n <= 20; ++n) {
    mpq_class best = -1;
    for (long k = 1; k < n + 60; ++k)
      if (k != n) {
        const mpq_class v = test::raw_dyadic(n, k);
        if (best < 0 || v < best) best = v;
      }
    const Rational r = clopen_membership_family(dyadic_nat(), nat(n)).radius;
    CHECK(r == test::lift(best / 2));
    CHECK(r == Rational::pow2(-n - 2));
  }
}

TEST_CASE("clopen separation over full enumerations") {
  auto r = verify_clopen_separation(zero_one(3), 3, false);
  CHECK(r.verified());
  CHECK(r.stats.sets_enumerated == 7);
  r = verify_clopen_separation(dyadic_nat(), 6, true);
  CHECK(r.verified());
  CHECK(r.stats.sets_enumerated == 127);
  CHECK(verify_clopen_separation(paired_two_point(2), 2, false).verified());
}

TEST_CASE("tail sets never sit on the radius") {
  for (Index t = 1; t <= 12; ++t)
    for (Index n = 1; n <= 12; ++n) {
      const auto fam = clopen_membership_family(dyadic_nat(), nat(n));
      const auto d = dist_to_set(dyadic_nat(), nat(n), finite_plus_tail({}, t)).value;
      CHECK(d != fam.radius);
      CHECK((d < fam.radius) == (n >= t));
    }
}

TEST_CASE("zero-dimensional level sets") {
  auto r = verify_zero_dimensional_levels(paired_two_point(2), 2);
  CHECK(r.verified());
  CHECK(r.witness->at("valueSet") == nlohmann::json({"0/1", "1/1", "2/1"}));
  r = verify_zero_dimensional_levels(zero_one(3), 3);
  CHECK(r.verified());
  CHECK(r.witness->at("valueSet") == nlohmann::json({"0/1", "1/1"}));
  r = verify_zero_dimensional_levels(free_sum({{1, zero_one(2)}, {2, zero_one(2)}}), 2);
  CHECK(r.verified());
  CHECK(r.witness->at("valueSet") == nlohmann::json({"0/1", "1/1", "2/1"}));
  CHECK_ERROR(verify_zero_dimensional_levels(dyadic_nat(), 3), ErrorKind::NotFiniteValued);
}

TEST_CASE("certificate json round trip") {
  const auto c = dyadic_isolation_certificate({1, 4});
  const nlohmann::json j = c;
  CHECK(j.get<NeighborhoodCertificate>() == c);
  const auto p = paired_singleton_certificate(paired_two_point(2), 1, 0);
  CHECK(nlohmann::json(p).get<NeighborhoodCertificate>() == p);
}
