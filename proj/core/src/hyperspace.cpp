#include <wijsman/error.hpp>
#include <wijsman/hyperspace.hpp>
#include <wijsman/serialize.hpp>

#include "detail.hpp"

#include <algorithm>

namespace wijsman {

using nlohmann::json;

SubbasicSet make_subbasic(Point point, ExtendedBound lower, ExtendedBound upper) {
  if (!(lower < upper))
    throw Error(ErrorKind::MalformedInput, "subbasic bounds need lower < upper, got (" + lower.str() +
                                               ", " + upper.str() + ")");
  return SubbasicSet{std::move(point), std::move(lower), std::move(upper)};
}

bool satisfies(const SpaceSpec& spec, const SubbasicSet& s, const ClosedSetRep& set) {
  const ExtendedBound d = dist_to_set(spec, s.point, set).value;
  return s.lower < d && d < s.upper;
}

void to_json(json& j, const SubbasicSet& s) {
  j = {{"point", s.point}, {"lower", s.lower}, {"upper", s.upper}};
}

void from_json(const json& j, SubbasicSet& s) {
  s = make_subbasic(j.at("point").get<Point>(), j.at("lower").get<ExtendedBound>(),
                    j.at("upper").get<ExtendedBound>());
}

void to_json(json& j, const NeighborhoodCertificate& c) {
  j = {{"constraints", c.constraints}};
  if (const auto* u = std::get_if<UniqueMember>(&c.claim))
    j["claim"] = {{"kind", "unique-member"}, {"set", u->set}};
  else
    j["claim"] = {{"kind", "disjoint-from"}, {"family", std::get<DisjointFrom>(c.claim).family}};
}

void from_json(const json& j, NeighborhoodCertificate& c) {
  c.constraints = j.at("constraints").get<std::vector<SubbasicSet>>();
  if (c.constraints.empty()) throw Error(ErrorKind::MalformedInput, "certificate without constraints");
  const json& claim = j.at("claim");
  const auto kind = claim.at("kind").get<std::string>();
  if (kind == "unique-member")
    c.claim = UniqueMember{claim.at("set").get<ClosedSetRep>()};
  else if (kind == "disjoint-from")
    c.claim = DisjointFrom{claim.at("family").get<std::string>()};
  else
    throw Error(ErrorKind::MalformedInput, "unknown claim kind '" + kind + "'");
}

bool in_neighborhood(const SpaceSpec& spec, const NeighborhoodCertificate& cert,
                     const ClosedSetRep& set) {
  validate(spec, set);
  return std::all_of(cert.constraints.begin(), cert.constraints.end(),
                     [&](const SubbasicSet& s) { return satisfies(spec, s, set); });
}

// ---------------------------------------------------------------------------
// Dyadic space

namespace {

Rational p2(long e) { return Rational::pow2(e); }

ClosedSetRep nat_finite(const std::set<Index>& e) {
  std::set<Point> pts;
  for (Index n : e) pts.insert(nat(n));
  return finite_set(std::move(pts));
}

void check_dyadic_input(const std::set<Index>& e) {
  if (e.empty()) throw Error(ErrorKind::EmptySet, "E must be nonempty");
  if (*e.begin() == 0) throw Error(ErrorKind::PointOutOfSpace, "N is 1-based");
}

}  // namespace

NeighborhoodCertificate dyadic_isolation_certificate(const std::set<Index>& e) {
  check_dyadic_input(e);
  const SpaceSpec spec = dyadic_nat();
  const ClosedSetRep set = nat_finite(e);
  const Index m = 2 + *e.rbegin();
  const Rational radius = p2(-static_cast<long>(m) - 1);
  NeighborhoodCertificate cert{{}, UniqueMember{set}};
  for (Index k = 1; k <= m; ++k) {
    const Rational center = dist_to_set(spec, nat(k), set).value;
    cert.constraints.push_back(make_subbasic(nat(k), center - radius, center + radius));
  }
  return cert;
}

VerificationReport prove_dyadic_isolation(const std::set<Index>& e) {
  detail::Stopwatch clock;
  check_dyadic_input(e);
  const SpaceSpec spec = dyadic_nat();
  const ClosedSetRep set = nat_finite(e);
  const auto cert = dyadic_isolation_certificate(e);
  const long m = static_cast<long>(2 + *e.rbegin());
  const Rational radius = p2(-m - 1);

  auto report = detail::start_report("dyadic-isolated-symbolic", QuantifierScope::AllSubsets);
  auto& t = report.trace;
  auto step = [&](std::string label, ExtendedBound lhs, Relation rel, ExtendedBound rhs) {
    if (!record(t, std::move(label), std::move(lhs), rel, std::move(rhs)))
      detail::refute(report, json{{"failedStep", t.back()}});
  };

  // E itself lies in W: each |d(k,E) - d(k,E)| = 0 < radius.
  step("E in W: |d(k,E) - d(k,E)| = 0 < 2^-(m+1)", Rational(0), Relation::Lt, radius);

  // F n [1,m] = E n [1,m] for every F in W.
  for (long k = 1; k <= m; ++k) {
    const std::string ks = std::to_string(k);
    const Index ku = static_cast<Index>(k);
    const Rational sep = dyadic_dist(ku, ku + 1);
    step("d(" + ks + "," + std::to_string(k + 1) + ") = 2^-" + std::to_string(k + 1), sep,
         Relation::Eq, p2(-k - 1));
    if (k > 1)
      step("d(" + ks + "," + std::to_string(k - 1) + ") >= d(" + ks + "," + std::to_string(k + 1) +
               "), so d(" + ks + ", N\\{" + ks + "}) = 2^-" + std::to_string(k + 1),
           dyadic_dist(ku, ku - 1), Relation::Ge, sep);
    step("d(" + ks + ", N\\{" + ks + "}) >= 2^-(m+1) since " + ks + " <= m", sep, Relation::Ge,
         radius);
    const Rational center = dist_to_set(spec, nat(ku), set).value;
    if (e.contains(ku)) {
      step(ks + " in E: d(" + ks + ",F) < d(" + ks + ",E) + 2^-(m+1) <= d(" + ks + ", N\\{" + ks +
               "}) forces " + ks + " in F",
           center + radius, Relation::Le, sep);
    } else {
      step(ks + " not in E: d(" + ks + ",E) >= d(" + ks + ", N\\{" + ks + "})", center,
           Relation::Ge, sep);
      step(ks + " not in E: d(" + ks + ",F) > d(" + ks + ",E) - 2^-(m+1) >= 0 forces " + ks +
               " not in F",
           center - radius, Relation::Ge, Rational(0));
    }
  }

  // F is contained in [1,m]: a point k > m of F pulls d(m,F) below 2^-m.
  const Index mu = static_cast<Index>(m);
  const Rational dme = dist_to_set(spec, nat(mu), set).value;
  step("k > m in F: d(m,F) <= d(m,k) = 2^-m - 2^-k < 2^-m (k = m+1 shown)", dyadic_dist(mu, mu + 1),
       Relation::Lt, p2(-m));
  step("d(m,E) = 2^-(m-2) - 2^-m", dme, Relation::Eq, p2(-m + 2) - p2(-m));
  step("d(m,E) > 2^-(m-1)", dme, Relation::Gt, p2(-m + 1));
  step("|d(m,F) - d(m,E)| > 2^-(m-1) - 2^-m = 2^-m", p2(-m + 1) - p2(-m), Relation::Eq, p2(-m));
  step("2^-m >= 2^-(m+1) contradicts the constraint at m", p2(-m), Relation::Ge, radius);

  report.params = {{"E", std::vector<Index>(e.begin(), e.end())}};
  report.witness = json{{"m", m},
                        {"radius", radius},
                        {"membershipDerivations", m},
                        {"tailExclusion", true},
                        {"certificate", cert}};
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

VerificationReport brute_force_unique_member(const SpaceSpec& spec,
                                             const NeighborhoodCertificate& cert, Index bound,
                                             bool include_tails, Index cap) {
  detail::Stopwatch clock;
  const auto* claim = std::get_if<UniqueMember>(&cert.claim);
  if (!claim) throw Error(ErrorKind::MalformedInput, "oracle needs a unique-member claim");
  const auto family = enumerate_closed_sets(spec, bound, include_tails, cap);

  auto report = detail::start_report("unique-member-oracle", QuantifierScope::RepresentableOnly);
  if (!in_neighborhood(spec, cert, claim->set))
    detail::refute(report, json{{"missingMember", claim->set}});
  Index members = 0;
  for (const auto& set : family) {
    if (!in_neighborhood(spec, cert, set)) continue;
    ++members;
    if (!same_set(spec, set, claim->set)) detail::refute(report, json{{"extraMember", set}});
  }
  report.params = {{"space", spec}, {"bound", bound}, {"includeTails", include_tails}};
  report.witness = json{{"membersFound", members}, {"claimed", claim->set}};
  report.stats.sets_enumerated = family.size();
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// Paired space

NeighborhoodCertificate paired_singleton_certificate(const SpaceSpec& spec, Index pair, int side) {
  const auto* s = std::get_if<PairedSpace>(&spec.value);
  if (!s) throw Error(ErrorKind::MalformedInput, "paired certificates need a PairedTwoPoint space");
  if ((side != 0 && side != 1) || (s->pair_count && pair >= *s->pair_count))
    throw Error(ErrorKind::IndexOutOfRange,
                "x_" + std::to_string(pair) + "^" + std::to_string(side) + " not in " + spec.str());
  return NeighborhoodCertificate{
      {make_subbasic(paired(pair, 1 - side), Rational(1), ExtendedBound::pos_infinity())},
      UniqueMember{finite_set({paired(pair, side)})}};
}

VerificationReport prove_paired_singleton(const SpaceSpec& spec, Index pair, int side) {
  detail::Stopwatch clock;
  const auto cert = paired_singleton_certificate(spec, pair, side);
  const auto& s = std::get<PairedSpace>(spec.value);
  const Point probe = paired(pair, 1 - side);
  const Point target = paired(pair, side);

  auto report = detail::start_report("paired-singletons", QuantifierScope::AllSubsets);
  auto step = [&](std::string label, ExtendedBound lhs, Relation rel, ExtendedBound rhs) {
    if (!record(report.trace, std::move(label), std::move(lhs), rel, std::move(rhs)))
      detail::refute(report, json{{"failedStep", report.trace.back()}});
  };
  const std::string ps = probe.str();
  const std::string ts = target.str();
  step("d(" + ps + ", " + ts + ") = 2 > 1, so {" + ts + "} is in U", dist(spec, probe, target),
       Relation::Gt, Rational(1));
  step("d(" + ps + ", " + ps + ") = 0 <= 1", dist(spec, probe, probe), Relation::Le, Rational(1));
  if (!s.pair_count || *s.pair_count >= 2) {
    const Point other = paired(pair == 0 ? 1 : 0, 0);
    step("d(" + ps + ", z) = 1 <= 1 for z outside the pair (z = " + other.str() + " shown)",
         dist(spec, probe, other), Relation::Le, Rational(1));
  }
  report.params = {{"space", spec}, {"pair", pair}, {"side", side}};
  // z = probe and z outside the pair exhaust X \ {target}: any F in U is
  // then a nonempty subset of {target}.
  report.witness = json{{"certificate", cert}, {"uniqueMember", finite_set({target})}};
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// 0-1 space

ClosedSetRep no_isolated_point_witness(const SpaceSpec& spec, const NeighborhoodCertificate& cert,
                                       const ClosedSetRep& set) {
  const auto* z = std::get_if<ZeroOneSpace>(&spec.value);
  if (!z) throw Error(ErrorKind::MalformedInput, "witness construction needs a 0-1 space");
  const auto* f = std::get_if<FinitePoints>(&set.value);
  if (!f) throw Error(ErrorKind::RepSpecMismatch, "0-1 closed sets are finite point sets here");
  if (!in_neighborhood(spec, cert, set))
    throw Error(ErrorKind::NotSatisfied, set.str() + " does not satisfy the certificate");

  std::set<Point> used = f->points;
  for (const auto& c : cert.constraints) used.insert(c.point);
  Index fresh = 1;
  while (used.contains(atom(fresh))) ++fresh;
  if (z->size && fresh > *z->size)
    throw Error(ErrorKind::PointOutOfSpace, "no fresh atom left in " + spec.str());

  std::set<Point> grown = f->points;
  grown.insert(atom(fresh));
  ClosedSetRep out = finite_set(std::move(grown));
  // Adding a point at distance 1 from every support point leaves each
  // d(s, .) unchanged, since those values are already <= 1.
  if (!in_neighborhood(spec, cert, out))
    throw Error(ErrorKind::NotSatisfied, "fresh-atom extension left the certificate");
  return out;
}

// ---------------------------------------------------------------------------
// Clopen separation

bool ClopenFamily::contains(const SpaceSpec& spec, const ClosedSetRep& set) const {
  return dist_to_set(spec, x, set).value < radius;
}

bool ClopenFamily::in_complement(const SpaceSpec& spec, const ClosedSetRep& set) const {
  return dist_to_set(spec, x, set).value > radius;
}

std::optional<Rational> isolation_distance(const SpaceSpec& spec, const Point& x) {
  if (!contains(spec, x))
    throw Error(ErrorKind::PointOutOfSpace, x.str() + " is not a point of " + spec.str());
  if (const auto* s = std::get_if<ZeroOneSpace>(&spec.value))
    return (s->size && *s->size == 1) ? std::nullopt : std::optional<Rational>(1);
  if (const auto* s = std::get_if<PairedSpace>(&spec.value))
    return Rational((s->pair_count && *s->pair_count == 1) ? 2 : 1);
  if (std::holds_alternative<DyadicNatSpace>(spec.value)) {
    const Index n = std::get<NatPoint>(x.value).n;
    return dyadic_dist(n, n + 1);
  }
  if (const auto* s = std::get_if<FreeSumSpace>(&spec.value)) {
    const auto& sp = std::get<SummandPoint>(x.value);
    std::optional<Rational> inner = isolation_distance(*s->find(sp.tag)->space, *sp.inner);
    if (s->summands.size() >= 2) return inner ? min(*inner, Rational(2)) : Rational(2);
    return inner;
  }
  throw Error(ErrorKind::NotDiscrete, spec.str() + " has no positive separation at " + x.str());
}

ClopenFamily clopen_membership_family(const SpaceSpec& spec, const Point& x) {
  validate(spec);
  const auto sep = isolation_distance(spec, x);
  // A one-point space has nothing to separate; any positive radius works.
  return ClopenFamily{x, sep ? *sep / Rational(2) : Rational(1, 2)};
}

VerificationReport verify_clopen_separation(const SpaceSpec& spec, Index bound, bool include_tails) {
  detail::Stopwatch clock;
  const auto family = enumerate_closed_sets(spec, bound, include_tails);
  auto points = bounded_universe(spec, bound);
  if (include_tails) points.push_back(nat(bound + 1));

  auto report = detail::start_report("clopen-separation", QuantifierScope::RepresentableOnly);
  std::vector<std::vector<bool>> signature(family.size(), std::vector<bool>(points.size()));
  json radii = json::array();
  for (std::size_t xi = 0; xi < points.size(); ++xi) {
    const auto fam = clopen_membership_family(spec, points[xi]);
    radii.push_back({{"point", points[xi]}, {"radius", fam.radius}});
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
      const Rational d = dist_to_set(spec, fam.x, family[fi]).value;
      const bool in = member(spec, fam.x, family[fi]);
      const json where{{"point", fam.x}, {"set", family[fi]}, {"distance", d}, {"radius", fam.radius}};
      if ((d < fam.radius) != in) detail::refute(report, json{{"membershipMismatch", where}});
      if (d == fam.radius) detail::refute(report, json{{"distanceEqualsRadius", where}});
      signature[fi][xi] = d < fam.radius;
    }
  }
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      ++pairs;
      if (signature[i] == signature[j])
        detail::refute(report, json{{"unseparatedPair", {family[i], family[j]}}});
    }
  report.params = {{"space", spec}, {"bound", bound}, {"includeTails", include_tails}};
  report.witness = json{{"radii", radii}, {"pairsSeparated", pairs}};
  report.stats.sets_enumerated = family.size();
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

// ---------------------------------------------------------------------------
// Zero-dimensionality

VerificationReport verify_zero_dimensional_levels(const SpaceSpec& spec, Index bound) {
  detail::Stopwatch clock;
  validate(spec);
  const auto values = finite_value_set(spec);
  if (!values) throw Error(ErrorKind::NotFiniteValued, spec.str() + " takes infinitely many values");
  const auto family = enumerate_closed_sets(spec, bound, false);
  const auto points = bounded_universe(spec, bound);

  // Bound sample: the values, midpoints between them, one step outside
  // each end, and the infinities.
  std::vector<ExtendedBound> bounds{ExtendedBound::neg_infinity(), ExtendedBound::pos_infinity()};
  for (std::size_t i = 0; i < values->size(); ++i) {
    bounds.emplace_back((*values)[i]);
    if (i + 1 < values->size()) bounds.emplace_back(((*values)[i] + (*values)[i + 1]) / Rational(2));
  }
  bounds.emplace_back(values->front() - Rational(1, 2));
  bounds.emplace_back(values->back() + Rational(1, 2));
  std::sort(bounds.begin(), bounds.end());

  auto report = detail::start_report("zero-dim-levels", QuantifierScope::RepresentableOnly);
  std::uint64_t subbasic_checked = 0;
  for (const auto& x : points) {
    std::vector<std::size_t> level(family.size());
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
      const Rational d = dist_to_set(spec, x, family[fi]).value;
      const auto hits = std::count(values->begin(), values->end(), d);
      if (hits != 1) {
        detail::refute(report, json{{"valueOutsideSet", {{"point", x}, {"set", family[fi]}, {"distance", d}}}});
        level[fi] = values->size();
        continue;
      }
      level[fi] = static_cast<std::size_t>(std::find(values->begin(), values->end(), d) - values->begin());
    }
    for (std::size_t ai = 0; ai < bounds.size(); ++ai)
      for (std::size_t bi = ai + 1; bi < bounds.size(); ++bi) {
        const auto& a = bounds[ai];
        const auto& b = bounds[bi];
        ++subbasic_checked;
        for (std::size_t fi = 0; fi < family.size(); ++fi) {
          if (level[fi] >= values->size()) continue;
          const ExtendedBound d = (*values)[level[fi]];
          const bool in_subbasic = a < d && d < b;
          bool in_levels = false;
          for (const auto& e : *values)
            if (a < ExtendedBound(e) && ExtendedBound(e) < b && d == ExtendedBound(e)) in_levels = true;
          if (in_subbasic != in_levels)
            detail::refute(report, json{{"levelMismatch", {{"point", x}, {"lower", a}, {"upper", b}, {"set", family[fi]}}}});
        }
      }
  }
  report.params = {{"space", spec}, {"bound", bound}};
  report.witness = json{{"valueSet", *values}, {"subbasicSetsChecked", subbasic_checked}, {"points", points.size()}};
  report.stats.sets_enumerated = family.size();
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

}  // namespace wijsman
