#include <wijsman/claims.hpp>
#include <wijsman/constructions.hpp>
#include <wijsman/error.hpp>
#include <wijsman/hyperspace.hpp>
#include <wijsman/serialize.hpp>

#include "detail.hpp"

#include <functional>
#include <random>

namespace wijsman {

using nlohmann::json;

namespace {

struct Resolved {
  const ClaimParams& raw;
  json used = json::object();

  Index get(const char* name, const std::optional<Index>& value, Index fallback) {
    const Index v = value.value_or(fallback);
    used[name] = v;
    return v;
  }
};

/// Runs `part` and folds it into the aggregate, keeping its trace only
/// when the aggregate carries a derivation.
void fold(VerificationReport& total, const VerificationReport& part) {
  if (total.scope == QuantifierScope::AllSubsets) {
    merge_into(total, part);
  } else {
    VerificationReport copy = part;
    copy.trace.clear();
    merge_into(total, copy);
  }
}

std::set<Index> subset_of_range(Index mask) {
  std::set<Index> e;
  for (Index i = 0; i < 64; ++i)
    if (mask >> i & 1U) e.insert(i + 1);
  return e;
}

// --- pipelines ------------------------------------------------------------

VerificationReport metric_axioms(Resolved& p) {
  const Index pairs = p.get("pairs", p.raw.pairs, 3);
  const Index bound = p.get("bound", p.raw.bound, 12);
  const Index copies = p.get("copies", p.raw.copies, 2);
  const Index grid = p.get("grid", p.raw.grid, 10);
  auto total = detail::start_report("metric-axioms", QuantifierScope::RepresentableOnly);
  json parts = json::array();
  auto run = [&](const SpaceSpec& spec, const std::vector<Point>& sample) {
    auto r = check_metric_axioms(spec, sample);
    parts.push_back({{"space", spec}, {"sampleSize", sample.size()}, {"outcome", to_string(r.outcome)}});
    fold(total, r);
  };
  const SpaceSpec paired_spec = paired_two_point(pairs);
  run(paired_spec, bounded_universe(paired_spec, pairs));
  run(dyadic_nat(), bounded_universe(dyadic_nat(), bound));
  const SpaceSpec sum = free_sum({{1, zero_one(2)}, {2, zero_one(2)}});
  run(sum, bounded_universe(sum, 2));
  const SpaceSpec copies_spec = interval_copies(copies);
  std::vector<Point> probes;
  for (Index c = 0; c < copies; ++c)
    for (Index k = 1; k <= grid; ++k) probes.push_back(copy_point(c, Rational(static_cast<long>(2 * k), grid + 1)));
  run(copies_spec, probes);
  total.witness = json{{"parts", parts}, {"chart", IntervalChart::formula}};
  return total;
}

VerificationReport zero_one_cube(Resolved& p) {
  const Index bound = p.get("bound", p.raw.bound, 4);
  auto total = detail::start_report("zero-one-cube", QuantifierScope::RepresentableOnly);
  json sizes = json::array();
  for (Index n = 1; n <= bound; ++n) {
    fold(total, verify_cube_identification(n));
    sizes.push_back(n);
  }
  total.witness = json{{"sizesChecked", sizes}};
  return total;
}

VerificationReport zero_one_no_isolated(Resolved& p) {
  const Index count = p.get("count", p.raw.count, 100);
  const Index bound = p.get("bound", p.raw.bound, 8);
  const std::uint64_t seed = p.raw.seed.value_or(20260101);
  p.used["seed"] = seed;
  const SpaceSpec spec = zero_one(std::nullopt);
  auto total = detail::start_report("zero-one-no-isolated", QuantifierScope::RepresentableOnly);
  std::mt19937_64 rng(seed);
  auto pick = [&](Index lo, Index hi) { return lo + rng() % (hi - lo + 1); };
  const std::vector<ExtendedBound> lowers{ExtendedBound::neg_infinity(), Rational(-1, 2), Rational(0), Rational(1, 2)};
  const std::vector<ExtendedBound> uppers{Rational(1, 2), Rational(1), Rational(3, 2), ExtendedBound::pos_infinity()};
  for (Index trial = 0; trial < count; ++trial) {
    std::set<Point> f;
    const Index size = pick(1, bound);
    while (f.size() < size) f.insert(atom(pick(1, bound)));
    const ClosedSetRep set = finite_set(f);
    NeighborhoodCertificate cert{{}, DisjointFrom{"none"}};
    const Index constraints = pick(1, 4);
    for (Index c = 0; c < constraints; ++c) {
      const Point s = atom(pick(1, bound));
      const ExtendedBound d = dist_to_set(spec, s, set).value;
      std::vector<ExtendedBound> lo, hi;
      for (const auto& b : lowers)
        if (b < d) lo.push_back(b);
      for (const auto& b : uppers)
        if (d < b) hi.push_back(b);
      cert.constraints.push_back(make_subbasic(s, lo[rng() % lo.size()], hi[rng() % hi.size()]));
    }
    const ClosedSetRep other = no_isolated_point_witness(spec, cert, set);
    if (same_set(spec, other, set) || !in_neighborhood(spec, cert, other))
      detail::refute(total, json{{"certificate", cert}, {"set", set}, {"witness", other}});
  }
  total.witness = json{{"certificates", count}};
  total.stats.sets_enumerated = count;
  return total;
}

VerificationReport paired_singletons(Resolved& p) {
  const Index pairs = p.get("pairs", p.raw.pairs, 3);
  const SpaceSpec spec = paired_two_point(pairs);
  auto total = detail::start_report("paired-singletons", QuantifierScope::AllSubsets);
  Index oracle_sets = 0;
  for (Index a = 0; a < pairs; ++a)
    for (int side = 0; side <= 1; ++side) {
      fold(total, prove_paired_singleton(spec, a, side));
      auto oracle = brute_force_unique_member(spec, paired_singleton_certificate(spec, a, side), pairs, false);
      oracle_sets = oracle.stats.sets_enumerated;
      oracle.trace.clear();
      merge_into(total, oracle);
    }
  total.witness = json{{"singletons", 2 * pairs}, {"oracleSetsPerSingleton", oracle_sets}};
  return total;
}

VerificationReport dyadic_symbolic(Resolved& p) {
  const Index max_e = p.get("max-e", p.raw.max_e, 8);
  if (max_e == 0 || max_e > 20) throw Error(ErrorKind::BoundTooLarge, "--max-e must lie in 1..20");
  auto total = detail::start_report("dyadic-isolated-symbolic", QuantifierScope::AllSubsets);
  Index proofs = 0;
  for (Index mask = 1; mask < (Index{1} << max_e); ++mask) {
    fold(total, prove_dyadic_isolation(subset_of_range(mask)));
    ++proofs;
  }
  total.witness = json{{"subProofs", proofs}};
  return total;
}

VerificationReport dyadic_oracle(Resolved& p) {
  const Index max_e = p.get("max-e", p.raw.max_e, 5);
  const Index bound = p.get("bound", p.raw.bound, 12);
  if (max_e == 0 || max_e > 20) throw Error(ErrorKind::BoundTooLarge, "--max-e must lie in 1..20");
  auto total = detail::start_report("dyadic-isolated-oracle", QuantifierScope::RepresentableOnly);
  const SpaceSpec spec = dyadic_nat();
  Index checked = 0;
  for (Index mask = 1; mask < (Index{1} << max_e); ++mask) {
    const auto e = subset_of_range(mask);
    const auto proof = prove_dyadic_isolation(e);
    const auto oracle = brute_force_unique_member(spec, dyadic_isolation_certificate(e), bound, true);
    fold(total, oracle);
    if (proof.verified() != oracle.verified())
      detail::refute(total, json{{"disagreement", std::vector<Index>(e.begin(), e.end())},
                                 {"prover", to_string(proof.outcome)},
                                 {"oracle", to_string(oracle.outcome)}});
    ++checked;
  }
  total.witness = json{{"setsE", checked}, {"setsPerE", enumeration_count(spec, bound, true)}};
  return total;
}

VerificationReport free_sum_subbase(Resolved& p) {
  const Index bound = p.get("bound", p.raw.bound, 3);
  auto total = detail::start_report("free-sum-subbase", QuantifierScope::RepresentableOnly);
  json parts = json::array();
  for (const SpaceSpec& spec : {free_sum({{1, zero_one(2)}, {2, zero_one(2)}}),
                                free_sum({{1, zero_one(3)}, {2, zero_one(3)}}),
                                free_sum({{1, zero_one(3)}, {2, dyadic_nat()}})}) {
    auto r = verify_free_sum_subbase(spec, bound);
    parts.push_back({{"space", spec}, {"tuples", r.stats.sets_enumerated}});
    fold(total, r);
  }
  total.witness = json{{"parts", parts}};
  return total;
}

VerificationReport free_sum_closed(Resolved& p) {
  const Index bound = p.get("bound", p.raw.bound, 3);
  const SpaceSpec spec = free_sum({{1, zero_one(3)}, {2, dyadic_nat()}, {3, zero_one(2)}});
  const auto& fs = std::get<FreeSumSpace>(spec.value);
  auto total = detail::start_report("free-sum-closed", QuantifierScope::AllSubsets);
  const auto family = enumerate_closed_sets(spec, bound, false);
  Index witnesses = 0;
  Index excluded = 0;
  for (const auto& set : family) {
    for (const auto& sm : fs.summands) {
      if (!summand_trace(spec, set, sm.tag)) {
        auto w = free_sum_closedness_witness(spec, set, sm.tag);
        if (!satisfies(spec, w.neighborhood, set))
          detail::refute(total, json{{"notInNeighborhood", set}});
        fold(total, w.report);
        ++witnesses;
        // One derivation per summand is enough to keep in the trace.
        if (witnesses > fs.summands.size()) total.trace.resize(total.trace.size() - w.report.trace.size());
      } else {
        // Oracle side of the symbolic claim: sets meeting the summand stay out of U.
        const Point x0 = summand(sm.tag, least_point(*sm.space));
        if (dist_to_set(spec, x0, set).value > Rational(1))
          detail::refute(total, json{{"meetsSummandButInU", set}, {"summand", sm.tag}});
        ++excluded;
      }
    }
  }
  total.witness = json{{"witnesses", witnesses}, {"exclusionsChecked", excluded}, {"space", spec}};
  total.stats.sets_enumerated = family.size();
  return total;
}

VerificationReport clopen_separation(Resolved& p) {
  const Index bound = p.get("bound", p.raw.bound, 6);
  const Index pairs = p.get("pairs", p.raw.pairs, 2);
  auto total = detail::start_report("clopen-separation", QuantifierScope::RepresentableOnly);
  json parts = json::array();
  auto run = [&](const SpaceSpec& spec, Index b, bool tails) {
    auto r = verify_clopen_separation(spec, b, tails);
    parts.push_back({{"space", spec}, {"sets", r.stats.sets_enumerated}});
    fold(total, r);
  };
  run(zero_one(4), 4, false);
  run(paired_two_point(pairs), pairs, false);
  run(dyadic_nat(), bound, true);
  total.witness = json{{"parts", parts}};
  return total;
}

VerificationReport zero_dim_levels(Resolved& p) {
  const Index pairs = p.get("pairs", p.raw.pairs, 2);
  auto total = detail::start_report("zero-dim-levels", QuantifierScope::RepresentableOnly);
  json parts = json::array();
  for (const auto& [spec, b] : std::vector<std::pair<SpaceSpec, Index>>{
           {paired_two_point(pairs), pairs},
           {free_sum({{1, zero_one(2)}, {2, zero_one(2)}}), 2},
           {zero_one(3), 3}}) {
    auto r = verify_zero_dimensional_levels(spec, b);
    parts.push_back({{"space", spec}, {"valueSet", r.witness->at("valueSet")}});
    fold(total, r);
  }
  total.witness = json{{"parts", parts}};
  return total;
}

VerificationReport interval_embedding(Resolved& p) {
  const Index copies = p.get("copies", p.raw.copies, 3);
  const Index grid = p.get("grid", p.raw.grid, 8);
  auto total = detail::start_report("interval-embedding", QuantifierScope::RepresentableOnly);
  fold(total, verify_interval_copies_subbase(interval_copies(copies), IntervalGrid::uniform(grid)));
  total.witness = json{{"chart", IntervalChart::formula}};
  return total;
}

VerificationReport interval_image_closed(Resolved& p) {
  const Index copies = p.get("copies", p.raw.copies, 2);
  const Index grid = p.get("grid", p.raw.grid, 8);
  const SpaceSpec spec = interval_copies(copies);
  auto total = detail::start_report("interval-image-closed", QuantifierScope::AllSubsets);
  std::vector<ClosedSetRep> outside{
      segment_family({{0, Rational(1, 2)}}, {copy_point(0, Rational(3, 2))}),
      finite_set({copy_point(0, Rational(1))}),
      segment_family({{0, Rational(1, 4)}}, {copy_point(0, Rational(3, 4)), copy_point(0, Rational(1, 8))}),
  };
  if (copies >= 2)
    outside.push_back(segment_family({{0, Rational(1)}, {1, Rational(1, 2)}}, {copy_point(1, Rational(5, 8))}));
  json certs = json::array();
  for (const auto& set : outside) {
    auto r = interval_copies_closedness(spec, set, IntervalGrid::uniform(grid));
    certs.push_back({{"set", set}, {"certificate", r.witness ? r.witness->at("certificate") : json(nullptr)}});
    fold(total, r);
  }
  total.witness = json{{"certificates", certs}, {"chart", IntervalChart::formula}};
  return total;
}

VerificationReport diagonal_closed(Resolved& p) {
  const Index count = p.get("count", p.raw.count, 3);
  const Index grid = p.get("grid", p.raw.grid, 2);
  const Index dimension = p.get("bound", p.raw.bound, 2);
  if (grid == 0) throw Error(ErrorKind::MalformedInput, "--grid must be positive");
  std::vector<Rational> values;
  for (Index j = 0; j <= grid; ++j) values.emplace_back(static_cast<long>(j), grid);
  auto total = detail::start_report("diagonal-closed", QuantifierScope::AllSubsets);
  const auto grid_part = verify_diagonal_closed(count, dimension, values);
  const auto binary_part = verify_diagonal_closed(count, dimension, {Rational(0), Rational(1)});
  fold(total, grid_part);
  fold(total, binary_part);
  total.witness = json{{"grid", grid_part.witness.value_or(json())}, {"binary", binary_part.witness.value_or(json())}};
  return total;
}

struct Entry {
  ClaimInfo info;
  std::function<VerificationReport(Resolved&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {{"metric-axioms",
        "Each constructed distance is a metric: d >= 0, d(x,y) = 0 iff x = y, symmetry, and the "
        "triangle inequality, for the paired {0,1,2}-valued metric, the dyadic metric "
        "d(n,k) = |2^-n - 2^-k| on N, a free sum, and interval copies.",
        "finite samples, every ordered triple checked exactly",
        "--pairs K (3) paired space size; --bound N (12) dyadic sample 1..N; --copies K (2) and "
        "--grid G (10) interval-copies probes 2k/(G+1)"},
       metric_axioms},
      {{"zero-one-cube",
        "For the 0-1 metric on a set X, the Wijsman hyperspace is homeomorphic to {0,1}^X minus "
        "the zero function, via characteristic vectors; subbasic sets map onto cylinders.",
        "representable only: all nonempty subsets of ZeroOne(n), n <= N",
        "--bound N (4) largest n"},
       zero_one_cube},
      {{"zero-one-no-isolated",
        "If X is infinite, the hyperspace of the 0-1 metric has no isolated points: every "
        "finitely supported certificate satisfied by F is also satisfied by F plus a fresh atom.",
        "seeded random certificates over ZeroOne(unbounded)",
        "--count C (100) certificates; --bound N (8) atoms used by F and supports; --seed S"},
       zero_one_no_isolated},
      {{"paired-singletons",
        "With the {0,1,2}-valued paired metric, every singleton subset of X is an isolated point: "
        "{F : d(x_a^(1-i), F) > 1} = {{x_a^i}}.",
        "all subsets (symbolic) plus an exhaustive oracle over the bounded hyperspace",
        "--pairs K (3) number of pairs"},
       paired_singletons},
      {{"dyadic-isolated-symbolic",
        "With d(n,k) = |2^-n - 2^-k| on N, every non-empty finite subset E of N is an isolated "
        "point: W = {F : |d(k,F) - d(k,E)| < 2^(-m-1) for k <= m}, m = 2 + max E, equals {E}.",
        "all subsets of N (symbolic derivation per E)",
        "--max-e M (8): every nonempty E in {1..M}"},
       dyadic_symbolic},
      {{"dyadic-isolated-oracle",
        "Independent enumeration check of the dyadic isolation neighborhoods W, including sets with "
        "an infinite tail; prover and oracle must agree.",
        "representable only: subsets of {1..N} and the same with tail {k > N}",
        "--max-e M (5): every nonempty E in {1..M}; --bound N (12)"},
       dyadic_oracle},
      {{"free-sum-subbase",
        "On the free sum with cross distance 2 and summand values in [0,1], phi(<F_a>) = U F_a is "
        "injective and d(x, phi(t)) = d_nu(x, t_nu) for x in X_nu, so subbase maps onto subbase.",
        "representable only: every tuple of bounded summand sets",
        "--bound N (3) summand universe bound"},
       free_sum_subbase},
      {{"free-sum-closed",
        "The image of phi is closed: for F missing summand a and x0 in X_a, U = {B : d(x0,B) > 1} "
        "contains F and misses every set meeting all summands.",
        "all subsets (symbolic) plus bounded enumeration of the free sum",
        "--bound N (3) enumeration bound"},
       free_sum_closed},
      {{"clopen-separation",
        "For a discrete metric space the hyperspace is totally disconnected: with "
        "r_x = d(x, X\\{x})/2, G_x = {F : d(x,F) < r_x} = {F : x in F} is clopen and the G_x "
        "separate points.",
        "representable only: full enumerations of ZeroOne(4), PairedTwoPoint(K), DyadicNat with tails",
        "--bound N (6) dyadic bound; --pairs K (2)"},
       clopen_separation},
      {{"zero-dim-levels",
        "If d is finite-valued then the hyperspace is zero-dimensional: each d(x,F) lies in the "
        "value set E, and each subbasic set is a union of clopen level sets {F : d(x,F) = e}.",
        "representable only: full enumerations",
        "--pairs K (2) paired space size"},
       zero_dim_levels},
      {{"interval-embedding",
        "phi(y) = U (0, y_a] x {a} embeds I^k minus 0 into the hyperspace of k copies of (0,2) "
        "with cross distance 2: exact distance law, monotonicity, subbase pull-back, injectivity.",
        "representable only: rational grid of heights and probes",
        "--copies K (3); --grid G (8) heights j/G"},
       interval_embedding},
      {{"interval-image-closed",
        "The image of phi is closed: each set outside it has a two-probe neighborhood missing "
        "every phi(y).",
        "all y (symbolic) plus a grid oracle",
        "--copies K (2); --grid G (8) oracle heights"},
       interval_image_closed},
      {{"diagonal-closed",
        "The diagonal {<a_y> : a_y = a_y' for all y, y'} of a finite product of cubes is closed: "
        "every off-diagonal tuple has an open box missing it.",
        "all diagonal points (symbolic per certificate) over enumerated tuples",
        "--count C (3) factors; --bound D (2) cube dimension; --grid G (2) coordinates j/G"},
       diagonal_closed},
  };
  return table;
}

const Entry* find_entry(std::string_view id) {
  for (const auto& e : entries())
    if (e.info.id == id) return &e;
  return nullptr;
}

}  // namespace

const std::vector<ClaimInfo>& claim_catalog() {
  static const std::vector<ClaimInfo> infos = [] {
    std::vector<ClaimInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const ClaimInfo* find_claim(std::string_view id) {
  const Entry* e = find_entry(id);
  return e ? &e->info : nullptr;
}

VerificationReport run_claim(std::string_view id, const ClaimParams& params) {
  const Entry* entry = find_entry(id);
  if (!entry) throw Error(ErrorKind::MalformedInput, "unknown claim '" + std::string(id) + "'");
  detail::Stopwatch clock;
  Resolved resolved{params};
  VerificationReport report;
  try {
    report = entry->run(resolved);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BoundTooLarge) throw;
    report = VerificationReport{};
    report.outcome = Outcome::Inconclusive;
    report.scope = QuantifierScope::RepresentableOnly;
    report.witness = json{{"error", e.what()}};
  }
  report.claim_id = std::string(id);
  report.params = resolved.used;
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

std::string explain_claim(std::string_view id) {
  const ClaimInfo* info = find_claim(id);
  if (!info) throw Error(ErrorKind::MalformedInput, "unknown claim '" + std::string(id) + "'");
  return info->id + "\n  statement:  " + info->statement + "\n  quantifier: " + info->scope +
         "\n  parameters: " + info->parameters + "\n";
}

}  // namespace wijsman
