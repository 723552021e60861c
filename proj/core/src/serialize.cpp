#include <wijsman/error.hpp>
#include <wijsman/serialize.hpp>

namespace wijsman {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::MalformedInput, std::string("missing key '") + key + "' in " + j.dump());
  return j.at(key);
}

std::string kind_of(const json& j) {
  const json& k = require(j, "kind");
  if (!k.is_string()) throw Error(ErrorKind::MalformedInput, "kind must be a string");
  return k.get<std::string>();
}

Index index_of(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_unsigned()) throw Error(ErrorKind::MalformedInput, std::string(key) + " must be a natural");
  return v.get<Index>();
}

json size_json(const Size& s) { return s ? json(*s) : json("unbounded"); }

Size size_from(const json& j, const char* key) {
  const json& v = require(j, key);
  if (v.is_string() && v.get<std::string>() == "unbounded") return std::nullopt;
  if (!v.is_number_unsigned()) throw Error(ErrorKind::MalformedInput, std::string(key) + " must be a natural or \"unbounded\"");
  return v.get<Index>();
}

}  // namespace

void to_json(json& j, const Rational& r) { j = r.str(); }

void from_json(const json& j, Rational& r) {
  if (!j.is_string()) throw Error(ErrorKind::MalformedInput, "rationals are \"num/den\" strings");
  r = Rational::parse(j.get<std::string>());
}

void to_json(json& j, const ExtendedBound& b) { j = b.str(); }

void from_json(const json& j, ExtendedBound& b) {
  if (!j.is_string()) throw Error(ErrorKind::MalformedInput, "bounds are strings");
  b = ExtendedBound::parse(j.get<std::string>());
}

void to_json(json& j, const Point& p) {
  struct Visitor {
    json operator()(const Atom& a) const { return {{"kind", "atom"}, {"index", a.index}}; }
    json operator()(const PairedPoint& x) const {
      return {{"kind", "paired"}, {"pair", x.pair}, {"side", x.side}};
    }
    json operator()(const NatPoint& n) const { return {{"kind", "nat"}, {"n", n.n}}; }
    json operator()(const SummandPoint& s) const {
      return {{"kind", "summand"}, {"tag", s.tag}, {"point", *s.inner}};
    }
    json operator()(const CopyPoint& c) const { return {{"kind", "copy"}, {"copy", c.copy}, {"x", c.x}}; }
  };
  j = std::visit(Visitor{}, p.value);
}

void from_json(const json& j, Point& p) {
  const std::string kind = kind_of(j);
  if (kind == "atom") {
    p = atom(index_of(j, "index"));
  } else if (kind == "paired") {
    const json& side = require(j, "side");
    if (!side.is_number_integer()) throw Error(ErrorKind::MalformedInput, "side must be 0 or 1");
    p = paired(index_of(j, "pair"), side.get<int>());
  } else if (kind == "nat") {
    p = nat(index_of(j, "n"));
  } else if (kind == "summand") {
    p = summand(index_of(j, "tag"), require(j, "point").get<Point>());
  } else if (kind == "copy") {
    p = copy_point(index_of(j, "copy"), require(j, "x").get<Rational>());
  } else {
    throw Error(ErrorKind::MalformedInput, "unknown point kind '" + kind + "'");
  }
}

void to_json(json& j, const SpaceSpec& s) {
  struct Visitor {
    json operator()(const ZeroOneSpace& z) const { return {{"kind", "zero-one"}, {"size", size_json(z.size)}}; }
    json operator()(const PairedSpace& x) const {
      return {{"kind", "paired"}, {"pairCount", size_json(x.pair_count)}};
    }
    json operator()(const DyadicNatSpace&) const { return {{"kind", "dyadic-nat"}}; }
    json operator()(const FreeSumSpace& f) const {
      json summands = json::array();
      for (const auto& sm : f.summands) summands.push_back({{"tag", sm.tag}, {"space", *sm.space}});
      return {{"kind", "free-sum"}, {"summands", summands}};
    }
    json operator()(const IntervalCopiesSpace& c) const {
      return {{"kind", "interval-copies"}, {"copies", c.copies}};
    }
  };
  j = std::visit(Visitor{}, s.value);
}

void from_json(const json& j, SpaceSpec& s) {
  const std::string kind = kind_of(j);
  if (kind == "zero-one") {
    s = zero_one(size_from(j, "size"));
  } else if (kind == "paired") {
    s = paired_two_point(size_from(j, "pairCount"));
  } else if (kind == "dyadic-nat") {
    s = dyadic_nat();
  } else if (kind == "free-sum") {
    std::vector<std::pair<Index, SpaceSpec>> summands;
    for (const auto& sm : require(j, "summands"))
      summands.emplace_back(index_of(sm, "tag"), require(sm, "space").get<SpaceSpec>());
    s = free_sum(std::move(summands));
  } else if (kind == "interval-copies") {
    s = interval_copies(index_of(j, "copies"));
  } else {
    throw Error(ErrorKind::MalformedInput, "unknown space kind '" + kind + "'");
  }
}

void to_json(json& j, const ClosedSetRep& f) {
  struct Visitor {
    json operator()(const FinitePoints& x) const {
      return {{"kind", "finite"}, {"points", json(std::vector<Point>(x.points.begin(), x.points.end()))}};
    }
    json operator()(const FinitePlusTail& x) const {
      return {{"kind", "finite+tail"},
              {"base", std::vector<Index>(x.base.begin(), x.base.end())},
              {"tailStart", x.tail_start}};
    }
    json operator()(const SegmentFamily& x) const {
      json segs = json::array();
      for (const auto& [c, y] : x.segments) segs.push_back({{"copy", c}, {"height", y}});
      return {{"kind", "segments"},
              {"segments", segs},
              {"extras", json(std::vector<Point>(x.extras.begin(), x.extras.end()))}};
    }
    json operator()(const SummandTuple& x) const {
      json parts = json::array();
      for (const auto& [tag, part] : x.parts)
        parts.push_back({{"tag", tag}, {"set", part ? json(*part) : json(nullptr)}});
      return {{"kind", "summand-tuple"}, {"parts", parts}};
    }
  };
  j = std::visit(Visitor{}, f.value);
}

void from_json(const json& j, ClosedSetRep& f) {
  const std::string kind = kind_of(j);
  if (kind == "finite") {
    std::set<Point> pts;
    for (const auto& p : require(j, "points")) pts.insert(p.get<Point>());
    f = finite_set(std::move(pts));
  } else if (kind == "finite+tail") {
    std::set<Index> base;
    for (const auto& n : require(j, "base")) base.insert(n.get<Index>());
    f = finite_plus_tail(std::move(base), index_of(j, "tailStart"));
  } else if (kind == "segments") {
    std::map<Index, Rational> segs;
    for (const auto& s : require(j, "segments")) segs[index_of(s, "copy")] = require(s, "height").get<Rational>();
    std::set<Point> extras;
    if (j.contains("extras"))
      for (const auto& p : j.at("extras")) extras.insert(p.get<Point>());
    f = segment_family(std::move(segs), std::move(extras));
  } else if (kind == "summand-tuple") {
    std::map<Index, std::shared_ptr<const ClosedSetRep>> parts;
    for (const auto& part : require(j, "parts")) {
      const json& set = require(part, "set");
      parts[index_of(part, "tag")] =
          set.is_null() ? nullptr : std::make_shared<const ClosedSetRep>(set.get<ClosedSetRep>());
    }
    f = summand_tuple(std::move(parts));
  } else {
    throw Error(ErrorKind::MalformedInput, "unknown closed-set kind '" + kind + "'");
  }
}

namespace {

Relation relation_from(const std::string& s) {
  for (Relation r : {Relation::Lt, Relation::Le, Relation::Eq, Relation::Ne, Relation::Ge, Relation::Gt})
    if (to_string(r) == s) return r;
  throw Error(ErrorKind::MalformedInput, "unknown relation '" + s + "'");
}

Outcome outcome_from(const std::string& s) {
  for (Outcome o : {Outcome::Verified, Outcome::Refuted, Outcome::Inconclusive})
    if (to_string(o) == s) return o;
  throw Error(ErrorKind::MalformedInput, "unknown outcome '" + s + "'");
}

QuantifierScope scope_from(const std::string& s) {
  for (QuantifierScope q : {QuantifierScope::AllSubsets, QuantifierScope::RepresentableOnly})
    if (to_string(q) == s) return q;
  throw Error(ErrorKind::MalformedInput, "unknown quantifier scope '" + s + "'");
}

}  // namespace

void to_json(json& j, const TraceStep& t) {
  j = {{"label", t.label}, {"lhs", t.lhs}, {"rel", std::string(to_string(t.rel))}, {"rhs", t.rhs}};
}

void from_json(const json& j, TraceStep& t) {
  t.label = require(j, "label").get<std::string>();
  t.lhs = require(j, "lhs").get<ExtendedBound>();
  t.rel = relation_from(require(j, "rel").get<std::string>());
  t.rhs = require(j, "rhs").get<ExtendedBound>();
}

void to_json(json& j, const VerificationReport& r) {
  j = {{"schemaVersion", r.schema_version},
       {"claimId", r.claim_id},
       {"params", r.params},
       {"outcome", std::string(to_string(r.outcome))},
       {"quantifierScope", std::string(to_string(r.scope))},
       {"stats", {{"setsEnumerated", r.stats.sets_enumerated}, {"elapsedMs", r.stats.elapsed_ms}}}};
  if (r.witness) j["witness"] = *r.witness;
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  if (!r.trace.empty()) j["trace"] = r.trace;
}

void from_json(const json& j, VerificationReport& r) {
  r.schema_version = require(j, "schemaVersion").get<int>();
  r.claim_id = require(j, "claimId").get<std::string>();
  r.params = require(j, "params");
  r.outcome = outcome_from(require(j, "outcome").get<std::string>());
  r.scope = scope_from(require(j, "quantifierScope").get<std::string>());
  const json& stats = require(j, "stats");
  r.stats.sets_enumerated = require(stats, "setsEnumerated").get<std::uint64_t>();
  r.stats.elapsed_ms = require(stats, "elapsedMs").get<std::uint64_t>();
  r.witness = j.contains("witness") ? std::optional<json>(j.at("witness")) : std::nullopt;
  r.counterexample = j.contains("counterexample") ? std::optional<json>(j.at("counterexample")) : std::nullopt;
  r.trace = j.contains("trace") ? j.at("trace").get<std::vector<TraceStep>>() : std::vector<TraceStep>{};
}

const std::vector<std::string>& report_required_keys() {
  static const std::vector<std::string> keys{"schemaVersion", "claimId",         "params",
                                             "outcome",       "quantifierScope", "stats"};
  return keys;
}

std::string schema_problem(const json& doc) {
  if (!doc.is_object()) return "report is not a JSON object";
  for (const auto& key : report_required_keys())
    if (!doc.contains(key)) return "missing key '" + key + "'";
  static const std::set<std::string> allowed{"schemaVersion", "claimId", "params", "outcome",
                                             "quantifierScope", "witness", "counterexample",
                                             "trace", "stats"};
  for (const auto& [key, value] : doc.items())
    if (!allowed.contains(key)) return "unexpected key '" + key + "'";
  if (!doc["schemaVersion"].is_number_integer() || doc["schemaVersion"].get<int>() != kReportSchemaVersion)
    return "schemaVersion must be " + std::to_string(kReportSchemaVersion);
  if (!doc["claimId"].is_string()) return "claimId must be a string";
  if (!doc["params"].is_object()) return "params must be an object";
  const json& stats = doc["stats"];
  if (!stats.is_object() || !stats.contains("setsEnumerated") || !stats.contains("elapsedMs") ||
      !stats["setsEnumerated"].is_number_unsigned() || !stats["elapsedMs"].is_number_unsigned())
    return "stats must hold natural setsEnumerated and elapsedMs";
  try {
    VerificationReport r = doc.get<VerificationReport>();
    if (!well_formed(r)) return "report violates outcome/witness invariants";
    if (json(r) != doc) return "report does not round-trip";
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace wijsman
