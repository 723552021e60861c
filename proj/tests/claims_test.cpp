#include "support.hpp"

#include <wijsman/claims.hpp>
#include <wijsman/serialize.hpp>

using namespace wijsman;
using nlohmann::json;

namespace {

json stripped(const VerificationReport& r) {
  json j = r;
  j["stats"].erase("elapsedMs");
  return j;
}

}  // namespace

TEST_CASE("catalog lists every claim once") {
  const std::vector<std::string> expected{
      "metric-axioms",      "zero-one-cube",     "zero-one-no-isolated", "paired-singletons",
      "dyadic-isolated-symbolic", "dyadic-isolated-oracle", "free-sum-subbase", "free-sum-closed",
      "clopen-separation",  "zero-dim-levels",   "interval-embedding",   "interval-image-closed",
      "diagonal-closed"};
  std::vector<std::string> ids;
  for (const auto& c : claim_catalog()) ids.push_back(c.id);
  CHECK(ids == expected);
  CHECK(find_claim("nope") == nullptr);
}

TEST_CASE("explain names the statement") {
  CHECK(explain_claim("paired-singletons").find("every singleton subset of X is an isolated point") != std::string::npos);
  CHECK(explain_claim("free-sum-closed").find("d(x0,B) > 1") != std::string::npos);
  CHECK(explain_claim("zero-dim-levels").find("is zero-dimensional") != std::string::npos);
  CHECK_ERROR(explain_claim("unknown-claim"), ErrorKind::MalformedInput);
  CHECK_ERROR(run_claim("unknown-claim", {}), ErrorKind::MalformedInput);
}

TEST_CASE("exit status is a function of the outcome") {
  CHECK(exit_status(Outcome::Verified) == 0);
  CHECK(exit_status(Outcome::Refuted) == 2);
  CHECK(exit_status(Outcome::Inconclusive) == 3);
}

TEST_CASE("oversized bounds give an inconclusive report") {
  ClaimParams p;
  p.bound = 40;
  const auto r = run_claim("dyadic-isolated-oracle", p);
  CHECK(r.outcome == Outcome::Inconclusive);
  CHECK(schema_problem(json(r)).empty());
  p = {};
  p.max_e = 40;
  CHECK(run_claim("dyadic-isolated-symbolic", p).outcome == Outcome::Inconclusive);
}

TEST_CASE("symbolic claim counts sub-proofs") {
  ClaimParams p;
  p.max_e = 8;
  const auto r = run_claim("dyadic-isolated-symbolic", p);
  CHECK(r.verified());
  CHECK(r.witness->at("subProofs") == 255);
  CHECK(r.params.at("max-e") == 8);
  CHECK(well_formed(r));
}

TEST_CASE("every claim round-trips and is deterministic") {
  for (const auto& c : claim_catalog()) {
    CAPTURE(c.id);
    const auto a = run_claim(c.id, {});
    CHECK(a.verified());
    CHECK(a.claim_id == c.id);
    const json j = a;
    CHECK(schema_problem(j).empty());
    CHECK(json::parse(j.dump()).get<VerificationReport>() == a);
    const auto b = run_claim(c.id, {});
    CHECK(stripped(a).dump() == stripped(b).dump());
  }
}

TEST_CASE("schema checks catch broken documents") {
  const json good = run_claim("zero-one-cube", {});
  CHECK(schema_problem(good).empty());
  for (const auto& key : report_required_keys()) {
    json bad = good;
    bad.erase(key);
    CHECK_FALSE(schema_problem(bad).empty());
  }
  json refuted = good;
  refuted["outcome"] = "refuted";
  CHECK_FALSE(schema_problem(refuted).empty());
  json wrong_type = good;
  wrong_type["schemaVersion"] = "one";
  CHECK_FALSE(schema_problem(wrong_type).empty());
}

TEST_CASE("merging keeps the worst outcome and first counterexample") {
  VerificationReport total;
  total.outcome = Outcome::Verified;
  VerificationReport bad;
  bad.outcome = Outcome::Refuted;
  bad.counterexample = json{{"first", 1}};
  bad.stats.sets_enumerated = 3;
  VerificationReport worse = bad;
  worse.counterexample = json{{"second", 2}};
  merge_into(total, bad);
  merge_into(total, worse);
  CHECK(total.outcome == Outcome::Refuted);
  CHECK(total.counterexample->contains("first"));
  CHECK(total.stats.sets_enumerated == 6);
}
