// One line per acceptance criterion; exit status 1 if any fails.
#include <wijsman/claims.hpp>
#include <wijsman/constructions.hpp>
#include <wijsman/hyperspace.hpp>
#include <wijsman/serialize.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

using namespace wijsman;
using nlohmann::json;

namespace {

struct Check {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(s < limit_s, "over time budget");
  if (!c.ok) ++failures;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  std::cout << (c.ok ? "PASS" : "FAIL") << " [" << n << "] " << name << " (" << buf << ")";
  if (!c.ok) std::cout << ": " << c.note;
  std::cout << std::endl;
}

std::set<Index> bits(Index mask) {
  std::set<Index> e;
  for (Index i = 0; i < 32; ++i)
    if (mask >> i & 1U) e.insert(i + 1);
  return e;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
#ifdef WIJSMAN_CLI_PATH
  const std::string cmd = std::string("\"") + WIJSMAN_CLI_PATH + "\" " + args + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
#else
  (void)args;
  return -1;
#endif
}

}  // namespace

int main() {
  criterion(1, "metric axioms, exact", 5, [](Check& c) {
    const auto paired3 = paired_two_point(3);
    auto r = check_metric_axioms(paired3, bounded_universe(paired3, 3));
    c.require(r.verified() && r.witness->at("triples") == 216, "PairedTwoPoint(3)");
    c.require(check_metric_axioms(dyadic_nat(), bounded_universe(dyadic_nat(), 12)).verified(), "DyadicNat 1..12");
    const auto sum = free_sum({{1, zero_one(2)}, {2, zero_one(2)}});
    c.require(check_metric_axioms(sum, bounded_universe(sum, 2)).verified(), "FreeSum");
    std::vector<Point> probes;
    for (long k = 1; k <= 10; ++k) probes.push_back(copy_point(0, Rational(2 * k, 11)));
    for (long k = 1; k <= 10; ++k) probes.push_back(copy_point(1, Rational(2 * k, 11)));
    c.require(check_metric_axioms(interval_copies(2), probes).verified(), "IntervalCopies");
  });

  criterion(2, "dyadic isolation, prover and oracle", 60, [](Check& c) {
    for (Index mask = 1; mask < 256; ++mask) {
      const auto r = prove_dyadic_isolation(bits(mask));
      c.require(r.verified() && well_formed(r), "prover failed");
    }
    for (Index bound : {Index{12}, Index{13}})
      for (Index mask = 1; mask < 32; ++mask) {
        const auto e = bits(mask);
        const auto oracle = brute_force_unique_member(dyadic_nat(), dyadic_isolation_certificate(e), bound, true);
        c.require(oracle.stats.sets_enumerated == (Index{2} << bound) - 1, "enumeration size");
        c.require(oracle.verified(), "oracle refuted a certificate");
        c.require(prove_dyadic_isolation(e).verified() == oracle.verified(), "prover/oracle disagree");
      }
  });

  criterion(3, "paired singletons", 1, [](Check& c) {
    const auto spec = paired_two_point(3);
    for (Index a = 0; a < 3; ++a)
      for (int side = 0; side <= 1; ++side) {
        c.require(prove_paired_singleton(spec, a, side).verified(), "symbolic");
        const auto o = brute_force_unique_member(spec, paired_singleton_certificate(spec, a, side), 3, false);
        c.require(o.verified() && o.stats.sets_enumerated == 63, "oracle");
      }
  });

  criterion(4, "free sum subbase and closedness", 5, [](Check& c) {
    for (const auto& [a, b] : std::vector<std::pair<Index, Index>>{{1, 1}, {2, 2}, {2, 3}, {3, 3}}) {
      const auto spec = free_sum({{1, zero_one(a)}, {2, zero_one(b)}});
      c.require(verify_free_sum_subbase(spec, 3).verified(), "subbase");
      const auto family = enumerate_closed_sets(spec, 3, false);
      for (const auto& f : family)
        for (Index tag : {Index{1}, Index{2}}) {
          if (summand_trace(spec, f, tag)) continue;
          const auto w = free_sum_closedness_witness(spec, f, tag);
          c.require(w.report.verified() && satisfies(spec, w.neighborhood, f), "witness");
          for (const auto& g : family)
            if (summand_trace(spec, g, 1) && summand_trace(spec, g, 2))
              c.require(!satisfies(spec, w.neighborhood, g), "U meets the image");
        }
    }
  });

  criterion(5, "clopen separation", 5, [](Check& c) {
    auto r = verify_clopen_separation(zero_one(4), 4, false);
    c.require(r.verified() && r.stats.sets_enumerated == 15, "ZeroOne(4)");
    r = verify_clopen_separation(dyadic_nat(), 6, true);
    c.require(r.verified() && r.stats.sets_enumerated == 127, "DyadicNat bound 6");
  });

  criterion(6, "zero-dimensional levels", 5, [](Check& c) {
    c.require(verify_zero_dimensional_levels(paired_two_point(2), 2).verified(), "PairedTwoPoint(2)");
    c.require(verify_zero_dimensional_levels(free_sum({{1, zero_one(2)}, {2, zero_one(2)}}), 2).verified(),
              "FreeSum");
  });

  criterion(7, "cube identification and no isolated points", 5, [](Check& c) {
    for (Index n = 1; n <= 4; ++n) c.require(verify_cube_identification(n).verified(), "cube");
    ClaimParams p;
    p.count = 100;
    const auto r = run_claim("zero-one-no-isolated", p);
    c.require(r.verified() && r.stats.sets_enumerated == 100, "random certificates");
  });

  criterion(8, "interval copies embedding", 10, [](Check& c) {
    const auto grid = IntervalGrid::uniform(8);
    c.require(grid.heights.size() >= 8 && grid.probes.size() >= 6, "grid size");
    for (Index k = 1; k <= 3; ++k)
      c.require(verify_interval_copies_subbase(interval_copies(k), grid).verified(), "subbase");
    const auto k1 = interval_copies(1);
    const std::vector<ClosedSetRep> outside{
        segment_family({{0, Rational(1, 2)}}, {copy_point(0, Rational(3, 2))}),
        finite_set({copy_point(0, Rational(1))}),
        segment_family({{0, Rational(1, 4)}}, {copy_point(0, Rational(3, 4))})};
    for (const auto& f : outside) {
      const auto r = interval_copies_closedness(k1, f, grid);
      c.require(r.verified() && well_formed(r), "closedness " + f.str());
    }
  });

  criterion(9, "command-line tool", 120, [](Check& c) {
#ifndef WIJSMAN_CLI_PATH
    c.require(false, "CLI not built");
#else
    const auto dir = std::filesystem::temp_directory_path() / "wijsman-acceptance";
    std::filesystem::create_directories(dir);
    for (const auto& info : claim_catalog()) {
      const auto a = dir / (info.id + ".a.json");
      const auto b = dir / (info.id + ".b.json");
      c.require(run_cli("run " + info.id + " --out \"" + a.string() + "\"") == 0, info.id + " exit status");
      c.require(run_cli("run " + info.id + " --out \"" + b.string() + "\"") == 0, info.id + " exit status");
      const std::string ta = slurp(a);
      const json ja = json::parse(ta);
      c.require(schema_problem(ja).empty(), info.id + " schema");
      c.require(ja.at("outcome") == "verified", info.id + " outcome");
      const std::regex elapsed("\"elapsedMs\": [0-9]+");
      c.require(std::regex_replace(ta, elapsed, "") == std::regex_replace(slurp(b), elapsed, ""),
                info.id + " not deterministic");
    }
    c.require(run_cli("run unknown-claim") == 64, "unknown claim exit status");
    c.require(run_cli("explain unknown-claim") == 64, "unknown explain exit status");
    std::filesystem::remove_all(dir);
#endif
  });

  return failures == 0 ? 0 : 1;
}
