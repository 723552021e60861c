#pragma once

#include <wijsman/rational.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wijsman {

enum class Outcome { Verified, Refuted, Inconclusive };

/// Whether a verdict quantifies over every closed subset (symbolic
/// argument) or only over the representable, enumerated ones.
enum class QuantifierScope { AllSubsets, RepresentableOnly };

enum class Relation { Lt, Le, Eq, Ne, Ge, Gt };

/// One exact inequality instance `lhs rel rhs`. A derivation is a list of
/// these; the labels carry the logical glue.
struct TraceStep {
  std::string label;
  ExtendedBound lhs;
  Relation rel;
  ExtendedBound rhs;

  bool holds() const;
  bool operator==(const TraceStep&) const = default;
};

struct ReportStats {
  std::uint64_t sets_enumerated = 0;
  std::uint64_t elapsed_ms = 0;
  bool operator==(const ReportStats&) const = default;
};

inline constexpr int kReportSchemaVersion = 1;

struct VerificationReport {
  int schema_version = kReportSchemaVersion;
  std::string claim_id;
  nlohmann::json params = nlohmann::json::object();
  Outcome outcome = Outcome::Inconclusive;
  QuantifierScope scope = QuantifierScope::RepresentableOnly;
  std::optional<nlohmann::json> witness;
  std::optional<nlohmann::json> counterexample;
  std::vector<TraceStep> trace;
  ReportStats stats;

  bool verified() const { return outcome == Outcome::Verified; }
  bool operator==(const VerificationReport&) const = default;
};

/// Appends a step and returns whether it holds.
bool record(std::vector<TraceStep>& trace, std::string label, ExtendedBound lhs, Relation rel,
            ExtendedBound rhs);

/// Index of the first step whose relation fails, or nullopt.
std::optional<std::size_t> recheck_trace(const std::vector<TraceStep>& trace);

/// Structural invariants: Refuted carries a counterexample; Verified over
/// all subsets carries a nonempty, rechecking trace.
bool well_formed(const VerificationReport& report);

/// Folds `part` into `total`: outcome is the worst of the two (Refuted >
/// Inconclusive > Verified), traces are concatenated, counts added. The
/// first counterexample wins. Scope is left to the caller.
void merge_into(VerificationReport& total, const VerificationReport& part);

std::string_view to_string(Outcome o);
std::string_view to_string(QuantifierScope s);
std::string_view to_string(Relation r);

/// Exit status of the command-line tool for an outcome.
int exit_status(Outcome o);

}  // namespace wijsman
