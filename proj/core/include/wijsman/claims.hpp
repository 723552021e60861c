#pragma once

#include <wijsman/report.hpp>
#include <wijsman/space.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wijsman {

/// Parameters shared by the claim pipelines. A field left unset takes the
/// claim's documented default.
struct ClaimParams {
  std::optional<Index> bound;
  std::optional<Index> pairs;
  std::optional<Index> copies;
  std::optional<Index> max_e;
  std::optional<Index> grid;
  std::optional<Index> count;
  std::optional<std::uint64_t> seed;
};

struct ClaimInfo {
  std::string id;
  std::string statement;    // the statement being machine-checked
  std::string scope;        // quantifier scope, in words
  std::string parameters;   // flags and defaults
};

const std::vector<ClaimInfo>& claim_catalog();
const ClaimInfo* find_claim(std::string_view id);

/// Runs the pipeline for a claim. The report's params hold the effective
/// parameters; Error(BoundTooLarge) becomes an Inconclusive report. Other
/// errors propagate. Throws MalformedInput for an unknown id.
VerificationReport run_claim(std::string_view id, const ClaimParams& params);

/// Human-readable description of a claim for `explain`.
std::string explain_claim(std::string_view id);

}  // namespace wijsman
