#include <wijsman/report.hpp>

namespace wijsman {

bool TraceStep::holds() const {
  switch (rel) {
    case Relation::Lt: return lhs < rhs;
    case Relation::Le: return lhs <= rhs;
    case Relation::Eq: return lhs == rhs;
    case Relation::Ne: return lhs != rhs;
    case Relation::Ge: return lhs >= rhs;
    case Relation::Gt: return lhs > rhs;
  }
  return false;
}

bool record(std::vector<TraceStep>& trace, std::string label, ExtendedBound lhs, Relation rel,
            ExtendedBound rhs) {
  trace.push_back(TraceStep{std::move(label), std::move(lhs), rel, std::move(rhs)});
  return trace.back().holds();
}

std::optional<std::size_t> recheck_trace(const std::vector<TraceStep>& trace) {
  for (std::size_t i = 0; i < trace.size(); ++i)
    if (!trace[i].holds()) return i;
  return std::nullopt;
}

bool well_formed(const VerificationReport& report) {
  if (report.outcome == Outcome::Refuted && !report.counterexample) return false;
  if (report.outcome == Outcome::Verified && report.scope == QuantifierScope::AllSubsets)
    return !report.trace.empty() && !recheck_trace(report.trace);
  return true;
}

namespace {

int severity(Outcome o) {
  switch (o) {
    case Outcome::Verified: return 0;
    case Outcome::Inconclusive: return 1;
    case Outcome::Refuted: return 2;
  }
  return 2;
}

}  // namespace

void merge_into(VerificationReport& total, const VerificationReport& part) {
  if (severity(part.outcome) > severity(total.outcome)) total.outcome = part.outcome;
  if (!total.counterexample && part.counterexample) total.counterexample = part.counterexample;
  total.trace.insert(total.trace.end(), part.trace.begin(), part.trace.end());
  total.stats.sets_enumerated += part.stats.sets_enumerated;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Verified: return "verified";
    case Outcome::Refuted: return "refuted";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(QuantifierScope s) {
  return s == QuantifierScope::AllSubsets ? "all-subsets" : "representable-only";
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Eq: return "=";
    case Relation::Ne: return "!=";
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
  }
  return "?";
}

int exit_status(Outcome o) {
  switch (o) {
    case Outcome::Verified: return 0;
    case Outcome::Refuted: return 2;
    case Outcome::Inconclusive: return 3;
  }
  return 3;
}

}  // namespace wijsman
