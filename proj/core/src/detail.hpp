#pragma once

#include <wijsman/error.hpp>
#include <wijsman/report.hpp>
#include <wijsman/space.hpp>

#include <chrono>
#include <cstdint>
#include <string>

namespace wijsman::detail {

/// dist() without validation; p and q must already be points of spec.
Rational dist_unchecked(const SpaceSpec& spec, const Point& p, const Point& q);

class Stopwatch {
 public:
  std::uint64_t elapsed_ms() const {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - start_)
                                          .count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline VerificationReport start_report(std::string claim_id, QuantifierScope scope) {
  VerificationReport r;
  r.claim_id = std::move(claim_id);
  r.scope = scope;
  r.outcome = Outcome::Verified;
  return r;
}

/// Marks the report Refuted with the given counterexample unless an
/// earlier one is already present.
inline void refute(VerificationReport& r, nlohmann::json counterexample) {
  r.outcome = Outcome::Refuted;
  if (!r.counterexample) r.counterexample = std::move(counterexample);
}

}  // namespace wijsman::detail
