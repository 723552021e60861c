#pragma once

// JSON conventions: rationals are "num/den" strings, infinite bounds are
// "-inf" / "+inf", and every tagged union is an object with a "kind" key.

#include <wijsman/closed_set.hpp>
#include <wijsman/report.hpp>
#include <wijsman/space.hpp>

#include <nlohmann/json.hpp>

namespace wijsman {

void to_json(nlohmann::json& j, const Rational& r);
void from_json(const nlohmann::json& j, Rational& r);
void to_json(nlohmann::json& j, const ExtendedBound& b);
void from_json(const nlohmann::json& j, ExtendedBound& b);

void to_json(nlohmann::json& j, const Point& p);
void from_json(const nlohmann::json& j, Point& p);
void to_json(nlohmann::json& j, const SpaceSpec& s);
void from_json(const nlohmann::json& j, SpaceSpec& s);
void to_json(nlohmann::json& j, const ClosedSetRep& f);
void from_json(const nlohmann::json& j, ClosedSetRep& f);

void to_json(nlohmann::json& j, const TraceStep& t);
void from_json(const nlohmann::json& j, TraceStep& t);
void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

/// Names of the top-level keys a report must carry, in schema order.
const std::vector<std::string>& report_required_keys();

/// Checks a parsed report document against the report schema; returns an
/// empty string when valid, otherwise the first problem found.
std::string schema_problem(const nlohmann::json& doc);

}  // namespace wijsman
