#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "plap/conditions.hpp"
#include "plap/eigen.hpp"
#include "plap/solver.hpp"
#include "plap/subsuper.hpp"
#include "plap/verify.hpp"

namespace plap {

inline constexpr int kReportSchema = 1;

nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const WeakCheck& w);
nlohmann::json to_json(const Provenance& p);
/// Provenance and verification; the grid function itself goes to CSV.
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const PositivityReport& r);
nlohmann::json to_json(const RandomTestReport& r);
nlohmann::json to_json(const SolutionReport& r);

/// Compact-indented JSON with every floating value printed at 17 significant digits
/// (classic locale), non-finite values as null.
std::string dump_json(const nlohmann::json& j);
void write_json(std::ostream& os, const nlohmann::json& j);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace plap
