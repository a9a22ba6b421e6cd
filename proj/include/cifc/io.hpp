#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "cifc/verification.hpp"

namespace cifc {

using Json = nlohmann::ordered_json;

// Parsers throw Error(ParseError) naming the offending field, or the validation error
// of the object being built.

Json channel_to_json(const Channel& c);
Channel channel_from_json(const Json& j);

Json distribution_to_json(const JointDistribution& d);
JointDistribution distribution_from_json(const Json& j);

Json polytope_to_json(const Polytope2D& p);
Polytope2D polytope_from_json(const Json& j);
/// "r1,r2" header plus one line per vertex, 12 significant digits.
std::string polytope_csv(const Polytope2D& p);

Json report_to_json(const CheckReport& r);
Json report_to_json(const SuiteReport& s);

/// "lambda,R1,R2,seed" header plus the Pareto points.
std::string frontier_csv(const FrontierResult& f);

Json schema_to_json(const RegionSchema& s);
Json table_to_json(const std::string& name, const CorrespondenceTable& t);
/// Every built-in schema and correspondence table.
Json schema_manifest();

/// 12 significant digits.
std::string format_number(double v);

/// Reads and parses a JSON file; errors carry the path.
Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cifc
