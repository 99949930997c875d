#pragma once

// JSON and CSV encodings of the library's result types. Every number is
// rounded to 12 significant digits before it is stored, so a document dumps,
// reparses and dumps again to the same bytes.

#include <iosfwd>

#include <json.hpp>

#include "xdiscord/channels.hpp"
#include "xdiscord/correlations.hpp"
#include "xdiscord/level_surface.hpp"
#include "xdiscord/measurement_oracle.hpp"

namespace xdiscord::cli {

using Json = nlohmann::ordered_json;

double round_significant(double value, int digits = 12);

Json to_json(const XStateParams& p);
Json to_json(const Spectrum& s);
Json to_json(const CorrelationReport& report);
Json to_json(const OracleResult& result);
Json to_json(const EventReport& events);
Json to_json(const RegionMembership& membership);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& document);

/// Header p,concurrence,classical,discord,mutual_information,s1,s2,s3.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace xdiscord::cli
