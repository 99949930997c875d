#include "serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

namespace xdiscord::cli {

namespace {

Json number(double v) { return Json(round_significant(v)); }

Json optional_number(const std::optional<double>& v) {
  return v ? number(*v) : Json(nullptr);
}

}  // namespace

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
  return std::strtod(buf, nullptr);
}

Json to_json(const XStateParams& p) {
  Json j;
  j["r"] = number(p.r);
  j["s"] = number(p.s);
  j["c1"] = number(p.c1);
  j["c2"] = number(p.c2);
  j["c3"] = number(p.c3);
  return j;
}

Json to_json(const Spectrum& s) {
  Json j;
  j["u_plus"] = number(s.u_plus);
  j["u_minus"] = number(s.u_minus);
  j["v_plus"] = number(s.v_plus);
  j["v_minus"] = number(s.v_minus);
  return j;
}

Json to_json(const CorrelationReport& report) {
  Json j;
  j["concurrence"] = number(report.concurrence);
  j["eof"] = number(report.eof);
  j["mutual_information"] = number(report.mutual_information);
  j["classical_correlation"] = number(report.classical_correlation);
  j["discord"] = number(report.discord);
  j["s1"] = number(report.s1);
  j["s2"] = number(report.s2);
  j["s3"] = number(report.s3);
  j["minimizing_branch"] = std::string(to_string(report.minimizing_branch));
  j["spectrum"] = to_json(report.spectrum);
  return j;
}

Json to_json(const OracleResult& result) {
  Json j;
  j["best_axis"] = Json{{"nx", number(result.best_axis.nx)},
                        {"ny", number(result.best_axis.ny)},
                        {"nz", number(result.best_axis.nz)}};
  j["theta"] = number(result.theta);
  j["phi"] = number(result.phi);
  j["min_conditional_entropy"] = number(result.min_conditional_entropy);
  j["mutual_information"] = number(result.mutual_information);
  j["classical_correlation"] = number(result.classical_correlation);
  j["discord"] = number(result.discord);
  j["grid_resolution"] = result.grid_resolution;
  j["refinement_depth"] = result.refinement_depth;
  j["local_minimum_certified"] = result.local_minimum_certified;
  return j;
}

Json to_json(const EventReport& events) {
  Json j;
  j["p_transition"] = optional_number(events.p_transition);
  j["branch_before"] =
      events.branch_before ? Json(std::string(to_string(*events.branch_before))) : Json(nullptr);
  j["branch_after"] =
      events.branch_after ? Json(std::string(to_string(*events.branch_after))) : Json(nullptr);
  j["p_crossing"] = optional_number(events.p_crossing);
  j["p_esd"] = optional_number(events.p_esd);
  j["plateau_discord"] = optional_number(events.plateau_discord);
  return j;
}

Json to_json(const RegionMembership& membership) {
  Json j;
  j["in_tetrahedron"] = membership.in_tetrahedron;
  j["in_octahedron"] = membership.in_octahedron;
  return j;
}

std::string dump(const Json& document) { return document.dump(2) + "\n"; }

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "p,concurrence,classical,discord,mutual_information,s1,s2,s3\n";
  char line[320];
  for (const auto& s : trajectory.samples) {
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", s.p,
                  s.concurrence, s.classical, s.discord, s.mutual_information, s.s1, s.s2, s.s3);
    out << line;
  }
}

}  // namespace xdiscord::cli
