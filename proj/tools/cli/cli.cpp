#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "serialize.hpp"
#include "xdiscord/correlations.hpp"
#include "xdiscord/measurement_oracle.hpp"

namespace xdiscord::cli {

namespace {

constexpr int kDefaultOracleGrid = 64;
constexpr int kDefaultOracleDepth = 8;
constexpr int kDefaultSurfaceGrid = 64;
constexpr double kBelowClosedFormGap = 1e-4;

// Raised for any argument problem detected after CLI11 has finished.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw UsageError("invalid number '" + text + "' for " + what);
  }
  return value;
}

std::array<double, 3> parse_triple(const std::string& text) {
  std::array<double, 3> c{};
  std::stringstream stream(text);
  std::string item;
  std::size_t count = 0;
  while (std::getline(stream, item, ',')) {
    if (count == 3) throw UsageError("--c expects exactly three values, got '" + text + "'");
    c[count++] = parse_double(item, "--c");
  }
  if (count != 3) throw UsageError("--c expects exactly three values, got '" + text + "'");
  return c;
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "obj") return Format::Obj;
  throw UsageError("unknown format '" + text + "' (expected json, csv or obj)");
}

std::string_view format_name(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Obj: return "obj";
  }
  return "?";
}

// Flag values as typed; `given` records which ones appeared on the command line.
struct Flags {
  std::string r, s, c, p, gamma, t, level, tol;
  int grid_n = 0, refine_depth = 0, samples = 0;
  std::string output, format, targets, measure, trajectory, grid_output, config;
  bool events = false;
  std::map<std::string, const CLI::Option*> options;

  bool given(const std::string& name) const {
    const auto it = options.find(name);
    return it != options.end() && it->second->count() > 0;
  }
};

void add_flags(CLI::App& cmd, Flags& f) {
  auto& o = f.options;
  o["r"] = cmd.add_option("--r", f.r, "Bloch z component of qubit A");
  o["s"] = cmd.add_option("--s", f.s, "Bloch z component of qubit B");
  o["c"] = cmd.add_option("--c", f.c, "Correlation triple c1,c2,c3");
  o["p"] = cmd.add_option("--p", f.p, "Phase flip strength in [0,1]");
  o["gamma"] = cmd.add_option("--gamma", f.gamma, "Dephasing rate (with --t)");
  o["t"] = cmd.add_option("--t", f.t, "Elapsed time (with --gamma)");
  o["targets"] = cmd.add_option("--targets", f.targets, "Channel targets: A, B or both");
  o["grid_n"] = cmd.add_option("--grid-n", f.grid_n, "Grid points per axis");
  o["refine_depth"] = cmd.add_option("--refine-depth", f.refine_depth, "Oracle refinement rounds");
  o["samples"] = cmd.add_option("--samples", f.samples, "Sweep samples over p in [0,1]");
  o["level"] = cmd.add_option("--level", f.level, "Isosurface level");
  o["tol"] = cmd.add_option("--tol", f.tol, "Event or vertex tolerance");
  o["measure"] = cmd.add_option("--measure", f.measure, "discord, concurrence or classical");
  o["output"] = cmd.add_option("--output,-o", f.output, "Output file (default stdout)");
  o["format"] = cmd.add_option("--format", f.format, "json, csv or obj");
  o["trajectory"] = cmd.add_option("--trajectory", f.trajectory, "Also write the sweep CSV here");
  o["grid_output"] = cmd.add_option("--grid-output", f.grid_output, "Also write the grid CSV here");
  o["events"] = cmd.add_flag("--events", f.events, "Report critical points as JSON");
  o["config"] = cmd.add_option("--config", f.config, "JSON file with default parameters");
}

// Config-file values keyed like the flags; flags given on the command line win.
class Merged {
 public:
  Merged(const Flags& flags, Json file) : flags_(flags), file_(std::move(file)) {}

  std::optional<double> number(const std::string& key, const std::string& flag_text) const {
    if (flags_.given(key)) return parse_double(flag_text, "--" + key);
    if (!file_.contains(key)) return std::nullopt;
    const auto& v = file_.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_double(v.get<std::string>(), key);
    throw UsageError("config key '" + key + "' must be a number");
  }

  std::optional<int> integer(const std::string& key, int flag_value) const {
    if (flags_.given(key)) return flag_value;
    if (!file_.contains(key)) return std::nullopt;
    const auto& v = file_.at(key);
    if (!v.is_number_integer()) throw UsageError("config key '" + key + "' must be an integer");
    return v.get<int>();
  }

  std::optional<std::string> text(const std::string& key, const std::string& flag_text) const {
    if (flags_.given(key)) return flag_text;
    if (!file_.contains(key)) return std::nullopt;
    const auto& v = file_.at(key);
    if (!v.is_string()) throw UsageError("config key '" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::optional<std::array<double, 3>> triple() const {
    if (flags_.given("c")) return parse_triple(flags_.c);
    if (!file_.contains("c")) return std::nullopt;
    const auto& v = file_.at("c");
    if (v.is_string()) return parse_triple(v.get<std::string>());
    if (v.is_array() && v.size() == 3 &&
        std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_number(); })) {
      return std::array<double, 3>{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    }
    throw UsageError("config key 'c' must be a three-number array or a comma triple");
  }

  bool flag(const std::string& key, bool flag_value) const {
    if (flags_.given(key)) return flag_value;
    if (!file_.contains(key)) return false;
    const auto& v = file_.at(key);
    if (!v.is_boolean()) throw UsageError("config key '" + key + "' must be a boolean");
    return v.get<bool>();
  }

 private:
  const Flags& flags_;
  Json file_;
};

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");
  static const std::vector<std::string> known = {
      "r",     "s",      "c",       "p",          "gamma",       "t",
      "grid_n", "refine_depth", "samples", "level", "tol",       "output",
      "format", "targets", "measure", "trajectory", "grid_output", "events"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw UsageError("unknown config key '" + item.key() + "'");
    }
  }
  return doc;
}

RunConfig build_config(Subcommand sub, const Flags& flags) {
  const Merged m(flags, flags.given("config") ? load_config(flags.config) : Json::object());
  RunConfig cfg;
  cfg.subcommand = sub;

  const auto r = m.number("r", flags.r);
  const auto s = m.number("s", flags.s);
  const auto c = m.triple();
  const bool needs_state =
      sub == Subcommand::Compute || sub == Subcommand::Oracle || sub == Subcommand::Dynamics;
  if (needs_state && !(r && s && c)) throw UsageError("--r, --s and --c are required");
  if (sub == Subcommand::Geometry && !c) throw UsageError("--c is required");
  cfg.params.r = r.value_or(0.0);
  cfg.params.s = s.value_or(0.0);
  if (c) {
    cfg.params.c1 = (*c)[0];
    cfg.params.c2 = (*c)[1];
    cfg.params.c3 = (*c)[2];
  }

  cfg.output_path = m.text("output", flags.output);
  if (const auto f = m.text("format", flags.format)) cfg.format = parse_format(*f);
  cfg.grid_n = m.integer("grid_n", flags.grid_n);
  cfg.refine_depth = m.integer("refine_depth", flags.refine_depth);
  cfg.n_samples = m.integer("samples", flags.samples);
  cfg.level = m.number("level", flags.level);
  cfg.tol = m.number("tol", flags.tol);
  cfg.p = m.number("p", flags.p);
  cfg.gamma = m.number("gamma", flags.gamma);
  cfg.t = m.number("t", flags.t);
  if (const auto t = m.text("targets", flags.targets)) {
    try {
      cfg.targets = parse_channel_target(*t);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (const auto measure = m.text("measure", flags.measure)) {
    try {
      cfg.measure = parse_measure(*measure);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  cfg.events = m.flag("events", flags.events);
  cfg.trajectory_path = m.text("trajectory", flags.trajectory);
  cfg.grid_output_path = m.text("grid_output", flags.grid_output);
  return cfg;
}

// Writes through `emit` to the configured file, or to `out` when unset.
void write_artifact(const std::optional<std::string>& path, std::ostream& out,
                    const std::function<void(std::ostream&)>& emit) {
  if (!path) {
    emit(out);
    out.flush();
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + *path + "' for writing");
  emit(file);
  if (!file) throw UsageError("failed writing '" + *path + "'");
}

Format resolve_format(const RunConfig& cfg, Format fallback,
                      std::initializer_list<Format> allowed) {
  const Format f = cfg.format.value_or(fallback);
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
    throw UsageError("format '" + std::string(format_name(f)) +
                     "' is not available for this subcommand");
  }
  return f;
}

// Channel strength requested through --p or --gamma/--t, if any.
std::optional<double> requested_strength(const RunConfig& cfg) {
  if (cfg.p && (cfg.gamma || cfg.t)) throw UsageError("give either --p or --gamma/--t, not both");
  if (cfg.gamma.has_value() != cfg.t.has_value()) {
    throw UsageError("--gamma and --t must be given together");
  }
  if (cfg.gamma) {
    if (*cfg.gamma < 0.0 || *cfg.t < 0.0) throw UsageError("--gamma and --t must be nonnegative");
    return p_of_time(*cfg.gamma, *cfg.t);
  }
  if (cfg.p && !(*cfg.p >= 0.0 && *cfg.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
  return cfg.p;
}

void check_state(const XStateParams& p) {
  try {
    check_bounds(p);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  require_physical(p);
}

int run_compute(const RunConfig& cfg, std::ostream& out) {
  resolve_format(cfg, Format::Json, {Format::Json});
  check_state(cfg.params);
  const auto strength = requested_strength(cfg);
  const XStateParams state =
      strength ? apply_phase_flip(cfg.params, *strength, cfg.targets) : cfg.params;

  Json doc;
  doc["input"] = to_json(cfg.params);
  if (strength) {
    doc["channel"] = Json{{"kind", "phase_flip"},
                          {"targets", std::string(to_string(cfg.targets))},
                          {"p", round_significant(*strength)}};
  } else {
    doc["channel"] = nullptr;
  }
  doc["state"] = to_json(state);
  doc["report"] = to_json(correlation_report(state));
  write_artifact(cfg.output_path, out, [&](std::ostream& o) { o << dump(doc); });
  return kOk;
}

int run_oracle(const RunConfig& cfg, std::ostream& out) {
  resolve_format(cfg, Format::Json, {Format::Json});
  check_state(cfg.params);
  const int grid_n = cfg.grid_n.value_or(kDefaultOracleGrid);
  const int depth = cfg.refine_depth.value_or(kDefaultOracleDepth);
  if (grid_n < 8) throw UsageError("--grid-n must be at least 8 for the oracle");
  if (depth < 0) throw UsageError("--refine-depth must be nonnegative");

  const OracleResult oracle = optimize_measurement(cfg.params, grid_n, depth);
  const CorrelationReport analytic = correlation_report(cfg.params);
  const ConditionalBranches branches{analytic.s1, analytic.s2, analytic.s3};
  const double gap = branches.min() - oracle.min_conditional_entropy;

  Json doc;
  doc["params"] = to_json(cfg.params);
  doc["oracle"] = to_json(oracle);
  doc["analytic"] = Json{{"min_conditional_entropy", round_significant(branches.min())},
                         {"minimizing_branch", std::string(to_string(branches.argmin()))},
                         {"classical_correlation", round_significant(analytic.classical_correlation)},
                         {"discord", round_significant(analytic.discord)}};
  doc["discord_difference"] = round_significant(oracle.discord - analytic.discord);
  doc["below_closed_form"] = gap > kBelowClosedFormGap;
  write_artifact(cfg.output_path, out, [&](std::ostream& o) { o << dump(doc); });
  return kOk;
}

int run_dynamics(const RunConfig& cfg, std::ostream& out) {
  const Format format = resolve_format(cfg, cfg.events ? Format::Json : Format::Csv,
                                       {Format::Json, Format::Csv});
  if (cfg.events && format != Format::Json) throw UsageError("--events produces JSON output");
  check_state(cfg.params);
  if (cfg.p || cfg.gamma || cfg.t) throw UsageError("dynamics sweeps p itself; drop --p/--gamma/--t");
  const int samples = cfg.n_samples.value_or(kDefaultSweepSamples);
  if (samples < 2) throw UsageError("--samples must be at least 2");

  if (format == Format::Csv) {
    const Trajectory trajectory = sweep_dynamics(cfg.params, samples, cfg.targets);
    write_artifact(cfg.output_path, out,
                   [&](std::ostream& o) { write_trajectory_csv(o, trajectory); });
    return kOk;
  }

  EventOptions options;
  options.n_samples = samples;
  options.tol_p = cfg.tol.value_or(kDefaultEventTol);
  if (!(options.tol_p > 0.0)) throw UsageError("--tol must be positive");
  const EventReport events = detect_events(cfg.params, cfg.targets, options);

  Json doc;
  doc["params"] = to_json(cfg.params);
  doc["targets"] = std::string(to_string(cfg.targets));
  doc["samples"] = samples;
  doc["tol"] = round_significant(options.tol_p);
  doc["events"] = to_json(events);
  write_artifact(cfg.output_path, out, [&](std::ostream& o) { o << dump(doc); });
  if (cfg.trajectory_path) {
    const Trajectory trajectory = sweep_dynamics(cfg.params, samples, cfg.targets);
    write_artifact(cfg.trajectory_path, out,
                   [&](std::ostream& o) { write_trajectory_csv(o, trajectory); });
  }
  return kOk;
}

int run_surface(const RunConfig& cfg, std::ostream& out) {
  const Format format = resolve_format(cfg, Format::Obj, {Format::Obj, Format::Csv});
  if (!cfg.level) throw UsageError("--level is required");
  const double vertex_tol = cfg.tol.value_or(kVertexTolerance);
  if (!(vertex_tol > 0.0)) throw UsageError("--tol must be positive");
  GridSpec grid;
  grid.n = cfg.grid_n.value_or(kDefaultSurfaceGrid);
  grid.r = cfg.params.r;
  grid.s = cfg.params.s;
  if (grid.n < 2) throw UsageError("--grid-n must be at least 2");
  try {
    check_bounds({cfg.params.r, cfg.params.s, 0.0, 0.0, 0.0});
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }

  const ScalarField3 field = sample_field(grid, cfg.measure);
  if (format == Format::Csv) {
    write_artifact(cfg.output_path, out, [&](std::ostream& o) { write_grid_csv(o, field); });
  } else {
    const TriangleMesh mesh = extract_isosurface(field, *cfg.level, vertex_tol);
    write_artifact(cfg.output_path, out, [&](std::ostream& o) { write_obj(o, mesh); });
  }
  if (cfg.grid_output_path) {
    write_artifact(cfg.grid_output_path, out, [&](std::ostream& o) { write_grid_csv(o, field); });
  }
  return kOk;
}

int run_geometry(const RunConfig& cfg, std::ostream& out) {
  resolve_format(cfg, Format::Json, {Format::Json});
  const XStateParams bell{0.0, 0.0, cfg.params.c1, cfg.params.c2, cfg.params.c3};
  try {
    check_bounds(bell);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  const RegionMembership membership = region_predicates(bell.c1, bell.c2, bell.c3);

  Json doc;
  doc["c1"] = round_significant(bell.c1);
  doc["c2"] = round_significant(bell.c2);
  doc["c3"] = round_significant(bell.c3);
  doc["in_tetrahedron"] = membership.in_tetrahedron;
  doc["in_octahedron"] = membership.in_octahedron;
  doc["concurrence"] =
      membership.in_tetrahedron ? Json(round_significant(concurrence(bell))) : Json(nullptr);
  write_artifact(cfg.output_path, out, [&](std::ostream& o) { o << dump(doc); });
  return kOk;
}

}  // namespace

ParseResult parse_arguments(const std::vector<std::string>& args) {
  CLI::App app{"Correlations, measurement oracle, dephasing dynamics and level surfaces for "
               "two-qubit X states",
               "xdiscord"};
  app.require_subcommand(1);
  const std::pair<Subcommand, std::pair<const char*, const char*>> table[] = {
      {Subcommand::Compute, {"compute", "Correlation report for one state (JSON)"}},
      {Subcommand::Oracle, {"oracle", "Brute-force measurement search versus closed forms (JSON)"}},
      {Subcommand::Dynamics, {"dynamics", "Phase flip sweep (CSV) or critical points (JSON)"}},
      {Subcommand::Surface, {"surface", "Level surface of a measure over (c1,c2,c3) (OBJ/CSV)"}},
      {Subcommand::Geometry, {"geometry", "Tetrahedron and octahedron membership (JSON)"}},
  };
  std::vector<std::pair<Subcommand, CLI::App*>> commands;
  std::vector<std::unique_ptr<Flags>> flags;
  for (const auto& [sub, names] : table) {
    CLI::App* cmd = app.add_subcommand(names.first, names.second);
    flags.push_back(std::make_unique<Flags>());
    add_flags(*cmd, *flags.back());
    commands.emplace_back(sub, cmd);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream text;
    const int code = app.exit(e, text, text);
    return {std::nullopt, code == 0 ? kOk : kUsage, text.str()};
  }

  try {
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (commands[i].second->parsed()) {
        return {build_config(commands[i].first, *flags[i]), kOk, {}};
      }
    }
  } catch (const UsageError& e) {
    return {std::nullopt, kUsage, std::string("error: ") + e.what() + "\n"};
  }
  return {std::nullopt, kUsage, "error: no subcommand\n"};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.subcommand) {
      case Subcommand::Compute: return run_compute(config, out);
      case Subcommand::Oracle: return run_oracle(config, out);
      case Subcommand::Dynamics: return run_dynamics(config, out);
      case Subcommand::Surface: return run_surface(config, out);
      case Subcommand::Geometry: return run_geometry(config, out);
    }
  } catch (const NonPhysicalState& e) {
    err << "error: " << e.what() << "\n";
    return kNonPhysical;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = parse_arguments(args);
  if (!parsed.config) {
    (parsed.exit_code == kOk ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  return run(*parsed.config, out, err);
}

}  // namespace xdiscord::cli
