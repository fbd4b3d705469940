// Copyright 2026 The detune-forge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "detune_forge/error.hpp"
#include "detune_forge/io.hpp"
#include "detune_forge/robust_solver.hpp"
#include "json.hpp"

namespace detune_forge::cli {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;
constexpr std::size_t kTrajectoryPoints = 401;
constexpr double kRobustTolerance = 1e-6;
constexpr double kTargetTolerance = 1e-8;

using WriteFn = std::function<void(std::ostream&)>;

void write_file(const std::filesystem::path& path, const WriteFn& fn) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  fn(os);
  if (!os) throw std::runtime_error("write to " + path.string() + " failed");
}

// Writes either `stem`.json or a two-line `stem`.csv built from the same keys.
void write_summary(const RunConfig& cfg, const std::string& stem, const std::string& json_text) {
  if (cfg.format == Format::json) {
    write_file(cfg.output_path / (stem + ".json"), [&](std::ostream& os) { os << json_text; });
    return;
  }
  const auto j = nlohmann::ordered_json::parse(json_text);
  write_file(cfg.output_path / (stem + ".csv"), [&](std::ostream& os) {
    std::string header;
    std::string values;
    for (const auto& [key, value] : j.items()) {
      header += (header.empty() ? "" : ",") + key;
      const std::string cell =
          value.is_number() ? io::format_number(value.get<double>())
                            : (value.is_string() ? value.get<std::string>() : value.dump());
      values += (values.empty() ? "" : ",") + cell;
    }
    os << header << '\n' << values << '\n';
  });
}

Schedule read_schedule_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw PreconditionError("cannot read schedule file " + path.string());
  std::string first;
  std::getline(is, first);
  is.seekg(0);
  if (first.rfind("t,", 0) == 0) return io::read_sampled_schedule_csv(is);
  return io::read_piecewise_schedule_csv(is);
}

std::vector<std::pair<double, double>> rotation_angle_trace(const Schedule& s) {
  std::vector<std::pair<double, double>> out;
  if (const auto* pw = std::get_if<PiecewiseSchedule>(&s)) {
    const double T = pw->total_duration();
    for (std::size_t i = 0; i < kTrajectoryPoints; ++i) {
      const double t = T * static_cast<double>(i) / static_cast<double>(kTrajectoryPoints - 1);
      out.emplace_back(t, coaxial_angle(*pw, t));
    }
    return out;
  }
  const auto& sampled = std::get<SampledSchedule>(s);
  const std::vector<double> theta = coaxial_angles(sampled);
  for (std::size_t i = 0; i < theta.size(); ++i) out.emplace_back(sampled.time_at(i), theta[i]);
  return out;
}

}  // namespace

std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::direct:
      return "direct";
    case ScheduleKind::short_corpse:
      return "short_corpse";
    case ScheduleKind::pa_optimal:
      return "pa_optimal";
  }
  return "unknown";
}

void validate(const RunConfig& cfg) {
  const bool needs_angle = cfg.command != Command::sweep &&
                           !(cfg.command == Command::verify && !cfg.schedule_file.empty());
  if (needs_angle && !(cfg.theta_f >= -kAngleSlack && cfg.theta_f <= 2.0 * kPi + kAngleSlack)) {
    throw PreconditionError("theta_f must lie in [0, 2pi]");
  }
  if (!(cfg.f >= 0.0 && cfg.f <= 0.5)) throw PreconditionError("f must lie in [0, 0.5]");
  if (!(cfg.h > 0.0)) throw PreconditionError("h must be positive");
  if (cfg.n < 2) throw PreconditionError("samples must be at least 2");
  if (cfg.command == Command::sweep && cfg.grid.empty()) {
    throw PreconditionError("sweep needs a nonempty grid");
  }
}

Schedule build_schedule(const RunConfig& cfg) {
  switch (cfg.kind) {
    case ScheduleKind::direct:
      return direct_schedule(cfg.theta_f, cfg.phi_f);
    case ScheduleKind::short_corpse:
      return short_corpse(cfg.theta_f, cfg.phi_f, cfg.complement).schedule;
    case ScheduleKind::pa_optimal:
      return rotate_axis(pa_optimal_schedule(solve_k(cfg.theta_f), cfg.n), cfg.phi_f);
  }
  throw PreconditionError("unknown schedule kind");
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const PendulumSolution sol = solve_k(cfg.theta_f);
  const SampledSchedule sched = rotate_axis(pa_optimal_schedule(sol, cfg.n), cfg.phi_f);
  write_file(cfg.output_path / "schedule.csv",
             [&](std::ostream& os) { io::write_schedule_csv(os, sched); });
  const std::string text = io::solution_json(sol);
  write_summary(cfg, "solution", text);
  out << text;
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Schedule sched = build_schedule(cfg);
  const Rotor target = planar_rotor(cfg.theta_f, cfg.phi_f);
  SimulationOptions opts;
  opts.h = cfg.h;
  opts.trajectory_points = kTrajectoryPoints;
  const SimulationResult sim = simulate(sched, cfg.f, opts);

  write_file(cfg.output_path / "trajectory.csv",
             [&](std::ostream& os) { io::write_trajectory_csv(os, sim.trajectory); });
  const auto trace = rotation_angle_trace(sched);
  write_file(cfg.output_path / "theta.csv",
             [&](std::ostream& os) { io::write_angle_csv(os, trace); });

  io::ResultSummary r;
  r.theta_f = cfg.theta_f;
  r.schedule_kind = to_string(cfg.kind);
  r.cost = costs(sched);
  r.u1_norm = sim.u1_final.norm();
  r.fidelity_f0 = trace_fidelity(target, propagate(sched, 0.0, cfg.h));
  auto j = nlohmann::ordered_json::parse(io::result_json(r));
  j["f"] = cfg.f;
  j["fidelity_f"] = trace_fidelity(target, sim.u_final);
  const std::string text = j.dump(2) + "\n";
  write_summary(cfg, "result", text);
  out << text;
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SweepOptions opts;
  opts.samples = cfg.n;
  opts.h = cfg.h;
  const std::vector<SweepRow> rows = sweep(cfg.grid, opts);
  write_file(cfg.output_path / "sweep.csv",
             [&](std::ostream& os) { io::write_sweep_csv(os, rows); });
  std::size_t failed = 0;
  for (const SweepRow& r : rows) {
    if (r.ok()) continue;
    ++failed;
    err << "sweep: theta_f = " << io::format_number(r.theta_f) << ": " << r.status << '\n';
  }
  const auto jumps = continuity_violations(rows);
  for (const std::size_t i : jumps) {
    err << "sweep: k discontinuous between theta_f = " << io::format_number(rows[i].theta_f)
        << " and " << io::format_number(rows[i + 1].theta_f) << '\n';
  }
  out << "rows " << rows.size() << ", failed " << failed << ", branch switch at theta_f = "
      << io::format_number(branch_switch_threshold()) << '\n';
  return failed == 0 ? kOk : kSolverFailure;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Schedule sched = build_schedule(cfg);
  const Rotor target = planar_rotor(cfg.theta_f, cfg.phi_f);
  const std::vector<double> grid = default_scan_grid();
  const std::vector<ScanPoint> scan = infidelity_scan(sched, target, grid, cfg.h);
  write_file(cfg.output_path / "scan.csv", [&](std::ostream& os) { io::write_scan_csv(os, scan); });
  nlohmann::ordered_json j;
  j["theta_f"] = cfg.theta_f;
  j["schedule_kind"] = to_string(cfg.kind);
  j["slope"] = fit_loglog_slope(scan);
  const std::string text = j.dump(2) + "\n";
  write_summary(cfg, "scan_fit", text);
  out << text;
  return kOk;
}

int cmd_portrait(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto pts = phase_portrait(cfg.theta_f, cfg.n);
  write_file(cfg.output_path / "portrait.csv",
             [&](std::ostream& os) { io::write_portrait_csv(os, pts); });
  const TimeOptimalParams p = time_optimal_params(cfg.theta_f);
  out << "theta_SB " << io::format_number(p.theta_SB) << ", switch_angle "
      << io::format_number(p.switch_angle) << ", k_b " << io::format_number(p.k_b) << ", points "
      << pts.size() << '\n';
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Schedule sched =
      cfg.schedule_file.empty() ? build_schedule(cfg) : read_schedule_file(cfg.schedule_file);
  const Rotor target = planar_rotor(cfg.theta_f, cfg.phi_f);
  const double u1 = propagate_order_by_order(sched, cfg.h).u1.norm();
  const double infidelity = trace_infidelity(target, propagate(sched, 0.0, cfg.h));
  const bool robust = u1 < kRobustTolerance;
  const bool on_target = infidelity < kTargetTolerance;
  nlohmann::ordered_json j;
  j["theta_f"] = cfg.theta_f;
  j["u1_norm"] = u1;
  j["infidelity_f0"] = infidelity;
  j["robust"] = robust;
  j["reaches_target"] = on_target;
  out << j.dump(2) << '\n';
  if (robust && on_target) return kOk;
  err << "verify: " << (robust ? "" : "first-order term not cancelled; ")
      << (on_target ? "" : "target gate not reached") << '\n';
  return kVerificationFailure;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    switch (cfg.command) {
      case Command::solve:
        return cmd_solve(cfg, out, err);
      case Command::simulate:
        return cmd_simulate(cfg, out, err);
      case Command::sweep:
        return cmd_sweep(cfg, out, err);
      case Command::scan:
        return cmd_scan(cfg, out, err);
      case Command::portrait:
        return cmd_portrait(cfg, out, err);
      case Command::verify:
        return cmd_verify(cfg, out, err);
    }
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }
  return kBadArguments;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detuning-robust single-qubit pulse synthesis"};
  app.set_help_flag("--help", "Print this help message and exit");  // -h is the step
  app.require_subcommand(1);

  RunConfig cfg;
  double grid_start = 0.02 * kPi;
  double grid_stop = 2.0 * kPi;
  std::size_t grid_n = 100;
  bool in_pi = false;
  std::string schedule_file;

  const std::map<std::string, ScheduleKind> kinds{{"direct", ScheduleKind::direct},
                                                  {"short_corpse", ScheduleKind::short_corpse},
                                                  {"pa_optimal", ScheduleKind::pa_optimal}};
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};

  const std::pair<const char*, Command> commands[] = {
      {"solve", Command::solve},       {"simulate", Command::simulate},
      {"sweep", Command::sweep},       {"scan", Command::scan},
      {"portrait", Command::portrait}, {"verify", Command::verify}};
  const std::map<std::string, std::string> blurbs{
      {"solve", "solve for k and write the pulse-area-optimal schedule"},
      {"simulate", "propagate a schedule under detuning f"},
      {"sweep", "solve and cost a grid of theta_f"},
      {"scan", "infidelity against f with a log-log slope fit"},
      {"portrait", "time-optimal phase portrait"},
      {"verify", "check first-order robustness and the errorless gate"}};

  std::vector<std::pair<CLI::App*, Command>> subs;
  CLI::Option* start_opt = nullptr;
  CLI::Option* stop_opt = nullptr;
  for (const auto& [name, command] : commands) {
    CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
    sub->add_option("--theta-f", cfg.theta_f, "target angle (radians)");
    sub->add_option("--phi-f", cfg.phi_f, "rotation axis azimuth (radians)");
    sub->add_option("--f", cfg.f, "detuning strength");
    sub->add_option("--kind", cfg.kind, "direct | short_corpse | pa_optimal")
        ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    sub->add_option("--h", cfg.h, "RK4 step");
    sub->add_option("--samples", cfg.n, "samples of the pulse-area-optimal waveform");
    sub->add_option("--out", cfg.output_path, "output directory");
    sub->add_option("--format", cfg.format, "csv | json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_flag("--in-pi", in_pi, "read angles as multiples of pi");
    sub->add_flag("--complement", cfg.complement, "short-CORPSE for 2pi - theta_f when theta_f <= pi");
    if (command == Command::sweep) {
      start_opt = sub->add_option("--grid-start", grid_start, "first theta_f");
      stop_opt = sub->add_option("--grid-stop", grid_stop, "last theta_f");
      sub->add_option("--grid-n", grid_n, "number of grid points");
    }
    if (command == Command::verify) {
      sub->add_option("--schedule", schedule_file, "schedule CSV to verify");
    }
    subs.emplace_back(sub, command);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  for (const auto& [sub, command] : subs) {
    if (sub->parsed()) cfg.command = command;
  }
  if (in_pi) {
    cfg.theta_f *= kPi;
    cfg.phi_f *= kPi;
    if (start_opt->count() > 0) grid_start *= kPi;
    if (stop_opt->count() > 0) grid_stop *= kPi;
  }
  cfg.schedule_file = schedule_file;
  if (cfg.command == Command::sweep) {
    if (grid_n == 0) {
      err << "error: --grid-n must be positive\n";
      return kBadArguments;
    }
    cfg.grid = linspace(grid_start, grid_stop, grid_n);
  }
  return dispatch(cfg, out, err);
}

}  // namespace detune_forge::cli
