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

#include "detune_forge/io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "json.hpp"

namespace detune_forge::io {
namespace {

using nlohmann::ordered_json;

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::runtime_error("csv: not a number: '" + s + "'");
  return v;
}

// Reads the header, checks it, then hands every data row to `row`.
template <class RowFn>
void read_rows(std::istream& is, const std::string& header, RowFn&& row) {
  std::string line;
  if (!std::getline(is, line) || line != header) {
    throw std::runtime_error("csv: expected header '" + header + "'");
  }
  const std::size_t width = split(header).size();
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != width) throw std::runtime_error("csv: malformed row '" + line + "'");
    row(cells);
  }
}

class Line {
 public:
  explicit Line(std::ostream& os) : os_(os) {}
  ~Line() { os_ << '\n'; }
  Line& operator<<(double v) { return put(format_number(v)); }
  Line& operator<<(const std::string& s) { return put(s); }

 private:
  Line& put(const std::string& s) {
    if (!first_) os_ << ',';
    os_ << s;
    first_ = false;
    return *this;
  }
  std::ostream& os_;
  bool first_ = true;
};

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_schedule_csv(std::ostream& os, const SampledSchedule& s) {
  os << "t,omega_x,omega_y\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    Line(os) << s.time_at(i) << s.samples[i].x << s.samples[i].y;
  }
}

void write_schedule_csv(std::ostream& os, const PiecewiseSchedule& s) {
  os << "index,duration,omega_x,omega_y\n";
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    const Segment& seg = s.segments[i];
    Line(os) << std::to_string(i) << seg.duration << seg.omega_x << seg.omega_y;
  }
}

void write_schedule_csv(std::ostream& os, const Schedule& s) {
  std::visit([&](const auto& sched) { write_schedule_csv(os, sched); }, s);
}

SampledSchedule read_sampled_schedule_csv(std::istream& is) {
  SampledSchedule s;
  read_rows(is, "t,omega_x,omega_y", [&](const std::vector<std::string>& c) {
    s.T = parse_number(c[0]);
    s.samples.push_back({parse_number(c[1]), parse_number(c[2])});
  });
  return s;
}

PiecewiseSchedule read_piecewise_schedule_csv(std::istream& is) {
  PiecewiseSchedule s;
  read_rows(is, "index,duration,omega_x,omega_y", [&](const std::vector<std::string>& c) {
    s.segments.push_back({parse_number(c[1]), parse_number(c[2]), parse_number(c[3])});
  });
  return s;
}

void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryPoint> traj) {
  os << "t,x,y,z\n";
  for (const TrajectoryPoint& p : traj) Line(os) << p.t << p.p.x << p.p.y << p.p.z;
}

void write_scan_csv(std::ostream& os, std::span<const ScanPoint> scan) {
  os << "f,infidelity\n";
  for (const ScanPoint& p : scan) Line(os) << p.f << p.infidelity;
}

constexpr const char* kSweepHeader =
    "theta_f,k,branch,T,L_p,L_t,L_e,g_residual,u1_norm,L_t_sc,L_p_sc,L_direct,status";

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    Line(os) << r.theta_f << r.k << to_string(r.branch) << r.T << r.L_p << r.L_t << r.L_e
             << r.g_residual << r.u1_norm << r.L_t_sc << r.L_p_sc << r.L_direct << status;
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::vector<SweepRow> rows;
  read_rows(is, kSweepHeader, [&](const std::vector<std::string>& c) {
    SweepRow r;
    r.theta_f = parse_number(c[0]);
    r.k = parse_number(c[1]);
    if (c[2] != "A" && c[2] != "B") throw std::runtime_error("csv: bad branch '" + c[2] + "'");
    r.branch = c[2] == "A" ? Branch::A : Branch::B;
    r.T = parse_number(c[3]);
    r.L_p = parse_number(c[4]);
    r.L_t = parse_number(c[5]);
    r.L_e = parse_number(c[6]);
    r.g_residual = parse_number(c[7]);
    r.u1_norm = parse_number(c[8]);
    r.L_t_sc = parse_number(c[9]);
    r.L_p_sc = parse_number(c[10]);
    r.L_direct = parse_number(c[11]);
    r.status = c[12];
    rows.push_back(r);
  });
  return rows;
}

void write_portrait_csv(std::ostream& os, std::span<const PortraitPoint> pts) {
  os << "Theta,gamma_x,segment_index\n";
  for (const PortraitPoint& p : pts) {
    Line(os) << p.Theta << p.gamma_x << std::to_string(p.segment_index);
  }
}

void write_angle_csv(std::ostream& os, std::span<const std::pair<double, double>> pts) {
  os << "t,theta\n";
  for (const auto& [t, theta] : pts) Line(os) << t << theta;
}

std::string result_json(const ResultSummary& r) {
  ordered_json j;
  j["theta_f"] = r.theta_f;
  j["schedule_kind"] = r.schedule_kind;
  j["L_t"] = r.cost.L_t;
  j["L_p"] = r.cost.L_p;
  j["L_e"] = r.cost.L_e;
  j["u1_norm"] = r.u1_norm;
  j["fidelity_f0"] = r.fidelity_f0;
  return j.dump(2) + "\n";
}

std::string solution_json(const PendulumSolution& sol) {
  ordered_json j;
  j["theta_f"] = sol.theta_f;
  j["k"] = sol.k;
  j["branch"] = to_string(sol.branch);
  j["T"] = sol.T;
  j["g_residual"] = sol.g_residual;
  return j.dump(2) + "\n";
}

PendulumSolution parse_solution_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PendulumSolution sol;
  sol.theta_f = j.at("theta_f").get<double>();
  sol.k = j.at("k").get<double>();
  const auto branch = j.at("branch").get<std::string>();
  if (branch != "A" && branch != "B") throw std::runtime_error("json: bad branch '" + branch + "'");
  sol.branch = branch == "A" ? Branch::A : Branch::B;
  sol.T = j.at("T").get<double>();
  sol.g_residual = j.at("g_residual").get<double>();
  sol.lambda = 0.5 * sol.theta_f;
  sol.solved = true;
  return sol;
}

}  // namespace detune_forge::io
