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

#include "detune_forge/robust_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <boost/math/tools/toms748_solve.hpp>

#include "detune_forge/elliptic.hpp"
#include "detune_forge/error.hpp"

namespace detune_forge {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;
constexpr double kExactRoot = 1e-12;
constexpr double kBranchBFloor = 1.0 + 1e-12;
constexpr std::uintmax_t kMaxIterations = 200;

struct Bracket {
  double lo;
  double hi;
};

// Root of g on [lo, hi] given the endpoint values; nullopt without a sign change.
std::optional<double> bracketed_root(double theta_f, Branch branch, Bracket br) {
  auto g = [&](double k) { return constraint_g(theta_f, k, branch); };
  const double glo = g(br.lo);
  if (std::abs(glo) < kExactRoot) return br.lo;
  const double ghi = g(br.hi);
  if (std::abs(ghi) < kExactRoot) return br.hi;
  if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
  std::uintmax_t iters = kMaxIterations;
  const auto r = boost::math::tools::toms748_solve(
      g, br.lo, br.hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iters);
  return std::abs(g(r.first)) <= std::abs(g(r.second)) ? r.first : r.second;
}

std::optional<Bracket> search_bracket(double theta_f, Branch branch) {
  const double top = std::min(k_sup(theta_f), kSearchMaxK);
  if (branch == Branch::A) return Bracket{0.0, top};
  if (top <= kBranchBFloor) return std::nullopt;
  return Bracket{kBranchBFloor, top};
}

std::optional<PendulumSolution> try_branch(double theta_f, Branch branch) {
  const auto br = search_bracket(theta_f, branch);
  if (!br) return std::nullopt;
  const auto k = bracketed_root(theta_f, branch, *br);
  if (!k) return std::nullopt;
  PendulumSolution sol;
  sol.theta_f = theta_f;
  sol.k = *k;
  sol.branch = branch;
  sol.T = operation_time(theta_f, *k, branch);
  sol.lambda = 0.5 * theta_f;
  sol.g_residual = constraint_g(theta_f, *k, branch);
  sol.solved = std::abs(sol.g_residual) < kConstraintTolerance;
  return sol;
}

std::string describe_failure(double theta_f) {
  std::ostringstream os;
  os.precision(12);
  os << "solve_k: no root of the robustness constraint at theta_f = " << theta_f;
  for (const Branch b : {Branch::B, Branch::A}) {
    const auto br = search_bracket(theta_f, b);
    os << "; branch " << to_string(b);
    if (!br) {
      os << " has an empty search interval";
      continue;
    }
    os << " g(" << br->lo << ") = " << constraint_g(theta_f, br->lo, b) << ", g(" << br->hi
       << ") = " << constraint_g(theta_f, br->hi, b);
  }
  return os.str();
}

std::size_t thread_budget(std::size_t requested, std::size_t work) {
  std::size_t n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("DETUNE_FORGE_THREADS")) {
      n = static_cast<std::size_t>(std::max(1L, std::strtol(env, nullptr, 10)));
    } else {
      n = std::max(1U, std::thread::hardware_concurrency());
    }
  }
  return std::clamp<std::size_t>(n, 1, std::max<std::size_t>(1, work));
}

SweepRow sweep_row(double theta_f, const SweepOptions& opts) {
  SweepRow row;
  row.theta_f = theta_f;
  row.L_direct = theta_f;
  row.L_t_sc = row.L_p_sc = short_corpse_params(theta_f).total_time();
  try {
    const PendulumSolution sol = solve_k(theta_f);
    const SampledSchedule sched = pa_optimal_schedule(sol, opts.samples);
    const CostReport c = costs(sched);
    row.k = sol.k;
    row.branch = sol.branch;
    row.T = sol.T;
    row.g_residual = sol.g_residual;
    row.L_t = c.L_t;
    row.L_p = c.L_p;
    row.L_e = c.L_e;
    row.u1_norm = propagate_order_by_order(sched, opts.h).u1.norm();
  } catch (const SolverError&) {
    row.status = "solver_failure";
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  if (!row.ok()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.k = row.T = row.L_p = row.L_t = row.L_e = row.g_residual = row.u1_norm = nan;
  }
  return row;
}

}  // namespace

double constraint_g(double theta_f, double k, Branch branch) {
  if (branch == Branch::B && !(k > 1.0)) {
    throw PreconditionError("constraint_g: branch B requires k > 1");
  }
  const double phi = 0.25 * theta_f;
  const double quarter_t = 0.25 * operation_time(theta_f, k, branch);
  double sn2 = elliptic::ellip_d(phi, k);
  if (branch == Branch::B) {
    sn2 = 2.0 * elliptic::ellip_d_complete(k) - sn2;
  }
  return 4.0 * (quarter_t - 2.0 * sn2);
}

double branch_switch_threshold() {
  static const double cached = [] {
    // Along k = k_sup both branch formulas coincide; the sign of g there
    // tells which branch owns the root.
    auto edge = [](double theta) { return constraint_g(theta, k_sup(theta), Branch::B); };
    double lo = kPi;
    double hi = 2.0 * kPi - 1e-6;
    std::uintmax_t iters = kMaxIterations;
    const auto r = boost::math::tools::toms748_solve(
        edge, lo, hi, edge(lo), edge(hi), boost::math::tools::eps_tolerance<double>(48), iters);
    return 0.5 * (r.first + r.second);
  }();
  return cached;
}

PendulumSolution solve_k(double theta_f, const SolveOptions& opts) {
  if (!(theta_f >= -kAngleSlack && theta_f <= 2.0 * kPi + kAngleSlack)) {
    throw PreconditionError("solve_k: theta_f = " + std::to_string(theta_f) +
                            " outside [0, 2pi]");
  }
  theta_f = std::clamp(theta_f, 0.0, 2.0 * kPi);
  if (theta_f == 0.0 && !opts.nontrivial_at_zero) {
    PendulumSolution sol;
    sol.g_residual = 0.0;
    sol.solved = true;
    return sol;
  }
  const bool expect_b = theta_f < branch_switch_threshold();
  const Branch order[] = {expect_b ? Branch::B : Branch::A, expect_b ? Branch::A : Branch::B};
  for (const Branch b : order) {
    if (auto sol = try_branch(theta_f, b); sol && sol->solved) return *sol;
  }
  throw SolverError(describe_failure(theta_f), theta_f);
}

std::vector<double> linspace(double start, double stop, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) out[0] = start;
  for (std::size_t i = 0; n > 1 && i < n; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 1) out.back() = stop;
  return out;
}

std::vector<SweepRow> sweep(std::span<const double> theta_f_grid, const SweepOptions& opts) {
  for (const double t : theta_f_grid) {
    if (!(t > 0.0 && t <= 2.0 * kPi + kAngleSlack)) {
      throw PreconditionError("sweep: grid value " + std::to_string(t) + " outside (0, 2pi]");
    }
  }
  std::vector<SweepRow> rows(theta_f_grid.size());
  // Warm the threshold cache before fanning out.
  branch_switch_threshold();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      rows[i] = sweep_row(theta_f_grid[i], opts);
    }
  };
  const std::size_t n = thread_budget(opts.threads, rows.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return rows;
}

std::vector<std::size_t> continuity_violations(std::span<const SweepRow> rows) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const SweepRow& a = rows[i];
    const SweepRow& b = rows[i + 1];
    if (!a.ok() || !b.ok() || a.branch != b.branch) continue;
    if (std::abs(b.k - a.k) > 10.0 * std::abs(b.theta_f - a.theta_f)) out.push_back(i);
  }
  return out;
}

TimeOptimalParams time_optimal_params(double theta_f) {
  if (!(theta_f >= -kAngleSlack && theta_f <= 2.0 * kPi + kAngleSlack)) {
    throw PreconditionError("time_optimal_params: theta_f = " + std::to_string(theta_f) +
                            " outside [0, 2pi]");
  }
  TimeOptimalParams p;
  p.theta_f = theta_f;
  p.theta_SB = std::asin(0.5 * std::sin(0.5 * theta_f));
  p.kappa = p.theta_SB;
  p.b = std::cos(p.kappa);
  p.switch_angle = kPi - p.theta_SB;
  p.k_b = std::cos(0.5 * theta_f) + p.b;
  return p;
}

std::vector<PortraitPoint> phase_portrait(double theta_f, std::size_t n) {
  if (n < 2) throw PreconditionError("phase_portrait: need at least 2 points per segment");
  const TimeOptimalParams p = time_optimal_params(theta_f);
  const double s = p.switch_angle;
  struct Leg {
    double from;
    double to;
    double sign;
  };
  const Leg legs[] = {{-0.5 * theta_f, -s, -1.0}, {-s, s, 1.0}, {s, 0.5 * theta_f, -1.0}};
  std::vector<PortraitPoint> out;
  for (int seg = 0; seg < 3; ++seg) {
    const Leg& leg = legs[seg];
    if (std::abs(leg.to - leg.from) < kAngleSlack) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = static_cast<double>(i) / static_cast<double>(n - 1);
      const double theta = i + 1 == n ? leg.to : leg.from + w * (leg.to - leg.from);
      out.push_back({theta, leg.sign * (p.b + std::cos(theta)), seg});
    }
  }
  return out;
}

double portrait_angle(double theta_f, double t) {
  const TimeOptimalParams p = time_optimal_params(theta_f);
  const double s = p.switch_angle;
  const double t1 = std::max(0.0, s - 0.5 * theta_f);
  const double t2 = 2.0 * s;
  t = std::clamp(t, 0.0, 2.0 * t1 + t2);
  if (t <= t1) return -0.5 * theta_f - t;
  if (t <= t1 + t2) return -s + (t - t1);
  return s - (t - t1 - t2);
}

}  // namespace detune_forge
