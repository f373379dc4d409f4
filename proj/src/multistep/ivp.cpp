/* Copyright 2026 The lmfuse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "lmfuse/multistep/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lmfuse::multistep {

namespace {

void check_dim(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) throw DimensionError(what);
}

// y + delta * sum of the s newest history entries weighted oldest-first,
// optionally with one extra term at the new node.
Vec combine(const MultistepScheme& scheme, const Vec& y,
            const RhsHistory<Vec>& hist, const Vec* f_new, double delta) {
  const std::size_t s = static_cast<std::size_t>(scheme.steps);
  if (hist.size() < s) {
    throw HistoryUnderflowError(scheme.name() + " needs " +
                                std::to_string(s) + " history entries, have " +
                                std::to_string(hist.size()));
  }
  Vec out = y;
  for (std::size_t j = 0; j < s; ++j) {
    const double c = delta * scheme.b[j].value();
    const Vec& f = hist.value_from_newest(s - 1 - j);  // oldest first
    check_dim(out, f, "ab/am step: state and history dimension mismatch");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * f[i];
  }
  if (f_new != nullptr) {
    const double c = delta * scheme.b[s].value();
    check_dim(out, *f_new, "am step: state and f_new dimension mismatch");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * (*f_new)[i];
  }
  return out;
}

}  // namespace

Vec ab_step(const MultistepScheme& scheme, const Vec& y,
            const RhsHistory<Vec>& hist, double delta) {
  if (scheme.family != Family::kAdamsBashforth) {
    throw ContractError("ab_step requires an Adams-Bashforth scheme");
  }
  return combine(scheme, y, hist, nullptr, delta);
}

Vec am_step(const MultistepScheme& scheme, const Vec& y,
            const RhsHistory<Vec>& hist, const Vec& f_new, double delta) {
  if (scheme.family != Family::kAdamsMoulton) {
    throw ContractError("am_step requires an Adams-Moulton scheme");
  }
  return combine(scheme, y, hist, &f_new, delta);
}

PcResult pc_step(const MultistepScheme& pred, const MultistepScheme& corr,
                 const RhsFn& rhs, double t_next, const Vec& y,
                 const RhsHistory<Vec>& hist, double delta) {
  Vec predicted = ab_step(pred, y, hist, delta);
  Vec f_next = rhs(t_next, predicted);
  Vec corrected = am_step(corr, y, hist, f_next, delta);
  return {std::move(corrected), std::move(f_next)};
}

std::string SolveMode::name() const {
  switch (kind) {
    case Kind::kPureAb:
      return "AB" + std::to_string(pred_steps);
    case Kind::kPureAm:
      return "AM" + std::to_string(corr_steps);
    case Kind::kPredictorCorrector:
      return "PC(AB" + std::to_string(pred_steps) + ",AM" +
             std::to_string(corr_steps) + ")";
    case Kind::kAdaptiveBootstrap:
      return "adaptive";
  }
  return "?";
}

namespace {

// Ladder used for bootstrapping and the adaptive mode: grow the scheme with
// the available history, saturating at PC(AB4, AM3).
void ladder_step(const IvpProblem& p, RhsHistory<Vec>& hist, Vec& y, double t,
                 double delta, int cap_pred, int cap_corr,
                 bool refresh_at_corrected) {
  const int avail = static_cast<int>(hist.size());
  const int ps = std::min(cap_pred, avail);
  const int cs = std::min({cap_corr, avail, 3});
  const auto pred = scheme_coeffs(Family::kAdamsBashforth, ps);
  const auto corr = scheme_coeffs(Family::kAdamsMoulton, cs);
  PcResult r = pc_step(pred, corr, p.rhs, t, y, hist, delta);
  y = std::move(r.y_next);
  hist.push(hist.newest_node() + 1,
            refresh_at_corrected ? p.rhs(t, y) : std::move(r.f_next));
}

}  // namespace

std::vector<TrajectoryPoint> solve_ivp(const IvpProblem& problem,
                                       const SolveMode& mode, int n_steps) {
  if (!(problem.t1 > problem.t0)) {
    throw ConfigError("solve_ivp: t1 must exceed t0");
  }
  if (n_steps < 1) throw ConfigError("solve_ivp: n_steps must be positive");

  const double delta = (problem.t1 - problem.t0) / n_steps;
  const auto node_t = [&](long k) { return problem.t0 + delta * k; };

  std::vector<TrajectoryPoint> traj;
  traj.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.push_back({problem.t0, problem.y0});

  RhsHistory<Vec> hist;
  hist.push(0, problem.rhs(problem.t0, problem.y0));
  Vec y = problem.y0;

  switch (mode.kind) {
    case SolveMode::Kind::kPureAb: {
      const auto scheme = scheme_coeffs(Family::kAdamsBashforth,
                                        mode.pred_steps);
      if (n_steps < scheme.steps) {
        throw ConfigError("solve_ivp: " + scheme.name() + " needs at least " +
                          std::to_string(scheme.steps) + " steps");
      }
      // Start-up: fill nodes 1..s-1 from the analytic solution when we have
      // one, otherwise bootstrap with the ladder.
      long m = 0;
      for (; m + 1 < scheme.steps; ++m) {
        if (problem.exact) {
          y = problem.exact(node_t(m + 1));
          hist.push(m + 1, problem.rhs(node_t(m + 1), y));
        } else {
          ladder_step(problem, hist, y, node_t(m + 1), delta, 4, 3,
                      /*refresh_at_corrected=*/true);
        }
        traj.push_back({node_t(m + 1), y});
      }
      for (; m < n_steps; ++m) {
        y = ab_step(scheme, y, hist, delta);
        hist.push(m + 1, problem.rhs(node_t(m + 1), y));
        traj.push_back({node_t(m + 1), y});
      }
      break;
    }
    case SolveMode::Kind::kPureAm: {
      const auto scheme = scheme_coeffs(Family::kAdamsMoulton,
                                        mode.corr_steps);
      if (!problem.exact) {
        throw ConfigError(
            "solve_ivp: pure_am needs an analytic solution to stand in for "
            "the implicit solve");
      }
      if (n_steps < scheme.steps) {
        throw ConfigError("solve_ivp: " + scheme.name() + " needs at least " +
                          std::to_string(scheme.steps) + " steps");
      }
      long m = 0;
      for (; m + 1 < scheme.steps; ++m) {
        y = problem.exact(node_t(m + 1));
        hist.push(m + 1, problem.rhs(node_t(m + 1), y));
        traj.push_back({node_t(m + 1), y});
      }
      for (; m < n_steps; ++m) {
        const double t_next = node_t(m + 1);
        const Vec f_new = problem.rhs(t_next, problem.exact(t_next));
        y = am_step(scheme, y, hist, f_new, delta);
        hist.push(m + 1, problem.rhs(t_next, y));
        traj.push_back({t_next, y});
      }
      break;
    }
    case SolveMode::Kind::kPredictorCorrector: {
      // Warm-start from the analytic solution when we have one so the fixed
      // scheme runs at full step count from the first computed node; without
      // it the ladder ramps the step counts up.
      const long warm =
          std::min<long>(std::max(mode.pred_steps, mode.corr_steps) - 1,
                         n_steps);
      long m = 0;
      if (problem.exact) {
        for (; m < warm; ++m) {
          y = problem.exact(node_t(m + 1));
          hist.push(m + 1, problem.rhs(node_t(m + 1), y));
          traj.push_back({node_t(m + 1), y});
        }
      }
      for (; m < n_steps; ++m) {
        ladder_step(problem, hist, y, node_t(m + 1), delta, mode.pred_steps,
                    mode.corr_steps, /*refresh_at_corrected=*/false);
        traj.push_back({node_t(m + 1), y});
      }
      break;
    }
    case SolveMode::Kind::kAdaptiveBootstrap: {
      for (long m = 0; m < n_steps; ++m) {
        ladder_step(problem, hist, y, node_t(m + 1), delta, mode.pred_steps,
                    mode.corr_steps, /*refresh_at_corrected=*/false);
        traj.push_back({node_t(m + 1), y});
      }
      break;
    }
  }
  return traj;
}

double final_error(const IvpProblem& problem, const SolveMode& mode,
                   int n_steps) {
  if (!problem.exact) throw ConfigError("final_error needs problem.exact");
  const auto traj = solve_ivp(problem, mode, n_steps);
  const Vec truth = problem.exact(problem.t1);
  const Vec& got = traj.back().y;
  if (truth.size() != got.size()) {
    throw DimensionError("final_error: exact solution dimension mismatch");
  }
  double err = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    err = std::max(err, std::abs(got[i] - truth[i]));
  }
  return err;
}

double empirical_order(const IvpProblem& problem, const SolveMode& mode,
                       int n_coarse) {
  if (!problem.exact) throw ConfigError("empirical_order needs problem.exact");
  if (n_coarse < 8) throw ConfigError("empirical_order: n_coarse must be >= 8");
  const double err_coarse = final_error(problem, mode, n_coarse);
  const double err_fine = final_error(problem, mode, 2 * n_coarse);
  if (err_fine == 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(err_coarse / err_fine);
}

}  // namespace lmfuse::multistep
