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

#include "lmfuse/orderlab/study.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "lmfuse/fusecore/schedule.hpp"

namespace lmfuse::orderlab {

using multistep::Family;
using multistep::MultistepScheme;
using multistep::SolveMode;

SolveMode mode_for(const MultistepScheme& scheme) {
  return scheme.family == Family::kAdamsBashforth
             ? SolveMode::pure_ab(scheme.steps)
             : SolveMode::pure_am(scheme.steps);
}

std::vector<OrderStudyRow> run_order_study(
    const std::vector<MultistepScheme>& schemes,
    const std::vector<BenchProblem>& suite,
    const std::vector<int>& resolutions) {
  if (resolutions.size() < 2) {
    throw ConfigError("run_order_study: need at least two resolutions");
  }
  std::vector<OrderStudyRow> rows;
  for (const BenchProblem& bench : suite) {
    for (const MultistepScheme& scheme : schemes) {
      const SolveMode mode = mode_for(scheme);
      double prev_err = 0.0;
      int prev_n = 0;
      for (std::size_t r = 0; r < resolutions.size(); ++r) {
        const int n = resolutions[r];
        OrderStudyRow row;
        row.problem = bench.name;
        row.scheme = scheme.name();
        row.steps = scheme.steps;
        row.nominal_order = scheme.order;
        row.n_steps = n;
        row.delta = (bench.problem.t1 - bench.problem.t0) / n;
        row.max_error = multistep::final_error(bench.problem, mode, n);
        if (r == 0) {
          row.slope = std::numeric_limits<double>::quiet_NaN();
        } else if (row.max_error == 0.0) {
          row.slope = std::numeric_limits<double>::infinity();
        } else {
          row.slope = std::log2(prev_err / row.max_error) /
                      std::log2(static_cast<double>(n) / prev_n);
        }
        prev_err = row.max_error;
        prev_n = n;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_order_csv(const std::vector<OrderStudyRow>& rows,
                     std::ostream& out) {
  out << "scheme,steps,nominal_order,delta,max_error,empirical_order\n";
  std::string current_problem;
  for (const OrderStudyRow& row : rows) {
    if (row.problem != current_problem) {
      current_problem = row.problem;
      out << "# problem = " << current_problem << "\n";
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.8e,%.8e,%.4f\n",
                  row.scheme.c_str(), row.steps, row.nominal_order, row.delta,
                  row.max_error, row.slope);
    out << buf;
  }
}

std::vector<OrderClaim> certify_orders(int n_coarse) {
  const multistep::IvpProblem decay{
      [](double, const multistep::Vec& y) { return multistep::Vec{-y[0]}; },
      {1.0},
      0.0,
      1.0,
      [](double t) { return multistep::Vec{std::exp(-t)}; }};
  std::vector<OrderClaim> claims;
  for (const auto& scheme : multistep::all_schemes()) {
    OrderClaim claim;
    claim.scheme = scheme.name();
    claim.nominal = scheme.order;
    claim.slope = multistep::empirical_order(decay, mode_for(scheme), n_coarse);
    claim.pass = std::abs(claim.slope - claim.nominal) <= 0.25;
    claims.push_back(std::move(claim));
  }
  return claims;
}

std::string order_report(const std::vector<OrderClaim>& claims) {
  std::ostringstream out;
  for (const OrderClaim& c : claims) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "%s %s nominal=%d slope=%.4f\n",
                  c.pass ? "PASS" : "FAIL", c.scheme.c_str(), c.nominal,
                  c.slope);
    out << buf;
  }
  return out.str();
}

namespace {

// Closed-form solution of y' = (a-1) y + b, y(0) = 0, at time t.
double forced_linear_solution(double a, double b, double t) {
  const double k = 1.0 - a;
  if (k == 0.0) return b * t;
  return b / k * (1.0 - std::exp(-k * t));
}

// Scalar reduction of the fusion scheduler: 1x1 spatial grid, one memory
// channel, identity activation, mixer weight a, alignment weight chosen so
// the learned input term contributes b * x.
double scheduler_scalar_run(double a, double b, int stages) {
  using fusecore::FuseParams;
  using fusecore::StageInput;
  using diffarray::Activation;
  using diffarray::Tensor;

  std::vector<std::size_t> chans(stages, 1);
  FuseParams params = FuseParams::zeros(chans, 1, 1, Activation::kIdentity);
  const double g_weight = a != 0.0 ? b / a : 0.0;
  for (auto& al : params.aligns) {
    al.weight = Tensor({1, 1, 1}, {g_weight});
  }
  params.mixers[0].weight = Tensor({1, 1, 1}, {a});

  std::vector<StageInput> inputs;
  for (int i = 1; i <= stages; ++i) {
    inputs.push_back({static_cast<std::size_t>(i), Tensor({1, 1, 1}, {1.0})});
  }
  const auto r = fusecore::fuse_forward(params, inputs);
  return r.y_final.y.at(0, 0, 0);
}

}  // namespace

SchedulerOdeReport scheduler_ode_check(const std::vector<int>& l_values) {
  if (l_values.empty()) throw ConfigError("scheduler_ode_check: no L values");
  SchedulerOdeReport report;
  const std::vector<SchedulerOdeCase> templates = {
      {"self-cancelling", 1.0, 0.0, {}},
      {"pure-decay", 0.0, 0.0, {}},
      {"forced", 0.5, 1.0, {}},
  };
  for (SchedulerOdeCase c : templates) {
    for (int L : l_values) {
      const double got = scheduler_scalar_run(c.a, c.b, L);
      const double want = forced_linear_solution(c.a, c.b, 1.0);
      c.errors.emplace_back(L, std::abs(got - want));
    }
    report.cases.push_back(std::move(c));
  }
  return report;
}

std::string SchedulerOdeReport::text() const {
  std::ostringstream out;
  for (const SchedulerOdeCase& c : cases) {
    for (const auto& [L, err] : c.errors) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "case=%s a=%.3f b=%.3f L=%d err=%.6e\n",
                    c.name.c_str(), c.a, c.b, L, err);
      out << buf;
    }
  }
  return out.str();
}

bool SchedulerOdeReport::pass(double tol_at_finest) const {
  for (const SchedulerOdeCase& c : cases) {
    if (c.errors.empty()) return false;
    if (c.b == 0.0) {
      for (const auto& [L, err] : c.errors) {
        (void)L;
        if (err > 1e-14) return false;
      }
      continue;
    }
    if (c.errors.back().second >= c.errors.front().second) return false;
    if (c.errors.back().second > tol_at_finest) return false;
  }
  return true;
}

}  // namespace lmfuse::orderlab
