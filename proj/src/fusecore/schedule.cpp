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

#include "lmfuse/fusecore/schedule.hpp"

#include <algorithm>
#include <sstream>

#include "lmfuse/multistep/history.hpp"

namespace lmfuse::fusecore {

using diffarray::Shape;
using diffarray::weighted_sum;
using multistep::Family;
using multistep::Rational;
using multistep::RhsHistory;
using multistep::scheme_coeffs;

std::string ScheduleTrace::text() const {
  std::ostringstream out;
  for (const TraceEntry& e : entries) {
    const long lo = e.corr == "none" ? e.pred_lo : std::min(e.pred_lo, e.corr_lo);
    const long hi = e.corr == "none" ? e.pred_hi : std::max(e.pred_hi, e.corr_hi);
    out << "i=" << e.stage << " pred=" << e.pred << " corr=" << e.corr
        << " hist=" << lo << ".." << hi << " delta=" << delta.str() << "\n";
  }
  return out.str();
}

ScheduleTrace plan_schedule(std::size_t stages, int max_order) {
  if (stages < 2) {
    throw ConfigError(
        "plan_schedule: need at least 2 stages (one skip connection beyond "
        "the initial node)");
  }
  if (max_order < 1 || max_order > 4) {
    throw ConfigError("plan_schedule: max_order must be in 1..4");
  }

  ScheduleTrace trace;
  trace.stages = stages;
  trace.max_order = max_order;
  trace.delta = Rational(1, static_cast<std::int64_t>(stages));

  const long L = static_cast<long>(stages);
  for (long i = 1; i < L; ++i) {
    const int p = static_cast<int>(std::min<long>(i, max_order));
    const int c = static_cast<int>(std::min<long>({i, max_order, 3}));
    const auto pred = scheme_coeffs(Family::kAdamsBashforth, p);
    const auto corr = scheme_coeffs(Family::kAdamsMoulton, c);
    TraceEntry e;
    e.stage = static_cast<std::size_t>(i);
    e.pred = pred.name();
    e.corr = corr.name();
    e.pred_lo = i - p + 1;
    e.pred_hi = i;
    e.corr_lo = i + 1 - c;
    e.corr_hi = i + 1;
    e.pred_b = pred.b;
    e.corr_b = corr.b;
    trace.entries.push_back(std::move(e));
  }

  const int k = static_cast<int>(std::min<long>(L, max_order));
  const auto fin = scheme_coeffs(Family::kAdamsBashforth, k);
  TraceEntry e;
  e.stage = stages;
  e.pred = fin.name();
  e.corr = "none";
  e.pred_lo = L - k + 1;
  e.pred_hi = L;
  e.pred_b = fin.b;
  trace.entries.push_back(std::move(e));
  return trace;
}

Tensor g_align(const FuseParams& params, const StageInput& stage,
               std::size_t out_h, std::size_t out_w) {
  if (stage.index < 1 || stage.index > params.stages()) {
    throw InputError("g_align: stage index " + std::to_string(stage.index) +
                     " outside 1.." + std::to_string(params.stages()));
  }
  const StageAlign& a = params.aligns[stage.index - 1];
  const Tensor resized = diffarray::resize_bilinear(stage.x, out_h, out_w);
  return diffarray::channel_project(resized, a.weight, a.bias);
}

Tensor rhs_eval(const FuseParams& params, const StageInput& stage,
                const Tensor& y) {
  const Tensor g = g_align(params, stage, y.shape().h, y.shape().w);
  const MixerParams& f = params.mixer_for(stage.index);
  const Tensor mixed = diffarray::pointwise(
      diffarray::channel_project(
          weighted_sum(std::vector<double>{1.0, 1.0}, {y, g}), f.weight,
          f.bias),
      params.activation);
  return weighted_sum(std::vector<double>{-1.0, 1.0}, {y, mixed});
}

namespace {

// y + delta * sum_j b[j] F_j over the |b| newest history entries, oldest
// coefficient first; optionally one more term at the new node.
Tensor lmm_combine(const std::vector<Rational>& b, const Tensor& y,
                   const RhsHistory<Tensor>& hist, const Tensor* f_new,
                   double delta) {
  const std::size_t s = f_new == nullptr ? b.size() : b.size() - 1;
  std::vector<double> coeffs{1.0};
  std::vector<Tensor> terms{y};
  for (std::size_t j = 0; j < s; ++j) {
    coeffs.push_back(delta * b[j].value());
    terms.push_back(hist.value_from_newest(s - 1 - j));
  }
  if (f_new != nullptr) {
    coeffs.push_back(delta * b.back().value());
    terms.push_back(*f_new);
  }
  return weighted_sum(coeffs, terms);
}

void check_stages(const FuseParams& params,
                  const std::vector<StageInput>& stages) {
  params.validate();
  if (stages.size() != params.stages()) {
    throw InputError("fuse_forward: " + std::to_string(stages.size()) +
                     " stage inputs for " + std::to_string(params.stages()) +
                     " parameterized stages");
  }
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (stages[i].index != i + 1) {
      throw InputError("fuse_forward: expected stage " + std::to_string(i + 1) +
                       ", got " + std::to_string(stages[i].index));
    }
    if (i > 0 && (stages[i].x.shape().h < stages[i - 1].x.shape().h ||
                  stages[i].x.shape().w < stages[i - 1].x.shape().w)) {
      throw InputError(
          "fuse_forward: stage spatial sizes must be non-decreasing");
    }
    const std::size_t expect_c = params.aligns[i].weight.shape().h;
    if (stages[i].x.shape().c != expect_c) {
      throw DimensionError("fuse_forward: stage " + std::to_string(i + 1) +
                           " has " + std::to_string(stages[i].x.shape().c) +
                           " channels, parameters expect " +
                           std::to_string(expect_c));
    }
  }
}

}  // namespace

FuseResult fuse_forward_order_capped(const FuseParams& params,
                                     const std::vector<StageInput>& stages,
                                     int max_order) {
  ScheduleTrace trace = plan_schedule(stages.size(), max_order);
  check_stages(params, stages);

  const std::size_t out_h = stages.back().x.shape().h;
  const std::size_t out_w = stages.back().x.shape().w;
  const Shape flow_shape{params.mem_channels, out_h, out_w};
  const double delta = trace.delta.value();

  Tensor y = Tensor::zeros(flow_shape);  // empty memory stream
  RhsHistory<Tensor> hist;
  hist.push(1, rhs_eval(params, stages.front(), y));
  trace.rhs_evals = 1;

  for (const TraceEntry& e : trace.entries) {
    if (e.corr == "none") {
      y = lmm_combine(e.pred_b, y, hist, nullptr, delta);
      break;  // final explicit step; always the last entry
    }
    const Tensor predicted = lmm_combine(e.pred_b, y, hist, nullptr, delta);
    const Tensor f_next = rhs_eval(params, stages[e.stage], predicted);
    ++trace.rhs_evals;
    y = lmm_combine(e.corr_b, y, hist, &f_next, delta);
    hist.push(static_cast<long>(e.stage) + 1, f_next);
    if (y.shape() != flow_shape) {
      throw ContractError("fuse_forward: memory flow shape drifted to " +
                          y.shape().str());
    }
  }
  return {MemoryFlow{std::move(y)}, std::move(trace)};
}

FuseResult fuse_forward(const FuseParams& params,
                        const std::vector<StageInput>& stages) {
  return fuse_forward_order_capped(params, stages, 4);
}

Tensor head(const FuseParams& params, const MemoryFlow& y_final) {
  return diffarray::channel_project(y_final.y, params.head.weight,
                                    params.head.bias);
}

}  // namespace lmfuse::fusecore
