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

#include "lmfuse/diffarray/ops.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace lmfuse::diffarray {

namespace {

GradTape* common_tape(std::initializer_list<const Tensor*> inputs) {
  GradTape* tape = nullptr;
  for (const Tensor* t : inputs) {
    if (!t->on_tape()) continue;
    if (tape == nullptr) {
      tape = t->tape();
    } else if (tape != t->tape()) {
      throw ContractError("ops: inputs live on different tapes");
    }
  }
  return tape;
}

struct AxisMap {
  std::vector<std::size_t> lo, hi;
  std::vector<double> frac;
};

// Corner-aligned source coordinates: scale = (in-1)/(out-1), degenerating to
// 0 when the output axis has a single sample.
AxisMap make_axis_map(std::size_t in, std::size_t out) {
  AxisMap m;
  m.lo.resize(out);
  m.hi.resize(out);
  m.frac.resize(out);
  const double scale =
      out > 1 ? static_cast<double>(in - 1) / static_cast<double>(out - 1)
              : 0.0;
  for (std::size_t i = 0; i < out; ++i) {
    const double src = scale * static_cast<double>(i);
    std::size_t lo = static_cast<std::size_t>(src);
    if (lo >= in) lo = in - 1;
    const std::size_t hi = std::min(lo + 1, in - 1);
    m.lo[i] = lo;
    m.hi[i] = hi;
    m.frac[i] = src - static_cast<double>(lo);
  }
  return m;
}

}  // namespace

Activation activation_from_string(const std::string& s) {
  if (s == "identity") return Activation::kIdentity;
  if (s == "relu") return Activation::kRelu;
  if (s == "sigmoid") return Activation::kSigmoid;
  if (s == "tanh") return Activation::kTanh;
  throw InputError("unknown activation: " + s);
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kTanh:
      return "tanh";
  }
  return "?";
}

Tensor channel_project(const Tensor& x, const Tensor& weight,
                       const Tensor& bias) {
  const std::size_t cin = x.shape().c;
  const std::size_t ih = x.shape().h;
  const std::size_t iw = x.shape().w;
  const std::size_t cout = weight.shape().c;
  if (weight.shape().h != cin || weight.shape().w != 1) {
    throw DimensionError("channel_project: weight " + weight.shape().str() +
                         " does not match input " + x.shape().str());
  }
  if (bias.shape() != Shape{cout, 1, 1}) {
    throw DimensionError("channel_project: bias " + bias.shape().str() +
                         " does not match " + std::to_string(cout) +
                         " output channels");
  }

  const auto xd = x.data();
  const auto wd = weight.data();
  const auto bd = bias.data();
  const std::size_t plane = ih * iw;
  std::vector<double> out(cout * plane);
  for (std::size_t c = 0; c < cout; ++c) {
    double* dst = out.data() + c * plane;
    std::fill(dst, dst + plane, bd[c]);
    for (std::size_t k = 0; k < cin; ++k) {
      const double w = wd[c * cin + k];
      if (w == 0.0) continue;
      const double* src = xd.data() + k * plane;
      for (std::size_t p = 0; p < plane; ++p) dst[p] += w * src[p];
    }
  }

  GradTape* tape = common_tape({&x, &weight, &bias});
  if (tape == nullptr) return Tensor({cout, ih, iw}, std::move(out));

  std::vector<const Tensor*> parents;
  const bool gx = x.on_tape(), gw = weight.on_tape(), gb = bias.on_tape();
  if (gx) parents.push_back(&x);
  if (gw) parents.push_back(&weight);
  if (gb) parents.push_back(&bias);
  Tensor xc = x;
  Tensor wc = weight;
  return tape->record(
      {cout, ih, iw}, std::move(out), parents,
      [xc, wc, gx, gw, gb, cin, cout, plane](std::span<const double> g,
                                             BackwardContext& ctx) {
        std::size_t slot = 0;
        const auto xd = xc.data();
        const auto wd = wc.data();
        if (gx) {
          auto gxs = ctx.parent_grad(slot++);
          for (std::size_t c = 0; c < cout; ++c) {
            for (std::size_t k = 0; k < cin; ++k) {
              const double w = wd[c * cin + k];
              if (w == 0.0) continue;
              for (std::size_t p = 0; p < plane; ++p) {
                gxs[k * plane + p] += w * g[c * plane + p];
              }
            }
          }
        }
        if (gw) {
          auto gws = ctx.parent_grad(slot++);
          for (std::size_t c = 0; c < cout; ++c) {
            for (std::size_t k = 0; k < cin; ++k) {
              double acc = 0.0;
              for (std::size_t p = 0; p < plane; ++p) {
                acc += g[c * plane + p] * xd[k * plane + p];
              }
              gws[c * cin + k] += acc;
            }
          }
        }
        if (gb) {
          auto gbs = ctx.parent_grad(slot++);
          for (std::size_t c = 0; c < cout; ++c) {
            double acc = 0.0;
            for (std::size_t p = 0; p < plane; ++p) acc += g[c * plane + p];
            gbs[c] += acc;
          }
        }
      });
}

Tensor resize_bilinear(const Tensor& x, std::size_t out_h, std::size_t out_w) {
  if (out_h == 0 || out_w == 0) {
    throw DimensionError("resize_bilinear: zero target dimension");
  }
  const std::size_t ch = x.shape().c;
  const std::size_t ih = x.shape().h;
  const std::size_t iw = x.shape().w;

  const AxisMap ym = make_axis_map(ih, out_h);
  const AxisMap xm = make_axis_map(iw, out_w);

  const auto xd = x.data();
  std::vector<double> out(ch * out_h * out_w);
  for (std::size_t c = 0; c < ch; ++c) {
    const double* src = xd.data() + c * ih * iw;
    double* dst = out.data() + c * out_h * out_w;
    for (std::size_t y = 0; y < out_h; ++y) {
      const double fy = ym.frac[y];
      const double* row0 = src + ym.lo[y] * iw;
      const double* row1 = src + ym.hi[y] * iw;
      for (std::size_t xo = 0; xo < out_w; ++xo) {
        const double fx = xm.frac[xo];
        const double top =
            row0[xm.lo[xo]] + fx * (row0[xm.hi[xo]] - row0[xm.lo[xo]]);
        const double bot =
            row1[xm.lo[xo]] + fx * (row1[xm.hi[xo]] - row1[xm.lo[xo]]);
        dst[y * out_w + xo] = top + fy * (bot - top);
      }
    }
  }

  GradTape* tape = common_tape({&x});
  if (tape == nullptr) return Tensor({ch, out_h, out_w}, std::move(out));
  return tape->record(
      {ch, out_h, out_w}, std::move(out), {&x},
      [ym, xm, ch, ih, iw, out_h, out_w](std::span<const double> g,
                                         BackwardContext& ctx) {
        auto gin = ctx.parent_grad(0);
        for (std::size_t c = 0; c < ch; ++c) {
          double* dst = gin.data() + c * ih * iw;
          const double* gsrc = g.data() + c * out_h * out_w;
          for (std::size_t y = 0; y < out_h; ++y) {
            const double fy = ym.frac[y];
            for (std::size_t xo = 0; xo < out_w; ++xo) {
              const double fx = xm.frac[xo];
              const double gv = gsrc[y * out_w + xo];
              dst[ym.lo[y] * iw + xm.lo[xo]] += (1 - fy) * (1 - fx) * gv;
              dst[ym.lo[y] * iw + xm.hi[xo]] += (1 - fy) * fx * gv;
              dst[ym.hi[y] * iw + xm.lo[xo]] += fy * (1 - fx) * gv;
              dst[ym.hi[y] * iw + xm.hi[xo]] += fy * fx * gv;
            }
          }
        }
      });
}

Tensor pointwise(const Tensor& x, Activation act) {
  const auto xd = x.data();
  std::vector<double> out(xd.size());
  switch (act) {
    case Activation::kIdentity:
      std::copy(xd.begin(), xd.end(), out.begin());
      break;
    case Activation::kRelu:
      for (std::size_t i = 0; i < xd.size(); ++i)
        out[i] = xd[i] > 0.0 ? xd[i] : 0.0;
      break;
    case Activation::kSigmoid:
      for (std::size_t i = 0; i < xd.size(); ++i) {
        const double v = xd[i];
        out[i] = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v))
                          : std::exp(v) / (1.0 + std::exp(v));
      }
      break;
    case Activation::kTanh:
      for (std::size_t i = 0; i < xd.size(); ++i) out[i] = std::tanh(xd[i]);
      break;
  }

  GradTape* tape = common_tape({&x});
  if (tape == nullptr) return Tensor(x.shape(), std::move(out));

  switch (act) {
    case Activation::kIdentity:
      return tape->record(x.shape(), std::move(out), {&x},
                          [](std::span<const double> g, BackwardContext& ctx) {
                            auto gin = ctx.parent_grad(0);
                            for (std::size_t i = 0; i < g.size(); ++i)
                              gin[i] += g[i];
                          });
    case Activation::kRelu: {
      Tensor xc = x;
      return tape->record(
          x.shape(), std::move(out), {&x},
          [xc](std::span<const double> g, BackwardContext& ctx) {
            auto gin = ctx.parent_grad(0);
            const auto xd = xc.data();
            for (std::size_t i = 0; i < g.size(); ++i) {
              if (xd[i] > 0.0) gin[i] += g[i];
            }
          });
    }
    case Activation::kSigmoid: {
      std::vector<double> saved = out;
      return tape->record(
          x.shape(), std::move(out), {&x},
          [saved](std::span<const double> g, BackwardContext& ctx) {
            auto gin = ctx.parent_grad(0);
            for (std::size_t i = 0; i < g.size(); ++i) {
              gin[i] += g[i] * saved[i] * (1.0 - saved[i]);
            }
          });
    }
    case Activation::kTanh: {
      std::vector<double> saved = out;
      return tape->record(
          x.shape(), std::move(out), {&x},
          [saved](std::span<const double> g, BackwardContext& ctx) {
            auto gin = ctx.parent_grad(0);
            for (std::size_t i = 0; i < g.size(); ++i) {
              gin[i] += g[i] * (1.0 - saved[i] * saved[i]);
            }
          });
    }
  }
  throw ContractError("pointwise: unreachable");
}

Tensor weighted_sum(std::span<const double> coeffs,
                    const std::vector<Tensor>& terms) {
  if (terms.empty()) {
    throw DimensionError("weighted_sum: empty term list");
  }
  if (coeffs.size() != terms.size()) {
    throw DimensionError("weighted_sum: " + std::to_string(coeffs.size()) +
                         " coefficients for " + std::to_string(terms.size()) +
                         " terms");
  }
  const Shape shape = terms.front().shape();
  for (const Tensor& t : terms) {
    if (t.shape() != shape) {
      throw DimensionError("weighted_sum: term shape " + t.shape().str() +
                           " differs from " + shape.str());
    }
  }

  std::vector<double> out(shape.total(), 0.0);
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const double c = coeffs[j];
    const auto td = terms[j].data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * td[i];
  }

  GradTape* tape = nullptr;
  for (const Tensor& t : terms) {
    if (!t.on_tape()) continue;
    if (tape == nullptr) {
      tape = t.tape();
    } else if (tape != t.tape()) {
      throw ContractError("weighted_sum: terms live on different tapes");
    }
  }
  if (tape == nullptr) return Tensor(shape, std::move(out));

  std::vector<const Tensor*> parents;
  std::vector<double> parent_coeffs;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (terms[j].on_tape()) {
      parents.push_back(&terms[j]);
      parent_coeffs.push_back(coeffs[j]);
    }
  }
  return tape->record(
      shape, std::move(out), parents,
      [parent_coeffs](std::span<const double> g, BackwardContext& ctx) {
        for (std::size_t k = 0; k < parent_coeffs.size(); ++k) {
          auto gin = ctx.parent_grad(k);
          const double c = parent_coeffs[k];
          for (std::size_t i = 0; i < g.size(); ++i) gin[i] += c * g[i];
        }
      });
}

Tensor sum(const Tensor& x) {
  double acc = 0.0;
  for (double v : x.data()) acc += v;

  GradTape* tape = common_tape({&x});
  if (tape == nullptr) return Tensor({1, 1, 1}, {acc});
  return tape->record({1, 1, 1}, {acc}, {&x},
                      [](std::span<const double> g, BackwardContext& ctx) {
                        auto gin = ctx.parent_grad(0);
                        for (std::size_t i = 0; i < gin.size(); ++i)
                          gin[i] += g[0];
                      });
}

Tensor finite_diff_grad(const std::function<double(const Tensor&)>& fn,
                        const Tensor& x, double eps) {
  if (!(eps > 0.0)) throw ContractError("finite_diff_grad: eps must be > 0");
  const auto xd = x.data();
  std::vector<double> base(xd.begin(), xd.end());
  std::vector<double> grad(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::vector<double> plus = base;
    std::vector<double> minus = base;
    plus[i] += eps;
    minus[i] -= eps;
    const double fp = fn(Tensor(x.shape(), std::move(plus)));
    const double fm = fn(Tensor(x.shape(), std::move(minus)));
    grad[i] = (fp - fm) / (2.0 * eps);
  }
  return Tensor(x.shape(), std::move(grad));
}

}  // namespace lmfuse::diffarray
