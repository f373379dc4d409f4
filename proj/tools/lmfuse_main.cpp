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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lmfuse/fusecore/checkpoint.hpp"
#include "lmfuse/fusecore/schedule.hpp"
#include "lmfuse/orderlab/study.hpp"
#include "lmfuse/toyseg/pgm.hpp"
#include "lmfuse/toyseg/train.hpp"

namespace {

using namespace lmfuse;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  if (out.empty()) throw ConfigError("empty integer list: " + csv);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Line-oriented `key = value` config with `#` comments.
toyseg::TrainConfig parse_train_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  toyseg::TrainConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "L") {
      cfg.stages = std::stoul(value);
    } else if (key == "H") {
      cfg.height = std::stoul(value);
    } else if (key == "W") {
      cfg.width = std::stoul(value);
    } else if (key == "n_train") {
      cfg.n_train = std::stoul(value);
    } else if (key == "n_val") {
      cfg.n_val = std::stoul(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "learning_rate") {
      cfg.learning_rate = std::stod(value);
    } else if (key == "epochs") {
      cfg.epochs = std::stoul(value);
    } else if (key == "mem_channels") {
      // Accepts a plain multiplier or the N-relative spelling (N, 2N, ...).
      std::string v = value;
      if (!v.empty() && (v.back() == 'N' || v.back() == 'n')) {
        v.pop_back();
        cfg.mem_multiplier = v.empty() ? 1 : std::stoul(v);
      } else {
        cfg.mem_multiplier = std::stoul(v);
      }
    } else if (key == "max_order") {
      cfg.max_order = std::stoi(value);
    } else {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

int cmd_coeffs(const std::string& family, int steps) {
  const auto fam = family == "ab" ? multistep::Family::kAdamsBashforth
                                  : multistep::Family::kAdamsMoulton;
  const auto scheme = multistep::scheme_coeffs(fam, steps);
  std::string line;
  for (const auto& b : scheme.b) {
    if (!line.empty()) line += " ";
    line += b.str();
  }
  std::cout << line << "\n";
  return kOk;
}

int cmd_order_study(const std::string& out_path, const std::string& problem,
                    const std::string& resolutions) {
  const auto all = orderlab::standard_suite();
  std::vector<orderlab::BenchProblem> suite;
  if (problem == "all") {
    suite = all;
  } else {
    for (const auto& b : all) {
      if (b.name == problem) suite.push_back(b);
    }
    if (suite.empty()) throw ConfigError("unknown problem: " + problem);
  }

  const auto rows = orderlab::run_order_study(
      multistep::all_schemes(), suite, parse_int_list(resolutions));
  if (out_path.empty()) {
    orderlab::write_order_csv(rows, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open for writing: " + out_path);
    orderlab::write_order_csv(rows, out);
  }

  const auto claims = orderlab::certify_orders();
  std::cout << orderlab::order_report(claims);
  for (const auto& c : claims) {
    if (!c.pass) {
      std::cout << "order-study: FAIL (" << c.scheme
                << " slope off the nominal order)\n";
      return kCheckFailed;
    }
  }
  return kOk;
}

int cmd_trace(int stages, int max_order, const std::string& out_path) {
  const auto plan = fusecore::plan_schedule(static_cast<std::size_t>(stages),
                                            max_order);
  if (out_path.empty()) {
    std::cout << plan.text();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + out_path);
    out << plan.text();
  }
  return kOk;
}

int cmd_ode_check(const std::string& levels) {
  const auto report = orderlab::scheduler_ode_check(parse_int_list(levels));
  std::cout << report.text();
  if (!report.pass()) {
    std::cout << "ode-check: FAIL (scheduler error did not shrink below "
                 "1e-2 with growing L)\n";
    return kCheckFailed;
  }
  std::cout << "ode-check: PASS\n";
  return kOk;
}

int cmd_gradcheck(std::uint64_t seed) {
  const auto report = toyseg::gradcheck(seed);
  std::cout << report.text();
  if (!report.pass(1e-4)) {
    std::cout << "gradcheck: FAIL (backward vs central differences above "
                 "1e-4)\n";
    return kCheckFailed;
  }
  std::cout << "gradcheck: PASS\n";
  return kOk;
}

int cmd_synth(std::size_t n, std::size_t height, std::size_t width,
              std::uint64_t seed, const std::string& out_dir) {
  const auto samples = toyseg::synth_dataset(n, height, width, seed);
  toyseg::save_dataset(out_dir, samples, seed);
  std::cout << "# seed = " << seed << "\n";
  std::cout << "# n = " << n << "\n";
  std::cout << "wrote " << samples.size() << " sample pairs to " << out_dir
            << "\n";
  return kOk;
}

int cmd_train(const std::string& config_path, const std::string& out_dir) {
  const toyseg::TrainConfig cfg = parse_train_config(config_path);
  const auto result = toyseg::train(cfg);

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream metrics(std::filesystem::path(out_dir) / "metrics.csv");
    if (!metrics) throw IoError("cannot write metrics.csv in " + out_dir);
    toyseg::write_metrics_csv(result, cfg, metrics);
  }
  fusecore::save_params((std::filesystem::path(out_dir) / "ckpt").string(),
                        result.params);
  std::printf("final_val_dice = %.6f\n", result.final_val_dice);
  return kOk;
}

int cmd_eval(const std::string& ckpt_dir, const std::string& data_dir,
             int max_order) {
  const auto params = fusecore::load_params(ckpt_dir);
  const auto samples = toyseg::load_dataset(data_dir);
  const double dice = toyseg::evaluate(params, samples, max_order);
  std::cout << "# n = " << samples.size() << "\n";
  std::printf("mean_dice = %.6f\n", dice);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive multistep feature-fusion toolkit"};
  app.require_subcommand(1);

  auto* coeffs = app.add_subcommand(
      "coeffs", "print the exact coefficients of one scheme");
  std::string family;
  int steps = 1;
  coeffs->add_option("--family", family, "ab or am")
      ->required()
      ->check(CLI::IsMember({"ab", "am"}));
  coeffs->add_option("--steps", steps, "step count")->required();

  auto* study = app.add_subcommand(
      "order-study", "empirical convergence orders, CSV + pass/fail report");
  std::string study_out, study_problem = "decay";
  std::string study_res = "16,32,64,128";
  study->add_option("--out", study_out, "CSV path (stdout when omitted)");
  study->add_option("--problem", study_problem,
                    "benchmark name, or 'all' for the whole suite");
  study->add_option("--resolutions", study_res, "comma-separated step counts");

  auto* trace = app.add_subcommand(
      "trace", "scheme plan of the fusion decode for a given stage count");
  int trace_stages = 0, trace_cap = 4;
  std::string trace_out;
  trace->add_option("--L", trace_stages, "stage count")->required();
  trace->add_option("--max-order", trace_cap, "order cap in 1..4");
  trace->add_option("--out", trace_out, "write to a file instead of stdout");

  auto* ode = app.add_subcommand(
      "ode-check", "compare the scheduler with a closed-form linear ODE");
  std::string ode_levels = "4,8,16";
  ode->add_option("--levels", ode_levels, "comma-separated stage counts");

  auto* grad = app.add_subcommand(
      "gradcheck", "backward pass vs central differences on a tiny pipeline");
  std::uint64_t grad_seed = 1;
  grad->add_option("--seed", grad_seed, "instance seed");

  auto* synth = app.add_subcommand("synth", "write a synthetic PGM dataset");
  std::size_t synth_n = 16, synth_h = 32, synth_w = 32;
  std::uint64_t synth_seed = 1;
  std::string synth_out;
  synth->add_option("--n", synth_n, "number of samples");
  synth->add_option("--height", synth_h, "image height");
  synth->add_option("--width", synth_w, "image width");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--out", synth_out, "output directory")->required();

  auto* train = app.add_subcommand("train", "train the toy segmentation demo");
  std::string train_config, train_out = "train_out";
  train->add_option("--config", train_config, "key = value config file")
      ->required();
  train->add_option("--out", train_out, "output directory");

  auto* eval = app.add_subcommand("eval", "score a checkpoint on a dataset");
  std::string eval_ckpt, eval_data;
  int eval_cap = 4;
  eval->add_option("--ckpt", eval_ckpt, "checkpoint directory")->required();
  eval->add_option("--data", eval_data, "PGM dataset directory")->required();
  eval->add_option("--max-order", eval_cap, "order cap in 1..4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  try {
    if (coeffs->parsed()) return cmd_coeffs(family, steps);
    if (study->parsed()) return cmd_order_study(study_out, study_problem, study_res);
    if (trace->parsed()) return cmd_trace(trace_stages, trace_cap, trace_out);
    if (ode->parsed()) return cmd_ode_check(ode_levels);
    if (grad->parsed()) return cmd_gradcheck(grad_seed);
    if (synth->parsed()) return cmd_synth(synth_n, synth_h, synth_w, synth_seed, synth_out);
    if (train->parsed()) return cmd_train(train_config, train_out);
    if (eval->parsed()) return cmd_eval(eval_ckpt, eval_data, eval_cap);
  } catch (const UnsupportedSchemeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
