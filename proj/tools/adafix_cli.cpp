// Copyright 2026 The AdaFix Authors. All Rights Reserved.
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

// Command-line front end: run / verify / compare / bound.
//
// Exit codes: 0 success, 1 usage or config error, 2 suite failure,
// 3 run divergence.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adafix/analysis.hpp"
#include "adafix/config.hpp"
#include "adafix/csv.hpp"
#include "adafix/error.hpp"
#include "adafix/experiment.hpp"
#include "adafix/suites.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSuiteFailure = 2;
constexpr int kExitDiverged = 3;

std::string flag_name(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '_', '-');
  return "--" + out;
}

bool is_bool_key(std::string_view key) {
  return key == "gate_signed" || key == "freeze_permanent";
}

/// Config file plus one flag per config key; flags win over the file.
struct ConfigOptions {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App& app) {
    app.add_option("-c,--config", config_path, "key = value config file");
    for (std::string_view key : adafix::config_keys()) {
      const std::string k(key);
      if (is_bool_key(key)) {
        options[k] = app.add_flag(flag_name(key), switches[k]);
      } else {
        options[k] = app.add_option(flag_name(key), values[k]);
      }
    }
  }

  adafix::ExperimentConfig resolve() const {
    adafix::KeyValues kv;
    if (!config_path.empty()) kv = adafix::read_key_values(config_path);
    for (const auto& [key, opt] : options) {
      if (opt->count() == 0) continue;
      kv[key] = is_bool_key(key) ? (switches.at(key) ? "true" : "false") : values.at(key);
    }
    return adafix::config_from_key_values(kv);
  }
};

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw adafix::Error(adafix::ErrorKind::IoError, "cannot write " + path);
  out << j.dump(2) << "\n";
}

int cmd_run(const ConfigOptions& opts) {
  const adafix::ExperimentConfig cfg = opts.resolve();
  const adafix::TrajectoryRecord record = adafix::run_experiment(cfg);
  const adafix::RunSummary summary = adafix::summarize(cfg, record);
  nlohmann::json j = adafix::to_json(summary);
  j["rows"] = record.rows.size();
  if (!cfg.output_path.empty()) j["output"] = cfg.output_path;
  if (record.divergence) j["divergence"] = record.divergence->reason;
  std::cout << j.dump(2) << "\n";
  return record.divergence ? kExitDiverged : 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::int64_t cases,
               bool literal, const std::string& report_path) {
  const auto kind = adafix::parse_suite_kind(suite);
  if (!kind) {
    std::cerr << "unknown suite '" << suite
              << "' (expected theorem31, gradients or optimizer_properties)\n";
    return kExitUsage;
  }
  if (cases < 1) {
    std::cerr << "--cases must be >= 1\n";
    return kExitUsage;
  }
  const auto report = adafix::run_verification_suite(
      *kind, seed, cases,
      literal ? adafix::BoundForm::Printed : adafix::BoundForm::ExactRoot);
  const nlohmann::json j = report.to_json();
  if (!report_path.empty()) write_json(j, report_path);
  std::cout << adafix::to_string(*kind) << ": " << (j["total"].get<std::size_t>() - report.failures)
            << "/" << j["total"].get<std::size_t>() << " cases passed\n";
  return report.passed() ? 0 : kExitSuiteFailure;
}

int cmd_compare(const ConfigOptions& opts, const std::string& optimizers,
                const std::string& out_dir, const std::string& summary_path) {
  const adafix::ExperimentConfig base = opts.resolve();
  std::vector<adafix::ExperimentConfig> cfgs;
  std::size_t start = 0;
  while (true) {
    const auto comma = optimizers.find(',', start);
    const std::string name = optimizers.substr(start, comma - start);
    const auto kind = adafix::parse_optimizer_kind(name);
    if (!kind) {
      throw adafix::Error(adafix::ErrorKind::ConfigError, "unknown optimizer '" + name + "'");
    }
    adafix::ExperimentConfig cfg = base;
    cfg.optimizer = *kind;
    cfg.output_path.clear();
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      cfg.output_path = (std::filesystem::path(out_dir) / (name + ".csv")).string();
    }
    cfgs.push_back(std::move(cfg));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  nlohmann::json j;
  j["config"] = adafix::to_key_values(base);
  j["config"].erase("optimizer");
  j["runs"] = adafix::to_json(adafix::compare_optimizers(cfgs));
  write_json(j, summary_path);
  return 0;
}

int cmd_bound(const ConfigOptions& opts, const std::string& x_text,
              const std::string& g_text, double delta, bool literal) {
  const adafix::ExperimentConfig cfg = opts.resolve();
  const adafix::Objective f = cfg.build_objective();
  const adafix::ParamVector x =
      x_text.empty() ? cfg.initial_point() : adafix::parse_vector("x", x_text);
  if (!f.optimum()) {
    throw adafix::Error(adafix::ErrorKind::ConfigError, "objective has no optimum");
  }
  const adafix::ParamVector g = g_text.empty() ? f.grad(x) : adafix::parse_vector("g", g_text);
  const adafix::ParamVector& x_star = *f.optimum();
  const double eta = cfg.hyper.eta;
  const double exact = adafix::recede_bound({x, x_star, g, delta, eta});
  const double printed =
      adafix::recede_bound({x, x_star, g, delta, eta}, adafix::BoundForm::Printed);
  nlohmann::json j;
  j["objective"] = f.name();
  j["x"] = x.raw();
  j["x_star"] = x_star.raw();
  j["g"] = g.raw();
  j["delta"] = delta;
  j["eta"] = eta;
  j["D"] = adafix::distance(x, x_star);
  j["G"] = adafix::norm2(g);
  j["bound"] = literal ? printed : exact;
  j["form"] = literal ? "printed" : "exact_root";
  j["exact_root"] = exact;
  j["printed"] = printed;
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive-optimizer experiments: AdaFix, Adam, AMSGrad, AdaBound, SGDM"};
  app.require_subcommand(1);

  ConfigOptions run_opts;
  auto* run = app.add_subcommand("run", "Run one experiment and write its trajectory CSV");
  run_opts.attach(*run);

  std::string suite = "theorem31";
  std::uint64_t seed = 1;
  std::int64_t cases = 1000;
  bool verify_literal = false;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Run a property verification suite");
  verify->add_option("--suite", suite, "theorem31 | gradients | optimizer_properties");
  verify->add_option("--seed", seed);
  verify->add_option("--cases", cases, "number of randomized cases");
  verify->add_flag("--bound-literal", verify_literal, "use the printed bound expression");
  verify->add_option("--report", report_path, "write the JSON report here");

  ConfigOptions compare_opts;
  std::string optimizers = "adam,adafix,amsgrad";
  std::string out_dir;
  std::string summary_path;
  auto* compare = app.add_subcommand("compare", "Run several optimizers on one setup");
  compare_opts.attach(*compare);
  compare->add_option("--optimizers", optimizers, "comma-separated optimizer names");
  compare->add_option("--out-dir", out_dir, "write one CSV per optimizer here");
  compare->add_option("--summary", summary_path, "write the JSON summary here");

  ConfigOptions bound_opts;
  std::string x_text;
  std::string g_text;
  double delta = 0.5;
  bool bound_literal = false;
  auto* bound = app.add_subcommand("bound", "Print the recede bound for one point");
  bound_opts.attach(*bound);
  bound->add_option("--x", x_text, "point, comma-separated (default: x0)");
  bound->add_option("--g", g_text, "gradient at x (default: objective gradient)");
  bound->add_option("--delta", delta, "one-point convexity constant")->required();
  bound->add_flag("--bound-literal", bound_literal, "report the printed expression");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*verify) return cmd_verify(suite, seed, cases, verify_literal, report_path);
    if (*compare) return cmd_compare(compare_opts, optimizers, out_dir, summary_path);
    if (*bound) return cmd_bound(bound_opts, x_text, g_text, delta, bound_literal);
  } catch (const adafix::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
