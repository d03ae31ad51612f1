#include "glingam/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "glingam/datagen.hpp"
#include "glingam/errors.hpp"
#include "glingam/eval.hpp"
#include "glingam/group_search.hpp"
#include "glingam/io.hpp"
#include "glingam/large_scale.hpp"

namespace glingam::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEstimation = 1;
constexpr int kExitUsage = 2;

double parse_delta(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return kDagDelta;
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(value >= 0.0)) throw InvalidInputError("--delta must be a non-negative number or 'inf'");
  return value;
}

std::string delta_text(double delta) { return std::isinf(delta) ? "inf" : io::format_double(delta); }

nlohmann::json delta_json(double delta) {
  return std::isinf(delta) ? nlohmann::json("inf") : nlohmann::json(delta);
}

int resolve_k(const std::string& text, int n) {
  if (text == "auto") return default_k(n);
  int k = 0;
  std::size_t used = 0;
  try {
    k = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || k < 1) throw InvalidInputError("--kneig must be a positive integer or 'auto'");
  if (k >= n) throw InvalidInputError("--kneig must be smaller than the sample count");
  return k;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInputError("cannot write '" + path + "'");
  return out;
}

std::string join(const IndexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

nlohmann::json fit_to_json(const FitResult& result, nlohmann::json params) {
  nlohmann::json j = io::model_to_json(result.model);
  auto within = nlohmann::json::array();
  for (std::size_t b = 0; b < result.within_block_cov.size(); ++b)
    within.push_back({{"block", b}, {"cov", io::matrix_to_json(result.within_block_cov[b])}});
  j["within_block_cov"] = std::move(within);
  j["params"] = std::move(params);
  return j;
}

struct FitOptions {
  std::string input;
  std::string delta = "0.01";
  std::string kneig = "auto";
  std::string mode = "exact";
  int h = 5;
  int subsets = 50;
  std::uint64_t seed = 0;
  std::string output;
  std::string trace;
};

struct SimulateOptions {
  int p = 5;
  int n = 1000;
  std::uint64_t seed = 0;
  std::string mode = "chain";
  std::string output;
  std::string truth;
  std::optional<double> eq4_b;
  std::optional<double> eq4_c;
  std::string eq4_q = "2";
};

struct BenchmarkOptions {
  int p = 5;
  int n = 1000;
  int trials = 10;
  std::string mode = "dag";
  std::string delta = "0.01";
  std::string kneig = "auto";
  std::string method = "auto";
  int h = 5;
  int subsets = 50;
  std::uint64_t seed = 0;
  std::string report;
  std::string scatter;
  bool no_timing = false;
};

int cmd_fit(const FitOptions& opt, std::ostream& out) {
  const DataMatrix data = center(io::read_csv_file(opt.input));
  SearchConfig cfg;
  cfg.delta = parse_delta(opt.delta);
  cfg.mi.k = resolve_k(opt.kneig, data.n());
  if (opt.mode != "exact" && opt.mode != "large") throw InvalidInputError("--mode must be exact or large");

  nlohmann::json params = {{"input", opt.input}, {"delta", delta_json(cfg.delta)}, {"kneig", cfg.mi.k},
                           {"mode", opt.mode},   {"h", opt.h},                   {"subsets", opt.subsets},
                           {"seed", opt.seed}};
  FitResult result = opt.mode == "exact"
                         ? fit(data, cfg)
                         : fit_large(data, LargeScaleConfig{opt.h, opt.subsets, opt.seed}, cfg).fit;

  const std::string text = fit_to_json(result, std::move(params)).dump(2) + "\n";
  if (opt.output.empty()) {
    out << text;
  } else {
    auto file = open_output(opt.output);
    file << text;
  }
  if (!opt.trace.empty()) {
    auto file = open_output(opt.trace);
    file << "depth,subset,score\n";
    for (const auto& entry : result.trace)
      file << entry.depth << ',' << join(entry.subset) << ',' << io::format_double(entry.score) << '\n';
  }
  return kExitOk;
}

Eq4Params eq4_params(const SimulateOptions& opt) {
  Eq4Params params;
  if (opt.eq4_b) params.b21 = params.b32 = params.b42 = params.b43 = params.b51 = params.b54 = *opt.eq4_b;
  if (opt.eq4_c) params.c1 = params.c2 = params.c4 = params.c5 = *opt.eq4_c;
  if (opt.eq4_q == "random") {
    params.source_exponent = 0.0;
  } else {
    std::size_t used = 0;
    try {
      params.source_exponent = std::stod(opt.eq4_q, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != opt.eq4_q.size() || !(params.source_exponent > 0.0))
      throw InvalidInputError("--eq4-q must be a positive number or 'random'");
  }
  return params;
}

int cmd_simulate(const SimulateOptions& opt) {
  const GenSpec spec{opt.p, opt.n, opt.seed, parse_gen_mode(opt.mode), eq4_params(opt)};
  if (spec.p < 1) throw InvalidInputError("--p must be at least 1");
  if (spec.n < 2) throw InvalidInputError("--n must be at least 2");
  const Dataset ds = generate_dataset(spec);
  {
    auto file = open_output(opt.output);
    io::write_csv(file, ds.data);
  }
  if (!opt.truth.empty()) {
    nlohmann::json j = io::model_to_json(ds.truth);
    j["params"] = {{"p", ds.truth.p()}, {"n", spec.n}, {"seed", spec.seed}, {"mode", to_string(spec.mode)}};
    if (spec.mode == GenMode::Eq4Example) {
      const auto& e = spec.eq4;
      j["params"]["eq4"] = {{"b21", e.b21}, {"b32", e.b32}, {"b42", e.b42}, {"b43", e.b43}, {"b51", e.b51},
                            {"b54", e.b54}, {"c1", e.c1},   {"c2", e.c2},   {"c4", e.c4},   {"c5", e.c5},
                            {"q", opt.eq4_q}};
    }
    auto file = open_output(opt.truth);
    file << j.dump(2) << "\n";
  }
  return kExitOk;
}

std::string scatter_path_for(const std::string& report) {
  const auto dot = report.rfind('.');
  const auto slash = report.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return report + "_scatter.csv";
  return report.substr(0, dot) + "_scatter" + report.substr(dot);
}

int cmd_benchmark(const BenchmarkOptions& opt) {
  const GenMode mode = parse_gen_mode(opt.mode);
  if (opt.p < 1 || opt.n < 2 || opt.trials < 1) throw InvalidInputError("--p, --n and --trials must be positive");
  if (opt.method != "auto" && opt.method != "exact" && opt.method != "large")
    throw InvalidInputError("--method must be auto, exact or large");
  SearchConfig cfg;
  cfg.delta = parse_delta(opt.delta);
  cfg.mi.k = resolve_k(opt.kneig, opt.n);

  auto report = open_output(opt.report);
  auto scatter = open_output(opt.scatter.empty() ? scatter_path_for(opt.report) : opt.scatter);
  report << "trial,p,n,mode,delta,error_count,runtime_ms\n";
  scatter << "trial,i,j,true_b,est_b\n";
  for (int trial = 0; trial < opt.trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(opt.seed, static_cast<std::uint64_t>(trial));
    const Dataset ds = generate_dataset({opt.p, opt.n, trial_seed, mode, {}});
    const int p = ds.truth.p();
    const bool large = opt.method == "large" || (opt.method == "auto" && p > cfg.max_exact_p);

    const auto start = std::chrono::steady_clock::now();
    const FitResult result =
        large ? fit_large(ds.data, LargeScaleConfig{std::min(opt.h, p), opt.subsets, trial_seed}, cfg).fit
              : fit(ds.data, cfg);
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

    report << trial << ',' << p << ',' << opt.n << ',' << to_string(mode) << ',' << delta_text(cfg.delta) << ','
           << order_error_count(ds.truth, result.model.ordering()) << ','
           << (opt.no_timing ? std::string("NA") : io::format_double(std::round(elapsed.count() * 1000.0) / 1000.0))
           << '\n';
    for (const auto& pr : scatter_pairs(ds.truth, result.model))
      scatter << trial << ',' << pr.i << ',' << pr.j << ',' << io::format_double(pr.true_b) << ','
              << io::format_double(pr.est_b) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block-ordered linear non-Gaussian causal model estimation"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  FitOptions fit_opt;
  auto* fit_cmd = app.add_subcommand("fit", "Estimate a block ordering and connection strengths from CSV data");
  fit_cmd->add_option("--input", fit_opt.input, "CSV file, rows = samples, columns = variables")->required();
  fit_cmd->add_option("--delta", fit_opt.delta, "Split threshold on mutual information, or 'inf' for DAG mode")
      ->capture_default_str();
  fit_cmd->add_option("--kneig", fit_opt.kneig, "Nearest-neighbor count, or 'auto' for 5% of n")
      ->capture_default_str();
  fit_cmd->add_option("--mode", fit_opt.mode, "exact or large")->capture_default_str();
  fit_cmd->add_option("--h", fit_opt.h, "Covering subset size (large mode)")->capture_default_str();
  fit_cmd->add_option("--subsets", fit_opt.subsets, "Number of covering subsets (large mode)")
      ->capture_default_str();
  fit_cmd->add_option("--seed", fit_opt.seed, "Covering seed (large mode)")->capture_default_str();
  fit_cmd->add_option("--output", fit_opt.output, "Model JSON path (default: standard output)");
  fit_cmd->add_option("--trace", fit_opt.trace, "Score trace CSV path");

  SimulateOptions sim_opt;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic dataset and its generating model");
  sim_cmd->add_option("--p", sim_opt.p, "Number of variables (ignored for eq4)")->capture_default_str();
  sim_cmd->add_option("--n", sim_opt.n, "Number of samples")->capture_default_str();
  sim_cmd->add_option("--seed", sim_opt.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--mode", sim_opt.mode, "chain, dag or eq4")->capture_default_str();
  sim_cmd->add_option("--output", sim_opt.output, "Data CSV path")->required();
  sim_cmd->add_option("--truth", sim_opt.truth, "Truth model JSON path");
  sim_cmd->add_option("--eq4-b", sim_opt.eq4_b, "eq4: every connection strength (default 0.8)");
  sim_cmd->add_option("--eq4-c", sim_opt.eq4_c, "eq4: every confounder loading (default 0.7)");
  sim_cmd->add_option("--eq4-q", sim_opt.eq4_q, "eq4: source exponent, or 'random' to draw per source")
      ->capture_default_str();

  BenchmarkOptions bench_opt;
  auto* bench_cmd = app.add_subcommand("benchmark", "Repeated generate / fit / evaluate trials");
  bench_cmd->add_option("--p", bench_opt.p, "Number of variables")->capture_default_str();
  bench_cmd->add_option("--n", bench_opt.n, "Number of samples")->capture_default_str();
  bench_cmd->add_option("--trials", bench_opt.trials, "Number of trials")->capture_default_str();
  bench_cmd->add_option("--mode", bench_opt.mode, "chain, dag or eq4")->capture_default_str();
  bench_cmd->add_option("--delta", bench_opt.delta, "Split threshold, or 'inf'")->capture_default_str();
  bench_cmd->add_option("--kneig", bench_opt.kneig, "Nearest-neighbor count, or 'auto'")->capture_default_str();
  bench_cmd->add_option("--method", bench_opt.method, "auto, exact or large (auto: large above 15 variables)")
      ->capture_default_str();
  bench_cmd->add_option("--h", bench_opt.h, "Covering subset size")->capture_default_str();
  bench_cmd->add_option("--subsets", bench_opt.subsets, "Number of covering subsets")->capture_default_str();
  bench_cmd->add_option("--seed", bench_opt.seed, "Base seed; trial seeds are derived from it")
      ->capture_default_str();
  bench_cmd->add_option("--report", bench_opt.report, "Per-trial report CSV path")->required();
  bench_cmd->add_option("--scatter", bench_opt.scatter, "Scatter CSV path (default: <report>_scatter.csv)");
  bench_cmd->add_flag("--no-timing", bench_opt.no_timing, "Write NA instead of measured runtimes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_opt, out);
    if (*sim_cmd) return cmd_simulate(sim_opt);
    if (*bench_cmd) return cmd_benchmark(bench_opt);
  } catch (const InvalidInputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "estimation failed: " << e.what() << '\n';
    return kExitEstimation;
  }
  return kExitUsage;
}

}  // namespace glingam::cli
