// Command-line front end: code generation, tracing, lemma verification and
// the Monte Carlo attack harness.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpattack/attack.hpp"
#include "fpattack/fp_code.hpp"
#include "fpattack/fp_lemma.hpp"
#include "fpattack/rng.hpp"

namespace {

using nlohmann::json;

std::uint64_t seed_or_entropy(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int run_gen(long n, double beta, std::optional<long long> d_override,
            std::optional<std::uint64_t> seed_opt, const std::string& out_path) {
  if (d_override) {
    std::cerr << "warning: explicit code length overrides the guaranteed-length formula; "
                 "tracing guarantees do not apply\n";
  }
  const std::uint64_t seed = seed_or_entropy(seed_opt);
  fpattack::Rng rng(seed);
  auto [code, key] = fpattack::generate(n, beta, rng, d_override);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return 1;
  }
  fpattack::save_code(out, code, key, seed);
  std::cout << "wrote " << n << " x " << code.matrix.cols() << " code (seed " << seed << ") to "
            << out_path << "\n";
  return 0;
}

int run_trace(const std::string& code_path, const std::string& answer_path) {
  std::ifstream code_in(code_path, std::ios::binary);
  if (!code_in) {
    std::cerr << "error: cannot open " << code_path << "\n";
    return 1;
  }
  const fpattack::StoredCode stored = fpattack::load_code(code_in);
  std::ifstream ans_in(answer_path, std::ios::binary);
  if (!ans_in) {
    std::cerr << "error: cannot open " << answer_path << "\n";
    return 1;
  }
  std::vector<double> answer;
  answer.reserve(stored.key.reference.size());
  double v = 0.0;
  while (ans_in >> v) answer.push_back(v);
  const fpattack::TraceResult result = fpattack::trace(stored.code, stored.key, answer);
  if (result.accused) {
    std::cout << "ACCUSED " << *result.accused << "\n";
  } else {
    std::cout << "NO_ACCUSATION\n";
  }
  return 0;
}

int run_lemma_verify(long n, std::int64_t trials, const std::string& adversary_name,
                     std::optional<std::uint64_t> seed_opt) {
  fpattack::LemmaAdversary adversary;
  if (adversary_name == "identity") {
    adversary = fpattack::mean_adversary();
  } else if (adversary_name == "majority") {
    adversary = fpattack::majority_adversary();
  } else if (adversary_name == "noisy-majority") {
    adversary = fpattack::noisy_majority_adversary();
  } else {
    std::cerr << "error: unknown adversary '" << adversary_name << "'\n";
    return 1;
  }
  const std::uint64_t seed = seed_or_entropy(seed_opt);
  fpattack::Rng rng(seed);
  const fpattack::EstimateReport report =
      fpattack::estimate_lemma_expectation(adversary, n, trials, rng);
  const bool pass = report.mean - 3.0 * report.standard_error >= report.bound;
  std::cout << "adversary " << adversary.name << "  n " << n << "  trials " << trials << "  seed "
            << seed << "\n";
  std::cout << std::setprecision(6) << std::fixed;
  std::cout << "mean " << report.mean << "\nstderr " << report.standard_error << "\nbound "
            << report.bound << "\n"
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

json rates_json(const fpattack::LeakageReport& report) {
  return json{{"trace_success", report.trace_success.rate},
              {"false_accusation", report.false_accusation.rate},
              {"no_accusation", report.no_accusation.rate},
              {"agreement", report.agreement.rate}};
}

json ci_json(const fpattack::LeakageReport& report) {
  return json{{"trace_success", report.trace_success.ci95},
              {"false_accusation", report.false_accusation.ci95},
              {"no_accusation", report.no_accusation.ci95},
              {"agreement", report.agreement.ci95}};
}

int run_attack_cmd(fpattack::AttackConfig config, std::optional<std::uint64_t> seed_opt,
                   const std::string& report_path, const std::string& csv_path) {
  config.seed = seed_or_entropy(seed_opt);
  if (config.d0_override) {
    std::cerr << "warning: explicit d0 overrides the guaranteed-length formula; "
                 "tracing guarantees do not apply\n";
  }
  switch (config.task) {
    case fpattack::AttackTask::averaging:
      config.alpha = fpattack::ReductionParams::averaging(config.lambda, 1).alpha;
      if (config.mechanism.empty()) config.mechanism = "exact-average";
      break;
    case fpattack::AttackTask::clustering:
      config.alpha = fpattack::ReductionParams::clustering(config.lambda, config.k, config.z,
                                                           config.xi).alpha;
      if (config.mechanism.empty()) config.mechanism = "lloyd";
      break;
    case fpattack::AttackTask::svd:
      config.alpha = fpattack::ReductionParams::svd(config.lambda).alpha;
      if (config.mechanism.empty()) config.mechanism = "power-iteration";
      break;
    case fpattack::AttackTask::raw:
      if (config.mechanism.empty()) config.mechanism = "consensus";
      break;
  }
  fpattack::validate(config);
  const auto mechanisms = fpattack::task_mechanisms(config);

  const auto start = std::chrono::steady_clock::now();
  std::vector<fpattack::TrialRecord> records;
  const fpattack::LeakageReport report =
      fpattack::estimate_leakage(mechanisms, config, csv_path.empty() ? nullptr : &records);
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json config_json{{"task", fpattack::task_name(config.task)},
                   {"mechanism", config.mechanism},
                   {"n0", config.n0},
                   {"beta", config.beta},
                   {"alpha", config.alpha},
                   {"k", config.k},
                   {"lambda", config.lambda},
                   {"z", config.z},
                   {"xi", config.xi},
                   {"sigma", config.sigma},
                   {"points_n", config.points_n > 0 ? config.points_n : config.k * config.n0},
                   {"trials", config.trials},
                   {"seed", config.seed}};
  if (config.d0_override) {
    config_json["d0_override"] = *config.d0_override;
  } else {
    config_json["d0_override"] = nullptr;
  }
  const json out{{"config", config_json},
                 {"rates", rates_json(report)},
                 {"ci95", ci_json(report)},
                 {"runtime_seconds", runtime}};

  std::ofstream report_out(report_path, std::ios::binary);
  if (!report_out) {
    std::cerr << "error: cannot open " << report_path << " for writing\n";
    return 1;
  }
  report_out << out.dump(2) << "\n";

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) {
      std::cerr << "error: cannot open " << csv_path << " for writing\n";
      return 1;
    }
    csv << "trial,accused,coalition_hit,agreement\n";
    for (const auto& r : records) {
      csv << r.trial << ',' << r.accused << ',' << (r.coalition_hit ? 1 : 0) << ','
          << (r.agreement_observed ? 1 : 0) << '\n';
    }
  }
  std::cout << "trace_success " << report.trace_success.rate << "  no_accusation "
            << report.no_accusation.rate << "  agreement " << report.agreement.rate << "  ("
            << config.trials << " trials, " << std::setprecision(1) << std::fixed << runtime
            << "s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fingerprinting-code tracing toolkit"};
  app.require_subcommand(1);

  // gen
  long gen_n = 0;
  double gen_beta = 0.0;
  std::optional<long long> gen_d;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a codebook and trace key");
  gen->add_option("--n", gen_n, "number of users")->required();
  gen->add_option("--beta", gen_beta, "soundness target in (0,1)")->required();
  gen->add_option("--d", gen_d, "override the code length (testing only)");
  gen->add_option("--seed", gen_seed, "rng seed (default: entropy)");
  gen->add_option("--out", gen_out, "output file")->required();

  // trace
  std::string trace_code, trace_answer;
  auto* tr = app.add_subcommand("trace", "trace an answer vector against a stored code");
  tr->add_option("--codebook", trace_code, "stored code file")->required();
  tr->add_option("--answer", trace_answer, "whitespace-separated answer entries in [-1,1]")
      ->required();

  // lemma-verify
  long lv_n = 0;
  std::int64_t lv_trials = 0;
  std::string lv_adversary;
  std::optional<std::uint64_t> lv_seed;
  auto* lv = app.add_subcommand("lemma-verify", "Monte Carlo check of the correlation bound");
  lv->add_option("--n", lv_n, "column length")->required();
  lv->add_option("--trials", lv_trials, "Monte Carlo trials")->required();
  lv->add_option("--adversary", lv_adversary, "identity | majority | noisy-majority")->required();
  lv->add_option("--seed", lv_seed, "rng seed (default: entropy)");

  // attack
  fpattack::AttackConfig config;
  std::string task_str, report_path, csv_path;
  std::optional<std::uint64_t> attack_seed;
  std::optional<long long> attack_d0;
  auto* at = app.add_subcommand("attack", "Monte Carlo tracing attack against a mechanism");
  at->add_option("--task", task_str, "averaging | clustering | svd | raw")->required();
  at->add_option("--n0", config.n0, "users per block")->required();
  at->add_option("--beta", config.beta, "soundness target in (0,1)")->required();
  at->add_option("--lambda", config.lambda, "accuracy slack multiplier (>= 1)")->required();
  at->add_option("--k", config.k, "number of blocks (default 1)");
  at->add_option("--z", config.z, "clustering norm exponent (default 2)");
  at->add_option("--xi", config.xi, "clustering mass parameter");
  at->add_option("--trials", config.trials, "Monte Carlo trials")->required();
  at->add_option("--seed", attack_seed, "rng seed (default: entropy)");
  at->add_option("--d0", attack_d0, "override the code length (testing only)");
  at->add_option("--report", report_path, "JSON report path")->required();
  at->add_option("--csv", csv_path, "optional per-trial CSV path");
  at->add_option("--mech", config.mechanism,
                 "mechanism (raw: consensus | constant-ones; averaging: exact-average | "
                 "gaussian-average)");
  at->add_option("--sigma", config.sigma, "noise scale for gaussian-average");
  at->add_option("--alpha", config.alpha, "padding rate for the raw task (default 0.5)");
  at->add_option("--points-n", config.points_n, "clustering point budget (default k*n0)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(gen_n, gen_beta, gen_d, gen_seed, gen_out);
    if (tr->parsed()) return run_trace(trace_code, trace_answer);
    if (lv->parsed()) return run_lemma_verify(lv_n, lv_trials, lv_adversary, lv_seed);
    if (at->parsed()) {
      if (task_str == "averaging") {
        config.task = fpattack::AttackTask::averaging;
      } else if (task_str == "clustering") {
        config.task = fpattack::AttackTask::clustering;
      } else if (task_str == "svd") {
        config.task = fpattack::AttackTask::svd;
      } else if (task_str == "raw") {
        config.task = fpattack::AttackTask::raw;
        if (config.alpha <= 0.0) config.alpha = 0.5;
      } else {
        std::cerr << "error: unknown task '" << task_str << "'\n";
        return 1;
      }
      config.d0_override = attack_d0;
      return run_attack_cmd(config, attack_seed, report_path, csv_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
