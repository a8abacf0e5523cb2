#include "fpattack/attack.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "fpattack/errors.hpp"
#include "fpattack/mechanisms.hpp"

namespace fpattack {

std::string task_name(AttackTask task) {
  switch (task) {
    case AttackTask::averaging: return "averaging";
    case AttackTask::clustering: return "clustering";
    case AttackTask::svd: return "svd";
    case AttackTask::raw: return "raw";
  }
  return "unknown";
}

void validate(const AttackConfig& config) {
  if (config.n0 < 1) throw std::invalid_argument("attack config: n0 must be >= 1");
  if (!(config.beta > 0.0 && config.beta < 1.0)) {
    throw std::invalid_argument("attack config: beta must lie in (0, 1)");
  }
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("attack config: alpha must lie in (0, 1]");
  }
  if (config.k < 1) throw std::invalid_argument("attack config: k must be >= 1");
  if (!(config.lambda >= 1.0)) throw std::invalid_argument("attack config: lambda must be >= 1");
  if (config.trials < 1) throw std::invalid_argument("attack config: trials must be >= 1");
  if (config.d0_override && *config.d0_override < 1) {
    throw std::invalid_argument("attack config: d0 override must be >= 1");
  }
  if (config.task == AttackTask::clustering) {
    const ReductionParams p = ReductionParams::clustering(config.lambda, config.k, config.z, config.xi);
    if (p.m != config.k * config.n0) {
      throw std::invalid_argument(
          "attack config: clustering subsample size m = " + std::to_string(p.m) +
          " must equal k*n0 = " + std::to_string(config.k * config.n0) +
          " (adjust xi; implied n0 = " + std::to_string(p.m / config.k) + ")");
    }
  }
}

PipelineInput build_pipeline_input(const SignMatrix& codebook, double alpha, long k, Rng& rng) {
  const PaddingPlan plan = padding_plan_from_d0(codebook.cols(), alpha);
  PapInstance pap = pap_transform(codebook, plan.pad_len, rng);
  PipelineInput out;
  out.d0 = plan.d0;
  out.pad_len = plan.pad_len;
  out.slot = k > 1 ? 1 + rng.index(k) : 1;
  if (k > 1) {
    out.input = k_copy_embed(pap.padded, out.slot, k, plan.pad_len, plan.d0, rng);
    out.real_block = std::move(pap.padded);
  } else {
    out.input = std::move(pap.padded);
  }
  out.perm = std::move(pap.perm);
  return out;
}

AttackOutcome run_attack(std::span<const WeaklyAccurateMechanism> mechanisms,
                         const AttackConfig& config, Rng& rng) {
  if (mechanisms.empty()) throw std::invalid_argument("run_attack: need at least one mechanism");
  const long long d0 = config.d0_override ? *config.d0_override : code_length(config.n0, config.beta);
  auto [code, key] = generate(config.n0, config.beta, rng, d0);
  PipelineInput pipeline = build_pipeline_input(code.matrix, config.alpha, config.k, rng);
  const long long d = pipeline.input.cols();

  // All candidates consume an identical randomness stream, so estimator
  // pairs differing only in post-processing see the same estimate.
  Rng mech_rng_base = rng.split();

  AttackOutcome outcome;
  for (const auto& mech : mechanisms) {
    Rng mech_rng = mech_rng_base;
    const std::vector<double> answer = mech.apply(pipeline.input, mech_rng);
    if (answer.size() != static_cast<std::size_t>(d)) {
      throw ContractViolation("mechanism '" + mech.name + "' returned length " +
                              std::to_string(answer.size()) + ", expected " + std::to_string(d));
    }
    for (double v : answer) {
      if (!(v >= -1.0 && v <= 1.0)) {
        throw ContractViolation("mechanism '" + mech.name + "' returned entry outside [-1, 1]");
      }
    }
    if (strongly_agrees(std::span<const double>(answer), pipeline.agreement_target())) {
      outcome.agreement_observed = true;
    }
    const std::vector<double> extracted = extract(std::span<const double>(answer), pipeline.perm, d0);
    const TraceResult result = trace(code, key, extracted);
    if (result.accused) {
      outcome.result = result;
      break;
    }
  }
  outcome.coalition_hit = outcome.result.accused.has_value();
  return outcome;
}

AttackOutcome run_attack(const WeaklyAccurateMechanism& mechanism, const AttackConfig& config,
                         Rng& rng) {
  return run_attack(std::span<const WeaklyAccurateMechanism>(&mechanism, 1), config, rng);
}

LeakageReport estimate_leakage(std::span<const WeaklyAccurateMechanism> mechanisms,
                               const AttackConfig& config,
                               std::vector<TrialRecord>* per_trial) {
  validate(config);
  std::int64_t hits = 0;
  std::int64_t false_hits = 0;
  std::int64_t silent = 0;
  std::int64_t agreements = 0;
  if (per_trial != nullptr) {
    per_trial->clear();
    per_trial->reserve(static_cast<std::size_t>(config.trials));
  }
  for (std::int64_t t = 0; t < config.trials; ++t) {
    Rng trial_rng = Rng::derive(config.seed, 0x7472'6961'6cULL, static_cast<std::uint64_t>(t));
    const AttackOutcome outcome = run_attack(mechanisms, config, trial_rng);
    if (!outcome.result.accused) {
      ++silent;
    } else if (outcome.coalition_hit) {
      ++hits;
    } else {
      ++false_hits;
    }
    agreements += outcome.agreement_observed;
    if (per_trial != nullptr) {
      per_trial->push_back(TrialRecord{t, outcome.result.accused.value_or(0), outcome.coalition_hit,
                                       outcome.agreement_observed});
    }
  }
  LeakageReport report;
  report.trials = config.trials;
  report.trace_success = binomial_rate(hits, config.trials);
  report.false_accusation = binomial_rate(false_hits, config.trials);
  report.no_accusation = binomial_rate(silent, config.trials);
  report.agreement = binomial_rate(agreements, config.trials);
  return report;
}

LeakageReport estimate_leakage(const WeaklyAccurateMechanism& mechanism, const AttackConfig& config,
                               std::vector<TrialRecord>* per_trial) {
  return estimate_leakage(std::span<const WeaklyAccurateMechanism>(&mechanism, 1), config, per_trial);
}

WeaklyAccurateMechanism consensus_mechanism(long k) {
  if (k < 1) throw std::invalid_argument("consensus_mechanism: k must be >= 1");
  WeaklyAccurateMechanism mech;
  mech.name = k == 1 ? "consensus" : "random-block-consensus";
  mech.apply = [k](const SignMatrix& x, Rng& rng) {
    if (x.rows() % k != 0) {
      throw std::invalid_argument("consensus mechanism: row count not divisible by k");
    }
    const long block_rows = x.rows() / k;
    const long row0 = (k == 1 ? 0 : rng.index(k)) * block_rows;
    std::vector<double> out(static_cast<std::size_t>(x.cols()));
    for (long j = 0; j < x.cols(); ++j) {
      const auto col = x.column(j);
      long s = 0;
      for (long i = 0; i < block_rows; ++i) s += col[static_cast<std::size_t>(row0 + i)];
      out[static_cast<std::size_t>(j)] = s >= 0 ? 1.0 : -1.0;
    }
    return out;
  };
  return mech;
}

WeaklyAccurateMechanism constant_ones_mechanism() {
  WeaklyAccurateMechanism mech;
  mech.name = "constant-ones";
  mech.apply = [](const SignMatrix& x, Rng&) {
    return std::vector<double>(static_cast<std::size_t>(x.cols()), 1.0);
  };
  return mech;
}

std::vector<WeaklyAccurateMechanism> task_mechanisms(const AttackConfig& config) {
  switch (config.task) {
    case AttackTask::averaging: {
      if (config.mechanism == "gaussian-average") {
        const double sigma = config.sigma;
        AveragingEstimator est = [sigma](double, const PointSet& pts, Rng& rng) {
          return gaussian_average(pts, sigma, rng);
        };
        return {averaging_adversary(std::move(est), config.lambda)};
      }
      AveragingEstimator est = [](double, const PointSet& pts, Rng&) { return exact_average(pts); };
      return {averaging_adversary(std::move(est), config.lambda)};
    }
    case AttackTask::clustering: {
      Clusterer clusterer = [](const PointSet& pts, long centers, Rng& rng) {
        return lloyd_kmeans(pts, centers, 10, rng);
      };
      const long n = config.points_n > 0 ? config.points_n : config.k * config.n0;
      return {clustering_adversary(std::move(clusterer), config.k, config.z, config.lambda,
                                   config.xi, n)};
    }
    case AttackTask::svd: {
      SvdEstimator est = [](double, const PointSet& pts, Rng& rng) {
        return power_iteration_top_vector(pts, 30, rng);
      };
      auto [plain, negated] = svd_adversary(std::move(est), config.lambda);
      return {std::move(plain), std::move(negated)};
    }
    case AttackTask::raw: {
      if (config.mechanism == "constant-ones") return {constant_ones_mechanism()};
      if (config.mechanism == "consensus" || config.mechanism.empty()) {
        return {consensus_mechanism(config.k)};
      }
      throw std::invalid_argument("task_mechanisms: unknown raw mechanism '" + config.mechanism + "'");
    }
  }
  throw std::invalid_argument("task_mechanisms: unknown task");
}

}  // namespace fpattack
