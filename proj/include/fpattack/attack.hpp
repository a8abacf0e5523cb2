#ifndef FPATTACK_ATTACK_HPP
#define FPATTACK_ATTACK_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpattack/fp_code.hpp"
#include "fpattack/pap.hpp"
#include "fpattack/reductions.hpp"
#include "fpattack/rng.hpp"
#include "fpattack/stats.hpp"

namespace fpattack {

// Monte Carlo tracing harness.  One trial: draw a code, pad and permute it
// under a fresh permutation, optionally hide it among k-1 decoy blocks,
// hand the result to a black-box mechanism, un-permute the answer and run
// the tracer.  The coalition is the full user set [1..n0].

enum class AttackTask { averaging, clustering, svd, raw };

std::string task_name(AttackTask task);

struct AttackConfig {
  AttackTask task = AttackTask::raw;
  std::string mechanism;  // raw: "consensus" | "constant-ones"; informational otherwise
  long n0 = 0;
  double beta = 0.0;
  double alpha = 0.0;  // padding rate used by the plan
  long k = 1;
  double lambda = 1.0;
  double z = 2.0;   // clustering only
  double xi = 0.0;  // clustering only
  long points_n = 0;  // clustering only; 0 means "equal to the subsample size"
  double sigma = 0.0;  // gaussian-average only
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<long long> d0_override;
};

void validate(const AttackConfig& config);

struct AttackOutcome {
  TraceResult result;
  bool coalition_hit = false;
  bool agreement_observed = false;
};

struct TrialRecord {
  std::int64_t trial = 0;
  long accused = 0;  // 0 when no accusation
  bool coalition_hit = false;
  bool agreement_observed = false;
};

struct LeakageReport {
  std::int64_t trials = 0;
  RateEstimate trace_success;
  RateEstimate false_accusation;
  RateEstimate no_accusation;
  RateEstimate agreement;
};

// The matrix a mechanism will see, together with the handles needed to
// undo the transform.  Split out so tests can drive it with fixed
// randomness (e.g. the neighboring-rows check).
struct PipelineInput {
  SignMatrix input;       // (k*n0) x d
  SignMatrix real_block;  // empty when k = 1: `input` is the real block
  Permutation perm;       // permutation of the real block
  long slot = 1;
  long long d0 = 0;
  long long pad_len = 0;

  const SignMatrix& agreement_target() const { return k_was_one() ? input : real_block; }
  bool k_was_one() const { return real_block.rows() == 0; }
};

PipelineInput build_pipeline_input(const SignMatrix& codebook, double alpha, long k, Rng& rng);

// One trial against one or more candidate mechanisms sharing a single
// randomness stream (used for estimator pairs that differ only in
// post-processing).  Success when any candidate's answer traces.
AttackOutcome run_attack(std::span<const WeaklyAccurateMechanism> mechanisms,
                         const AttackConfig& config, Rng& rng);
AttackOutcome run_attack(const WeaklyAccurateMechanism& mechanism, const AttackConfig& config,
                         Rng& rng);

// config.trials independent trials, rng streams derived per trial index.
LeakageReport estimate_leakage(std::span<const WeaklyAccurateMechanism> mechanisms,
                               const AttackConfig& config,
                               std::vector<TrialRecord>* per_trial = nullptr);
LeakageReport estimate_leakage(const WeaklyAccurateMechanism& mechanism, const AttackConfig& config,
                               std::vector<TrialRecord>* per_trial = nullptr);

// Stock black boxes for the raw task.
WeaklyAccurateMechanism consensus_mechanism(long k = 1);  // entrywise majority of a random block
WeaklyAccurateMechanism constant_ones_mechanism();

// Candidate mechanisms implied by the config (exact-average, Lloyd,
// power-iteration pair, or the stock raw boxes).
std::vector<WeaklyAccurateMechanism> task_mechanisms(const AttackConfig& config);

}  // namespace fpattack

#endif
