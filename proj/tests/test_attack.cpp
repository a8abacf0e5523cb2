#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpattack/attack.hpp"
#include "fpattack/errors.hpp"
#include "fpattack/hard_dist.hpp"
#include "fpattack/rng.hpp"

using fpattack::AttackConfig;
using fpattack::AttackTask;
using fpattack::Rng;
using fpattack::SignMatrix;
using fpattack::WeaklyAccurateMechanism;

TEST_SUITE_BEGIN("attack");

namespace {

AttackConfig base_config() {
  AttackConfig c;
  c.task = AttackTask::raw;
  c.mechanism = "consensus";
  c.n0 = 2;
  c.beta = 0.1;
  c.alpha = 0.5;
  c.trials = 10;
  c.seed = 1;
  c.d0_override = 2000;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  auto bad = base_config();
  bad.n0 = 0;
  CHECK_THROWS_AS(fpattack::validate(bad), std::invalid_argument);
  bad = base_config();
  bad.beta = 0.0;
  CHECK_THROWS_AS(fpattack::validate(bad), std::invalid_argument);
  bad = base_config();
  bad.beta = 1.0;
  CHECK_THROWS_AS(fpattack::validate(bad), std::invalid_argument);
  bad = base_config();
  bad.alpha = 0.0;
  CHECK_THROWS_AS(fpattack::validate(bad), std::invalid_argument);
  bad = base_config();
  bad.alpha = 1.5;
  CHECK_THROWS_AS(fpattack::validate(bad), std::invalid_argument);
  bad = base_config();
  bad.k = 0;
  CHECK_THROWS_AS(fpattack::validate(bad), std::invalid_argument);
  bad = base_config();
  bad.lambda = 0.5;
  CHECK_THROWS_AS(fpattack::validate(bad), std::invalid_argument);
  bad = base_config();
  bad.trials = 0;
  CHECK_THROWS_AS(fpattack::validate(bad), std::invalid_argument);
  bad = base_config();
  bad.d0_override = 0;
  CHECK_THROWS_AS(fpattack::validate(bad), std::invalid_argument);
  CHECK_NOTHROW(fpattack::validate(base_config()));
}

TEST_CASE("clustering config pins the row budget to k*n0") {
  AttackConfig c = base_config();
  c.task = AttackTask::clustering;
  c.k = 2;
  c.z = 2.0;
  c.xi = 5.0;  // m = 402, so n0 must be 201
  c.n0 = 100;
  try {
    fpattack::validate(c);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("201") != std::string::npos);
  }
  c.n0 = 201;
  CHECK_NOTHROW(fpattack::validate(c));
}

TEST_CASE("task names") {
  CHECK(fpattack::task_name(AttackTask::averaging) == "averaging");
  CHECK(fpattack::task_name(AttackTask::clustering) == "clustering");
  CHECK(fpattack::task_name(AttackTask::svd) == "svd");
  CHECK(fpattack::task_name(AttackTask::raw) == "raw");
}

TEST_CASE("pipeline input without decoys") {
  Rng rng(30);
  const auto inst = fpattack::sample_instance(3, 100, rng);
  const auto pipeline = fpattack::build_pipeline_input(inst.codebook, 0.5, 1, rng);
  CHECK(pipeline.k_was_one());
  CHECK(pipeline.slot == 1);
  CHECK(pipeline.d0 == 100);
  CHECK(pipeline.pad_len == 100);
  CHECK(pipeline.input.rows() == 3);
  CHECK(pipeline.input.cols() == 300);
  CHECK(&pipeline.agreement_target() == &pipeline.input);
  for (long i = 0; i < 3; ++i) {
    const auto row = pipeline.input.row(i);
    const auto back = fpattack::extract(std::span<const std::int8_t>(row), pipeline.perm, 100);
    CHECK(back == inst.codebook.row(i));
  }
}

TEST_CASE("pipeline input hides the code among decoy blocks") {
  Rng rng(31);
  const auto inst = fpattack::sample_instance(2, 80, rng);
  bool seen_non_first_slot = false;
  for (int rep = 0; rep < 12; ++rep) {
    const auto pipeline = fpattack::build_pipeline_input(inst.codebook, 0.5, 3, rng);
    CHECK_FALSE(pipeline.k_was_one());
    REQUIRE(pipeline.slot >= 1);
    REQUIRE(pipeline.slot <= 3);
    seen_non_first_slot = seen_non_first_slot || pipeline.slot != 1;
    REQUIRE(pipeline.input.rows() == 6);
    REQUIRE(pipeline.real_block.rows() == 2);
    CHECK(&pipeline.agreement_target() == &pipeline.real_block);
    const long row0 = (pipeline.slot - 1) * 2;
    for (long i = 0; i < 2; ++i) {
      CHECK(pipeline.input.row(row0 + i) == pipeline.real_block.row(i));
      const auto row = pipeline.real_block.row(i);
      const auto back = fpattack::extract(std::span<const std::int8_t>(row), pipeline.perm, 80);
      CHECK(back == inst.codebook.row(i));
    }
  }
  CHECK(seen_non_first_slot);
}

TEST_CASE("consensus answers trace back to the coalition") {
  AttackConfig c = base_config();
  c.n0 = 4;
  c.d0_override = 8000;
  c.trials = 40;
  c.seed = 32;
  const auto mechs = fpattack::task_mechanisms(c);
  REQUIRE(mechs.size() == 1);
  CHECK(mechs[0].name == "consensus");
  const auto report = fpattack::estimate_leakage(mechs[0], c);
  CHECK(report.trials == 40);
  CHECK(report.trace_success.rate >= 0.95);
  CHECK(report.false_accusation.rate == 0.0);
  CHECK(report.agreement.rate == 1.0);
  CHECK(report.no_accusation.rate ==
        doctest::Approx(1.0 - report.trace_success.rate).epsilon(1e-12));
}

TEST_CASE("constant answers stay silent") {
  AttackConfig c = base_config();
  c.mechanism = "constant-ones";
  c.n0 = 2;
  c.d0_override = 40000;
  c.trials = 30;
  c.seed = 33;
  const auto mechs = fpattack::task_mechanisms(c);
  REQUIRE(mechs.size() == 1);
  const auto report = fpattack::estimate_leakage(mechs[0], c);
  CHECK(report.trace_success.rate <= 0.05);
  CHECK(report.agreement.rate == 0.0);  // misses every minus pad
}

TEST_CASE("averaging task end to end at small length") {
  AttackConfig c;
  c.task = AttackTask::averaging;
  c.mechanism = "exact-average";
  c.n0 = 2;
  c.beta = 0.1;
  c.lambda = 1.0;
  c.alpha = 1.0 / 41.0;
  c.trials = 20;
  c.seed = 34;
  c.d0_override = 1000;
  const auto mechs = fpattack::task_mechanisms(c);
  const auto report = fpattack::estimate_leakage(mechs, c);
  CHECK(report.trace_success.rate >= 0.9);
  CHECK(report.agreement.rate == 1.0);  // guaranteed by the accuracy predicate
  CHECK(report.false_accusation.rate == 0.0);
}

TEST_CASE("decoy blocks cut the consensus success rate to about 1/k") {
  AttackConfig c = base_config();
  c.n0 = 2;
  c.d0_override = 4000;
  c.trials = 60;
  c.seed = 35;
  c.k = 3;
  const auto mechs = fpattack::task_mechanisms(c);
  REQUIRE(mechs.size() == 1);
  CHECK(mechs[0].name == "random-block-consensus");
  const auto report = fpattack::estimate_leakage(mechs[0], c);
  CHECK(report.trace_success.rate >= 0.1);
  CHECK(report.trace_success.rate <= 0.6);
  CHECK(std::abs(report.agreement.rate - report.trace_success.rate) <= 0.1);
}

TEST_CASE("per-trial records are consistent with the report") {
  AttackConfig c = base_config();
  c.trials = 25;
  c.seed = 36;
  const auto mechs = fpattack::task_mechanisms(c);
  std::vector<fpattack::TrialRecord> records;
  const auto report = fpattack::estimate_leakage(mechs[0], c, &records);
  REQUIRE(records.size() == 25);
  long hits = 0;
  long agreements = 0;
  for (std::size_t t = 0; t < records.size(); ++t) {
    CHECK(records[t].trial == static_cast<std::int64_t>(t));
    CHECK((records[t].accused != 0) == records[t].coalition_hit);
    if (records[t].accused != 0) {
      CHECK(records[t].accused >= 1);
      CHECK(records[t].accused <= c.n0);
    }
    hits += records[t].coalition_hit ? 1 : 0;
    agreements += records[t].agreement_observed ? 1 : 0;
  }
  CHECK(report.trace_success.rate == doctest::Approx(hits / 25.0));
  CHECK(report.agreement.rate == doctest::Approx(agreements / 25.0));
}

TEST_CASE("equal seeds reproduce reports and records exactly") {
  AttackConfig c = base_config();
  c.trials = 20;
  c.seed = 37;
  const auto mechs = fpattack::task_mechanisms(c);
  std::vector<fpattack::TrialRecord> r1;
  std::vector<fpattack::TrialRecord> r2;
  const auto a = fpattack::estimate_leakage(mechs[0], c, &r1);
  const auto b = fpattack::estimate_leakage(mechs[0], c, &r2);
  CHECK(a.trace_success.rate == b.trace_success.rate);
  CHECK(a.no_accusation.rate == b.no_accusation.rate);
  CHECK(a.agreement.rate == b.agreement.rate);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t t = 0; t < r1.size(); ++t) {
    CHECK(r1[t].accused == r2[t].accused);
    CHECK(r1[t].coalition_hit == r2[t].coalition_hit);
    CHECK(r1[t].agreement_observed == r2[t].agreement_observed);
  }
}

TEST_CASE("mechanism output contracts are enforced") {
  AttackConfig c = base_config();
  Rng rng(38);
  WeaklyAccurateMechanism wrong_len;
  wrong_len.name = "wrong-length";
  wrong_len.apply = [](const SignMatrix&, Rng&) { return std::vector<double>(3, 0.5); };
  CHECK_THROWS_AS(fpattack::run_attack(wrong_len, c, rng), fpattack::ContractViolation);

  WeaklyAccurateMechanism out_of_range;
  out_of_range.name = "out-of-range";
  out_of_range.apply = [](const SignMatrix& x, Rng&) {
    return std::vector<double>(static_cast<std::size_t>(x.cols()), 1.5);
  };
  Rng rng2(38);
  CHECK_THROWS_AS(fpattack::run_attack(out_of_range, c, rng2), fpattack::ContractViolation);

  Rng rng3(38);
  CHECK_THROWS_AS(
      fpattack::run_attack(std::span<const WeaklyAccurateMechanism>{}, c, rng3),
      std::invalid_argument);
}

TEST_CASE("task mechanism wiring") {
  AttackConfig c = base_config();
  c.task = AttackTask::averaging;
  CHECK(fpattack::task_mechanisms(c).size() == 1);
  c.mechanism = "gaussian-average";
  c.sigma = 0.1;
  CHECK(fpattack::task_mechanisms(c)[0].name == "averaging");

  c = base_config();
  c.task = AttackTask::clustering;
  c.k = 2;
  c.xi = 5.0;
  c.n0 = 201;
  const auto cluster_mechs = fpattack::task_mechanisms(c);
  REQUIRE(cluster_mechs.size() == 1);
  CHECK(cluster_mechs[0].expected_rows == 402);

  c = base_config();
  c.task = AttackTask::svd;
  const auto svd_mechs = fpattack::task_mechanisms(c);
  REQUIRE(svd_mechs.size() == 2);
  CHECK(svd_mechs[0].name == "svd");
  CHECK(svd_mechs[1].name == "svd-negated");

  c = base_config();
  c.mechanism = "turbo";
  CHECK_THROWS_AS(fpattack::task_mechanisms(c), std::invalid_argument);
  c.mechanism = "";
  CHECK(fpattack::task_mechanisms(c)[0].name == "consensus");
}

TEST_CASE("clustering task runs end to end") {
  AttackConfig c;
  c.task = AttackTask::clustering;
  c.n0 = 201;
  c.k = 2;
  c.z = 2.0;
  c.xi = 5.0;
  c.beta = 0.1;
  c.alpha = 0.5;
  c.trials = 2;
  c.seed = 39;
  c.d0_override = 300;
  fpattack::validate(c);
  const auto mechs = fpattack::task_mechanisms(c);
  const auto report = fpattack::estimate_leakage(mechs, c);
  CHECK(report.trials == 2);
  CHECK(report.trace_success.rate >= 0.0);
  CHECK(report.trace_success.rate <= 1.0);
}

TEST_CASE("svd task runs end to end") {
  AttackConfig c;
  c.task = AttackTask::svd;
  c.n0 = 2;
  c.beta = 0.1;
  c.alpha = 0.5;
  c.trials = 3;
  c.seed = 40;
  c.d0_override = 1500;
  const auto mechs = fpattack::task_mechanisms(c);
  const auto report = fpattack::estimate_leakage(mechs, c);
  CHECK(report.trials == 3);
  CHECK(report.trace_success.rate + report.no_accusation.rate +
            report.false_accusation.rate ==
        doctest::Approx(1.0));
}

TEST_SUITE_END();
