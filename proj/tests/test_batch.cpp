#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "rhomix/explore.hpp"
#include "rhomix/rng.hpp"

using namespace rhomix;

namespace {

ExploreConfig base_config() {
  ExploreConfig cfg;
  cfg.trials = 50;
  cfg.m_min = 2;
  cfg.m_max = 4;
  cfg.n_min = 2;
  cfg.n_max = 5;
  cfg.algorithms = {"uniform", "nielsen", "ratio-sweep"};
  cfg.master_seed = 424242;
  return cfg;
}

bool same_records(const std::vector<TrialRecord>& a,
                  const std::vector<TrialRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const TrialRecord& x = a[i];
    const TrialRecord& y = b[i];
    if (x.seed != y.seed || x.m != y.m || x.n != y.n ||
        x.lambda != y.lambda || x.p != y.p ||
        x.admissibility != y.admissibility || x.algorithm != y.algorithm ||
        x.outcome != y.outcome || x.residual != y.residual ||
        x.min_pair_gap != y.min_pair_gap) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("config validation") {
  ExploreConfig cfg = base_config();
  CHECK_NOTHROW(cfg.validate());

  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = base_config();
  cfg.m_min = 1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = base_config();
  cfg.m_max = 1;  // below m_min
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = base_config();
  cfg.n_max = 3;  // below m_max: largest rank would not fit
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = base_config();
  cfg.algorithms = {};
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = base_config();
  cfg.algorithms = {"uniform", "simulated-annealing"};
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = base_config();
  cfg.tolerances.degeneracy = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);

  cfg = base_config();
  cfg.tolerances.sweep_target = -1e-12;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("serial and parallel runs agree exactly") {
  const ExploreConfig cfg = base_config();
  const auto serial = run_explore(cfg, ExecutionMode::Serial);
  const auto parallel = run_explore(cfg, ExecutionMode::Parallel);
  CHECK(serial.size() == cfg.trials * cfg.algorithms.size());
  CHECK(same_records(serial, parallel));
  // and a repeat run is identical too
  CHECK(same_records(serial, run_explore(cfg, ExecutionMode::Serial)));
}

TEST_CASE("record invariants") {
  const ExploreConfig cfg = base_config();
  const auto records = run_explore(cfg, ExecutionMode::Serial);
  REQUIRE(records.size() == cfg.trials * cfg.algorithms.size());

  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t expect_seed = mix_seed(cfg.master_seed, t);
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const TrialRecord& r = records[t * cfg.algorithms.size() + a];
      CHECK(r.seed == expect_seed);
      CHECK(r.algorithm == cfg.algorithms[a]);
      CHECK(r.m >= cfg.m_min);
      CHECK(r.m <= cfg.m_max);
      CHECK(r.n >= r.m);
      CHECK(r.n <= cfg.n_max);
      REQUIRE(r.lambda.size() == r.m);
      REQUIRE(r.p.size() == r.n);

      // lambda and p descending, p sums to one, p majorized by lambda
      double psum = 0.0;
      for (std::size_t k = 0; k < r.p.size(); ++k) {
        psum += r.p[k];
        if (k) CHECK(r.p[k] <= r.p[k - 1] + 1e-15);
      }
      CHECK(std::abs(psum - 1.0) < 1e-10);
      for (std::size_t k = 1; k < r.lambda.size(); ++k) {
        CHECK(r.lambda[k] <= r.lambda[k - 1] + 1e-15);
      }
      CHECK(majorizes(ProbabilityVector(r.p), ProbabilityVector(r.lambda)));

      if (r.algorithm == "uniform") {
        for (double v : r.p) {
          CHECK(v == doctest::Approx(1.0 / static_cast<double>(r.n))
                         .epsilon(1e-12));
        }
      }

      // outcome vs. recorded measurements
      const bool success = r.outcome == TrialOutcome::Degenerate ||
                           r.outcome == TrialOutcome::Nondegenerate;
      CHECK(r.residual.has_value() == success);
      CHECK(r.min_pair_gap.has_value() == success);
      if (success) {
        CHECK(*r.residual < 1e-8);
        const bool deg = *r.min_pair_gap < cfg.tolerances.degeneracy;
        CHECK((r.outcome == TrialOutcome::Degenerate) == deg);
      }
    }
  }

  // all three algorithms of one trial share the sampled instance
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const TrialRecord& first = records[t * cfg.algorithms.size()];
    for (std::size_t a = 1; a < cfg.algorithms.size(); ++a) {
      const TrialRecord& r = records[t * cfg.algorithms.size() + a];
      CHECK(r.lambda == first.lambda);
      CHECK(r.m == first.m);
      CHECK(r.n == first.n);
    }
  }
}

TEST_CASE("different master seeds explore different instances") {
  ExploreConfig cfg = base_config();
  cfg.trials = 10;
  const auto a = run_explore(cfg, ExecutionMode::Serial);
  cfg.master_seed = 424243;
  const auto b = run_explore(cfg, ExecutionMode::Serial);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].lambda != b[i].lambda) any_difference = true;
  }
  CHECK(any_difference);
}

TEST_CASE("summary counts outcomes within admissibility classes") {
  ExploreConfig cfg = base_config();
  cfg.trials = 30;
  const auto records = run_explore(cfg, ExecutionMode::Serial);
  const auto sum = summarize(records);
  std::size_t total = 0;
  for (const auto& [cls, outcomes] : sum) {
    for (const auto& [name, count] : outcomes) {
      total += count;
      // keys are the canonical strings
      CHECK((name == "nondegenerate" || name == "degenerate" ||
             name == "nonconvergent" || name == "notcertified"));
    }
    CHECK((cls == "admissible" || cls == "excluded_pure" ||
           cls == "excluded_boundary" || cls == "boundary_degenerate_gap"));
  }
  CHECK(total == records.size());
}
