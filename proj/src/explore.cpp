#include "rhomix/explore.hpp"

#include <algorithm>
#include <cmath>

#include "rhomix/rng.hpp"
#include "rhomix/sampling.hpp"

namespace rhomix {

namespace {

const std::vector<std::string> kKnownAlgorithms = {"uniform", "nielsen",
                                                  "ratio-sweep"};

}  // namespace

void ExploreConfig::validate() const {
  if (trials < 1) throw ValidationError("config: trials must be at least 1");
  if (m_min < 2) {
    throw ValidationError("config: rank range must start at 2 (mixed states)");
  }
  if (m_min > m_max) throw ValidationError("config: empty rank range");
  if (n_min > n_max) throw ValidationError("config: empty size range");
  if (n_max < m_max) {
    throw ValidationError(
        "config: size range must reach the top of the rank range");
  }
  if (algorithms.empty()) {
    throw ValidationError("config: no algorithms selected");
  }
  for (const std::string& a : algorithms) {
    if (std::find(kKnownAlgorithms.begin(), kKnownAlgorithms.end(), a) ==
        kKnownAlgorithms.end()) {
      throw ValidationError("config: unknown algorithm '" + a + "'");
    }
  }
  if (!(tolerances.degeneracy > 0.0) || !(tolerances.certification > 0.0) ||
      !(tolerances.sweep_target > 0.0)) {
    throw ValidationError("config: tolerances must be positive");
  }
}

const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible:
      return "admissible";
    case Admissibility::ExcludedPure:
      return "excluded_pure";
    case Admissibility::ExcludedBoundary:
      return "excluded_boundary";
    case Admissibility::BoundaryDegenerateGap:
      return "boundary_degenerate_gap";
  }
  return "?";
}

const char* to_string(TrialOutcome o) {
  switch (o) {
    case TrialOutcome::Nondegenerate:
      return "nondegenerate";
    case TrialOutcome::Degenerate:
      return "degenerate";
    case TrialOutcome::Nonconvergent:
      return "nonconvergent";
    case TrialOutcome::Notcertified:
      return "notcertified";
  }
  return "?";
}

namespace {

void run_trial(const ExploreConfig& config, std::size_t trial,
               std::vector<TrialRecord>& records) {
  const std::uint64_t trial_seed = mix_seed(config.master_seed, trial);
  SeededRng rng(trial_seed);

  const std::size_t m =
      config.m_min + rng.uniform_index(config.m_max - config.m_min + 1);
  const std::size_t n_lo = std::max(m, config.n_min);
  const std::size_t n = n_lo + rng.uniform_index(config.n_max - n_lo + 1);

  const DensityMatrix rho(random_density_matrix(m, m, rng));
  const ProbabilityVector lambda_pad = pad_to(rho.spectrum(), n);

  // weights for the prescribed-weight algorithms; all entries kept clear of
  // zero so every algorithm precondition holds
  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  for (int attempt = 0; attempt < 100; ++attempt) {
    const ProbabilityVector cand =
        sample_majorized(lambda_pad, rng.next_seed());
    double lo = 2.0;
    for (std::size_t i = 0; i < n; ++i) lo = std::min(lo, cand[i]);
    if (lo > 1e-10) {
      weights = cand.components();
      break;
    }
  }
  std::sort(weights.begin(), weights.end(), std::greater<>());
  const ProbabilityVector p(std::move(weights));
  const ProbabilityVector p_flat(
      std::vector<double>(n, 1.0 / static_cast<double>(n)));

  SweepOptions sweep;
  sweep.target_tol = config.tolerances.sweep_target;
  sweep.certify.residual_tol = config.tolerances.certification;

  for (std::size_t ai = 0; ai < config.algorithms.size(); ++ai) {
    const std::string& alg = config.algorithms[ai];
    const ProbabilityVector& p_used = (alg == "uniform") ? p_flat : p;

    TrialRecord rec;
    rec.seed = trial_seed;
    rec.m = m;
    rec.n = n;
    rec.lambda = rho.spectrum().components();
    rec.p = p_used.components();
    rec.algorithm = alg;
    rec.admissibility = conjecture2_admissible(p_used, rho);

    try {
      sweep.certify.seed = rng.next_seed();
      ConstructionOutcome out =
          (alg == "uniform")   ? uniform_ensemble(rho, n)
          : (alg == "nielsen") ? nielsen_ensemble(rho, p_used)
                               : ratio_sweep(rho, p_used, sweep);
      const double gap = min_pair_gap(out.ensemble);
      rec.outcome = gap < config.tolerances.degeneracy
                        ? TrialOutcome::Degenerate
                        : TrialOutcome::Nondegenerate;
      rec.residual = out.residual;
      rec.min_pair_gap = gap;
    } catch (const NonConvergentError&) {
      rec.outcome = TrialOutcome::Nonconvergent;
    } catch (const NotCertifiedError&) {
      rec.outcome = TrialOutcome::Notcertified;
    }
    records[trial * config.algorithms.size() + ai] = std::move(rec);
  }
}

}  // namespace

std::vector<TrialRecord> run_explore(const ExploreConfig& config,
                                     ExecutionMode mode) {
  config.validate();
  std::vector<TrialRecord> records(config.trials * config.algorithms.size());
  parallel_for(config.trials, mode,
               [&](std::size_t trial) { run_trial(config, trial, records); });
  return records;
}

std::map<std::string, std::map<std::string, std::size_t>> summarize(
    const std::vector<TrialRecord>& records) {
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (const TrialRecord& r : records) {
    ++counts[to_string(r.admissibility)][to_string(r.outcome)];
  }
  return counts;
}

}  // namespace rhomix
