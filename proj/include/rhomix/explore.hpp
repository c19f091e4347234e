#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rhomix/ensembles.hpp"
#include "rhomix/parallel.hpp"

namespace rhomix {

struct Tolerances {
  double degeneracy = 1e-8;
  double certification = 1e-8;
  double sweep_target = 1e-12;
};

struct ExploreConfig {
  std::size_t trials = 0;
  std::size_t m_min = 2, m_max = 2;
  std::size_t n_min = 2, n_max = 2;
  std::vector<std::string> algorithms;
  std::uint64_t master_seed = 0;
  Tolerances tolerances;

  void validate() const;
};

enum class TrialOutcome {
  Nondegenerate,
  Degenerate,
  Nonconvergent,
  Notcertified,
};

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> lambda;  // sampled spectrum, descending, length m
  std::vector<double> p;       // weights handed to the algorithm, length n
  Admissibility admissibility = Admissibility::Admissible;
  std::string algorithm;
  TrialOutcome outcome = TrialOutcome::Nondegenerate;
  std::optional<double> residual;      // absent when the construction failed
  std::optional<double> min_pair_gap;  // likewise
};

const char* to_string(Admissibility a);
const char* to_string(TrialOutcome o);

// One record per (trial, algorithm), in trial order then config algorithm
// order. Per-trial seeds derive from the master seed, so Serial and Parallel
// return identical records.
std::vector<TrialRecord> run_explore(const ExploreConfig& config,
                                     ExecutionMode mode);

// outcome counts per admissibility class
std::map<std::string, std::map<std::string, std::size_t>> summarize(
    const std::vector<TrialRecord>& records);

}  // namespace rhomix
