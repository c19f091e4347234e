// Timings for the two batch surfaces that fan out across threads: the
// explore trial loop and the certification restart loop. The serial path is
// the reference implementation; the parallel path must produce identical
// results, so both are checked against each other here before timing.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "rhomix/explore.hpp"
#include "rhomix/parallel.hpp"
#include "rhomix/rng.hpp"
#include "rhomix/stochmat.hpp"

namespace {

using rhomix::ExecutionMode;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  const auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double>(dt).count();
}

bool same_records(const std::vector<rhomix::TrialRecord>& a,
                  const std::vector<rhomix::TrialRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].seed != b[i].seed || a[i].algorithm != b[i].algorithm ||
        a[i].outcome != b[i].outcome || a[i].residual != b[i].residual ||
        a[i].min_pair_gap != b[i].min_pair_gap) {
      return false;
    }
  }
  return true;
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-24s serial %8.3fs   parallel %8.3fs   speedup %5.2fx\n", name,
              serial_s, parallel_s, serial_s / parallel_s);
}

}  // namespace

int main() {
  std::printf("parallel backend available: %s\n",
              rhomix::parallel_available() ? "yes" : "no");

  rhomix::ExploreConfig cfg;
  cfg.trials = 200;
  cfg.m_min = 2;
  cfg.m_max = 4;
  cfg.n_min = 3;
  cfg.n_max = 6;
  cfg.algorithms = {"uniform", "nielsen", "ratio-sweep"};
  cfg.master_seed = 7;

  auto t0 = std::chrono::steady_clock::now();
  const auto serial_records = run_explore(cfg, ExecutionMode::Serial);
  const double explore_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const auto parallel_records = run_explore(cfg, ExecutionMode::Parallel);
  const double explore_parallel = seconds_since(t0);

  if (!same_records(serial_records, parallel_records)) {
    std::printf("FAIL: serial and parallel explore records differ\n");
    return 1;
  }
  report("explore 200 trials", explore_serial, explore_parallel);

  // A 6x6 bistochastic matrix built from a long T-transform chain; the
  // certification search has to work for its witness here, unlike the
  // closed-form small cases.
  rhomix::SeededRng rng(99);
  const rhomix::ProbabilityVector q(
      std::vector<double>{0.35, 0.25, 0.2, 0.1, 0.06, 0.04});
  std::vector<rhomix::TTransform> chain;
  for (int i = 0; i < 24; ++i) {
    const std::size_t a = rng.uniform_index(6);
    std::size_t b = rng.uniform_index(5);
    if (b >= a) ++b;
    chain.push_back({a, b, rng.uniform()});
  }
  const rhomix::BistochasticMatrix b = rhomix::t_product(chain, 6);

  rhomix::CertifyOptions opts;
  opts.restarts = 16;
  opts.seed = 11;

  opts.mode = ExecutionMode::Serial;
  t0 = std::chrono::steady_clock::now();
  const auto cert_serial = rhomix::certify_unistochastic(b, opts);
  const double certify_serial = seconds_since(t0);

  opts.mode = ExecutionMode::Parallel;
  t0 = std::chrono::steady_clock::now();
  const auto cert_parallel = rhomix::certify_unistochastic(b, opts);
  const double certify_parallel = seconds_since(t0);

  if (cert_serial.verdict != cert_parallel.verdict ||
      cert_serial.residual != cert_parallel.residual) {
    std::printf("FAIL: serial and parallel certification differ\n");
    return 1;
  }
  report("certify 6x6, 16 starts", certify_serial, certify_parallel);
  return 0;
}
