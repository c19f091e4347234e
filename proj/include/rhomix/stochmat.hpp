#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rhomix/majorization.hpp"
#include "rhomix/numkernel.hpp"
#include "rhomix/parallel.hpp"

namespace rhomix {

// Square matrix with nonnegative entries whose rows and columns each sum to
// one. Entries may carry roundoff of at most 1e-12 outside [0, 1] (clamped);
// row and column sums must hold within 1e-10.
class BistochasticMatrix {
 public:
  BistochasticMatrix(std::size_t n, std::vector<double> entries);

  static BistochasticMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double operator()(std::size_t r, std::size_t c) const {
    return e_[r * n_ + c];
  }
  const std::vector<double>& entries() const { return e_; }

  std::vector<double> apply(const std::vector<double>& v) const;

 private:
  std::size_t n_;
  std::vector<double> e_;
};

enum class PairAxis { Row, Column };

// For a pair of parallel lines (two rows or two columns) the links are the
// entrywise geometric means. Unistochasticity requires, for every pair, that
// the largest link not exceed the sum of the others.
struct ChainLinksReport {
  struct Pair {
    PairAxis axis;
    std::size_t a;
    std::size_t b;
  };
  bool satisfied = true;
  double worst_margin = 0.0;  // min over pairs of (sum of other links - largest)
  std::optional<Pair> violating_pair;
  std::vector<double> violating_links;  // links of the worst pair if violated
};

enum class CertVerdict { Certified, Refuted, Undetermined };

struct UnistochasticCertificate {
  CertVerdict verdict = CertVerdict::Undetermined;
  std::optional<ComplexMatrix> witness;  // unitary with |W_ij|^2 = B_ij
  double residual = 0.0;                 // best achieved moduli/unitarity defect
};

struct CertifyOptions {
  std::size_t max_iterations = 10000;
  double residual_tol = 1e-8;
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  ExecutionMode mode = ExecutionMode::Serial;
};

// B_ij = |U_ij|^2 for unitary U (checked at 1e-10).
BistochasticMatrix from_unitary(const ComplexMatrix& u);

// The flat matrix with every entry 1/n.
BistochasticMatrix van_der_waerden(std::size_t n);

// Product T_k ... T_1 of T-transforms applied in list order, as an explicit
// bistochastic matrix.
BistochasticMatrix t_product(const std::vector<TTransform>& transforms,
                             std::size_t n);

// Checks every unordered pair of rows and of columns; satisfied means the
// worst margin is >= -1e-12.
ChainLinksReport chain_links(const BistochasticMatrix& b);

// n <= 2: closed form. n == 3: the chain-links conditions decide, and a
// satisfied instance yields an explicit witness by phase construction.
// n > 3: chain-links refute, otherwise a seeded splitting search between the
// fixed-moduli set and the unitary group looks for a witness; failure to
// converge is reported as Undetermined, never as refutation.
UnistochasticCertificate certify_unistochastic(const BistochasticMatrix& b,
                                               const CertifyOptions& opts = {});

// True iff b is block diagonal as forced by an equal prefix sum at k-1
// (1-based k; the leading block is (k-1) x (k-1)) together with the spectral
// gap q_{k-1} > q_k. Preconditions: B q = p within 1e-10, both vectors sorted
// descending, prefix sums equal at k-1 within 1e-12, gap present.
bool block_structure_check(const BistochasticMatrix& b,
                           const ProbabilityVector& p,
                           const ProbabilityVector& q, std::size_t k);

// Random bistochastic matrix with B q = p: convex combination of seeded
// permutation matrices corrected onto the constraint set by alternating
// projections. Returns nothing if no attempt lands within tolerance.
std::optional<BistochasticMatrix> sample_feasible_bistochastic(
    const ProbabilityVector& p, const ProbabilityVector& q,
    std::uint64_t seed);

}  // namespace rhomix
