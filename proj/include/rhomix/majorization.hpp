#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rhomix/numkernel.hpp"

namespace rhomix {

// Probability vector: nonnegative components summing to one. Construction
// clamps roundoff negatives in [-1e-14, 0) to zero and rejects anything
// worse; the sum must be within 1e-12 of one.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> components);

  std::size_t size() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  const std::vector<double>& components() const { return c_; }

 private:
  std::vector<double> c_;
};

// Mixes entries i and j:  (p_i, p_j) -> (t p_i + (1-t) p_j, (1-t) p_i + t p_j)
struct TTransform {
  std::size_t i;
  std::size_t j;
  double t;
};

// Sorted copy plus the permutation: result.first[k] == input[result.second[k]].
// Ties keep their original relative order.
std::pair<ProbabilityVector, std::vector<std::size_t>> sort_descending(
    const ProbabilityVector& p);

ProbabilityVector pad_to(const ProbabilityVector& p, std::size_t n);

// True iff p is majorized by q (p precedes q in the majorization order).
// Sorts and zero-pads internally; prefix sums compared with 1e-12 slack.
bool majorizes(const ProbabilityVector& p, const ProbabilityVector& q);

ProbabilityVector apply_t(const ProbabilityVector& p, const TTransform& tt);

// A chain of at most N-1 T-transforms carrying q to p. Both inputs must be
// sorted descending and already padded to a common length.
std::vector<TTransform> hlp_chain(const ProbabilityVector& p,
                                  const ProbabilityVector& q);

// Real orthogonal O with (O .* O) q = p, built by the plane-rotation
// induction. Both inputs sorted descending, common length.
ComplexMatrix horn_orthogonal(const ProbabilityVector& p,
                              const ProbabilityVector& q);

// Random vector majorized by q: 3*N seeded T-transforms with uniform index
// pairs and uniform t.
ProbabilityVector sample_majorized(const ProbabilityVector& q,
                                   std::uint64_t seed);

}  // namespace rhomix
