#pragma once

#include <cstdint>
#include <vector>

#include "rhomix/numkernel.hpp"
#include "rhomix/majorization.hpp"
#include "rhomix/stochmat.hpp"

namespace rhomix {

// Hermitian, positive semidefinite, unit trace. The eigendecomposition is
// computed once at construction; the rank counts eigenvalues above 1e-12.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  std::size_t ambient_dim() const { return m_.rows(); }
  std::size_t rank() const { return rank_; }
  const ComplexMatrix& matrix() const { return m_; }
  const std::vector<double>& eigenvalues() const { return eig_.eigenvalues; }
  const ComplexMatrix& eigenvectors() const { return eig_.eigenvectors; }

  // the nonzero part of the spectrum, descending, length rank()
  ProbabilityVector spectrum() const;

 private:
  ComplexMatrix m_;
  EigenDecomposition eig_;
  std::size_t rank_ = 0;
};

// Weighted list of unit vectors, all of the same dimension.
struct PureEnsemble {
  PureEnsemble(ProbabilityVector weights,
               std::vector<std::vector<Complex>> states);

  std::size_t size() const { return states.size(); }
  std::size_t dim() const { return states.empty() ? 0 : states[0].size(); }

  ProbabilityVector weights;
  std::vector<std::vector<Complex>> states;
};

struct ConstructionOutcome {
  PureEnsemble ensemble;
  BistochasticMatrix bistochastic_used;
  ComplexMatrix unitary_used;
  bool degenerate = false;
  double residual = 0.0;  // max-entry distance between the remix and the input
};

struct SweepOptions {
  std::size_t max_sweeps = 10000;
  double target_tol = 1e-12;
  CertifyOptions certify;
};

enum class Admissibility {
  Admissible,
  ExcludedPure,
  ExcludedBoundary,
  BoundaryDegenerateGap,
};

// rho = sum_i w_i |psi_i><psi_i|
DensityMatrix mix(const PureEnsemble& e);

// The spectral ensemble: nonzero eigenvalues with their eigenvectors.
PureEnsemble eigenensemble(const DensityMatrix& rho);

// Ensemble from an N x N unitary, N >= rank: row i gives weight
// p_i = sum_j |U_ij|^2 lambda_j and state proportional to
// sum_j U_ij sqrt(lambda_j) |e_j>. Only the first rank() columns are read.
ConstructionOutcome schrodinger_states(const DensityMatrix& rho,
                                       const ComplexMatrix& u);

// n equal-weight states placed at equal phase steps:
//   (psi_k)_j = sqrt(lambda_j) exp(i j 2 pi k / n)
// Equivalent to feeding the Fourier matrix to schrodinger_states; the
// bistochastic matrix used is the flat one. Needs a non-pure rho and n >= rank.
ConstructionOutcome uniform_ensemble(const DensityMatrix& rho, std::size_t n);

// Ensemble with prescribed weights p (any order), p majorized by the
// spectrum: plane-rotation construction of a real orthogonal matrix whose
// entrywise squares map the padded spectrum to p.
ConstructionOutcome nielsen_ensemble(const DensityMatrix& rho,
                                     const ProbabilityVector& p);

// Ensemble with prescribed weights p (sorted descending, all above 1e-14):
// sweeps of adjacent T-transforms enforce the weight ratios, the accumulated
// product is then certified unistochastic and its witness fed to
// schrodinger_states. bistochastic_used reports the accumulated product.
ConstructionOutcome ratio_sweep(const DensityMatrix& rho,
                                const ProbabilityVector& p,
                                const SweepOptions& opts = {});

// True iff two states coincide up to global phase: 1 - |<psi_i|psi_j>| < eps.
bool is_degenerate(const PureEnsemble& e, double eps = 1e-8);

// Smallest pairwise value of 1 - |<psi_i|psi_j>|; +inf for fewer than two
// states.
double min_pair_gap(const PureEnsemble& e);

// Size of the largest group of states lying on a single ray.
std::size_t largest_ray_class(const PureEnsemble& e, double eps = 1e-8);

// Whether weights p can be realized by an ensemble with no two states on the
// same ray. Decided by the prefix sum at rank-1 and the gap between the two
// smallest nonzero eigenvalues.
Admissibility conjecture2_admissible(const ProbabilityVector& p,
                                     const DensityMatrix& rho);

}  // namespace rhomix
