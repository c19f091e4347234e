#include "rhomix/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rhomix {

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.square()) throw NotSquareError("density matrix must be square");
  if (hermiticity_defect(m_) >= 1e-10) {
    throw NotHermitianError("density matrix is not Hermitian within 1e-10");
  }
  eig_ = hermitian_eig(m_);
  double trace = 0.0;
  for (std::size_t i = 0; i < m_.rows(); ++i) trace += m_(i, i).real();
  if (std::abs(trace - 1.0) > 1e-12) {
    throw ValidationError("density matrix trace is " + std::to_string(trace) +
                          ", not 1 within 1e-12");
  }
  for (double ev : eig_.eigenvalues) {
    if (ev < -1e-12) {
      throw ValidationError("density matrix has eigenvalue " +
                            std::to_string(ev) + " below -1e-12");
    }
    if (ev > 1e-12) ++rank_;
  }
  if (rank_ == 0) throw ValidationError("density matrix has rank zero");
}

ProbabilityVector DensityMatrix::spectrum() const {
  std::vector<double> v(eig_.eigenvalues.begin(),
                        eig_.eigenvalues.begin() + rank_);
  return ProbabilityVector(std::move(v));
}

PureEnsemble::PureEnsemble(ProbabilityVector w,
                           std::vector<std::vector<Complex>> s)
    : weights(std::move(w)), states(std::move(s)) {
  if (weights.size() != states.size()) {
    throw ValidationError("ensemble weight and state counts differ");
  }
  if (states.empty()) throw ValidationError("ensemble is empty");
  const std::size_t d = states[0].size();
  if (d == 0) throw ValidationError("ensemble states have dimension zero");
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != d) {
      throw ValidationError("ensemble states differ in dimension");
    }
    double norm = 0.0;
    for (const Complex& z : states[i]) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ValidationError("ensemble state component is not finite");
      }
      norm += std::norm(z);
    }
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-10) {
      throw ValidationError("ensemble state " + std::to_string(i) +
                            " has norm " + std::to_string(std::sqrt(norm)) +
                            ", not 1 within 1e-10");
    }
  }
}

namespace {

// global-phase convention: first component of largest modulus made real
// nonnegative
void canonicalize_phase(std::vector<Complex>& state) {
  std::size_t imax = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double a = std::abs(state[i]);
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (best <= 0.0) return;
  const Complex rot = std::conj(state[imax]) / best;
  for (Complex& z : state) z *= rot;
  state[imax] = Complex(std::abs(state[imax]), 0.0);
}

double overlap_gap(const std::vector<Complex>& a,
                   const std::vector<Complex>& b) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return 1.0 - std::abs(acc);
}

}  // namespace

DensityMatrix mix(const PureEnsemble& e) {
  const std::size_t d = e.dim();
  ComplexMatrix rho(d, d);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const double w = e.weights[k];
    const std::vector<Complex>& s = e.states[k];
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        rho(r, c) += w * s[r] * std::conj(s[c]);
      }
    }
  }
  return DensityMatrix(std::move(rho));
}

PureEnsemble eigenensemble(const DensityMatrix& rho) {
  const std::size_t d = rho.ambient_dim();
  const std::size_t m = rho.rank();
  std::vector<std::vector<Complex>> states(m, std::vector<Complex>(d));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < d; ++r) states[k][r] = rho.eigenvectors()(r, k);
    canonicalize_phase(states[k]);
  }
  return PureEnsemble(rho.spectrum(), std::move(states));
}

ConstructionOutcome schrodinger_states(const DensityMatrix& rho,
                                       const ComplexMatrix& u) {
  if (!u.square()) throw NotSquareError("mixing unitary must be square");
  const std::size_t n = u.rows();
  const std::size_t m = rho.rank();
  const std::size_t d = rho.ambient_dim();
  if (n < m) {
    throw DimensionMismatchError("mixing unitary size " + std::to_string(n) +
                                 " below rank " + std::to_string(m));
  }
  if (!is_unitary(u, 1e-10)) {
    throw NotUnitaryError("mixing matrix is not unitary within 1e-10");
  }

  const ProbabilityVector lambda = rho.spectrum();
  std::vector<double> weights(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      weights[i] += std::norm(u(i, j)) * lambda[j];
    }
    if (weights[i] < 1e-14) {
      throw ZeroWeightError("row " + std::to_string(i) +
                            " yields weight below 1e-14");
    }
  }

  std::vector<std::vector<Complex>> states(n, std::vector<Complex>(d));
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = 1.0 / std::sqrt(weights[i]);
    for (std::size_t r = 0; r < d; ++r) {
      Complex acc(0.0, 0.0);
      for (std::size_t j = 0; j < m; ++j) {
        acc += u(i, j) * std::sqrt(lambda[j]) * rho.eigenvectors()(r, j);
      }
      states[i][r] = scale * acc;
    }
    canonicalize_phase(states[i]);
  }

  PureEnsemble ensemble(ProbabilityVector(std::move(weights)),
                        std::move(states));
  const double residual = max_abs_diff(mix(ensemble).matrix(), rho.matrix());
  const bool degenerate = is_degenerate(ensemble, 1e-8);
  return ConstructionOutcome{std::move(ensemble), from_unitary(u), u,
                             degenerate, residual};
}

ConstructionOutcome uniform_ensemble(const DensityMatrix& rho, std::size_t n) {
  if (rho.rank() < 2) {
    throw PureStateError("uniform construction needs a non-pure state");
  }
  if (n < rho.rank()) {
    throw TooFewPointsError("uniform construction needs at least " +
                            std::to_string(rho.rank()) + " points");
  }
  return schrodinger_states(rho, ComplexMatrix::fourier(n));
}

ConstructionOutcome nielsen_ensemble(const DensityMatrix& rho,
                                     const ProbabilityVector& p) {
  const std::size_t n = p.size();
  const std::size_t m = rho.rank();
  if (n < m) {
    throw DimensionMismatchError("weight count " + std::to_string(n) +
                                 " below rank " + std::to_string(m));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] <= 1e-14) {
      throw ZeroWeightError("weight " + std::to_string(i) + " is below 1e-14");
    }
  }
  const ProbabilityVector lambda_pad = pad_to(rho.spectrum(), n);
  if (!majorizes(p, lambda_pad)) {
    throw NotMajorizedError("weights are not majorized by the spectrum");
  }

  const auto [p_sorted, perm] = sort_descending(p);
  const ComplexMatrix o = horn_orthogonal(p_sorted, lambda_pad);

  // permute rows back to the caller's weight order
  ComplexMatrix u(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < n; ++c) u(perm[k], c) = o(k, c);
  }
  return schrodinger_states(rho, u);
}

ConstructionOutcome ratio_sweep(const DensityMatrix& rho,
                                const ProbabilityVector& p,
                                const SweepOptions& opts) {
  const std::size_t n = p.size();
  const std::size_t m = rho.rank();
  if (n < m) {
    throw DimensionMismatchError("weight count " + std::to_string(n) +
                                 " below rank " + std::to_string(m));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] <= 1e-14) {
      throw ZeroWeightError("weight " + std::to_string(i) + " is below 1e-14");
    }
    if (i + 1 < n && p[i] < p[i + 1] - 1e-12) {
      throw ValidationError("sweep weights must be sorted descending");
    }
  }
  const ProbabilityVector lambda_pad = pad_to(rho.spectrum(), n);
  if (!majorizes(p, lambda_pad)) {
    throw NotMajorizedError("weights are not majorized by the spectrum");
  }

  std::vector<double> v = lambda_pad.components();
  std::vector<TTransform> transforms;
  bool converged = false;
  for (std::size_t sweep = 0; sweep <= opts.max_sweeps; ++sweep) {
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist = std::max(dist, std::abs(v[i] - p[i]));
    }
    if (dist < opts.target_tol) {
      converged = true;
      break;
    }
    if (sweep == opts.max_sweeps) break;

    // one sweep: for each adjacent pair fix the ratio v_k/v_{k-1} = p_k/p_{k-1}
    for (std::size_t k = 1; k < n; ++k) {
      const double x = v[k - 1], y = v[k];
      const double pi = p[k - 1], pj = p[k];
      double t;
      if (std::abs(x - y) <= 1e-15) {
        t = 1.0;  // nothing a mix of equal entries can change
      } else {
        t = std::clamp((pi * x - pj * y) / ((pi + pj) * (x - y)), 0.0, 1.0);
      }
      if (t == 1.0) continue;
      transforms.push_back({k - 1, k, t});
      v[k - 1] = t * x + (1.0 - t) * y;
      v[k] = (1.0 - t) * x + t * y;
    }
  }
  if (!converged) {
    throw NonConvergentError("ratio sweep missed the target weights after " +
                             std::to_string(opts.max_sweeps) + " sweeps");
  }

  const BistochasticMatrix product = t_product(transforms, n);
  const UnistochasticCertificate cert =
      certify_unistochastic(product, opts.certify);
  if (cert.verdict != CertVerdict::Certified) {
    throw NotCertifiedError(
        cert.verdict == CertVerdict::Refuted
            ? "sweep product is provably not unistochastic"
            : "no unitary witness found for the sweep product");
  }

  ConstructionOutcome out = schrodinger_states(rho, *cert.witness);
  out.bistochastic_used = product;
  return out;
}

bool is_degenerate(const PureEnsemble& e, double eps) {
  return min_pair_gap(e) < eps;
}

double min_pair_gap(const PureEnsemble& e) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      gap = std::min(gap, overlap_gap(e.states[i], e.states[j]));
    }
  }
  return gap;
}

std::size_t largest_ray_class(const PureEnsemble& e, double eps) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (overlap_gap(e.states[i], e.states[j]) < eps) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

Admissibility conjecture2_admissible(const ProbabilityVector& p,
                                     const DensityMatrix& rho) {
  const ProbabilityVector lambda = rho.spectrum();
  if (!majorizes(p, lambda)) {
    throw NotMajorizedError("weights are not majorized by the spectrum");
  }
  const std::size_t m = rho.rank();
  if (m == 1) return Admissibility::ExcludedPure;

  std::vector<double> ps = p.components();
  std::sort(ps.begin(), ps.end(), std::greater<>());
  double prefix_p = 0.0, prefix_l = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    prefix_p += (i < ps.size()) ? ps[i] : 0.0;
    prefix_l += lambda[i];
  }
  if (std::abs(prefix_p - prefix_l) > 1e-12) return Admissibility::Admissible;
  if (lambda[m - 2] > lambda[m - 1] + 1e-12) {
    return Admissibility::ExcludedBoundary;
  }
  return Admissibility::BoundaryDegenerateGap;
}

}  // namespace rhomix
