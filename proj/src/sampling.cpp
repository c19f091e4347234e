#include "rhomix/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace rhomix {

ComplexMatrix random_unitary(std::size_t n, SeededRng& rng) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g(i, j) = Complex(rng.normal(), rng.normal());
    }
  }

  // modified Gram-Schmidt on columns, done twice for orthogonality at
  // machine level
  std::vector<Complex> diag(n);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        Complex proj(0.0, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
          proj += std::conj(g(r, prev)) * g(r, c);
        }
        for (std::size_t r = 0; r < n; ++r) g(r, c) -= proj * g(r, prev);
      }
      double norm = 0.0;
      for (std::size_t r = 0; r < n; ++r) norm += std::norm(g(r, c));
      norm = std::sqrt(norm);
      for (std::size_t r = 0; r < n; ++r) g(r, c) /= norm;
      if (pass == 1) diag[c] = g(c, c);
    }
  }

  // phase fix that makes the distribution Haar rather than QR-biased
  for (std::size_t c = 0; c < n; ++c) {
    const double a = std::abs(diag[c]);
    const Complex rot = (a > 0.0) ? std::conj(diag[c]) / a : Complex(1.0, 0.0);
    for (std::size_t r = 0; r < n; ++r) g(r, c) *= rot;
  }
  return g;
}

ProbabilityVector random_spectrum(std::size_t m, SeededRng& rng) {
  const double floor = 1e-3 / static_cast<double>(m);
  std::vector<double> v(m);
  for (int attempt = 0; attempt < 256; ++attempt) {
    double sum = 0.0;
    for (double& x : v) {
      x = -std::log(rng.uniform_open());
      sum += x;
    }
    double lo = 2.0;
    for (double& x : v) {
      x /= sum;
      lo = std::min(lo, x);
    }
    if (lo >= floor) {
      std::sort(v.begin(), v.end(), std::greater<>());
      return ProbabilityVector(std::move(v));
    }
  }
  // flat spectrum as a last resort; unreachable in practice
  return ProbabilityVector(
      std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

ComplexMatrix random_hermitian(std::size_t n, SeededRng& rng) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g(i, j) = Complex(rng.normal(), rng.normal());
    }
  }
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    }
  }
  return h;
}

ComplexMatrix random_density_matrix(std::size_t rank, std::size_t dim,
                                    SeededRng& rng) {
  if (rank == 0 || rank > dim) {
    throw ValidationError("density sample needs 1 <= rank <= dim");
  }
  const ProbabilityVector spec = random_spectrum(rank, rng);
  std::vector<double> padded = spec.components();
  padded.resize(dim, 0.0);
  const ComplexMatrix u = random_unitary(dim, rng);
  return reconstruct(u, padded);
}

}  // namespace rhomix
