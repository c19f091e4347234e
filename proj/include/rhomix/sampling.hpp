#pragma once

#include <cstdint>

#include "rhomix/majorization.hpp"
#include "rhomix/numkernel.hpp"
#include "rhomix/rng.hpp"

namespace rhomix {

// Haar-distributed unitary: complex Gaussian matrix, Gram-Schmidt with a
// second orthogonalization pass, diagonal phase fix.
ComplexMatrix random_unitary(std::size_t n, SeededRng& rng);

// Full-rank spectrum of length m, sorted descending. Resamples until the
// smallest eigenvalue clears a relative floor so rank detection stays stable.
ProbabilityVector random_spectrum(std::size_t m, SeededRng& rng);

// G + G^dagger scaled, with standard normal entries in G.
ComplexMatrix random_hermitian(std::size_t n, SeededRng& rng);

// rho = U diag(spectrum, zeros) U^dagger with ambient dimension dim >= rank.
ComplexMatrix random_density_matrix(std::size_t rank, std::size_t dim,
                                    SeededRng& rng);

}  // namespace rhomix
