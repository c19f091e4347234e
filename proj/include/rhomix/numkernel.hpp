#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "rhomix/errors.hpp"

namespace rhomix {

using Complex = std::complex<double>;

// Dense complex matrix, row-major storage. Everything in this library works
// with dimensions of a few dozen at most, so no attempt is made at blocking
// or expression templates.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  // F_jk = exp(2*pi*i*j*k/n) / sqrt(n)
  static ComplexMatrix fourier(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_ && rows_ > 0; }

  Complex& operator()(std::size_t r, std::size_t c) {
    return e_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return e_[r * cols_ + c];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  std::vector<Complex> apply(const std::vector<Complex>& v) const;

  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> e_;
};

// max-entry norm of a - b
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// max |a_ij - conj(a_ji)|
double hermiticity_defect(const ComplexMatrix& a);

// V diag(w) V^dagger
ComplexMatrix reconstruct(const ComplexMatrix& v, const std::vector<double>& w);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending; ties stable by original index
  ComplexMatrix eigenvectors;       // orthonormal columns, same order
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. Off-diagonal entries
// below 1e-14 are left alone; at most 100 sweeps. Eigenvector columns get a
// canonical global phase (largest-modulus component real nonnegative) so the
// result is deterministic.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

// max-entry test of U^dagger U = I
bool is_unitary(const ComplexMatrix& u, double tol);

// Unitary factor of the polar decomposition, i.e. the closest unitary in
// Frobenius distance. Requires the smallest singular value > 1e-12.
ComplexMatrix polar_unitary(const ComplexMatrix& a);

}  // namespace rhomix
