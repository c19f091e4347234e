#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rhomix/numkernel.hpp"
#include "rhomix/rng.hpp"
#include "rhomix/sampling.hpp"

using namespace rhomix;

namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("matrix shape and entry validation") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {Complex(1, 0)}), ValidationError);
  CHECK_THROWS_AS(
      ComplexMatrix(1, 1, {Complex(std::nan(""), 0)}), ValidationError);
  const ComplexMatrix m(2, 3);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK_FALSE(m.square());
  CHECK(ComplexMatrix::identity(3).square());
}

TEST_CASE("identity and product on frozen values") {
  ComplexMatrix a(2, 2,
                  {Complex(1, 1), Complex(2, 0), Complex(0, 0), Complex(0, 1)});
  ComplexMatrix b(2, 2,
                  {Complex(0, 1), Complex(1, 0), Complex(3, 0), Complex(0, -1)});
  const ComplexMatrix ab = a * b;
  // (1+i)(i) + 2*3 = -1+i+6 = 5+i ; (1+i)(1) + 2(-i) = 1-i
  CHECK(std::abs(ab(0, 0) - Complex(5, 1)) < 1e-15);
  CHECK(std::abs(ab(0, 1) - Complex(1, -1)) < 1e-15);
  CHECK(std::abs(ab(1, 0) - Complex(0, 3)) < 1e-15);
  CHECK(std::abs(ab(1, 1) - Complex(1, 0)) < 1e-15);

  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(a * i2, a) == 0.0);
  CHECK_THROWS_AS(a * ComplexMatrix(3, 2), ValidationError);
}

TEST_CASE("adjoint conjugate-transposes") {
  ComplexMatrix a(2, 2,
                  {Complex(1, 1), Complex(2, -3), Complex(0, 5), Complex(4, 0)});
  const ComplexMatrix ad = a.adjoint();
  CHECK(ad(0, 0) == Complex(1, -1));
  CHECK(ad(0, 1) == Complex(0, -5));
  CHECK(ad(1, 0) == Complex(2, 3));
  CHECK(ad(1, 1) == Complex(4, 0));
}

TEST_CASE("fourier matrix frozen values and unitarity") {
  const ComplexMatrix f = ComplexMatrix::fourier(4);
  const double h = 0.5;
  CHECK(std::abs(f(0, 0) - Complex(h, 0)) < 1e-15);
  CHECK(std::abs(f(1, 1) - Complex(0, h)) < 1e-15);
  CHECK(std::abs(f(1, 2) - Complex(-h, 0)) < 1e-15);
  CHECK(std::abs(f(1, 3) - Complex(0, -h)) < 1e-15);
  CHECK(std::abs(f(2, 2) - Complex(h, 0)) < 1e-15);
  CHECK(std::abs(f(3, 3) - Complex(0, h)) < 1e-15);
  CHECK(is_unitary(f, 1e-12));
  for (std::size_t n = 1; n <= 9; ++n) {
    CHECK(is_unitary(ComplexMatrix::fourier(n), 1e-12));
  }
}

TEST_CASE("apply multiplies matrix by vector") {
  ComplexMatrix a(2, 2,
                  {Complex(1, 0), Complex(0, 1), Complex(2, 0), Complex(0, 0)});
  const auto out = a.apply({Complex(1, 0), Complex(1, 0)});
  CHECK(std::abs(out[0] - Complex(1, 1)) < 1e-15);
  CHECK(std::abs(out[1] - Complex(2, 0)) < 1e-15);
  CHECK_THROWS_AS(a.apply({Complex(1, 0)}), ValidationError);
}

TEST_CASE("hermiticity defect") {
  CHECK(hermiticity_defect(diag2(1.0, 2.0)) == 0.0);
  ComplexMatrix a(2, 2,
                  {Complex(1, 0), Complex(0, 1), Complex(0, 1), Complex(1, 0)});
  // a_01 = i but conj(a_10) = -i
  CHECK(hermiticity_defect(a) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(hermiticity_defect(ComplexMatrix(1, 2)), NotSquareError);
}

TEST_CASE("eigendecomposition of a diagonal matrix is a sort") {
  ComplexMatrix m(3, 3);
  m(0, 0) = 0.2;
  m(1, 1) = 0.5;
  m(2, 2) = 0.3;
  const EigenDecomposition e = hermitian_eig(m);
  CHECK(e.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.eigenvalues[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(e.eigenvalues[2] == doctest::Approx(0.2).epsilon(1e-15));
  // columns are the matching basis vectors
  CHECK(std::abs(e.eigenvectors(1, 0) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(e.eigenvectors(2, 1) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(e.eigenvectors(0, 2) - Complex(1, 0)) < 1e-14);
}

TEST_CASE("eigendecomposition frozen 2x2 real symmetric") {
  ComplexMatrix m(2, 2,
                  {Complex(0.5, 0), Complex(0.25, 0), Complex(0.25, 0),
                   Complex(0.5, 0)});
  const EigenDecomposition e = hermitian_eig(m);
  CHECK(e.eigenvalues[0] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(e.eigenvalues[1] == doctest::Approx(0.25).epsilon(1e-14));
  const double r = std::sqrt(0.5);
  CHECK(std::abs(e.eigenvectors(0, 0) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(e.eigenvectors(1, 0) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(e.eigenvectors(0, 1) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(e.eigenvectors(1, 1) - Complex(-r, 0)) < 1e-12);
}

TEST_CASE("eigendecomposition frozen complex 2x2") {
  // [[0, -i], [i, 0]]: eigenvalues +1 and -1
  ComplexMatrix m(2, 2,
                  {Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)});
  const EigenDecomposition e = hermitian_eig(m);
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
  const double r = std::sqrt(0.5);
  // canonical phase: first component of each column real nonnegative
  CHECK(e.eigenvectors(0, 0).real() == doctest::Approx(r).epsilon(1e-12));
  CHECK(std::abs(e.eigenvectors(0, 0).imag()) < 1e-12);
  CHECK(e.eigenvectors(0, 1).real() == doctest::Approx(r).epsilon(1e-12));
  // and the columns are orthogonal
  Complex dot(0, 0);
  for (std::size_t i = 0; i < 2; ++i) {
    dot += std::conj(e.eigenvectors(i, 0)) * e.eigenvectors(i, 1);
  }
  CHECK(std::abs(dot) < 1e-12);
}

TEST_CASE("eigendecomposition properties on random Hermitian matrices") {
  SeededRng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(7);
    const ComplexMatrix a = random_hermitian(n, rng);
    const EigenDecomposition e = hermitian_eig(a);

    CHECK(is_unitary(e.eigenvectors, 1e-10));
    for (std::size_t k = 0; k + 1 < n; ++k) {
      CHECK(e.eigenvalues[k] >= e.eigenvalues[k + 1]);
    }
    CHECK(max_abs_diff(reconstruct(e.eigenvectors, e.eigenvalues), a) < 1e-10);
  }
}

TEST_CASE("eigendecomposition is deterministic") {
  SeededRng rng(7);
  const ComplexMatrix a = random_hermitian(6, rng);
  const EigenDecomposition e1 = hermitian_eig(a);
  const EigenDecomposition e2 = hermitian_eig(a);
  CHECK(max_abs_diff(e1.eigenvectors, e2.eigenvectors) == 0.0);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(e1.eigenvalues[i] == e2.eigenvalues[i]);
  }
}

TEST_CASE("eigendecomposition rejects bad input") {
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), NotSquareError);
  ComplexMatrix a(2, 2,
                  {Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0)});
  CHECK_THROWS_AS(hermitian_eig(a), NotHermitianError);
}

TEST_CASE("unitarity test") {
  CHECK(is_unitary(ComplexMatrix::identity(4), 1e-14));
  ComplexMatrix almost = ComplexMatrix::identity(2);
  almost(0, 0) = 1.0 + 1e-6;
  CHECK_FALSE(is_unitary(almost, 1e-8));
  CHECK(is_unitary(almost, 1e-2));
  CHECK_THROWS_AS(is_unitary(ComplexMatrix(2, 3), 1e-8), NotSquareError);
}

TEST_CASE("polar factor of a unitary is itself") {
  SeededRng rng(11);
  const ComplexMatrix u = random_unitary(5, rng);
  CHECK(max_abs_diff(polar_unitary(u), u) < 1e-12);
}

TEST_CASE("polar factor recovers the rotation of a positive stretch") {
  SeededRng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(5);
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix v = random_unitary(n, rng);
    std::vector<double> stretch(n);
    for (double& s : stretch) s = 0.5 + 1.5 * rng.uniform();
    // a = u * (v diag v^dagger): unitary factor is exactly u
    const ComplexMatrix a = u * reconstruct(v, stretch);
    const ComplexMatrix w = polar_unitary(a);
    CHECK(is_unitary(w, 1e-12));
    CHECK(max_abs_diff(w, u) < 1e-10);
  }
}

TEST_CASE("polar factor rejects rank-deficient input") {
  ComplexMatrix a(2, 2);
  a(0, 0) = 1.0;  // second column is zero
  CHECK_THROWS_AS(polar_unitary(a), RankDeficientError);
}
