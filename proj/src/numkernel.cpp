#include "rhomix/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace rhomix {

namespace {

void check_finite(const std::vector<Complex>& e) {
  for (const Complex& z : e) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("matrix entry is not finite");
    }
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), e_(rows * cols, Complex(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows_ * cols_) {
    throw ValidationError("matrix entry count does not match shape " +
                          std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  check_finite(e_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::fourier(std::size_t n) {
  ComplexMatrix m(n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double a = 2.0 * std::numbers::pi *
                       static_cast<double>((j * k) % n) /
                       static_cast<double>(n);
      m(j, k) = Complex(s * std::cos(a), s * std::sin(a));
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      m(c, r) = std::conj((*this)(r, c));
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) {
    throw ValidationError("matrix product shape mismatch");
  }
  ComplexMatrix m(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(r, k);
      if (a == Complex(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        m(r, c) += a * rhs(k, c);
      }
    }
  }
  return m;
}

std::vector<Complex> ComplexMatrix::apply(const std::vector<Complex>& v) const {
  if (v.size() != cols_) {
    throw ValidationError("matrix-vector shape mismatch");
  }
  std::vector<Complex> out(rows_, Complex(0.0, 0.0));
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex acc(0.0, 0.0);
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : e_) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("matrix difference shape mismatch");
  }
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      m = std::max(m, std::abs(a(r, c) - b(r, c)));
    }
  }
  return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.square()) throw NotSquareError("hermiticity defect needs a square matrix");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = r; c < a.cols(); ++c) {
      m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
    }
  }
  return m;
}

ComplexMatrix reconstruct(const ComplexMatrix& v,
                          const std::vector<double>& w) {
  const std::size_t n = v.rows();
  if (v.cols() != w.size()) {
    throw ValidationError("reconstruction shape mismatch");
  }
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < w.size(); ++k) {
        acc += w[k] * v(r, k) * std::conj(v(c, k));
      }
      m(r, c) = acc;
    }
  }
  return m;
}

namespace {

constexpr double kJacobiOffThreshold = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

// One Jacobi rotation zeroing m(p,q). J acts on the (p,q) plane:
//   J_pp = c, J_pq = s, J_qp = -conj(phase)*s, J_qq = conj(phase)*c
// where phase = m(p,q)/|m(p,q)| and (c,s) is the classic symmetric-case
// rotation for the 2x2 block with the phase absorbed.
void jacobi_rotate(ComplexMatrix& m, ComplexMatrix& v, std::size_t p,
                   std::size_t q) {
  const std::size_t n = m.rows();
  const Complex apq = m(p, q);
  const double h = std::abs(apq);
  const double app = m(p, p).real();
  const double aqq = m(q, q).real();
  const Complex phase = apq / h;

  const double tau = (aqq - app) / (2.0 * h);
  double t;
  if (tau >= 0.0) {
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  } else {
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex jpp(c, 0.0);
  const Complex jpq(s, 0.0);
  const Complex jqp = -std::conj(phase) * s;
  const Complex jqq = std::conj(phase) * c;

  // columns p, q of m and of the accumulated basis
  for (std::size_t r = 0; r < n; ++r) {
    const Complex mp = m(r, p), mq = m(r, q);
    m(r, p) = mp * jpp + mq * jqp;
    m(r, q) = mp * jpq + mq * jqq;
    const Complex vp = v(r, p), vq = v(r, q);
    v(r, p) = vp * jpp + vq * jqp;
    v(r, q) = vp * jpq + vq * jqq;
  }
  // rows p, q of m
  for (std::size_t col = 0; col < n; ++col) {
    const Complex mp = m(p, col), mq = m(q, col);
    m(p, col) = std::conj(jpp) * mp + std::conj(jqp) * mq;
    m(q, col) = std::conj(jpq) * mp + std::conj(jqq) * mq;
  }
  m(p, q) = 0.0;
  m(q, p) = 0.0;
  m(p, p) = Complex(m(p, p).real(), 0.0);
  m(q, q) = Complex(m(q, q).real(), 0.0);
}

void canonicalize_column_phases(ComplexMatrix& v) {
  for (std::size_t c = 0; c < v.cols(); ++c) {
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < v.rows(); ++r) {
      const double a = std::abs(v(r, c));
      if (a > best) {
        best = a;
        imax = r;
      }
    }
    if (best <= 0.0) continue;
    const Complex z = v(imax, c);
    const Complex rot = std::conj(z) / std::abs(z);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, c) *= rot;
    v(imax, c) = Complex(std::abs(v(imax, c)), 0.0);
  }
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  if (!a.square()) throw NotSquareError("eigendecomposition needs a square matrix");
  if (hermiticity_defect(a) >= 1e-10) {
    throw NotHermitianError("matrix is not Hermitian within 1e-10");
  }
  const std::size_t n = a.rows();

  // work on the exactly symmetrized copy
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    std::size_t rotations = 0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) > kJacobiOffThreshold) {
          jacobi_rotate(m, v, p, q);
          ++rotations;
        }
      }
    }
    if (rotations == 0) break;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = m(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = diag[order[k]];
    for (std::size_t r = 0; r < n; ++r) {
      out.eigenvectors(r, k) = v(r, order[k]);
    }
  }
  canonicalize_column_phases(out.eigenvectors);
  return out;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (!u.square()) throw NotSquareError("unitarity test needs a square matrix");
  const std::size_t n = u.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        acc += std::conj(u(k, i)) * u(k, j);
      }
      if (i == j) acc -= 1.0;
      if (std::abs(acc) >= tol) return false;
    }
  }
  return true;
}

ComplexMatrix polar_unitary(const ComplexMatrix& a) {
  if (!a.square()) throw NotSquareError("polar factor needs a square matrix");
  const std::size_t n = a.rows();

  const EigenDecomposition gram = hermitian_eig(a.adjoint() * a);
  const double emin = gram.eigenvalues.back();
  const double smin = std::sqrt(std::max(emin, 0.0));
  if (smin <= 1e-12) {
    throw RankDeficientError(
        "polar factor undefined: smallest singular value <= 1e-12");
  }

  // A (A^dagger A)^{-1/2}
  std::vector<double> inv_root(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv_root[i] = 1.0 / std::sqrt(gram.eigenvalues[i]);
  }
  ComplexMatrix u = a * reconstruct(gram.eigenvectors, inv_root);

  // two Newton-Schulz polish steps: U <- U (3I - U^dagger U) / 2
  for (int it = 0; it < 2; ++it) {
    ComplexMatrix g = u.adjoint() * u;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        g(r, c) = (r == c ? Complex(3.0, 0.0) : Complex(0.0, 0.0)) - g(r, c);
      }
    }
    ComplexMatrix next = u * g;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) next(r, c) *= 0.5;
    }
    u = next;
  }
  return u;
}

}  // namespace rhomix
