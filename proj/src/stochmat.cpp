#include "rhomix/stochmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "rhomix/rng.hpp"

namespace rhomix {

BistochasticMatrix::BistochasticMatrix(std::size_t n,
                                       std::vector<double> entries)
    : n_(n), e_(std::move(entries)) {
  if (n_ == 0) throw ValidationError("bistochastic matrix is empty");
  if (e_.size() != n_ * n_) {
    throw ValidationError("bistochastic entry count does not match size");
  }
  for (double& x : e_) {
    if (!std::isfinite(x)) {
      throw ValidationError("bistochastic entry is not finite");
    }
    if (x < -1e-12 || x > 1.0 + 1e-12) {
      throw ValidationError("bistochastic entry outside [0, 1]: " +
                            std::to_string(x));
    }
    x = std::clamp(x, 0.0, 1.0);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double rs = 0.0, cs = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      rs += e_[i * n_ + j];
      cs += e_[j * n_ + i];
    }
    if (std::abs(rs - 1.0) > 1e-10) {
      throw ValidationError("row " + std::to_string(i) + " sums to " +
                            std::to_string(rs) + ", not 1 within 1e-10");
    }
    if (std::abs(cs - 1.0) > 1e-10) {
      throw ValidationError("column " + std::to_string(i) + " sums to " +
                            std::to_string(cs) + ", not 1 within 1e-10");
    }
  }
}

BistochasticMatrix BistochasticMatrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return BistochasticMatrix(n, std::move(e));
}

std::vector<double> BistochasticMatrix::apply(
    const std::vector<double>& v) const {
  if (v.size() != n_) throw ValidationError("bistochastic apply shape mismatch");
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += e_[i * n_ + j] * v[j];
    out[i] = acc;
  }
  return out;
}

BistochasticMatrix from_unitary(const ComplexMatrix& u) {
  if (!u.square()) throw NotSquareError("moduli map needs a square matrix");
  if (!is_unitary(u, 1e-10)) {
    throw NotUnitaryError("matrix is not unitary within 1e-10");
  }
  const std::size_t n = u.rows();
  std::vector<double> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      e[i * n + j] = std::norm(u(i, j));
    }
  }
  return BistochasticMatrix(n, std::move(e));
}

BistochasticMatrix van_der_waerden(std::size_t n) {
  if (n == 0) throw ValidationError("bistochastic matrix is empty");
  return BistochasticMatrix(
      n, std::vector<double>(n * n, 1.0 / static_cast<double>(n)));
}

BistochasticMatrix t_product(const std::vector<TTransform>& transforms,
                             std::size_t n) {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
  for (const TTransform& tt : transforms) {
    if (tt.i >= n || tt.j >= n || tt.i == tt.j) {
      throw IndexOutOfRangeError("T-transform indices invalid for size " +
                                 std::to_string(n));
    }
    if (!(tt.t >= 0.0 && tt.t <= 1.0)) {
      throw ValidationError("T-transform parameter outside [0, 1]");
    }
    // left-multiplying by T touches rows i and j only
    for (std::size_t c = 0; c < n; ++c) {
      const double x = m[tt.i * n + c], y = m[tt.j * n + c];
      m[tt.i * n + c] = tt.t * x + (1.0 - tt.t) * y;
      m[tt.j * n + c] = (1.0 - tt.t) * x + tt.t * y;
    }
  }
  return BistochasticMatrix(n, std::move(m));
}

namespace {

// margin of one line pair: sum of the smaller links minus the largest
double pair_margin(const std::vector<double>& links) {
  double total = 0.0, largest = 0.0;
  for (double l : links) {
    total += l;
    largest = std::max(largest, l);
  }
  return total - 2.0 * largest;
}

}  // namespace

ChainLinksReport chain_links(const BistochasticMatrix& b) {
  const std::size_t n = b.size();
  ChainLinksReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();

  std::vector<double> links(n);
  auto consider = [&](PairAxis axis, std::size_t x, std::size_t y) {
    const double margin = pair_margin(links);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      if (margin < -1e-12) {
        rep.violating_pair = ChainLinksReport::Pair{axis, x, y};
        rep.violating_links = links;
      }
    }
  };

  for (std::size_t a = 0; a + 1 < n; ++a) {
    for (std::size_t c = a + 1; c < n; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        links[i] = std::sqrt(b(i, a) * b(i, c));
      }
      consider(PairAxis::Column, a, c);
    }
  }
  for (std::size_t a = 0; a + 1 < n; ++a) {
    for (std::size_t c = a + 1; c < n; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        links[i] = std::sqrt(b(a, i) * b(c, i));
      }
      consider(PairAxis::Row, a, c);
    }
  }

  rep.satisfied = !rep.violating_pair.has_value();
  if (rep.satisfied) {
    rep.violating_links.clear();
  }
  return rep;
}

namespace {

double certificate_residual(const ComplexMatrix& w,
                            const BistochasticMatrix& b) {
  const std::size_t n = b.size();
  double moduli = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      moduli = std::max(moduli, std::abs(std::norm(w(i, j)) - b(i, j)));
    }
  }
  double unit = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(w(k, i)) * w(k, j);
      if (i == j) acc -= 1.0;
      unit = std::max(unit, std::abs(acc));
    }
  }
  return std::max(moduli, unit);
}

// Phases mu1, mu2 closing the link triangle:
//   L0 + L1 e^{i mu1} + L2 e^{i mu2} = 0
// L0 is anchored on the positive real axis; of the two mirror solutions the
// one with sin(mu2) >= 0 is returned.
std::pair<Complex, Complex> triangle_phases(double l0, double l1, double l2) {
  const Complex one(1.0, 0.0);
  const Complex minus(-1.0, 0.0);
  if (l1 <= 0.0 && l2 <= 0.0) return {one, one};
  if (l2 <= 0.0) return {minus, one};
  if (l0 <= 0.0 || l1 <= 0.0) return {one, minus};

  const double c1 =
      std::clamp((l2 * l2 - l0 * l0 - l1 * l1) / (2.0 * l0 * l1), -1.0, 1.0);
  const Complex e1(c1, -std::sqrt(std::max(0.0, 1.0 - c1 * c1)));
  const Complex w = l0 * Complex(1.0, 0.0) + l1 * e1;
  const double wa = std::abs(w);
  const Complex e2 = (wa > 0.0) ? Complex(-w / wa) : one;
  return {e1, e2};
}

UnistochasticCertificate certify_3x3(const BistochasticMatrix& b,
                                     double residual_tol) {
  std::vector<double> links(3);
  for (std::size_t i = 0; i < 3; ++i) links[i] = std::sqrt(b(i, 0) * b(i, 1));
  const auto [e1, e2] = triangle_phases(links[0], links[1], links[2]);

  ComplexMatrix w(3, 3);
  for (std::size_t i = 0; i < 3; ++i) w(i, 0) = std::sqrt(b(i, 0));
  w(0, 1) = std::sqrt(b(0, 1));
  w(1, 1) = std::sqrt(b(1, 1)) * e1;
  w(2, 1) = std::sqrt(b(2, 1)) * e2;

  // third column: orthogonal complement; its moduli then come for free from
  // the row sums, so nothing about it needs checking
  const Complex u0 = w(0, 0), u1 = w(1, 0), u2 = w(2, 0);
  const Complex v0 = w(0, 1), v1 = w(1, 1), v2 = w(2, 1);
  Complex c0 = std::conj(u1 * v2 - u2 * v1);
  Complex c1 = std::conj(u2 * v0 - u0 * v2);
  Complex c2 = std::conj(u0 * v1 - u1 * v0);
  const double norm =
      std::sqrt(std::norm(c0) + std::norm(c1) + std::norm(c2));
  if (norm > 0.0) {
    c0 /= norm;
    c1 /= norm;
    c2 /= norm;
  }
  w(0, 2) = c0;
  w(1, 2) = c1;
  w(2, 2) = c2;

  UnistochasticCertificate cert;
  cert.residual = certificate_residual(w, b);
  if (cert.residual < residual_tol) {
    cert.verdict = CertVerdict::Certified;
    cert.witness = w;
  } else {
    cert.verdict = CertVerdict::Undetermined;
  }
  return cert;
}

struct RestartResult {
  double residual = std::numeric_limits<double>::infinity();
  std::optional<ComplexMatrix> witness;
};

// One seeded Douglas-Rachford run between the fixed-moduli set and the
// unitary group. Plain alternating projections crawl when the two sets meet
// near-tangentially; the reflected update escapes those stalls.
RestartResult projection_search(const BistochasticMatrix& b,
                                const CertifyOptions& opts,
                                std::uint64_t seed) {
  const std::size_t n = b.size();
  SeededRng rng(seed);

  ComplexMatrix x(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = 2.0 * std::numbers::pi * rng.uniform();
      x(i, j) = std::sqrt(b(i, j)) * Complex(std::cos(a), std::sin(a));
    }
  }

  RestartResult best;
  ComplexMatrix y(n, n);
  ComplexMatrix reflected(n, n);
  // stagnation cutoff: give up once the best residual stops halving
  constexpr std::size_t kStallWindow = 2500;
  double mark = std::numeric_limits<double>::infinity();
  std::size_t mark_it = 0;
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double a = std::abs(x(i, j));
        const Complex phase = (a > 0.0) ? x(i, j) / a : Complex(1.0, 0.0);
        y(i, j) = std::sqrt(b(i, j)) * phase;
        reflected(i, j) = 2.0 * y(i, j) - x(i, j);
      }
    }
    ComplexMatrix u(0, 0);
    try {
      u = polar_unitary(reflected);
    } catch (const RankDeficientError&) {
      break;
    }
    const double r = certificate_residual(u, b);
    if (r < best.residual) {
      best.residual = r;
      best.witness = u;
    }
    if (r < opts.residual_tol) break;
    if (best.residual < 0.5 * mark) {
      mark = best.residual;
      mark_it = it;
    } else if (it - mark_it >= kStallWindow) {
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        x(i, j) += u(i, j) - y(i, j);
      }
    }
  }
  return best;
}

}  // namespace

UnistochasticCertificate certify_unistochastic(const BistochasticMatrix& b,
                                               const CertifyOptions& opts) {
  const std::size_t n = b.size();
  UnistochasticCertificate cert;

  if (n == 1) {
    ComplexMatrix w(1, 1);
    w(0, 0) = 1.0;
    cert.residual = certificate_residual(w, b);
    cert.verdict = CertVerdict::Certified;
    cert.witness = w;
    return cert;
  }
  if (n == 2) {
    // every 2x2 bistochastic matrix is orthostochastic
    const double c = std::sqrt(std::clamp(b(0, 0), 0.0, 1.0));
    const double s = std::sqrt(std::clamp(1.0 - b(0, 0), 0.0, 1.0));
    ComplexMatrix w(2, 2);
    w(0, 0) = c;
    w(0, 1) = s;
    w(1, 0) = -s;
    w(1, 1) = c;
    cert.residual = certificate_residual(w, b);
    cert.verdict = CertVerdict::Certified;
    cert.witness = w;
    return cert;
  }

  const ChainLinksReport links = chain_links(b);
  if (!links.satisfied) {
    cert.verdict = CertVerdict::Refuted;
    cert.residual = 0.0;
    return cert;
  }
  if (n == 3) return certify_3x3(b, opts.residual_tol);

  std::vector<RestartResult> results(opts.restarts);
  parallel_for(opts.restarts, opts.mode, [&](std::size_t r) {
    results[r] = projection_search(b, opts, mix_seed(opts.seed, r));
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].residual < results[best].residual) best = r;
  }
  cert.residual = results.empty()
                      ? std::numeric_limits<double>::infinity()
                      : results[best].residual;
  if (!results.empty() && results[best].residual < opts.residual_tol &&
      results[best].witness.has_value()) {
    cert.verdict = CertVerdict::Certified;
    cert.witness = results[best].witness;
  } else {
    cert.verdict = CertVerdict::Undetermined;
  }
  return cert;
}

bool block_structure_check(const BistochasticMatrix& b,
                           const ProbabilityVector& p,
                           const ProbabilityVector& q, std::size_t k) {
  const std::size_t n = b.size();
  if (p.size() != n || q.size() != n) {
    throw ValidationError("block check vectors must match matrix size");
  }
  if (k < 2 || k > n) {
    throw PreconditionViolatedError("block index k must lie in [2, n]");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (p[i] < p[i + 1] - 1e-12 || q[i] < q[i + 1] - 1e-12) {
      throw PreconditionViolatedError("block check vectors must be sorted descending");
    }
  }
  const std::vector<double> bq = b.apply(q.components());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(bq[i] - p[i]) > 1e-10) {
      throw PreconditionViolatedError("matrix does not map q to p within 1e-10");
    }
  }
  double pp = 0.0, qq = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    pp += p[i];
    qq += q[i];
  }
  if (std::abs(pp - qq) > 1e-12) {
    throw PreconditionViolatedError("prefix sums at k-1 are not equal within 1e-12");
  }
  if (!(q[k - 2] > q[k - 1] + 1e-12)) {
    throw PreconditionViolatedError("no spectral gap between q_{k-1} and q_k");
  }

  const std::size_t lead = k - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool off_block = (i < lead) != (j < lead);
      if (off_block && std::abs(b(i, j)) >= 1e-10) return false;
    }
  }
  return true;
}

std::optional<BistochasticMatrix> sample_feasible_bistochastic(
    const ProbabilityVector& p, const ProbabilityVector& q,
    std::uint64_t seed) {
  const std::size_t n = p.size();
  if (q.size() != n) {
    throw ValidationError("feasible sampler endpoints differ in length");
  }
  if (!majorizes(p, q)) return std::nullopt;

  double qnorm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) qnorm2 += q[i] * q[i];

  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    SeededRng rng(mix_seed(seed, attempt));

    // random point of the bistochastic polytope
    std::vector<double> m(n * n, 0.0);
    const std::size_t terms = 3 * n;
    std::vector<double> w(terms);
    double wsum = 0.0;
    for (double& x : w) {
      x = -std::log(rng.uniform_open());
      wsum += x;
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t tidx = 0; tidx < terms; ++tidx) {
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
      }
      const double wt = w[tidx] / wsum;
      for (std::size_t i = 0; i < n; ++i) m[i * n + perm[i]] += wt;
    }

    // alternating projections: {B q = p}, row sums, column sums, entries >= 0
    double viol = std::numeric_limits<double>::infinity();
    for (std::size_t cycle = 0; cycle < 20000 && viol > 1e-11; ++cycle) {
      for (std::size_t i = 0; i < n; ++i) {
        double bq = 0.0;
        for (std::size_t j = 0; j < n; ++j) bq += m[i * n + j] * q[j];
        const double corr = (p[i] - bq) / qnorm2;
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] += corr * q[j];
      }
      for (std::size_t i = 0; i < n; ++i) {
        double rs = 0.0;
        for (std::size_t j = 0; j < n; ++j) rs += m[i * n + j];
        const double corr = (1.0 - rs) / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] += corr;
      }
      for (std::size_t j = 0; j < n; ++j) {
        double cs = 0.0;
        for (std::size_t i = 0; i < n; ++i) cs += m[i * n + j];
        const double corr = (1.0 - cs) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) m[i * n + j] += corr;
      }
      for (double& x : m) x = std::max(x, 0.0);

      viol = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double bq = 0.0, rs = 0.0, cs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          bq += m[i * n + j] * q[j];
          rs += m[i * n + j];
          cs += m[j * n + i];
        }
        viol = std::max({viol, std::abs(bq - p[i]), std::abs(rs - 1.0),
                         std::abs(cs - 1.0)});
      }
    }
    if (viol <= 1e-11) {
      return BistochasticMatrix(n, std::move(m));
    }
  }
  return std::nullopt;
}

}  // namespace rhomix
