#include "rhomix/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rhomix/rng.hpp"

namespace rhomix {

ProbabilityVector::ProbabilityVector(std::vector<double> components)
    : c_(std::move(components)) {
  if (c_.empty()) throw ValidationError("probability vector is empty");
  double sum = 0.0;
  for (double& x : c_) {
    if (!std::isfinite(x)) {
      throw ValidationError("probability vector component is not finite");
    }
    if (x < 0.0) {
      if (x < -1e-14) {
        throw ValidationError("probability vector component below -1e-14: " +
                              std::to_string(x));
      }
      x = 0.0;
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("probability vector sums to " + std::to_string(sum) +
                          ", not 1 within 1e-12");
  }
}

std::pair<ProbabilityVector, std::vector<std::size_t>> sort_descending(
    const ProbabilityVector& p) {
  std::vector<std::size_t> perm(p.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  std::vector<double> sorted(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) sorted[k] = p[perm[k]];
  return {ProbabilityVector(std::move(sorted)), std::move(perm)};
}

ProbabilityVector pad_to(const ProbabilityVector& p, std::size_t n) {
  if (n < p.size()) {
    throw TargetTooShortError("pad target " + std::to_string(n) +
                              " shorter than vector of length " +
                              std::to_string(p.size()));
  }
  std::vector<double> out = p.components();
  out.resize(n, 0.0);
  return ProbabilityVector(std::move(out));
}

bool majorizes(const ProbabilityVector& p, const ProbabilityVector& q) {
  std::vector<double> a = p.components();
  std::vector<double> b = q.components();
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double sa = 0.0, sb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sa += a[k];
    sb += b[k];
    if (sa > sb + 1e-12) return false;
  }
  return true;
}

ProbabilityVector apply_t(const ProbabilityVector& p, const TTransform& tt) {
  if (tt.i >= p.size() || tt.j >= p.size() || tt.i == tt.j) {
    throw IndexOutOfRangeError("T-transform indices (" + std::to_string(tt.i) +
                               ", " + std::to_string(tt.j) +
                               ") invalid for length " +
                               std::to_string(p.size()));
  }
  if (!(tt.t >= 0.0 && tt.t <= 1.0)) {
    throw ValidationError("T-transform parameter outside [0, 1]");
  }
  std::vector<double> out = p.components();
  const double x = out[tt.i], y = out[tt.j];
  out[tt.i] = tt.t * x + (1.0 - tt.t) * y;
  out[tt.j] = (1.0 - tt.t) * x + tt.t * y;
  return ProbabilityVector(std::move(out));
}

namespace {

void require_sorted_descending(const ProbabilityVector& v, const char* name) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] < v[i + 1] - 1e-12) {
      throw ValidationError(std::string(name) +
                            " is not sorted descending at index " +
                            std::to_string(i));
    }
  }
}

}  // namespace

std::vector<TTransform> hlp_chain(const ProbabilityVector& p,
                                  const ProbabilityVector& q) {
  if (p.size() != q.size()) {
    throw ValidationError("chain endpoints have different lengths");
  }
  require_sorted_descending(p, "target vector");
  require_sorted_descending(q, "start vector");
  if (!majorizes(p, q)) {
    throw NotMajorizedError("target is not majorized by start");
  }

  const std::size_t n = p.size();
  constexpr double kMatched = 1e-13;
  std::vector<double> v = q.components();
  std::vector<TTransform> chain;

  // Each step moves surplus from the first coordinate above its target to the
  // first later coordinate below it, pinning at least one of the two; hence
  // at most n-1 steps.
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] - p[i] > kMatched) {
        a = i;
        break;
      }
    }
    if (a == n) break;
    std::size_t b = n;
    for (std::size_t i = a + 1; i < n; ++i) {
      if (p[i] - v[i] > kMatched) {
        b = i;
        break;
      }
    }
    if (b == n) break;

    const double delta = std::min(v[a] - p[a], p[b] - v[b]);
    double t = 1.0 - delta / (v[a] - v[b]);
    t = std::clamp(t, 0.0, 1.0);
    chain.push_back({a, b, t});
    const double x = v[a], y = v[b];
    v[a] = t * x + (1.0 - t) * y;
    v[b] = (1.0 - t) * x + t * y;
  }
  return chain;
}

namespace {

// row-major n x n real product
std::vector<double> real_matmul(const std::vector<double>& a,
                                const std::vector<double>& b, std::size_t n) {
  std::vector<double> out(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const double x = a[r * n + k];
      if (x == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) out[r * n + c] += x * b[k * n + c];
    }
  }
  return out;
}

// Plane-rotation induction: fix the first target entry with one rotation,
// recurse on what is left. Every later factor acts trivially on the fixed
// coordinate, which is what makes the entrywise squares multiply.
std::vector<double> horn_recurse(const std::vector<double>& p,
                                 const std::vector<double>& q) {
  const std::size_t n = p.size();
  if (n == 1) return {1.0};

  std::size_t partner = 0;  // 0 encodes the identity step
  double c = 1.0, s = 0.0;
  std::vector<double> rest(n - 1);
  if (p[0] >= q[0] - 1e-13) {
    for (std::size_t i = 1; i < n; ++i) rest[i - 1] = q[i];
  } else {
    // insertion point: largest k with q[k] <= p[0] <= q[k-1]
    std::size_t a = 0;
    while (a + 1 < n && q[a + 1] >= p[0]) ++a;
    partner = std::min(a + 1, n - 1);
    const double denom = q[0] - q[partner];
    const double c2 = std::clamp((p[0] - q[partner]) / denom, 0.0, 1.0);
    c = std::sqrt(c2);
    s = std::sqrt(1.0 - c2);
    for (std::size_t i = 1; i < n; ++i) rest[i - 1] = q[i];
    rest[partner - 1] = q[0] + q[partner] - p[0];
  }

  std::vector<std::size_t> tau(n - 1);
  std::iota(tau.begin(), tau.end(), std::size_t{0});
  std::stable_sort(tau.begin(), tau.end(), [&](std::size_t x, std::size_t y) {
    return rest[x] > rest[y];
  });
  std::vector<double> rest_sorted(n - 1);
  for (std::size_t m = 0; m + 1 < n; ++m) rest_sorted[m] = rest[tau[m]];

  const std::vector<double> sub =
      horn_recurse(std::vector<double>(p.begin() + 1, p.end()), rest_sorted);

  // L = 1 (+) sub * Pi, where Pi undoes the sort of the remainder
  std::vector<double> l(n * n, 0.0);
  l[0] = 1.0;
  for (std::size_t x = 0; x + 1 < n; ++x) {
    for (std::size_t m = 0; m + 1 < n; ++m) {
      l[(x + 1) * n + (tau[m] + 1)] = sub[x * (n - 1) + m];
    }
  }
  if (partner == 0) return l;

  std::vector<double> g(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) g[i * n + i] = 1.0;
  g[0] = c;
  g[partner] = s;
  g[partner * n] = -s;
  g[partner * n + partner] = c;
  return real_matmul(l, g, n);
}

}  // namespace

ComplexMatrix horn_orthogonal(const ProbabilityVector& p,
                              const ProbabilityVector& q) {
  if (p.size() != q.size()) {
    throw ValidationError("orthogonal construction endpoints differ in length");
  }
  require_sorted_descending(p, "target vector");
  require_sorted_descending(q, "start vector");
  if (!majorizes(p, q)) {
    throw NotMajorizedError("target is not majorized by start");
  }
  const std::size_t n = p.size();
  const std::vector<double> o = horn_recurse(p.components(), q.components());
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = o[r * n + c];
  }
  return out;
}

ProbabilityVector sample_majorized(const ProbabilityVector& q,
                                   std::uint64_t seed) {
  const std::size_t n = q.size();
  std::vector<double> v = q.components();
  if (n >= 2) {
    SeededRng rng(seed);
    for (std::size_t step = 0; step < 3 * n; ++step) {
      const std::size_t i = rng.uniform_index(n);
      std::size_t j = rng.uniform_index(n - 1);
      if (j >= i) ++j;
      const double t = rng.uniform();
      const double x = v[i], y = v[j];
      v[i] = t * x + (1.0 - t) * y;
      v[j] = (1.0 - t) * x + t * y;
    }
  }
  return ProbabilityVector(std::move(v));
}

}  // namespace rhomix
