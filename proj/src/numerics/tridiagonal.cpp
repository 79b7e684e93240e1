#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "xspectra/errors.hpp"
#include "xspectra/parallel.hpp"
#include "xspectra/spectral.hpp"

namespace xspectra::numerics {

bool TridiagonalOperator::is_real() const noexcept {
  auto real = [](cplx z) { return z.imag() == 0.0; };
  return std::all_of(diagonal.begin(), diagonal.end(), real) &&
         std::all_of(off_diagonal.begin(), off_diagonal.end(), real);
}

double TridiagonalOperator::norm_inf() const noexcept {
  double best = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(off_diagonal[i - 1]);
    if (i + 1 < n) row += std::abs(off_diagonal[i]);
    best = std::max(best, row);
  }
  return best;
}

std::vector<cplx> TridiagonalOperator::apply(std::span<const cplx> v) const {
  const std::size_t n = size();
  if (v.size() != n) throw ArgumentError("TridiagonalOperator::apply: size mismatch");
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = diagonal[i] * v[i];
    if (i > 0) s += off_diagonal[i - 1] * v[i - 1];
    if (i + 1 < n) s += off_diagonal[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

TridiagonalOperator discretize(const std::function<cplx(double)>& v, double lo, double hi, int n) {
  if (n < 100) throw ArgumentError("discretize: N must be at least 100");
  if (!(lo < hi)) throw ArgumentError("discretize: need lo < hi");
  TridiagonalOperator t;
  const auto un = static_cast<std::size_t>(n);
  t.h = (hi - lo) / (n + 1);
  t.x_grid.resize(un);
  t.diagonal.resize(un);
  t.off_diagonal.assign(un - 1, cplx(-1.0 / (t.h * t.h)));
  for (std::size_t i = 0; i < un; ++i) t.x_grid[i] = lo + static_cast<double>(i + 1) * t.h;
  const double kinetic = 2.0 / (t.h * t.h);
  parallel_for(un, [&](std::size_t i) { t.diagonal[i] = kinetic + v(t.x_grid[i]); });
  return t;
}

TridiagonalOperator discretize(const models::PotentialModel& m, double lo, double hi, int n) {
  models::require_valid(m);
  // Dirichlet ends are not grid points, so poles exactly at lo or hi are allowed.
  for (double s : models::singular_points_in(m, lo, hi)) {
    const bool at_end = std::abs(s - lo) <= 1e-12 * (1.0 + std::abs(lo)) ||
                        std::abs(s - hi) <= 1e-12 * (1.0 + std::abs(hi));
    if (!at_end) throw SingularityError("discretize: singular point of the potential inside [lo, hi]", s);
  }
  return discretize([&m](double x) { return models::potential(m, x); }, lo, hi, n);
}

namespace {

// Number of eigenvalues below x (Sturm count from the LDL^T pivots).
int count_below(const std::vector<double>& d, const std::vector<double>& e2, double x) {
  int count = 0;
  double q = d[0] - x;
  const double tiny = std::numeric_limits<double>::min();
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (q == 0.0) q = tiny;
    q = d[i] - x - e2[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& t, int m) {
  if (!t.is_real()) throw TypeError("lowest_eigenvalues: operator has complex entries, use eigen_near_shift");
  const std::size_t n = t.size();
  if (m < 1 || static_cast<std::size_t>(m) > n) throw ArgumentError("lowest_eigenvalues: m out of range");
  std::vector<double> d(n), e2(n > 0 ? n - 1 : 0);
  double glo = std::numeric_limits<double>::infinity(), ghi = -glo;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = t.diagonal[i].real();
    double r = 0.0;
    if (i > 0) r += std::abs(t.off_diagonal[i - 1].real());
    if (i + 1 < n) r += std::abs(t.off_diagonal[i].real());
    glo = std::min(glo, d[i] - r);
    ghi = std::max(ghi, d[i] + r);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) e2[i] = t.off_diagonal[i].real() * t.off_diagonal[i].real();

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  double lower = glo;
  for (int j = 0; j < m; ++j) {
    // eigenvalue j is the smallest x with count_below(x) > j
    double a = lower, b = ghi;
    while (true) {
      const double mid = 0.5 * (a + b);
      if (!(mid > a && mid < b)) break;
      if (count_below(d, e2, mid) > j)
        b = mid;
      else
        a = mid;
    }
    out.push_back(0.5 * (a + b));
    lower = a;
  }
  return out;
}

TridiagonalLU::TridiagonalLU(const TridiagonalOperator& t, cplx shift) {
  const std::size_t n = t.size();
  d_.resize(n);
  for (std::size_t i = 0; i < n; ++i) d_[i] = t.diagonal[i] - shift;
  dl_ = t.off_diagonal;
  du_ = t.off_diagonal;
  du2_.assign(n > 1 ? n - 1 : 0, cplx(0.0));
  swapped_.assign(n > 1 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d_[i]) >= std::abs(dl_[i])) {
      if (d_[i] == 0.0) throw ConvergenceError("tridiagonal LU: singular pivot");
      const cplx fact = dl_[i] / d_[i];
      dl_[i] = fact;
      d_[i + 1] -= fact * du_[i];
    } else {
      const cplx fact = d_[i] / dl_[i];
      d_[i] = dl_[i];
      dl_[i] = fact;
      const cplx tmp = du_[i];
      du_[i] = d_[i + 1];
      d_[i + 1] = tmp - fact * d_[i + 1];
      if (i + 2 < n) {
        du2_[i] = du_[i + 1];
        du_[i + 1] = -fact * du_[i + 1];
      }
      swapped_[i] = 1;
    }
  }
  if (n > 0 && d_[n - 1] == 0.0) throw ConvergenceError("tridiagonal LU: singular pivot");
}

void TridiagonalLU::solve(std::span<cplx> b) const {
  const std::size_t n = d_.size();
  if (b.size() != n) throw ArgumentError("TridiagonalLU::solve: size mismatch");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped_[i]) {
      b[i + 1] -= dl_[i] * b[i];
    } else {
      const cplx tmp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tmp - dl_[i] * b[i];
    }
  }
  b[n - 1] /= d_[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
  for (std::size_t i = n - 2; i-- > 0;)
    b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
}

namespace {

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (cplx z : v) s += std::norm(z);
  return std::sqrt(s);
}

TridiagonalLU factor_with_retry(const TridiagonalOperator& t, cplx& shift) {
  try {
    return TridiagonalLU(t, shift);
  } catch (const ConvergenceError&) {
    shift += 1e-8 * (1.0 + std::abs(shift));
    return TridiagonalLU(t, shift);
  }
}

}  // namespace

ShiftResult eigen_near_shift(const TridiagonalOperator& t, cplx sigma, int iters, double tol) {
  const std::size_t n = t.size();
  if (n == 0) throw ArgumentError("eigen_near_shift: empty operator");
  if (iters < 1) throw ArgumentError("eigen_near_shift: iters must be positive");
  constexpr int kFixedSteps = 3;
  constexpr int kPatience = 4;

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(0.5, 1.5);
  std::vector<cplx> v(n);
  for (auto& z : v) z = uni(rng);
  {
    const double nv = norm2(v);
    for (auto& z : v) z /= nv;
  }

  ShiftResult best;
  best.eigenvalue = sigma;
  best.residual = std::numeric_limits<double>::infinity();
  cplx shift = sigma;
  int stale = 0;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= iters; ++it) {
    std::optional<TridiagonalLU> lu;
    try {
      lu.emplace(factor_with_retry(t, shift));
    } catch (const ConvergenceError&) {
      // shift sits on an eigenvalue to working precision
      if (it > kFixedSteps) break;
      throw ConvergenceError("eigen_near_shift: shifted matrix singular after perturbation");
    }
    lu->solve(v);
    const double nv = norm2(v);
    if (!std::isfinite(nv) || nv == 0.0) break;
    for (auto& z : v) z /= nv;

    const auto tv = t.apply(v);
    cplx mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += std::conj(v[i]) * tv[i];
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += std::norm(tv[i] - mu * v[i]);
    const double res = std::sqrt(r2);

    best.iterations = it;
    if (res < best.residual) {
      best.residual = res;
      best.eigenvalue = mu;
    }
    // once converged, keep going only while the residual still drops fast
    if (best.residual <= tol) stale = res < 0.5 * prev ? 0 : stale + 1;
    prev = res;
    if (stale >= kPatience || res == 0.0) break;
    if (it >= kFixedSteps) shift = mu;
  }
  best.converged = best.residual <= tol;
  return best;
}

}  // namespace xspectra::numerics
