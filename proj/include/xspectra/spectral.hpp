#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xspectra/models.hpp"

namespace xspectra::numerics {

using cplx = std::complex<double>;

/// Symmetric (complex-symmetric, not Hermitian, when V is complex)
/// tridiagonal matrix. off_diagonal[i] couples rows i and i+1.
struct TridiagonalOperator {
  std::vector<cplx> diagonal;
  std::vector<cplx> off_diagonal;
  double h = 0.0;
  std::vector<double> x_grid;

  std::size_t size() const noexcept { return diagonal.size(); }
  bool is_real() const noexcept;
  /// max row sum of absolute values
  double norm_inf() const noexcept;
  std::vector<cplx> apply(std::span<const cplx> v) const;
};

/// -d^2/dx^2 + V on the interior points x_i = lo + i h, i = 1..N,
/// h = (hi - lo)/(N + 1), Dirichlet ends.
TridiagonalOperator discretize(const models::PotentialModel& m, double lo, double hi, int n);
TridiagonalOperator discretize(const std::function<cplx(double)>& v, double lo, double hi, int n);

/// The m smallest eigenvalues of a real operator, ascending. Sturm counts on
/// the LDL^T pivots, bisected until the bracket cannot shrink further.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& t, int m);

struct ShiftResult {
  cplx eigenvalue;
  double residual = 0.0;  // ||(T - lambda) v|| / ||v||
  int iterations = 0;
  bool converged = false;
};

/// Eigenvalue of t near sigma. A few inverse-iteration steps at the fixed
/// shift pick the eigenvector, then the shift is updated with the Rayleigh
/// quotient v^H T v / v^H v until the residual stops improving.
ShiftResult eigen_near_shift(const TridiagonalOperator& t, cplx sigma, int iters = 100,
                             double tol = 1e-8);

/// Tridiagonal LU with partial pivoting (row interchange between i and i+1).
class TridiagonalLU {
public:
  /// Throws ConvergenceError on an exactly singular pivot.
  TridiagonalLU(const TridiagonalOperator& t, cplx shift);
  void solve(std::span<cplx> b) const;

private:
  std::vector<cplx> dl_, d_, du_, du2_;
  std::vector<char> swapped_;
};

}  // namespace xspectra::numerics
