#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xspectra/polynomial.hpp"

namespace xspectra::models {

using cplx = std::complex<double>;

enum class Family { radial_extended, scarf_extended };
enum class Branch { sin, cos };

/// Rationally extended radial oscillator or trigonometric Scarf potential,
/// optionally shifted by d = i eps. eps = 0 is the Hermitian member.
struct PotentialModel {
  Family family = Family::radial_extended;
  double a = 2.0;
  double b = 0.0;  // scarf only
  double k = 1.0;
  double eps = 0.0;
  Branch branch = Branch::sin;  // scarf only

  static PotentialModel radial(double a, double k, double eps = 0.0);
  static PotentialModel scarf(double a, double b, double k, double eps = 0.0,
                              Branch branch = Branch::sin);

  /// Same model with eps = 0.
  PotentialModel hermitian() const;
  bool is_shifted() const noexcept { return eps != 0.0; }
};

std::string to_string(Family f);
std::string to_string(Branch b);

struct Diagnostic {
  std::string field;
  std::string reason;
};

/// Every violated parameter constraint, empty when the model is valid.
std::vector<Diagnostic> validate_params(const PotentialModel& m);

/// Throws ArgumentError listing all diagnostics.
void require_valid(const PotentialModel& m);

/// Shifted potential as an analytic function of a complex coordinate z:
///   radial  V(z) with kz + i eps in place of kx
///   scarf   V(z) with kz + i eps (+ pi/2 on the cos branch) in place of kx
/// Throws SingularityError at poles.
cplx potential_at(const PotentialModel& m, cplx z);

/// potential_at on the real axis.
cplx potential(const PotentialModel& m, double x);

/// E_n = k^2 (2n + a - 1) / 2 (radial) or (k^2/4)(2n + a + b - 1)^2 (scarf).
double energy(const PotentialModel& m, int n);

/// Bound state psi_n(x + i eps / k) of the shifted Hamiltonian.
///
/// Radial states carry the closed-form normalization; Scarf states are
/// normalized numerically over the Hermitian interval (cached per
/// n, a, b, |k|). Complex powers use the principal branch; for Scarf the
/// real part of the phase k x (+ pi/2) must stay inside (-pi/2, pi/2), outside
/// of which the principal branch is discontinuous (DomainError). For eps/k < 0
/// the value is conj(psi(x + i|eps/k|)), the reflection of the eps/k > 0 state.
cplx wavefunction(const PotentialModel& m, int n, double x);

/// The same state as an analytic function of a complex coordinate, without
/// the shift: wavefunction(m, n, x) == wavefunction_at(m.hermitian(), n, x + i eps/k)
/// when eps/k > 0.
cplx wavefunction_at(const PotentialModel& m, int n, cplx z);

/// Precomputed bound state: holds the X1 polynomial and normalization so that
/// grids can be evaluated without rebuilding them per point.
class BoundState {
public:
  BoundState(const PotentialModel& m, int n);

  /// psi_n(x + i eps / k).
  cplx operator()(double x) const;
  /// Unshifted state at a complex coordinate.
  cplx at(cplx z) const;

  int n() const noexcept { return n_; }
  const PotentialModel& model() const noexcept { return model_; }
  double normalization() const noexcept { return norm_; }
  const poly::Polynomial& polynomial() const noexcept { return poly_; }

private:
  PotentialModel model_;
  int n_;
  poly::Polynomial poly_;
  double norm_ = 1.0;
};

/// Numerically computed Scarf normalization constant.
double scarf_normalization(int n, double a, double b, double k);

/// Real singular points of the model inside [lo, hi].
std::vector<double> singular_points_in(const PotentialModel& m, double lo, double hi);

/// Natural interval for grids: (0, 12) radial Hermitian, (-12, 12) radial
/// shifted, the open period cell for Scarf (shifted by -pi/2k on the cos branch).
std::pair<double, double> default_domain(const PotentialModel& m);

/// rho = exp((eps/k) p), p = -i d/dx. Acts on analytic functions by
/// x -> x - i eps / k.
struct ShiftOperator {
  double eps = 0.0;
  double k = 1.0;

  static ShiftOperator of(const PotentialModel& m) { return {m.eps, m.k}; }
  cplx displacement() const { return cplx(0.0, -eps / k); }
};

/// x -> f(x - sign * i eps / k). sign = +1 is rho f rho^{-1}; -1 the inverse.
std::function<cplx(double)> apply_rho_shift(const ShiftOperator& s,
                                            std::function<cplx(cplx)> f, int sign);

/// Absolute residual together with the scale it should be judged against.
struct IdentityResidual {
  double max_abs = 0.0;
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? max_abs / scale : max_abs; }
};

/// max |V~(x - i eps/k) - V(x)| on grid; scale max |V|.
IdentityResidual quasi_hermiticity_residual(const PotentialModel& m, std::span<const double> grid);
/// Same identity with an explicit (possibly mismatched) shift operator.
IdentityResidual quasi_hermiticity_residual(const PotentialModel& m, std::span<const double> grid,
                                            const ShiftOperator& rho);
/// max |V~(x - 2i eps/k) - conj V~(x)| on grid; scale max |V~|.
IdentityResidual pseudo_hermiticity_residual(const PotentialModel& m, std::span<const double> grid);
/// max |conj V~(-x) - V~(x)| on grid; scale max |V~|.
IdentityResidual pt_symmetry_residual(const PotentialModel& m, std::span<const double> grid);

/// Coefficient of k^2 / [a+b-(b-a) sin]^2 in the Scarf potential as fitted by
/// the point canonical transformation engine, and the two printed candidates.
struct ScarfCoefficientCheck {
  double engine = 0.0;        // fitted coefficient divided by k^2
  double real_form = 0.0;     // -8ab
  double complex_form = 0.0;  // 2[(a-b)^2 - 4ab]
  std::string confirmed;      // "real_form", "complex_form" or "neither"
};

ScarfCoefficientCheck adjudicate_scarf_coefficient(double a, double b, double k);

}  // namespace xspectra::models
