#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "xspectra/polynomial.hpp"

namespace xspectra::xop {

using cplx = std::complex<double>;
using ComplexFn = std::function<cplx(cplx)>;

enum class X1Kind { laguerre, jacobi };

/// Parameters of an X1 exceptional family.
/// Laguerre requires a > 0; Jacobi requires a, b > -1 and a != b.
struct X1Family {
  X1Kind kind = X1Kind::laguerre;
  double a = 1.0;
  double b = 0.0;  // jacobi only

  static X1Family laguerre(double a);
  static X1Family jacobi(double a, double b);

  /// Throws ArgumentError when the parameters are outside the family's range.
  void validate() const;
};

/// Coefficients of F'' + Q(g) F' + R(g) F = 0.
struct OdeCoefficients {
  ComplexFn Q;
  ComplexFn dQ;  // dQ/dg
  ComplexFn R;
  /// Points where a denominator of Q or R vanishes.
  std::vector<double> singular_points;
  /// Base point for the antiderivative of Q used by wavefunction prefactors.
  double reference_point = 0.0;
};

/// Q, dQ/dg and R for the X1 Laguerre or Jacobi equation of degree n (n >= 1).
OdeCoefficients x1_ode_coefficients(const X1Family& family, int n);

/// The degree-n X1 polynomial, built from its defining ODE: the equation with
/// denominators cleared is imposed on a general degree-n ansatz and the
/// one-dimensional null space of the resulting coefficient system is taken.
///
/// Scale: Laguerre leading coefficient (-1)^n/(n-1)!; Jacobi leading
/// coefficient -1/2 times the leading coefficient of P_{n-1}^(a,b). Both
/// reproduce the n = 1, 2 members in closed form.
poly::Polynomial x1_polynomial(const X1Family& family, int n);

/// max |coeff| of the cleared-ODE residual of y, relative to the largest
/// coefficient of the individual cleared-ODE terms.
double x1_cleared_residual(const X1Family& family, int n, const poly::Polynomial& y);

/// Orthogonality weight.
///   Laguerre: e^{-x} x^a / (x+a)^2 on (0, inf)
///   Jacobi:   (1-u)^a (1+u)^b / (a+b-(b-a)u)^2 on (-1, 1)
///
/// The Jacobi weight follows from substituting u = sin kx in the integral of
/// psi_n psi_m over (-pi/2k, pi/2k), with
///   psi_n ~ (1-u)^{a/2+1/4} (1+u)^{b/2+1/4} / (a+b-(b-a)u) * P_n(u),
///   dx = du / (k sqrt(1-u^2)),
/// the square-root factor absorbing the extra 1/2 in each exponent.
std::function<double(double)> x1_weight(const X1Family& family);

/// (a+n) Gamma(a+n-1) / (n-1)!, the squared norm of the X1 Laguerre polynomial.
double x1_laguerre_norm(int n, double a);

/// Orthogonality interval of the family: (0, inf) or (-1, 1).
std::pair<double, double> x1_interval(const X1Family& family);

}  // namespace xspectra::xop
