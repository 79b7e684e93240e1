#pragma once

#include "xspectra/polynomial.hpp"

namespace xspectra::poly {

/// Gamma function by the Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula below 0.5. Throws DomainError at the poles 0, -1, -2, ...
double gamma(double x);

/// Classical Laguerre polynomial L_n^(a) from the three-term recurrence.
Polynomial classical_laguerre(int n, double a);

/// Classical Jacobi polynomial P_n^(a,b) from the three-term recurrence.
Polynomial classical_jacobi(int n, double a, double b);

/// Leading coefficient of P_n^(a,b) in closed form.
double jacobi_leading_coefficient(int n, double a, double b);

}  // namespace xspectra::poly
