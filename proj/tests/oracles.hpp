#pragma once
// Closed forms written out independently of the library, used as test oracles.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline double binom(double top, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= (top - k + i) / i;
  return r;
}

// L_n^(a)(x) from the explicit finite sum
inline double laguerre_series(int n, double a, double x) {
  double s = 0.0, fact = 1.0;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) fact *= j;
    s += (j % 2 ? -1.0 : 1.0) * binom(n + a, n - j) * std::pow(x, j) / fact;
  }
  return s;
}

// P_n^(a,b)(x) from the explicit sum in powers of (x-1)/2 and (x+1)/2
inline double jacobi_series(int n, double a, double b, double x) {
  double s = 0.0;
  for (int j = 0; j <= n; ++j)
    s += binom(n + a, n - j) * binom(n + b, j) * std::pow(0.5 * (x - 1), j) * std::pow(0.5 * (x + 1), n - j);
  return s;
}

// X1 members with degree 1 and 2, ascending coefficients
inline std::vector<double> laguerre_hat1(double a) { return {-a - 1.0, -1.0}; }
inline std::vector<double> laguerre_hat2(double a) { return {-a * (a + 2.0), 0.0, 1.0}; }
inline std::vector<double> jacobi_hat1(double a, double b) {
  return {-(2.0 + a + b) / (2.0 * (a - b)), -0.5};
}
inline std::vector<double> jacobi_hat2(double a, double b) {
  const double c = -(a + b + 2.0) / 4.0;
  return {c, -(a * a + b * b + 2.0 * (a + b)) / (2.0 * (a - b)), c};
}

// radial oscillator with the rational extension, argument u = kx + i eps
inline cplx radial_v(double a, double k, double eps, double x) {
  const cplx u(k * x, eps);
  const cplx u2 = u * u;
  const double k2 = k * k;
  return k2 * u2 / 16.0 + k2 * (a * a - 0.25) / u2 + 4.0 * k2 / (u2 + 4.0 * a) -
         32.0 * a * k2 / ((u2 + 4.0 * a) * (u2 + 4.0 * a));
}

// trigonometric Scarf with the rational extension (coefficient -8 k^2 a b)
inline cplx scarf_v(double a, double b, double k, double eps, double x, double offset = 0.0) {
  const cplx t(k * x + offset, eps);
  const cplx s = std::sin(t), c = std::cos(t);
  const cplx d = a + b - (b - a) * s;
  const double k2 = k * k;
  return k2 * (2 * a * a + 2 * b * b - 1) / (4.0 * c * c) - k2 * (b * b - a * a) * s / (2.0 * c * c) +
         2.0 * k2 * (a + b) / d - 8.0 * k2 * a * b / (d * d);
}

inline double radial_e(double a, double k, int n) { return k * k * (2 * n + a - 1) / 2.0; }
inline double scarf_e(double a, double b, double k, int n) {
  const double s = 2 * n + a + b - 1;
  return k * k * s * s / 4.0;
}

// psi_1 of the radial model up to normalization: L1hat(z) = -z - a - 1
inline double radial_psi1_shape(double a, double k, double x) {
  const double z = k * k * x * x / 4.0;
  return std::pow(x, a + 0.5) * std::exp(-k * k * x * x / 8.0) * (-z - a - 1.0) / (k * k * x * x + 4.0 * a);
}

}  // namespace oracle
