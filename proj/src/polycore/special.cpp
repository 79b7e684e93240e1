#include "xspectra/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace xspectra::poly {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_lanczos(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double sum = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) sum += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  // Split the power to delay overflow for large x.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * sum;
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("gamma: NaN argument");
  if (x <= 0.0 && x == std::floor(x))
    throw DomainError("gamma: pole at x = " + std::to_string(static_cast<long long>(x)));
  if (x < 0.5) {
    const double s = std::sin(std::numbers::pi * x);
    return std::numbers::pi / (s * gamma_lanczos(1.0 - x));
  }
  return gamma_lanczos(x);
}

Polynomial classical_laguerre(int n, double a) {
  if (n < 0) throw ArgumentError("classical_laguerre: n must be >= 0");
  if (!(a > -1.0)) throw ArgumentError("classical_laguerre: a must be > -1");
  Polynomial prev = Polynomial::constant(1.0);
  if (n == 0) return prev;
  Polynomial cur({a + 1.0, -1.0});
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}
    const Polynomial lin({2.0 * k + 1.0 + a, -1.0});
    Polynomial next = (lin * cur - prev.scaled(k + a)).scaled(1.0 / (k + 1.0));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial classical_jacobi(int n, double a, double b) {
  if (n < 0) throw ArgumentError("classical_jacobi: n must be >= 0");
  if (!(a > -1.0) || !(b > -1.0)) throw ArgumentError("classical_jacobi: a and b must be > -1");
  Polynomial prev = Polynomial::constant(1.0);
  if (n == 0) return prev;
  Polynomial cur({0.5 * (a - b), 0.5 * (a + b + 2.0)});
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const Polynomial lin({(s - 1.0) * (a * a - b * b), (s - 1.0) * s * (s - 2.0)});
    const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    Polynomial next = (lin * cur - prev.scaled(c3)).scaled(1.0 / c1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double jacobi_leading_coefficient(int n, double a, double b) {
  if (n < 0) throw ArgumentError("jacobi_leading_coefficient: n must be >= 0");
  // prod_{k=1}^{n} (n+k+a+b) / (2k)
  double lc = 1.0;
  for (int k = 1; k <= n; ++k) lc *= (n + k + a + b) / (2.0 * k);
  return lc;
}

}  // namespace xspectra::poly
