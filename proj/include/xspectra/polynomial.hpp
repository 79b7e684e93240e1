#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "xspectra/errors.hpp"

namespace xspectra::poly {

/// Dense real polynomial, coefficients stored in ascending powers.
///
/// Trailing exact zeros are trimmed on construction, so the last stored
/// coefficient is nonzero unless the polynomial is identically zero, in which
/// case it holds a single 0 and is_zero() reports true.
class Polynomial {
public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs)
      : Polynomial(std::vector<double>(coeffs)) {}

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial monomial(int degree, double c = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double coeff(int power) const noexcept {
    return power >= 0 && power <= degree() ? coeffs_[static_cast<std::size_t>(power)] : 0.0;
  }
  double leading() const noexcept { return coeffs_.back(); }
  double max_abs_coeff() const noexcept;

  /// Horner evaluation; T is double or std::complex<double>.
  template <class T>
  T operator()(T x) const {
    T acc = T(coeffs_.back());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + T(coeffs_[i]);
    return acc;
  }

  Polynomial derivative() const;
  Polynomial scaled(double factor) const;

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(double s, const Polynomial& p) { return p.scaled(s); }

private:
  std::vector<double> coeffs_;
};

/// p(x), p'(x), ..., p^(m)(x) by Horner with derivatives; m in 0..3.
template <class T>
std::vector<T> eval_derivs(const Polynomial& p, T x, int m) {
  if (m < 0 || m > 3) throw ArgumentError("eval_derivs: derivative order must be in 0..3");
  std::vector<T> d(static_cast<std::size_t>(m) + 1, T(0));
  auto c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    for (int j = m; j > 0; --j) d[j] = d[j] * x + d[j - 1];
    d[0] = d[0] * x + T(c[i]);
  }
  // d[j] holds p^(j)/j! at this point.
  double fact = 1.0;
  for (int j = 2; j <= m; ++j) {
    fact *= j;
    d[j] *= fact;
  }
  return d;
}

}  // namespace xspectra::poly
