#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xspectra/polynomial.hpp"
#include "xspectra/xop.hpp"

namespace xspectra::pct {

using cplx = std::complex<double>;

enum class MapKind { quadratic, sine, cosine };

/// Coordinate map g(x) with analytic first three derivatives.
///
///   quadratic  g = (kx+d)^2 / 4     g'^2 = k^2 g
///   sine       g = sin(kx+d)        g'^2 = k^2 (1 - g^2)
///   cosine     g = cos(kx+d)        g'^2 = k^2 (1 - g^2)
///
/// d is either real or purely imaginary; mixed complex shifts are rejected.
class GMap {
public:
  static GMap quadratic(double k, cplx d = 0.0) { return GMap(MapKind::quadratic, k, d); }
  static GMap sine(double k, cplx d = 0.0) { return GMap(MapKind::sine, k, d); }
  static GMap cosine(double k, cplx d = 0.0) { return GMap(MapKind::cosine, k, d); }

  MapKind kind() const noexcept { return kind_; }
  double k() const noexcept { return k_; }
  cplx d() const noexcept { return d_; }

  /// g, g', g'', g''' at x.
  std::array<cplx, 4> derivs(double x) const;
  cplx g(double x) const { return derivs(x)[0]; }

  /// F with g'^2 = F(g).
  poly::Polynomial constraint() const;

private:
  GMap(MapKind kind, double k, cplx d);

  MapKind kind_;
  double k_;
  cplx d_;
};

std::string to_string(MapKind kind);

/// Right-hand side of
///   E - V = g'''/(2g') - 3/4 (g''/g')^2 + g'^2 (R - dQ/2 - Q^2/4)
/// at x. Throws SingularityError when g'(x) = 0 or g(x) hits a singular
/// point of the ODE.
cplx pct_e_minus_v(const GMap& gm, const xop::OdeCoefficients& ode, double x);

/// Wavefunction prefactor f(x) = g'^{-1/2} exp(1/2 int_{g0}^{g(x)} Q dg), defined
/// up to a global constant. Without an antiderivative the integral runs along
/// the straight segment from the ODE's reference point to g(x), to relative
/// tolerance 1e-10; a segment passing through a singular point throws.
cplx pct_wavefactor(const GMap& gm, const xop::OdeCoefficients& ode, double x,
                    const std::optional<xop::ComplexFn>& antiderivative_of_q = std::nullopt);

/// Potential and energies separated from two members of one family.
struct PotentialExtraction {
  std::vector<cplx> potential;  // V(x_i)
  cplx energy_first;            // E_{n1}
  cplx energy_second;           // E_{n2}
  /// max_x |(W1-W2)(x) - mean| / max(|mean|, max|W1|)
  double difference_spread = 0.0;
  /// Relative residual of the pole/polynomial decomposition of W1 over the grid.
  double fit_residual = 0.0;
  /// Decomposition of W1 = E_{n1} - V as a function of g. Coefficients are
  /// ordered 1, g, ..., g^deg F, then (1/(g-p), 1/(g-p)^2) for each p in poles.
  std::vector<double> poles;
  std::vector<std::string> basis_labels;
  std::vector<cplx> basis_coefficients;
};

/// Splits W_n(x) = E_n - V(x) into the x-independent energies and the pointwise
/// potential. The difference W_{n1} - W_{n2} must be constant on the grid
/// (relative 1e-9). The energy is fixed as the constant term of W_{n1} written
/// as a rational function of g: a polynomial of degree deg F plus simple and
/// double poles at the ODE singular points and at the zeros of F; V carries no
/// additive constant. Throws ConsistencyError when either requirement fails.
PotentialExtraction pct_extract_potential(const GMap& gm, const xop::OdeCoefficients& first,
                                          const xop::OdeCoefficients& second,
                                          std::span<const double> grid);

PotentialExtraction pct_extract_potential(const GMap& gm, const xop::X1Family& family,
                                          std::pair<int, int> n_pair,
                                          std::span<const double> grid);

}  // namespace xspectra::pct
