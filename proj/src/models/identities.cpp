#include <algorithm>
#include <cmath>
#include <numbers>

#include "xspectra/errors.hpp"
#include "xspectra/models.hpp"
#include "xspectra/pct.hpp"

namespace xspectra::models {

std::function<cplx(double)> apply_rho_shift(const ShiftOperator& s, std::function<cplx(cplx)> f,
                                            int sign) {
  if (sign != 1 && sign != -1) throw ArgumentError("apply_rho_shift: sign must be +1 or -1");
  const cplx shift = static_cast<double>(sign) * s.displacement();
  return [f = std::move(f), shift](double x) { return f(cplx(x, 0.0) + shift); };
}

IdentityResidual quasi_hermiticity_residual(const PotentialModel& m, std::span<const double> grid,
                                            const ShiftOperator& rho) {
  const PotentialModel h = m.hermitian();
  auto shifted = apply_rho_shift(rho, [&m](cplx z) { return potential_at(m, z); }, 1);
  IdentityResidual r;
  for (double x : grid) {
    const cplx v = potential(h, x);
    r.max_abs = std::max(r.max_abs, std::abs(shifted(x) - v));
    r.scale = std::max(r.scale, std::abs(v));
  }
  return r;
}

IdentityResidual quasi_hermiticity_residual(const PotentialModel& m, std::span<const double> grid) {
  return quasi_hermiticity_residual(m, grid, ShiftOperator::of(m));
}

IdentityResidual pseudo_hermiticity_residual(const PotentialModel& m, std::span<const double> grid) {
  // eta = rho^2 shifts by twice the displacement
  const ShiftOperator eta{2.0 * m.eps, m.k};
  auto shifted = apply_rho_shift(eta, [&m](cplx z) { return potential_at(m, z); }, 1);
  IdentityResidual r;
  for (double x : grid) {
    const cplx v = potential(m, x);
    r.max_abs = std::max(r.max_abs, std::abs(shifted(x) - std::conj(v)));
    r.scale = std::max(r.scale, std::abs(v));
  }
  return r;
}

IdentityResidual pt_symmetry_residual(const PotentialModel& m, std::span<const double> grid) {
  IdentityResidual r;
  for (double x : grid) {
    const cplx v = potential(m, x);
    r.max_abs = std::max(r.max_abs, std::abs(std::conj(potential(m, -x)) - v));
    r.scale = std::max(r.scale, std::abs(v));
  }
  return r;
}

ScarfCoefficientCheck adjudicate_scarf_coefficient(double a, double b, double k) {
  if (a == b) throw ArgumentError("adjudicate_scarf_coefficient: a must differ from b");
  const double half = 0.5 * std::numbers::pi / std::abs(k);
  const int npts = 50;
  std::vector<double> grid(npts);
  for (int i = 0; i < npts; ++i)
    grid[static_cast<std::size_t>(i)] = -half + 0.1 + (2.0 * half - 0.2) * i / (npts - 1);

  const auto ext = pct::pct_extract_potential(pct::GMap::sine(k), xop::X1Family::jacobi(a, b),
                                              {1, 2}, grid);
  const double c = (a + b) / (b - a);
  std::size_t idx = ext.poles.size();
  for (std::size_t i = 0; i < ext.poles.size(); ++i)
    if (std::abs(ext.poles[i] - c) <= 1e-12 * std::max(1.0, std::abs(c))) idx = i;
  if (idx == ext.poles.size()) throw ConsistencyError("adjudicate_scarf_coefficient: pole not in basis");

  // W = E - V and d = -(b-a)(g-c), so the V coefficient of k^2/d^2 is
  // -coef * (b-a)^2 / k^2.
  const int degree = pct::GMap::sine(k).constraint().degree();
  const cplx coef = ext.basis_coefficients[static_cast<std::size_t>(degree + 1) + 2 * idx + 1];
  ScarfCoefficientCheck out;
  out.engine = -coef.real() * (b - a) * (b - a) / (k * k);
  out.real_form = -8.0 * a * b;
  out.complex_form = 2.0 * ((a - b) * (a - b) - 4.0 * a * b);
  auto close = [&](double v) { return std::abs(out.engine - v) <= 1e-6 * std::max(1.0, std::abs(v)); };
  if (close(out.real_form))
    out.confirmed = "real_form";
  else if (close(out.complex_form))
    out.confirmed = "complex_form";
  else
    out.confirmed = "neither";
  return out;
}

}  // namespace xspectra::models
