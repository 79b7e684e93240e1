#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "xspectra/pct.hpp"
#include "xspectra/quadrature.hpp"

namespace xspectra::pct {

namespace {

constexpr double kDifferenceTol = 1e-9;
constexpr double kFitTol = 1e-8;

void check_regular(const xop::OdeCoefficients& ode, cplx g, double x) {
  for (double s : ode.singular_points)
    if (std::abs(g - s) <= 1e-13 * std::max(1.0, std::abs(s)))
      throw SingularityError("g(x) sits on an ODE singular point at x = " + std::to_string(x), x);
}

// Distance from p to the segment [a, b] in the complex plane.
double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

std::string label_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> constraint_roots(const poly::Polynomial& f) {
  if (f.degree() == 1) return {-f.coeff(0) / f.coeff(1)};
  if (f.degree() == 2) {
    const double a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    return {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)};
  }
  return {};
}

}  // namespace

cplx pct_e_minus_v(const GMap& gm, const xop::OdeCoefficients& ode, double x) {
  const auto [g, g1, g2, g3] = gm.derivs(x);
  if (std::abs(g1) <= 1e-13 * std::abs(gm.k()))
    throw SingularityError("g'(x) vanishes at x = " + std::to_string(x), x);
  check_regular(ode, g, x);
  const cplx q = ode.Q(g);
  const cplx ratio = g2 / g1;
  return g3 / (2.0 * g1) - 0.75 * ratio * ratio +
         g1 * g1 * (ode.R(g) - 0.5 * ode.dQ(g) - 0.25 * q * q);
}

cplx pct_wavefactor(const GMap& gm, const xop::OdeCoefficients& ode, double x,
                    const std::optional<xop::ComplexFn>& antiderivative_of_q) {
  const auto d = gm.derivs(x);
  const cplx g = d[0];
  const cplx g1 = d[1];
  if (std::abs(g1) <= 1e-13 * std::abs(gm.k()))
    throw SingularityError("g'(x) vanishes at x = " + std::to_string(x), x);
  check_regular(ode, g, x);

  const cplx g0 = ode.reference_point;
  cplx integral;
  if (antiderivative_of_q) {
    integral = (*antiderivative_of_q)(g) - (*antiderivative_of_q)(g0);
  } else {
    for (double s : ode.singular_points)
      if (segment_distance(s, g0, g) <= 1e-12 * std::max(1.0, std::abs(s)))
        throw SingularityError("integration path for Q crosses a singular point (x = " +
                                   std::to_string(x) + ")",
                               x);
    const cplx span = g - g0;
    auto q = numerics::Quadrature::finite(0.0, 1.0);
    integral = numerics::integrate([&](double t) { return ode.Q(g0 + t * span) * span; }, q);
  }
  return std::exp(0.5 * integral) / std::sqrt(g1);
}

PotentialExtraction pct_extract_potential(const GMap& gm, const xop::OdeCoefficients& first,
                                          const xop::OdeCoefficients& second,
                                          std::span<const double> grid) {
  // Basis in g: powers 0..deg F, then simple and double poles.
  const poly::Polynomial f = gm.constraint();
  std::vector<double> poles = first.singular_points;
  for (double r : constraint_roots(f)) poles.push_back(r);
  std::sort(poles.begin(), poles.end());
  poles.erase(std::unique(poles.begin(), poles.end(),
                          [](double u, double v) {
                            return std::abs(u - v) <= 1e-12 * std::max(1.0, std::abs(u));
                          }),
              poles.end());
  const int degree = f.degree();
  const int nbasis = degree + 1 + 2 * static_cast<int>(poles.size());
  const auto npts = static_cast<Eigen::Index>(grid.size());
  if (npts < nbasis + 2)
    throw ArgumentError("pct_extract_potential: grid needs at least " +
                        std::to_string(nbasis + 2) + " points");

  PotentialExtraction out;
  out.poles = poles;
  out.basis_labels.push_back("1");
  for (int j = 1; j <= degree; ++j) out.basis_labels.push_back(j == 1 ? "g" : "g^" + std::to_string(j));
  for (double p : poles) {
    const std::string shifted = p == 0.0 ? "g" : "(g - " + label_number(p) + ")";
    out.basis_labels.push_back("1/" + shifted);
    out.basis_labels.push_back("1/" + shifted + "^2");
  }

  std::vector<cplx> w1(grid.size()), w2(grid.size());
  Eigen::MatrixXcd basis(npts, nbasis);
  Eigen::VectorXcd rhs(npts);
  double wmax = 0.0;
  for (Eigen::Index i = 0; i < npts; ++i) {
    const double x = grid[static_cast<std::size_t>(i)];
    w1[static_cast<std::size_t>(i)] = pct_e_minus_v(gm, first, x);
    w2[static_cast<std::size_t>(i)] = pct_e_minus_v(gm, second, x);
    wmax = std::max(wmax, std::abs(w1[static_cast<std::size_t>(i)]));
    const cplx g = gm.g(x);
    int c = 0;
    cplx gp = 1.0;
    for (int j = 0; j <= degree; ++j, gp *= g) basis(i, c++) = gp;
    for (double p : poles) {
      const cplx inv = 1.0 / (g - p);
      basis(i, c++) = inv;
      basis(i, c++) = inv * inv;
    }
    rhs(i) = w1[static_cast<std::size_t>(i)];
  }

  cplx mean = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) mean += w1[i] - w2[i];
  mean /= static_cast<double>(grid.size());
  double spread = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) spread = std::max(spread, std::abs(w1[i] - w2[i] - mean));
  out.difference_spread = spread / std::max(std::abs(mean), wmax);
  if (out.difference_spread > kDifferenceTol)
    throw ConsistencyError(
        "pct_extract_potential: E_n1 - E_n2 is not x-independent (relative spread " +
        label_number(out.difference_spread) + "); the n-dependence leaks into the potential");

  Eigen::VectorXd colscale(nbasis);
  for (int j = 0; j < nbasis; ++j) {
    const double m = basis.col(j).cwiseAbs().maxCoeff();
    colscale(j) = m > 0.0 ? m : 1.0;
    basis.col(j) /= colscale(j);
  }
  const Eigen::VectorXcd scaled = basis.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXcd resid = basis * scaled - rhs;
  out.fit_residual = resid.cwiseAbs().maxCoeff() / wmax;
  if (out.fit_residual > kFitTol)
    throw ConsistencyError(
        "pct_extract_potential: E - V is not a polynomial-plus-poles function of g (residual " +
        label_number(out.fit_residual) + ")");
  out.basis_coefficients.resize(static_cast<std::size_t>(nbasis));
  for (int j = 0; j < nbasis; ++j) out.basis_coefficients[static_cast<std::size_t>(j)] = scaled(j) / colscale(j);

  out.energy_first = out.basis_coefficients[0];
  out.energy_second = out.energy_first - mean;
  out.potential.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.potential[i] = out.energy_first - w1[i];
  return out;
}

PotentialExtraction pct_extract_potential(const GMap& gm, const xop::X1Family& family,
                                          std::pair<int, int> n_pair,
                                          std::span<const double> grid) {
  if (n_pair.first == n_pair.second) throw ArgumentError("pct_extract_potential: need n1 != n2");
  return pct_extract_potential(gm, xop::x1_ode_coefficients(family, n_pair.first),
                               xop::x1_ode_coefficients(family, n_pair.second), grid);
}

}  // namespace xspectra::pct
