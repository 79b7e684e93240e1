#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <vector>

#include "xspectra/errors.hpp"

namespace xspectra::numerics {

/// Gauss-Legendre nodes and weights on (-1, 1).
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

/// How the integration variable t on [t_lo, t_hi] is mapped to x.
///
///   finite                  x = c + h tanh(pi/2 sinh t)       on (lo, hi)
///   semi_infinite_exp       x = lo + exp(t - exp(-t))         on (lo, inf)
///   semi_infinite_algebraic x = lo + exp(pi/2 sinh t)         on (lo, inf)
///
/// All three are double-exponential substitutions, so endpoint power-law
/// behaviour (x^a, (1-u)^a) is integrated without loss of order. The two
/// semi-infinite maps are distinct and serve as cross-checks of each other.
enum class DomainMap { finite, semi_infinite_exp, semi_infinite_algebraic };

struct Quadrature {
  GaussLegendreRule base;
  DomainMap map = DomainMap::finite;
  double lo = -1.0;
  double hi = 1.0;  // unused for semi-infinite maps
  double rel_tol = 1e-10;
  int initial_panels = 8;
  int max_levels = 12;

  static Quadrature finite(double lo, double hi, int order = 20);
  static Quadrature semi_infinite_exp(double lo = 0.0, int order = 20);
  static Quadrature semi_infinite_algebraic(double lo = 0.0, int order = 20);

  /// Truncation range of the substitution variable.
  double t_lo() const;
  double t_hi() const;
  /// x(t) and dx/dt.
  void map_point(double t, double& x, double& jac) const;
};

std::string to_string(DomainMap m);

namespace detail {

template <class F>
auto panel_sum(F& f, const Quadrature& q, int panels, double& abs_sum) {
  using R = std::invoke_result_t<F&, double>;
  const double a = q.t_lo();
  const double h = (q.t_hi() - a) / panels;
  R total = R(0);
  abs_sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < q.base.nodes.size(); ++i) {
      const double t = mid + 0.5 * h * q.base.nodes[i];
      double x = 0.0, jac = 0.0;
      q.map_point(t, x, jac);
      if (jac == 0.0) continue;
      const R v = f(x);
      if (!std::isfinite(std::abs(v)))
        throw EvaluationError("integrate: non-finite integrand at x = " + std::to_string(x), x);
      const double w = 0.5 * h * q.base.weights[i] * jac;
      total += v * w;
      abs_sum += std::abs(v) * std::abs(w);
    }
  }
  return total;
}

}  // namespace detail

/// Integrates f over the domain of q. Panels in the substitution variable are
/// doubled until two successive sums agree to q.rel_tol relative to the
/// integral of |f| (so integrals that vanish by symmetry still terminate).
/// f returns double or std::complex<double>.
template <class F>
auto integrate(F&& f, const Quadrature& q) {
  double scale = 0.0;
  int panels = q.initial_panels;
  auto prev = detail::panel_sum(f, q, panels, scale);
  for (int level = 0; level < q.max_levels; ++level) {
    panels *= 2;
    auto cur = detail::panel_sum(f, q, panels, scale);
    if (std::abs(cur - prev) <= q.rel_tol * std::max(std::abs(cur), scale) ||
        scale == 0.0)
      return cur;
    prev = cur;
  }
  throw ConvergenceError("integrate: panel refinement did not reach the requested tolerance");
}

}  // namespace xspectra::numerics
