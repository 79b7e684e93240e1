#include "xspectra/quadrature.hpp"

#include <limits>
#include <numbers>

namespace xspectra::numerics {

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw ArgumentError("gauss_legendre: order must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

Quadrature Quadrature::finite(double lo, double hi, int order) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ArgumentError("Quadrature::finite: need finite lo < hi");
  Quadrature q;
  q.base = gauss_legendre(order);
  q.map = DomainMap::finite;
  q.lo = lo;
  q.hi = hi;
  return q;
}

Quadrature Quadrature::semi_infinite_exp(double lo, int order) {
  Quadrature q;
  q.base = gauss_legendre(order);
  q.map = DomainMap::semi_infinite_exp;
  q.lo = lo;
  q.hi = std::numeric_limits<double>::infinity();
  return q;
}

Quadrature Quadrature::semi_infinite_algebraic(double lo, int order) {
  Quadrature q = semi_infinite_exp(lo, order);
  q.map = DomainMap::semi_infinite_algebraic;
  return q;
}

// Truncation points: the finite map runs to offsets ~1e-37 of the half width
// and drops nodes that round onto an endpoint; semi-infinite maps stop near x ~ 1e-16 at the
// left end and at x ~ 800 (exp) or x ~ 1e8 (algebraic) on the right.
double Quadrature::t_lo() const {
  switch (map) {
    case DomainMap::finite: return -4.0;
    case DomainMap::semi_infinite_exp: return -3.5;
    case DomainMap::semi_infinite_algebraic: return -4.0;
  }
  return 0.0;
}

double Quadrature::t_hi() const {
  switch (map) {
    case DomainMap::finite: return 4.0;
    case DomainMap::semi_infinite_exp: return 6.68;
    case DomainMap::semi_infinite_algebraic: return 3.15;
  }
  return 0.0;
}

void Quadrature::map_point(double t, double& x, double& jac) const {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  switch (map) {
    case DomainMap::finite: {
      const double h = 0.5 * (hi - lo);
      const double y = half_pi * std::sinh(t);
      const double ch = std::cosh(y);
      // distance to the nearer endpoint, h (1 - tanh|y|), without cancellation
      const double off = 2.0 * h / (1.0 + std::exp(2.0 * std::abs(y)));
      x = t < 0.0 ? lo + off : hi - off;
      jac = h * half_pi * std::cosh(t) / (ch * ch);
      if (x == lo || x == hi) jac = 0.0;  // node rounds onto the endpoint
      return;
    }
    case DomainMap::semi_infinite_exp: {
      const double e = std::exp(-t);
      const double u = std::exp(t - e);
      x = lo + u;
      jac = u * (1.0 + e);
      return;
    }
    case DomainMap::semi_infinite_algebraic: {
      const double u = std::exp(half_pi * std::sinh(t));
      x = lo + u;
      jac = u * half_pi * std::cosh(t);
      return;
    }
  }
}

std::string to_string(DomainMap m) {
  switch (m) {
    case DomainMap::finite: return "finite";
    case DomainMap::semi_infinite_exp: return "semi_infinite_exp";
    case DomainMap::semi_infinite_algebraic: return "semi_infinite_algebraic";
  }
  return "unknown";
}

}  // namespace xspectra::numerics
