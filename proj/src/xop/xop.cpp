#include "xspectra/xop.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "xspectra/special.hpp"

namespace xspectra::xop {

using poly::Polynomial;

X1Family X1Family::laguerre(double a) {
  X1Family f{X1Kind::laguerre, a, 0.0};
  f.validate();
  return f;
}

X1Family X1Family::jacobi(double a, double b) {
  X1Family f{X1Kind::jacobi, a, b};
  f.validate();
  return f;
}

void X1Family::validate() const {
  if (kind == X1Kind::laguerre) {
    if (!(a > 0.0)) throw ArgumentError("X1 Laguerre family requires a > 0");
    return;
  }
  if (!(a > -1.0) || !(b > -1.0)) throw ArgumentError("X1 Jacobi family requires a, b > -1");
  if (a == b) throw ArgumentError("X1 Jacobi family requires a != b");
}

OdeCoefficients x1_ode_coefficients(const X1Family& family, int n) {
  family.validate();
  if (n < 1) throw ArgumentError("x1_ode_coefficients: X1 families start at n = 1");
  const double a = family.a;
  const double b = family.b;
  const double nn = n;
  OdeCoefficients ode;
  if (family.kind == X1Kind::laguerre) {
    ode.Q = [a](cplx g) { return -(g - a) * (g + a + 1.0) / (g * (g + a)); };
    // Q = -1 + (a+1)/g - 2/(g+a)
    ode.dQ = [a](cplx g) { return -(a + 1.0) / (g * g) + 2.0 / ((g + a) * (g + a)); };
    ode.R = [a, nn](cplx g) { return (g - a) / (g * (g + a)) + (nn - 1.0) / g; };
    ode.singular_points = {0.0, -a};
    ode.reference_point = 1.0;
    return ode;
  }
  // Jacobi. L(g) = (b-a)g - b - a.
  ode.Q = [a, b](cplx g) {
    return -((a + b + 2.0) * g + a - b) / (1.0 - g * g) - 2.0 * (b - a) / ((b - a) * g - b - a);
  };
  ode.dQ = [a, b](cplx g) {
    const cplx s = 1.0 - g * g;
    const cplx l = (b - a) * g - b - a;
    const cplx num = (a + b + 2.0) * g + a - b;
    return -((a + b + 2.0) * s + 2.0 * g * num) / (s * s) + 2.0 * (b - a) * (b - a) / (l * l);
  };
  ode.R = [a, b, nn](cplx g) {
    return -((b - a) * g - (nn + a + b) * (nn - 1.0)) / (1.0 - g * g) -
           (a - b) * (a - b) / ((b - a) * g - b - a);
  };
  ode.singular_points = {-1.0, 1.0, (a + b) / (b - a)};
  ode.reference_point = 0.0;
  return ode;
}

namespace {

// Polynomial coefficients A2, A1, A0 of the cleared equation A2 y'' + A1 y' + A0 y = 0.
struct ClearedOde {
  Polynomial a2, a1, a0;
};

ClearedOde cleared_ode(const X1Family& f, int n) {
  const double a = f.a;
  const double b = f.b;
  if (f.kind == X1Kind::laguerre) {
    // Multiplied through by g (g + a).
    return {Polynomial({0.0, a, 1.0}), Polynomial({a * a + a, -1.0, -1.0}),
            Polynomial({(n - 2.0) * a, static_cast<double>(n)})};
  }
  // Multiplied through by (1 - g^2) ((b-a) g - b - a).
  const Polynomial l({-(a + b), b - a});
  const Polynomial s({1.0, 0.0, -1.0});
  const Polynomial q1({a - b, a + b + 2.0});
  const Polynomial r1({-(n + a + b) * (n - 1.0), b - a});
  return {s * l, (q1 * l).scaled(-1.0) - s.scaled(2.0 * (b - a)),
          (r1 * l).scaled(-1.0) - s.scaled((a - b) * (a - b))};
}

Polynomial apply_cleared(const ClearedOde& ode, const Polynomial& y) {
  return ode.a2 * y.derivative().derivative() + ode.a1 * y.derivative() + ode.a0 * y;
}

double leading_convention(const X1Family& f, int n) {
  if (f.kind == X1Kind::laguerre) {
    double fact = 1.0;
    for (int k = 2; k < n; ++k) fact *= k;
    return (n % 2 == 0 ? 1.0 : -1.0) / fact;
  }
  return -0.5 * poly::jacobi_leading_coefficient(n - 1, f.a, f.b);
}

}  // namespace

Polynomial x1_polynomial(const X1Family& family, int n) {
  family.validate();
  if (n < 1) throw ArgumentError("x1_polynomial: X1 families start at n = 1");
  const ClearedOde ode = cleared_ode(family, n);
  const int unknowns = n + 1;
  const int rows = n + 2;

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, unknowns);
  for (int j = 0; j < unknowns; ++j) {
    const Polynomial col = apply_cleared(ode, Polynomial::monomial(j));
    for (int i = 0; i <= col.degree() && i < rows; ++i) m(i, j) = col.coeff(i);
  }
  Eigen::VectorXd colscale(unknowns);
  for (int j = 0; j < unknowns; ++j) {
    const double norm = m.col(j).norm();
    colscale(j) = norm > 0.0 ? norm : 1.0;
    m.col(j) /= colscale(j);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  int null_dim = unknowns - static_cast<int>(sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= 1e-10 * smax) ++null_dim;
  if (null_dim != 1)
    throw ConstructionError("x1_polynomial: cleared ODE has a " + std::to_string(null_dim) +
                            "-dimensional polynomial null space (expected 1)");

  Eigen::VectorXd v = svd.matrixV().col(unknowns - 1).cwiseQuotient(colscale);
  if (std::abs(v(n)) <= 1e-12 * v.cwiseAbs().maxCoeff())
    throw ConstructionError("x1_polynomial: null vector has vanishing leading coefficient");

  // Refine with the leading coefficient pinned: solve M[:, 0..n-1] c = -c_n M[:, n].
  const double lead = leading_convention(family, n);
  std::vector<double> coeffs(static_cast<std::size_t>(unknowns));
  coeffs.back() = lead;
  if (n > 0) {
    const Eigen::MatrixXd lhs = m.leftCols(n);
    const Eigen::VectorXd rhs = -(lead * colscale(n)) * m.col(n);
    const auto qr = lhs.colPivHouseholderQr();
    Eigen::VectorXd sol = qr.solve(rhs);
    // one refinement step, residual accumulated in long double
    Eigen::VectorXd r(rows);
    for (int i = 0; i < rows; ++i) {
      long double acc = rhs(i);
      for (int j = 0; j < n; ++j) acc -= static_cast<long double>(lhs(i, j)) * sol(j);
      r(i) = static_cast<double>(acc);
    }
    sol += qr.solve(r);
    for (int j = 0; j < n; ++j) coeffs[static_cast<std::size_t>(j)] = sol(j) / colscale(j);
  }
  Polynomial y(std::move(coeffs));
  if (x1_cleared_residual(family, n, y) > 1e-10)
    throw ConstructionError("x1_polynomial: cleared ODE residual above tolerance");
  return y;
}

double x1_cleared_residual(const X1Family& family, int n, const Polynomial& y) {
  const ClearedOde ode = cleared_ode(family, n);
  const Polynomial t2 = ode.a2 * y.derivative().derivative();
  const Polynomial t1 = ode.a1 * y.derivative();
  const Polynomial t0 = ode.a0 * y;
  const double scale = std::max({t2.max_abs_coeff(), t1.max_abs_coeff(), t0.max_abs_coeff()});
  const Polynomial res = t2 + t1 + t0;
  return scale > 0.0 ? res.max_abs_coeff() / scale : res.max_abs_coeff();
}

std::function<double(double)> x1_weight(const X1Family& family) {
  family.validate();
  const double a = family.a;
  const double b = family.b;
  if (family.kind == X1Kind::laguerre) {
    return [a](double x) {
      if (x < 0.0) throw DomainError("X1 Laguerre weight is defined on x >= 0");
      return std::exp(-x) * std::pow(x, a) / ((x + a) * (x + a));
    };
  }
  const double pole = (a + b) / (b - a);
  if (std::abs(pole) <= 1.0)
    throw ArgumentError("X1 Jacobi weight has a pole at u = " + std::to_string(pole) +
                        " inside [-1, 1]");
  return [a, b](double u) {
    if (u < -1.0 || u > 1.0) throw DomainError("X1 Jacobi weight is defined on [-1, 1]");
    const double d = a + b - (b - a) * u;
    return std::pow(1.0 - u, a) * std::pow(1.0 + u, b) / (d * d);
  };
}

double x1_laguerre_norm(int n, double a) {
  if (n < 1) throw ArgumentError("x1_laguerre_norm: n must be >= 1");
  if (!(a > 0.0)) throw ArgumentError("x1_laguerre_norm: a must be > 0");
  double fact = 1.0;
  for (int k = 2; k < n; ++k) fact *= k;
  return (a + n) * poly::gamma(a + n - 1.0) / fact;
}

std::pair<double, double> x1_interval(const X1Family& family) {
  if (family.kind == X1Kind::laguerre) return {0.0, std::numeric_limits<double>::infinity()};
  return {-1.0, 1.0};
}

}  // namespace xspectra::xop
