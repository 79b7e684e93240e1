#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "xspectra/errors.hpp"
#include "xspectra/models.hpp"
#include "xspectra/pct.hpp"

using namespace xspectra;
using cplx = std::complex<double>;
using pct::GMap;
using xop::X1Family;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return x;
}

double max_rel(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num = std::max(num, std::abs(u[i] - v[i]));
    den = std::max(den, std::abs(v[i]));
  }
  return num / den;
}

const double kPi = M_PI;

}  // namespace

TEST_CASE("map constraint identities") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (cplx d : {cplx(0.0), cplx(0.4, 0.0), cplx(0.0, 0.8)}) {
    const auto q = GMap::quadratic(1.75, d), s = GMap::sine(1.25, d), c = GMap::cosine(1.25, d);
    for (int t = 0; t < 100; ++t) {
      const double x = u(rng);
      const auto dq = q.derivs(x);
      CHECK(std::abs(dq[1] * dq[1] - 1.75 * 1.75 * dq[0]) <= 1e-12 * std::max(1.0, std::abs(dq[1] * dq[1])));
      CHECK(std::abs(q.constraint()(dq[0]) - dq[1] * dq[1]) <= 1e-12 * std::max(1.0, std::abs(dq[1] * dq[1])));
      CHECK(dq[2] == cplx(0.5 * 1.75 * 1.75));
      CHECK(dq[3] == cplx(0.0));
      for (const auto* m : {&s, &c}) {
        const auto dm = m->derivs(x);
        CHECK(std::abs(dm[1] * dm[1] - 1.5625 * (1.0 - dm[0] * dm[0])) <= 1e-12 * std::max(1.0, std::abs(dm[1] * dm[1])));
        // analytic second and third derivatives against differences of the lower ones
        const double h = 1e-5;
        const auto p = m->derivs(x + h), n = m->derivs(x - h);
        CHECK(std::abs((p[1] - n[1]) / (2 * h) - dm[2]) <= 1e-6 * std::max(1.0, std::abs(dm[2])));
        CHECK(std::abs((p[2] - n[2]) / (2 * h) - dm[3]) <= 1e-6 * std::max(1.0, std::abs(dm[3])));
      }
    }
  }
  CHECK_THROWS_AS(GMap::sine(1.0, cplx(0.3, 0.2)), ArgumentError);
  CHECK_THROWS_AS(GMap::sine(0.0), ArgumentError);
}

TEST_CASE("E - V difference between neighbouring levels is k^2") {
  const auto gm = GMap::quadratic(1.75);
  const auto fam = X1Family::laguerre(2.0);
  const auto o1 = xop::x1_ode_coefficients(fam, 1), o2 = xop::x1_ode_coefficients(fam, 2);
  for (double x : {0.4, 1.0, 2.3, 5.0}) {
    const cplx d = pct::pct_e_minus_v(gm, o2, x) - pct::pct_e_minus_v(gm, o1, x);
    CHECK(std::abs(d - 3.0625) <= 1e-12);
  }
  const cplx w = pct::pct_e_minus_v(gm, o1, 1.0);
  CHECK(std::abs(w - (oracle::radial_e(2.0, 1.75, 1) - oracle::radial_v(2.0, 1.75, 0.0, 1.0))) <= 1e-10);
  const auto oj = xop::x1_ode_coefficients(X1Family::jacobi(1.75, 3.0), 1);
  const cplx wj = pct::pct_e_minus_v(GMap::sine(1.25), oj, 0.3);
  CHECK(std::abs(wj - (oracle::scarf_e(1.75, 3.0, 1.25, 1) - oracle::scarf_v(1.75, 3.0, 1.25, 0.0, 0.3))) <= 1e-10);
}

TEST_CASE("singular inputs") {
  const auto o = xop::x1_ode_coefficients(X1Family::laguerre(2.0), 1);
  CHECK_THROWS_AS(pct::pct_e_minus_v(GMap::quadratic(1.75), o, 0.0), SingularityError);
  const auto oj = xop::x1_ode_coefficients(X1Family::jacobi(1.75, 3.0), 1);
  try {
    pct::pct_e_minus_v(GMap::sine(1.25), oj, 0.5 * kPi / 1.25);
    FAIL("expected a singularity");
  } catch (const SingularityError& e) {
    CHECK(e.location() == doctest::Approx(0.5 * kPi / 1.25));
  }
}

TEST_CASE("energies and potential separated from two levels") {
  const auto grid = linspace(0.2, 5.2, 50);
  const auto ex = pct::pct_extract_potential(GMap::quadratic(1.75), X1Family::laguerre(2.0), {1, 2}, grid);
  CHECK(ex.energy_first.real() == doctest::Approx(4.59375).epsilon(1e-12));
  CHECK(ex.energy_second.real() == doctest::Approx(7.65625).epsilon(1e-12));
  CHECK(ex.difference_spread <= 1e-9);
  std::vector<cplx> ref;
  for (double x : grid) ref.push_back(oracle::radial_v(2.0, 1.75, 0.0, x));
  CHECK(max_rel(ex.potential, ref) <= 1e-8);

  const double h = 0.5 * kPi / 1.25;
  const auto gs = linspace(-h + 0.1, h - 0.1, 50);
  const auto es = pct::pct_extract_potential(GMap::sine(1.25), X1Family::jacobi(1.75, 3.0), {1, 2}, gs);
  CHECK(es.energy_first.real() == doctest::Approx(oracle::scarf_e(1.75, 3.0, 1.25, 1)).epsilon(1e-9));
  CHECK(es.energy_second.real() == doctest::Approx(oracle::scarf_e(1.75, 3.0, 1.25, 2)).epsilon(1e-9));
  CHECK(es.energy_first.real() == doctest::Approx(12.91503906).epsilon(1e-9));
  std::vector<cplx> rs;
  for (double x : gs) rs.push_back(oracle::scarf_v(1.75, 3.0, 1.25, 0.0, x));
  CHECK(max_rel(es.potential, rs) <= 1e-8);
}

TEST_CASE("a map that does not fit the ODE is rejected") {
  const auto grid = linspace(0.1, 0.75, 50);
  CHECK_THROWS_AS(pct::pct_extract_potential(GMap::sine(1.75), X1Family::laguerre(2.0), {1, 2}, grid),
                  ConsistencyError);
  CHECK_THROWS_AS(pct::pct_extract_potential(GMap::quadratic(1.75), X1Family::laguerre(2.0), {2, 2}, grid),
                  ArgumentError);
  CHECK_THROWS_AS(pct::pct_extract_potential(GMap::quadratic(1.75), X1Family::laguerre(2.0), {1, 2},
                                             linspace(0.2, 1.0, 5)),
                  ArgumentError);
}

TEST_CASE("the potential does not depend on the level pair") {
  const auto grid = linspace(0.3, 4.0, 20);
  const auto fam = X1Family::laguerre(2.0);
  const auto v12 = pct::pct_extract_potential(GMap::quadratic(1.75), fam, {1, 2}, grid).potential;
  for (auto pr : {std::pair{1, 3}, std::pair{2, 3}})
    CHECK(max_rel(pct::pct_extract_potential(GMap::quadratic(1.75), fam, pr, grid).potential, v12) <= 1e-8);
  const double h = 0.5 * kPi / 1.25;
  const auto gs = linspace(-h + 0.1, h - 0.1, 20);
  const auto jf = X1Family::jacobi(1.75, 3.0);
  const auto s12 = pct::pct_extract_potential(GMap::sine(1.25), jf, {1, 2}, gs).potential;
  for (auto pr : {std::pair{1, 3}, std::pair{2, 3}})
    CHECK(max_rel(pct::pct_extract_potential(GMap::sine(1.25), jf, pr, gs).potential, s12) <= 1e-8);
}

TEST_CASE("a real shift is a translation") {
  const auto grid = linspace(0.4, 4.0, 30);
  const auto fam = X1Family::laguerre(2.0);
  const double d = 0.6, k = 1.75;
  const auto vd = pct::pct_extract_potential(GMap::quadratic(k, d), fam, {1, 2}, grid).potential;
  std::vector<cplx> shifted;
  for (double x : grid) shifted.push_back(pct::pct_extract_potential(GMap::quadratic(k), fam, {1, 2}, linspace(x + d / k, x + d / k + 2.0, 30)).potential[0]);
  CHECK(max_rel(vd, shifted) <= 1e-10);
}

TEST_CASE("an imaginary shift leaves the energies unchanged") {
  const auto grid = linspace(-4.0, 4.0, 50);
  const auto fam = X1Family::laguerre(2.0);
  const auto e0 = pct::pct_extract_potential(GMap::quadratic(1.75), fam, {1, 2}, linspace(0.2, 5.0, 50));
  const auto e1 = pct::pct_extract_potential(GMap::quadratic(1.75, cplx(0.0, 1.2)), fam, {1, 2}, grid);
  CHECK(std::abs(e1.energy_first - e0.energy_first) <= 1e-9 * std::abs(e0.energy_first));
  CHECK(std::abs(e1.energy_second - e0.energy_second) <= 1e-9 * std::abs(e0.energy_second));
  std::vector<cplx> ref;
  for (double x : grid) ref.push_back(oracle::radial_v(2.0, 1.75, 1.2, x));
  CHECK(max_rel(e1.potential, ref) <= 1e-8);

  const auto gs = linspace(-2.0, 2.0, 50);
  const auto jf = X1Family::jacobi(1.75, 3.0);
  const auto s1 = pct::pct_extract_potential(GMap::sine(1.25, cplx(0.0, 1.0)), jf, {1, 2}, gs);
  CHECK(std::abs(s1.energy_first.real() - oracle::scarf_e(1.75, 3.0, 1.25, 1)) <= 1e-9 * 12.9);
  CHECK(std::abs(s1.energy_first.imag()) <= 1e-9 * 12.9);
}

TEST_CASE("cos branch map reproduces the cos-branch potential") {
  const double k = 1.25;
  const auto gs = linspace(-kPi / k + 0.1, -0.1, 40);
  const auto ex = pct::pct_extract_potential(GMap::cosine(k), X1Family::jacobi(1.75, 3.0), {1, 2}, gs);
  std::vector<cplx> ref;
  for (double x : gs) ref.push_back(oracle::scarf_v(1.75, 3.0, k, 0.0, x, 0.5 * kPi));
  CHECK(max_rel(ex.potential, ref) <= 1e-8);
}

TEST_CASE("wave factor times the polynomial is the bound state") {
  const double a = 2.0, k = 1.75;
  const auto fam = X1Family::laguerre(a);
  const auto ode = xop::x1_ode_coefficients(fam, 1);
  const auto p = xop::x1_polynomial(fam, 1);
  const auto gm = GMap::quadratic(k);
  std::vector<double> ratios;
  for (double x = 0.5; x <= 4.0; x += 0.25)
    ratios.push_back(std::abs(pct::pct_wavefactor(gm, ode, x) * p(gm.g(x).real())) /
                     std::abs(oracle::radial_psi1_shape(a, k, x)));
  for (double r : ratios) CHECK(std::abs(r / ratios[0] - 1.0) <= 1e-8);

  const double ja = 1.75, jb = 3.0, jk = 1.25;
  const auto jf = X1Family::jacobi(ja, jb);
  const auto jode = xop::x1_ode_coefficients(jf, 1);
  const auto jp = xop::x1_polynomial(jf, 1);
  const auto sm = GMap::sine(jk);
  const double h = 0.5 * kPi / jk;
  std::vector<double> jr;
  for (double x : linspace(-h + 0.1, h - 0.1, 25)) {
    const double s = std::sin(jk * x);
    const double psi = std::pow(1 - s, ja / 2 + 0.25) * std::pow(1 + s, jb / 2 + 0.25) / (ja + jb - (jb - ja) * s) * jp(s);
    jr.push_back(std::abs(pct::pct_wavefactor(sm, jode, x) * jp(s)) / std::abs(psi));
  }
  for (double r : jr) CHECK(std::abs(r / jr[0] - 1.0) <= 1e-8);
}

TEST_CASE("wave factor with Q = 0 is g'^(-1/2)") {
  xop::OdeCoefficients ode;
  ode.Q = [](cplx) { return cplx(0.0); };
  ode.dQ = [](cplx) { return cplx(0.0); };
  ode.R = [](cplx) { return cplx(0.7); };
  ode.reference_point = 1.0;
  const auto gm = GMap::quadratic(1.5);
  std::vector<double> r;
  for (double x = 0.3; x < 3.0; x += 0.3) r.push_back(std::abs(pct::pct_wavefactor(gm, ode, x) * std::sqrt(gm.derivs(x)[1])));
  for (double v : r) CHECK(v == doctest::Approx(r[0]).epsilon(1e-13));
}

TEST_CASE("explicit antiderivative agrees with the quadrature path") {
  // Q = -1 + (a+1)/g - 2/(g+a) for n = 1
  const double a = 2.0;
  const auto ode = xop::x1_ode_coefficients(X1Family::laguerre(a), 1);
  const xop::ComplexFn anti = [a](cplx g) { return -g + (a + 1) * std::log(g) - 2.0 * std::log(g + a); };
  const auto gm = GMap::quadratic(1.75);
  for (double x : {0.4, 1.0, 2.5}) {
    const cplx f1 = pct::pct_wavefactor(gm, ode, x);
    const cplx f2 = pct::pct_wavefactor(gm, ode, x, anti);
    CHECK(std::abs(f1 / f2 - 1.0) <= 1e-10);
  }
}

TEST_CASE("wave factor path through a singular point is rejected") {
  // g(0) = -eps^2/4, so the segment from g = 1 passes through the pole at g = 0
  const auto ode = xop::x1_ode_coefficients(X1Family::laguerre(2.0), 1);
  CHECK_THROWS_AS(pct::pct_wavefactor(GMap::quadratic(1.75, cplx(0.0, 1.2)), ode, 0.0), SingularityError);
}

TEST_CASE("engine settles the rational Scarf coefficient") {
  const auto c = models::adjudicate_scarf_coefficient(1.75, 3.0, 1.25);
  CHECK(c.engine == doctest::Approx(-8.0 * 1.75 * 3.0).epsilon(1e-8));
  CHECK(c.confirmed == "real_form");
  CHECK(std::abs(c.engine - c.complex_form) > 1.0);
  const auto c2 = models::adjudicate_scarf_coefficient(0.5, 1.5, 2.0);
  CHECK(c2.confirmed == "real_form");
}
