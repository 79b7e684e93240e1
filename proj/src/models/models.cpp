#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "xspectra/errors.hpp"
#include "xspectra/models.hpp"
#include "xspectra/quadrature.hpp"
#include "xspectra/special.hpp"
#include "xspectra/xop.hpp"

namespace xspectra::models {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);

double branch_offset(const PotentialModel& m) {
  return m.family == Family::scarf_extended && m.branch == Branch::cos ? 0.5 * kPi : 0.0;
}

}  // namespace

PotentialModel PotentialModel::radial(double a, double k, double eps) {
  PotentialModel m;
  m.family = Family::radial_extended;
  m.a = a;
  m.k = k;
  m.eps = eps;
  return m;
}

PotentialModel PotentialModel::scarf(double a, double b, double k, double eps, Branch branch) {
  PotentialModel m;
  m.family = Family::scarf_extended;
  m.a = a;
  m.b = b;
  m.k = k;
  m.eps = eps;
  m.branch = branch;
  return m;
}

PotentialModel PotentialModel::hermitian() const {
  PotentialModel m = *this;
  m.eps = 0.0;
  return m;
}

std::string to_string(Family f) {
  return f == Family::radial_extended ? "radial" : "scarf";
}

std::string to_string(Branch b) { return b == Branch::sin ? "sin" : "cos"; }

std::vector<Diagnostic> validate_params(const PotentialModel& m) {
  std::vector<Diagnostic> out;
  if (!(std::isfinite(m.k) && m.k != 0.0)) out.push_back({"k", "k must be finite and nonzero"});
  if (!std::isfinite(m.eps)) out.push_back({"eps", "eps must be finite"});
  if (m.family == Family::radial_extended) {
    if (!(m.a > 0.0)) out.push_back({"a", "radial family requires a > 0"});
    if (m.eps != 0.0 && m.a > 0.0 && std::abs(m.eps * m.eps - 4.0 * m.a) <= 1e-12 * 4.0 * m.a)
      out.push_back({"eps", "eps^2 = 4a places a pole of the shifted potential at x = 0"});
    return out;
  }
  if (!(m.a > -0.5)) out.push_back({"a", "scarf family requires a > -1/2 for regular states"});
  if (!(m.b > -0.5)) out.push_back({"b", "scarf family requires b > -1/2 for regular states"});
  if (m.a == m.b) out.push_back({"b", "scarf family requires a != b"});
  if (m.a != m.b && m.a * m.b < 0.0)
    out.push_back({"a", "a*b < 0 puts a zero of a+b-(b-a)sin(kx) inside the Hermitian interval"});
  if (m.eps != 0.0 && m.a != m.b) {
    const double c = (m.a + m.b) / std::abs(m.b - m.a);
    if (c >= 1.0 && std::abs(std::cosh(m.eps) - c) <= 1e-12 * c)
      out.push_back({"eps", "cosh(eps) = (a+b)/|b-a| places a pole of the shifted potential on the real axis"});
  }
  return out;
}

void require_valid(const PotentialModel& m) {
  const auto diags = validate_params(m);
  if (diags.empty()) return;
  std::ostringstream os;
  os << "invalid " << to_string(m.family) << " model:";
  for (const auto& d : diags) os << " [" << d.field << "] " << d.reason << ";";
  throw ArgumentError(os.str());
}

cplx potential_at(const PotentialModel& m, cplx z) {
  const double k2 = m.k * m.k;
  if (m.family == Family::radial_extended) {
    const cplx u = m.k * z + kI * m.eps;
    const cplx u2 = u * u;
    const cplx den = u2 + 4.0 * m.a;
    if (u == 0.0) throw SingularityError("radial potential: centrifugal pole", z.real());
    if (std::abs(den) <= 1e-13 * 4.0 * m.a)
      throw SingularityError("radial potential: pole of the rational extension", z.real());
    return k2 * u2 / 16.0 + k2 * (m.a * m.a - 0.25) / u2 + 4.0 * k2 / den -
           32.0 * m.a * k2 / (den * den);
  }
  const cplx theta = m.k * z + kI * m.eps + branch_offset(m);
  const cplx s = std::sin(theta);
  const cplx c = std::cos(theta);
  const cplx d = m.a + m.b - (m.b - m.a) * s;
  if (std::abs(c) <= 1e-13) throw SingularityError("scarf potential: sec pole", z.real());
  if (std::abs(d) <= 1e-13 * (std::abs(m.a + m.b) + std::abs(m.b - m.a)))
    throw SingularityError("scarf potential: pole of the rational extension", z.real());
  const cplx sec2 = 1.0 / (c * c);
  // The rational term uses -8 k^2 a b, the coefficient reproduced by the
  // point canonical transformation at d = 0 (see adjudicate_scarf_coefficient).
  return 0.25 * k2 * (2.0 * m.a * m.a + 2.0 * m.b * m.b - 1.0) * sec2 -
         0.5 * k2 * (m.b * m.b - m.a * m.a) * s * sec2 + 2.0 * k2 * (m.a + m.b) / d -
         8.0 * k2 * m.a * m.b / (d * d);
}

cplx potential(const PotentialModel& m, double x) { return potential_at(m, cplx(x, 0.0)); }

double energy(const PotentialModel& m, int n) {
  if (n < 1) throw ArgumentError("energy: n must be >= 1");
  const double k2 = m.k * m.k;
  if (m.family == Family::radial_extended) return 0.5 * k2 * (2.0 * n + m.a - 1.0);
  const double s = 2.0 * n + m.a + m.b - 1.0;
  return 0.25 * k2 * s * s;
}

double scarf_normalization(int n, double a, double b, double k) {
  using Key = std::tuple<int, double, double, double>;
  static std::mutex mutex;
  static std::map<Key, double> cache;
  const Key key{n, a, b, std::abs(k)};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const auto p = xop::x1_polynomial(xop::X1Family::jacobi(a, b), n);
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double v = std::pow(1.0 - s, 0.5 * a + 0.25) * std::pow(1.0 + s, 0.5 * b + 0.25) /
                     (a + b - (b - a) * s) * p(s);
    return v * v;
  };
  const double integral = numerics::integrate(integrand, numerics::Quadrature::finite(-0.5 * kPi, 0.5 * kPi));
  const double c = std::sqrt(std::abs(k) / integral);
  std::lock_guard lock(mutex);
  cache.emplace(key, c);
  return c;
}

BoundState::BoundState(const PotentialModel& m, int n) : model_(m), n_(n) {
  require_valid(m);
  if (n < 1) throw ArgumentError("bound state index n must be >= 1");
  if (m.family == Family::radial_extended) {
    poly_ = xop::x1_polynomial(xop::X1Family::laguerre(m.a), n);
    const double kk = std::abs(m.k);
    norm_ = std::sqrt(std::pow(kk, 2.0 * m.a + 2.0) / std::pow(2.0, 2.0 * m.a - 3.0) /
                      xop::x1_laguerre_norm(n, m.a));
  } else {
    poly_ = xop::x1_polynomial(xop::X1Family::jacobi(m.a, m.b), n);
    norm_ = scarf_normalization(n, m.a, m.b, m.k);
  }
}

cplx BoundState::at(cplx z) const {
  const auto& m = model_;
  if (m.family == Family::radial_extended) {
    if (z.imag() == 0.0 && z.real() <= 0.0)
      throw DomainError("radial state: x^(a+1/2) needs x > 0 on the real axis (x = " +
                        std::to_string(z.real()) + ")");
    const double k2 = m.k * m.k;
    const cplx z2 = z * z;
    return norm_ * std::pow(z, m.a + 0.5) / (k2 * z2 + 4.0 * m.a) * std::exp(-k2 * z2 / 8.0) *
           poly_(0.25 * k2 * z2);
  }
  const cplx theta = m.k * z + branch_offset(m);
  if (!(std::abs(theta.real()) < 0.5 * kPi))
    throw DomainError("scarf state: phase outside the principal strip |Re(kx)| < pi/2 (x = " +
                      std::to_string(z.real()) + ")");
  const cplx s = std::sin(theta);
  return norm_ * std::pow(1.0 - s, 0.5 * m.a + 0.25) * std::pow(1.0 + s, 0.5 * m.b + 0.25) /
         (m.a + m.b - (m.b - m.a) * s) * poly_(s);
}

cplx BoundState::operator()(double x) const {
  // eps/k < 0 would put the radial base below the cut of the principal power;
  // use psi(conj z) = conj psi(z), valid since psi is real on the Hermitian domain
  const double shift = model_.eps / model_.k;
  if (shift < 0.0) return std::conj(at(cplx(x, -shift)));
  return at(cplx(x, shift));
}

cplx wavefunction_at(const PotentialModel& m, int n, cplx z) {
  return BoundState(m.hermitian(), n).at(z);
}

cplx wavefunction(const PotentialModel& m, int n, double x) { return BoundState(m, n)(x); }

std::vector<double> singular_points_in(const PotentialModel& m, double lo, double hi) {
  std::vector<double> out;
  if (m.eps != 0.0) return out;
  if (m.family == Family::radial_extended) {
    if (lo <= 0.0 && 0.0 <= hi) out.push_back(0.0);
    return out;
  }
  // theta = k x + offset; poles where cos theta = 0 or sin theta = (a+b)/(b-a).
  const double off = branch_offset(m);
  std::vector<double> thetas;
  const double tlo = std::min(m.k * lo, m.k * hi) + off;
  const double thi = std::max(m.k * lo, m.k * hi) + off;
  for (double j = std::floor((tlo - 0.5 * kPi) / kPi) - 1; j * kPi + 0.5 * kPi <= thi + kPi; ++j)
    thetas.push_back(0.5 * kPi + j * kPi);
  const double c = (m.a + m.b) / (m.b - m.a);
  if (std::abs(c) <= 1.0) {
    const double base = std::asin(c);
    for (double j = std::floor(tlo / (2 * kPi)) - 1; j * 2 * kPi <= thi + 2 * kPi; ++j) {
      thetas.push_back(base + 2 * kPi * j);
      thetas.push_back(kPi - base + 2 * kPi * j);
    }
  }
  for (double t : thetas)
    if (t >= tlo && t <= thi) out.push_back((t - off) / m.k);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<double, double> default_domain(const PotentialModel& m) {
  if (m.family == Family::radial_extended) {
    if (m.eps == 0.0) return {1e-8, 12.0};
    return {-12.0, 12.0};
  }
  const double off = branch_offset(m);
  const double x1 = (-0.5 * kPi - off) / m.k;
  const double x2 = (0.5 * kPi - off) / m.k;
  return {std::min(x1, x2), std::max(x1, x2)};
}

}  // namespace xspectra::models
