#include "xspectra/sturm.hpp"

#include <algorithm>
#include <cmath>

namespace xspectra::poly {

namespace {

constexpr double kDropTol = 1e-12;

Polynomial normalized(const Polynomial& p) {
  const double m = p.max_abs_coeff();
  if (m == 0.0) return Polynomial();
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (double& v : c) {
    v /= m;
    if (std::abs(v) < kDropTol) v = 0.0;
  }
  return Polynomial(std::move(c));
}

// Remainder of num / den, den of lower or equal degree and nonzero.
Polynomial remainder(const Polynomial& num, const Polynomial& den) {
  std::vector<double> r(num.coeffs().begin(), num.coeffs().end());
  const int dd = den.degree();
  const double lead = den.leading();
  for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
    const double q = r[static_cast<std::size_t>(k)] / lead;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k - dd + j)] -= q * den.coeff(j);
    r[static_cast<std::size_t>(k)] = 0.0;
  }
  r.resize(static_cast<std::size_t>(std::max(dd, 1)));
  return Polynomial(std::move(r));
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

int sign_at(const Polynomial& p, double x) {
  if (std::isinf(x)) {
    const int s = sign_of(p.leading());
    return (x < 0.0 && p.degree() % 2 == 1) ? -s : s;
  }
  return sign_of(p(x));
}

int sign_changes(const std::vector<Polynomial>& chain, double x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain;
  chain.push_back(normalized(p));
  if (chain[0].degree() == 0) return chain;
  chain.push_back(normalized(chain[0].derivative()));
  while (chain.back().degree() > 0) {
    const auto& a = chain[chain.size() - 2];
    const auto& b = chain.back();
    Polynomial r = normalized(remainder(a, b).scaled(-1.0));
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

int count_real_roots_in(const Polynomial& p, double lo, double hi) {
  if (p.is_zero()) throw ArgumentError("count_real_roots_in: zero polynomial");
  if (!(lo < hi)) throw ArgumentError("count_real_roots_in: require lo < hi");
  if (p.degree() == 0) return 0;
  const double a = std::isinf(lo) ? lo : lo + 1e-12 * std::max(1.0, std::abs(lo));
  const double b = std::isinf(hi) ? hi : hi - 1e-12 * std::max(1.0, std::abs(hi));
  if (!(a < b)) return 0;
  const auto chain = sturm_chain(p);
  return sign_changes(chain, a) - sign_changes(chain, b);
}

}  // namespace xspectra::poly
