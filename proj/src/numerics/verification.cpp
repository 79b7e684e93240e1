#include <algorithm>
#include <cmath>

#include "xspectra/errors.hpp"
#include "xspectra/parallel.hpp"
#include "xspectra/verification.hpp"

namespace xspectra::numerics {

using cplx = std::complex<double>;

GramMatrix gram_matrix(const xop::X1Family& family, int nmax, const Quadrature& q) {
  if (nmax < 1) throw ArgumentError("gram_matrix: nmax must be >= 1");
  family.validate();
  const auto w = xop::x1_weight(family);
  std::vector<poly::Polynomial> ys;
  for (int n = 1; n <= nmax; ++n) ys.push_back(xop::x1_polynomial(family, n));

  const auto un = static_cast<std::size_t>(nmax);
  GramMatrix g;
  g.entries.assign(un, std::vector<double>(un, 0.0));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = i; j < un; ++j) pairs.emplace_back(i, j);
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const double v = integrate([&](double x) { return w(x) * ys[i](x) * ys[j](x); }, q);
    g.entries[i][j] = v;
    g.entries[j][i] = v;
  });
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j)
      if (i != j)
        g.max_offdiag_ratio = std::max(
            g.max_offdiag_ratio,
            std::abs(g.entries[i][j]) / std::sqrt(std::abs(g.entries[i][i] * g.entries[j][j])));
  return g;
}

double schrodinger_residual(const models::PotentialModel& m, int n, std::span<const double> grid,
                            std::optional<double> energy) {
  if (grid.empty()) throw ArgumentError("schrodinger_residual: empty grid");
  const models::BoundState psi(m, n);
  const double e = energy ? *energy : models::energy(m, n);

  auto second = [&](double x, double h) {
    return (-psi(x + 2 * h) + 16.0 * psi(x + h) - 30.0 * psi(x) + 16.0 * psi(x - h) -
            psi(x - 2 * h)) /
           (12.0 * h * h);
  };
  double worst = 0.0, psimax = 0.0;
  for (double x : grid) {
    const double h = 1e-4 * (1.0 + std::abs(x));
    const cplx d2 = (16.0 * second(x, h) - second(x, 2 * h)) / 15.0;
    const cplx p = psi(x);
    worst = std::max(worst, std::abs(-d2 + models::potential(m, x) * p - e * p));
    psimax = std::max(psimax, std::abs(p));
  }
  if (psimax == 0.0) throw EvaluationError("schrodinger_residual: state vanishes on the grid", grid[0]);
  return worst / (std::abs(e) * psimax);
}

}  // namespace xspectra::numerics
