#pragma once

#include <optional>
#include <span>
#include <vector>

#include "xspectra/models.hpp"
#include "xspectra/quadrature.hpp"
#include "xspectra/xop.hpp"

namespace xspectra::numerics {

struct GramMatrix {
  /// entries[n-1][m-1] = integral of W y_n y_m
  std::vector<std::vector<double>> entries;
  /// max over n != m of |G_nm| / sqrt(G_nn G_mm)
  double max_offdiag_ratio = 0.0;
};

/// Gram matrix of the X1 family for n, m = 1..nmax under its weight. q must
/// cover the family's interval.
GramMatrix gram_matrix(const xop::X1Family& family, int nmax, const Quadrature& q);

/// max_x |-psi'' + V psi - E psi| / (|E| max|psi|) over grid. psi'' from the
/// five-point stencil at h = 1e-4 (1 + |x|), Richardson-combined with 2h.
/// energy overrides E_n (for negative controls).
double schrodinger_residual(const models::PotentialModel& m, int n, std::span<const double> grid,
                            std::optional<double> energy = std::nullopt);

}  // namespace xspectra::numerics
