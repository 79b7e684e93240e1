#pragma once

#include <limits>
#include <vector>

#include "xspectra/polynomial.hpp"

namespace xspectra::poly {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k). Each member is
/// rescaled to unit max coefficient and coefficients below
/// 1e-12 * max|coeff| are dropped.
std::vector<Polynomial> sturm_chain(const Polynomial& p);

/// Number of distinct real roots of p in the open interval (lo, hi).
/// lo may be -inf and hi +inf. Finite endpoints are nudged inward by
/// 1e-12 * max(1, |endpoint|) so that roots sitting on an endpoint are not
/// counted. Throws ArgumentError for the zero polynomial.
int count_real_roots_in(const Polynomial& p, double lo, double hi);

}  // namespace xspectra::poly
