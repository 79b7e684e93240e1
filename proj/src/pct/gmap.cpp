#include "xspectra/pct.hpp"

#include <cmath>

namespace xspectra::pct {

GMap::GMap(MapKind kind, double k, cplx d) : kind_(kind), k_(k), d_(d) {
  if (k == 0.0 || !std::isfinite(k)) throw ArgumentError("GMap: k must be finite and nonzero");
  if (d.real() != 0.0 && d.imag() != 0.0)
    throw ArgumentError("GMap: d must be purely real or purely imaginary");
}

std::array<cplx, 4> GMap::derivs(double x) const {
  const cplx u = k_ * x + d_;
  const double k2 = k_ * k_;
  switch (kind_) {
    case MapKind::quadratic:
      return {0.25 * u * u, 0.5 * k_ * u, cplx(0.5 * k2), cplx(0.0)};
    case MapKind::sine: {
      const cplx s = std::sin(u), c = std::cos(u);
      return {s, k_ * c, -k2 * s, -k2 * k_ * c};
    }
    case MapKind::cosine: {
      const cplx s = std::sin(u), c = std::cos(u);
      return {c, -k_ * s, -k2 * c, k2 * k_ * s};
    }
  }
  return {};
}

poly::Polynomial GMap::constraint() const {
  const double k2 = k_ * k_;
  if (kind_ == MapKind::quadratic) return poly::Polynomial({0.0, k2});
  return poly::Polynomial({k2, 0.0, -k2});
}

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::quadratic: return "quadratic";
    case MapKind::sine: return "sine";
    case MapKind::cosine: return "cosine";
  }
  return "unknown";
}

}  // namespace xspectra::pct
