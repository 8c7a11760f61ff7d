#include "qwzeta/quadrature.hpp"

#include <stdexcept>

namespace qwz {

std::size_t QuadratureSpec::total_points() const {
  std::size_t total = 1;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (points != 0 && total > kQuadratureBudget / points) return kQuadratureBudget + 1;
    total *= points;
  }
  return total;
}

void QuadratureSpec::validate() const {
  if (rules.empty()) throw std::invalid_argument("quadrature needs at least one axis");
  if (points < kMinQuadraturePoints) {
    throw std::invalid_argument("quadrature needs at least " + std::to_string(kMinQuadraturePoints) +
                                " points per axis, got " + std::to_string(points));
  }
  if (total_points() > kQuadratureBudget) {
    throw std::invalid_argument("quadrature grid of " + std::to_string(points) + "^" + std::to_string(rules.size()) +
                                " points exceeds the budget of " + std::to_string(kQuadratureBudget));
  }
}

double QuadratureSpec::node(int axis, std::size_t j) const {
  const double offset = rules[axis] == AngleRule::MidpointHalfAngle ? 0.5 : 0.0;
  return 2.0 * std::numbers::pi * (static_cast<double>(j) + offset) / static_cast<double>(points);
}

QuadratureSpec QuadratureSpec::periodic(int dim, std::size_t points) {
  if (dim < 1) throw std::invalid_argument("quadrature dimension must be >= 1");
  return {points, std::vector<AngleRule>(static_cast<std::size_t>(dim), AngleRule::PeriodicEquispaced)};
}

QuadratureSpec QuadratureSpec::half_angle_last(int dim, std::size_t points) {
  auto spec = periodic(dim, points);
  spec.rules.back() = AngleRule::MidpointHalfAngle;
  return spec;
}

std::size_t default_quadrature_points(int dim) {
  if (dim <= 2) return 4096;
  if (dim == 3) return 512;
  std::size_t p = 512;
  while (p > kMinQuadraturePoints) {
    std::size_t total = 1;
    bool fits = true;
    for (int i = 0; i < dim && fits; ++i) {
      if (total > kQuadratureBudget / p) fits = false;
      total *= p;
    }
    if (fits) return p;
    p /= 2;
  }
  return kMinQuadraturePoints;
}

std::string to_string(AngleRule rule) {
  return rule == AngleRule::PeriodicEquispaced ? "periodic-equispaced" : "midpoint-halfangle";
}

}  // namespace qwz
