#pragma once

// Equal-weight product rules on [0, 2pi)^d for the uniform measure
// dtheta_1/2pi ... dtheta_d/2pi.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "qwzeta/parallel.hpp"

namespace qwz {

enum class AngleRule {
  /// theta_j = 2 pi j / P. Spectrally accurate for smooth periodic integrands.
  PeriodicEquispaced,
  /// theta_j = 2 pi (j + 1/2) / P, i.e. the midpoint rule in phi = theta/2 on
  /// [0, pi]. Used for the half-angle variable of the half-marked torus.
  MidpointHalfAngle,
};

inline constexpr std::size_t kMinQuadraturePoints = 16;
inline constexpr std::size_t kQuadratureBudget = std::size_t{1} << 28;

struct QuadratureSpec {
  std::size_t points = 0;
  std::vector<AngleRule> rules;

  int dim() const { return static_cast<int>(rules.size()); }
  std::size_t total_points() const;
  /// Throws std::invalid_argument if points < 16 or the grid exceeds the budget.
  void validate() const;
  double node(int axis, std::size_t j) const;

  static QuadratureSpec periodic(int dim, std::size_t points);
  /// Periodic in the first d-1 variables, half-angle midpoint in the last.
  static QuadratureSpec half_angle_last(int dim, std::size_t points);
};

/// 4096 per axis for d <= 2, 512 for d = 3, then the largest power of two
/// that keeps the grid within budget.
std::size_t default_quadrature_points(int dim);

/// Neumaier-compensated accumulator.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, double>) {
      add_part(sum_, comp_, x);
    } else {
      double re = sum_.real(), cre = comp_.real(), im = sum_.imag(), cim = comp_.imag();
      add_part(re, cre, x.real());
      add_part(im, cim, x.imag());
      sum_ = {re, im};
      comp_ = {cre, cim};
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  T sum_{};
  T comp_{};
};

/// Average of f over the product grid. f receives the node angles.
/// Work is split over the first axis; slice sums are combined in slice order,
/// so the result does not depend on `width`.
template <class T, class Fn>
T grid_average(const QuadratureSpec& spec, Fn&& f, int width = 1) {
  spec.validate();
  const int d = spec.dim();
  const std::size_t p = spec.points;
  std::vector<std::vector<double>> nodes(static_cast<std::size_t>(d), std::vector<double>(p));
  for (int axis = 0; axis < d; ++axis) {
    for (std::size_t j = 0; j < p; ++j) nodes[axis][j] = spec.node(axis, j);
  }
  std::vector<T> slice(p);
  parallel_for(p, resolve_width(width), [&](std::size_t first) {
    std::vector<double> angles(static_cast<std::size_t>(d));
    std::vector<std::size_t> k(static_cast<std::size_t>(d), 0);
    k[0] = first;
    angles[0] = nodes[0][first];
    for (int axis = 1; axis < d; ++axis) angles[axis] = nodes[axis][0];
    CompensatedSum<T> acc;
    while (true) {
      acc.add(f(std::span<const double>(angles)));
      int axis = d - 1;
      while (axis >= 1) {
        if (++k[axis] < p) {
          angles[axis] = nodes[axis][k[axis]];
          break;
        }
        k[axis] = 0;
        angles[axis] = nodes[axis][0];
        --axis;
      }
      if (axis < 1) break;
    }
    slice[first] = acc.value();
  });
  CompensatedSum<T> total;
  for (const auto& s : slice) total.add(s);
  return total.value() / static_cast<double>(spec.total_points());
}

/// Average of h(c) where c = sum_j cos(theta_j) over periodic axes and
/// cos(theta_j / 2) over half-angle axes.
template <class T, class Fn>
T cosine_sum_average(const QuadratureSpec& spec, Fn&& h, int width = 1) {
  spec.validate();
  const int d = spec.dim();
  const std::size_t p = spec.points;
  std::vector<std::vector<double>> table(static_cast<std::size_t>(d), std::vector<double>(p));
  for (int axis = 0; axis < d; ++axis) {
    const double scale = spec.rules[axis] == AngleRule::MidpointHalfAngle ? 0.5 : 1.0;
    for (std::size_t j = 0; j < p; ++j) table[axis][j] = std::cos(scale * spec.node(axis, j));
  }
  std::vector<T> slice(p);
  parallel_for(p, resolve_width(width), [&](std::size_t first) {
    CompensatedSum<T> acc;
    if (d == 1) {
      acc.add(h(table[0][first]));
    } else {
      // Odometer over axes 1..d-1 with running partial sums.
      std::vector<std::size_t> k(static_cast<std::size_t>(d), 0);
      std::vector<double> partial(static_cast<std::size_t>(d), 0.0);
      partial[0] = table[0][first];
      for (int axis = 1; axis < d - 1; ++axis) partial[axis] = partial[axis - 1] + table[axis][0];
      const auto& last = table[static_cast<std::size_t>(d - 1)];
      while (true) {
        const double base = partial[static_cast<std::size_t>(d - 2)];
        for (std::size_t j = 0; j < p; ++j) acc.add(h(base + last[j]));
        int axis = d - 2;
        while (axis >= 1) {
          if (++k[axis] < p) break;
          k[axis] = 0;
          --axis;
        }
        if (axis < 1) break;
        for (int a = axis; a < d - 1; ++a) partial[a] = partial[a - 1] + table[a][k[a]];
      }
    }
    slice[first] = acc.value();
  });
  CompensatedSum<T> total;
  for (const auto& s : slice) total.add(s);
  return total.value() / static_cast<double>(spec.total_points());
}

std::string to_string(AngleRule rule);

}  // namespace qwz
