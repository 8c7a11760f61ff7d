#pragma once

// Logarithmic zeta functions of the N -> infinity limits written through
// Mahler measures of Laurent polynomials, evaluated by quadrature.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qwzeta/linalg.hpp"
#include "qwzeta/quadrature.hpp"

namespace qwz {

enum class MahlerIntegrand {
  /// (sum_j (X_j + X_j^{-1}))^2 - d^2 (u + u^{-1} + 2)
  NonsearchPoly,
  /// (sum_{j<d} (X_j + X_j^{-1}) + X_d^{1/2} + X_d^{-1/2})^2 - d^2 (u + u^{-1} + 2),
  /// with X_d^{1/2} = e^{i theta_d / 2}.
  SearchPoly,
  /// 1 - 2 cos(theta) u + u^2 = (1 - uX)(1 - uX^{-1}) for real u; d = 1.
  JensenQuadratic,
};

std::string to_string(MahlerIntegrand id);

struct MahlerResult {
  double value = 0.0;
  /// Grid points where |f| < 1e-14; they are left out of the average.
  std::size_t excluded_points = 0;
  QuadratureSpec quadrature;
};

/// m(f) = average of log|f| over the grid. Points with |f| < 1e-14 are
/// dropped from the average and counted in `excluded_points`.
template <class Fn>
MahlerResult mahler_measure(const QuadratureSpec& quad, Fn&& f, int width = 1) {
  constexpr double kZeroTolerance = 1e-14;
  // Real part accumulates log|f|, imaginary part counts excluded points.
  const Complex mean = grid_average<Complex>(
      quad,
      [&](std::span<const double> theta) {
        const double mag = std::abs(f(theta));
        return mag < kZeroTolerance ? Complex(0.0, 1.0) : Complex(std::log(mag), 0.0);
      },
      width);
  const double total = static_cast<double>(quad.total_points());
  MahlerResult out;
  out.quadrature = quad;
  out.excluded_points = static_cast<std::size_t>(std::llround(mean.imag() * total));
  const double kept = total - static_cast<double>(out.excluded_points);
  out.value = kept > 0 ? mean.real() * total / kept : 0.0;
  return out;
}

/// Largest value of f over the grid.
template <class Fn>
double grid_max(const QuadratureSpec& quad, Fn&& f, int width = 1) {
  quad.validate();
  const std::size_t p = quad.points;
  std::vector<double> slice(p, 0.0);
  std::vector<double> first_nodes(p);
  for (std::size_t j = 0; j < p; ++j) first_nodes[j] = quad.node(0, j);
  parallel_for(p, resolve_width(width), [&](std::size_t first) {
    const int d = quad.dim();
    std::vector<std::size_t> k(static_cast<std::size_t>(d), 0);
    std::vector<double> angles(static_cast<std::size_t>(d));
    angles[0] = first_nodes[first];
    for (int a = 1; a < d; ++a) angles[a] = quad.node(a, 0);
    double worst = 0.0;
    while (true) {
      worst = std::max(worst, f(std::span<const double>(angles)));
      int axis = d - 1;
      while (axis >= 1) {
        if (++k[axis] < p) {
          angles[axis] = quad.node(axis, k[axis]);
          break;
        }
        k[axis] = 0;
        angles[axis] = quad.node(axis, 0);
        --axis;
      }
      if (axis < 1) break;
    }
    slice[first] = worst;
  });
  return *std::max_element(slice.begin(), slice.end());
}

/// Mahler measure of one of the named integrands. NonsearchPoly uses a periodic
/// grid, SearchPoly the half-angle rule on the last axis; `quad` must match.
MahlerResult mahler_quadrature(MahlerIntegrand id, int dim, Complex u, const QuadratureSpec& quad, int width = 1);

/// Natural quadrature for an integrand at the given points per axis.
QuadratureSpec quadrature_for(MahlerIntegrand id, int dim, std::size_t points);

enum class LogZetaVariant { SearchCase2, Nonsearch };

struct LogZetaValue {
  double value = 0.0;
  LogZetaVariant variant = LogZetaVariant::Nonsearch;
  /// Largest |Im log(-u/d^2) + Im log f(theta)| reduced mod 2 pi over the grid.
  double imag_residual = 0.0;
  /// Largest |(1+u)^2 - (4u/d^2)c^2 - (-u/d^2) f| over the grid.
  double factor_residual = 0.0;
  double mahler = 0.0;
  QuadratureSpec quadrature;
};

/// d log(1-u) + log(sqrt(u)/d) + m(f_nonsearch)/2, for u in (0, 1).
/// With `diagnostics` off the residual fields are left at zero.
LogZetaValue log_zeta_nonsearch(int dim, double u, const QuadratureSpec& quad, int width = 1,
                                bool diagnostics = true);
LogZetaValue log_zeta_nonsearch(int dim, double u);

/// (2d - 1/2) log(1-u) + log(sqrt(u)/d) + m(f_search)/2, for u in (0, 1).
LogZetaValue log_zeta_search(int dim, double u, const QuadratureSpec& quad, int width = 1,
                             bool diagnostics = true);
LogZetaValue log_zeta_search(int dim, double u);

struct Figure1Row {
  double u;
  double nonsearch;
  double search;
  double diff;  // nonsearch - search
};

struct Figure1Table {
  int dim = 2;
  std::vector<Figure1Row> rows;
  /// |diff| never decreases along the grid.
  bool monotone = true;
  double max_abs_diff = 0.0;
  double u_at_max = 0.0;
};

/// Rows for every u of the grid; the grid must lie strictly inside (0, 1).
Figure1Table figure1_table(int dim, const std::vector<double>& u_grid, std::size_t points, int width = 1);

/// 0.01, 0.02, ..., 0.99.
std::vector<double> default_figure1_grid();

}  // namespace qwz
