#include "qwzeta/mahler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwz {

namespace {

// z + 1/z on the unit circle, computed in complex arithmetic.
Complex circle_sum(double angle) {
  const Complex z = std::polar(1.0, angle);
  return z + std::conj(z);
}

// sum_{j} (X_j + X_j^{-1}) at X_j = e^{i theta_j}, with the last variable
// replaced by its formal square root for the search polynomial.
Complex laurent_sum(std::span<const double> theta, bool half_last) {
  Complex s{};
  const std::size_t d = theta.size();
  for (std::size_t j = 0; j < d; ++j) {
    const bool half = half_last && j + 1 == d;
    s += circle_sum(half ? 0.5 * theta[j] : theta[j]);
  }
  return s;
}

void check_unit_interval(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("logarithmic zeta is evaluated for u in (0, 1), got " + std::to_string(u));
  }
}

double wrap(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phase = std::fmod(phase, two_pi);
  if (phase > std::numbers::pi) phase -= two_pi;
  if (phase <= -std::numbers::pi) phase += two_pi;
  return phase;
}

LogZetaValue assemble(LogZetaVariant variant, int dim, double u, const QuadratureSpec& quad, int width,
                      bool diagnostics) {
  check_unit_interval(u);
  const bool search = variant == LogZetaVariant::SearchCase2;
  const MahlerIntegrand id = search ? MahlerIntegrand::SearchPoly : MahlerIntegrand::NonsearchPoly;
  const MahlerResult m = mahler_quadrature(id, dim, u, quad, width);
  const double d = dim;
  const double prefactor = search ? 2.0 * d - 0.5 : d;

  LogZetaValue out;
  out.variant = variant;
  out.quadrature = quad;
  out.mahler = m.value;
  out.value = prefactor * std::log1p(-u) + std::log(std::sqrt(u) / d) + 0.5 * m.value;

  if (diagnostics) {
    // (1+u)^2 - (u/d^2) s^2 = (-u/d^2) (s^2 - d^2 (u + 1/u + 2)); both right-hand
    // factors are negative reals, so their principal arguments sum to 2 pi.
    const Complex scale(-u / (d * d), 0.0);
    const double scale_arg = std::arg(scale);
    const double shift = d * d * (u + 1.0 / u + 2.0);
    out.imag_residual = grid_max(
        quad,
        [&](std::span<const double> theta) {
          const Complex s = laurent_sum(theta, search);
          return std::abs(wrap(scale_arg + std::arg(s * s - shift)));
        },
        width);
    out.factor_residual = grid_max(
        quad,
        [&](std::span<const double> theta) {
          const Complex s = laurent_sum(theta, search);
          const Complex lhs = (1.0 + u) * (1.0 + u) - (u / (d * d)) * s * s;
          return std::abs(lhs - scale * (s * s - shift));
        },
        width);
  }
  return out;
}

}  // namespace

std::string to_string(MahlerIntegrand id) {
  switch (id) {
    case MahlerIntegrand::NonsearchPoly: return "nonsearch-poly";
    case MahlerIntegrand::SearchPoly: return "search-poly";
    case MahlerIntegrand::JensenQuadratic: return "jensen-quadratic";
  }
  return "unknown";
}

QuadratureSpec quadrature_for(MahlerIntegrand id, int dim, std::size_t points) {
  return id == MahlerIntegrand::SearchPoly ? QuadratureSpec::half_angle_last(dim, points)
                                           : QuadratureSpec::periodic(dim, points);
}

MahlerResult mahler_quadrature(MahlerIntegrand id, int dim, Complex u, const QuadratureSpec& quad, int width) {
  if (quad.dim() != dim) throw std::invalid_argument("quadrature dimension does not match d");
  const double d = dim;
  switch (id) {
    case MahlerIntegrand::NonsearchPoly:
    case MahlerIntegrand::SearchPoly: {
      const bool search = id == MahlerIntegrand::SearchPoly;
      const bool half_last = quad.rules.back() == AngleRule::MidpointHalfAngle;
      if (half_last != search) {
        throw std::invalid_argument(to_string(id) + " needs " +
                                    (search ? "the half-angle rule on the last axis" : "periodic rules"));
      }
      if (u == Complex{}) throw std::invalid_argument("u + 1/u is undefined at u = 0");
      const Complex shift = d * d * (u + 1.0 / u + 2.0);
      return mahler_measure(
          quad,
          [&](std::span<const double> theta) {
            const Complex s = laurent_sum(theta, search);
            return s * s - shift;
          },
          width);
    }
    case MahlerIntegrand::JensenQuadratic: {
      if (dim != 1) throw std::invalid_argument("jensen-quadratic is a one-variable polynomial");
      return mahler_measure(
          quad, [&](std::span<const double> theta) { return 1.0 - u * circle_sum(theta[0]) + u * u; }, width);
    }
  }
  throw std::invalid_argument("unknown Mahler integrand");
}

LogZetaValue log_zeta_nonsearch(int dim, double u, const QuadratureSpec& quad, int width, bool diagnostics) {
  return assemble(LogZetaVariant::Nonsearch, dim, u, quad, width, diagnostics);
}

LogZetaValue log_zeta_nonsearch(int dim, double u) {
  return log_zeta_nonsearch(dim, u, QuadratureSpec::periodic(dim, default_quadrature_points(dim)));
}

LogZetaValue log_zeta_search(int dim, double u, const QuadratureSpec& quad, int width, bool diagnostics) {
  return assemble(LogZetaVariant::SearchCase2, dim, u, quad, width, diagnostics);
}

LogZetaValue log_zeta_search(int dim, double u) {
  return log_zeta_search(dim, u, QuadratureSpec::half_angle_last(dim, default_quadrature_points(dim)));
}

std::vector<double> default_figure1_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  return grid;
}

Figure1Table figure1_table(int dim, const std::vector<double>& u_grid, std::size_t points, int width) {
  for (double u : u_grid) {
    if (!(u > 0.0 && u < 1.0)) {
      throw std::invalid_argument("figure grid must lie strictly inside (0, 1), got " + std::to_string(u));
    }
  }
  Figure1Table table;
  table.dim = dim;
  const auto periodic = QuadratureSpec::periodic(dim, points);
  const auto half = QuadratureSpec::half_angle_last(dim, points);
  double previous = 0.0;
  for (double u : u_grid) {
    const double ns = log_zeta_nonsearch(dim, u, periodic, width, false).value;
    const double s = log_zeta_search(dim, u, half, width, false).value;
    const Figure1Row row{u, ns, s, ns - s};
    const double mag = std::abs(row.diff);
    if (!table.rows.empty() && mag < previous) table.monotone = false;
    if (table.rows.empty() || mag > table.max_abs_diff) {
      table.max_abs_diff = mag;
      table.u_at_max = u;
    }
    previous = mag;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace qwz
