#include "qwzeta/zeta.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qwzeta/operators.hpp"
#include "qwzeta/spectra.hpp"

namespace qwz {

namespace {

constexpr double kUnitGuard = 1e-12;
constexpr double kPhaseTolerance = 1e-8;

bool near(Complex u, double target) { return std::abs(u - target) < kUnitGuard; }

double wrap(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phase = std::fmod(phase, two_pi);
  if (phase > std::numbers::pi) phase -= two_pi;
  if (phase <= -std::numbers::pi) phase += two_pi;
  return phase;
}

ZetaValue zero_value(ZetaMethod method, Complex u, std::size_t normalization) {
  ZetaValue out;
  out.value = 0.0;
  out.u = u;
  out.method = method;
  out.normalization = normalization;
  out.flags = kZetaSingular;
  return out;
}

// exp(log det / n) with the principal phase of det. For u in the real disk
// the determinant is positive and the phase must vanish.
ZetaValue root_of_logdet(Complex log_det, std::size_t n, ZetaMethod method, Complex u) {
  ZetaValue out;
  out.u = u;
  out.method = method;
  out.normalization = n;
  double phase = wrap(log_det.imag());
  if (in_real_disk(u)) {
    if (std::abs(phase) >= kPhaseTolerance) {
      throw std::runtime_error("det(I - uW') is not positive at real u = " + std::to_string(u.real()) +
                               " (phase " + std::to_string(phase) + ")");
    }
    out.value = std::exp(log_det.real() / static_cast<double>(n));
  } else {
    out.value = std::exp(Complex(log_det.real(), phase) / static_cast<double>(n));
    out.flags |= kZetaBranchSensitive;
  }
  return out;
}

// exp of an already normalized log, used by the limits and the case-1 form.
ZetaValue exp_of_log(Complex log_value, ZetaMethod method, Complex u) {
  ZetaValue out;
  out.u = u;
  out.method = method;
  if (in_real_disk(u)) {
    out.value = std::exp(log_value.real());
  } else {
    out.value = std::exp(log_value);
    out.flags |= kZetaBranchSensitive;
  }
  return out;
}

Complex log_factor(Complex factor, bool& singular) {
  if (factor == Complex{}) {
    singular = true;
    return {};
  }
  return std::log(factor);
}

// log((1+u)^2 - 4u lambda^2) summed over a spectrum.
Complex dirichlet_log_sum(const std::vector<double>& spectrum, Complex u, bool& singular) {
  const Complex a = (1.0 + u) * (1.0 + u);
  const Complex b = 4.0 * u;
  Complex total{};
  for (double lambda : spectrum) total += log_factor(a - b * (lambda * lambda), singular);
  return total;
}

std::vector<double> closed_form_dirichlet_spectrum(const TorusGraph& graph, const MarkedSet& marked, bool& found) {
  found = true;
  const auto kind = marked.spec().kind;
  const std::size_t free = graph.vertex_count() - marked.count();
  if (kind == MarkingKind::All) return {};
  if (kind == MarkingKind::Checkerboard) return std::vector<double>(free, 0.0);
  if (kind == MarkingKind::None) {
    auto s = torus_adjacency_spectrum(graph.dim(), graph.side()).values;
    for (double& v : s) v /= graph.degree();
    return s;
  }
  if (kind == MarkingKind::HalfRegion) return case2_dirichlet_spectrum(graph.dim(), graph.side() / 2).values;
  if (graph.dim() == 1) {
    const auto decomp = decompose_1d(graph, marked);
    std::vector<double> s(decomp.isolated.size(), 0.0);
    for (const auto& run : decomp.free_runs) {
      for (double v : path_spectrum(run.length).values) s.push_back(0.5 * v);
    }
    return s;
  }
  found = false;
  return {};
}

}  // namespace

std::string to_string(ZetaMethod method) {
  switch (method) {
    case ZetaMethod::Direct: return "direct";
    case ZetaMethod::Factorized: return "factorized";
    case ZetaMethod::Closed1d: return "closed-1d";
    case ZetaMethod::ClosedCase1: return "closed-case1";
    case ZetaMethod::ClosedCase2: return "closed-case2";
    case ZetaMethod::Limit1d: return "limit-1d";
    case ZetaMethod::LimitCase2: return "limit-case2";
    case ZetaMethod::LimitNonsearch: return "limit-nonsearch";
  }
  return "unknown";
}

ZetaMethod parse_zeta_method(const std::string& text) {
  static const std::map<std::string, ZetaMethod> names = {
      {"direct", ZetaMethod::Direct},
      {"factorized", ZetaMethod::Factorized},
      {"closed-1d", ZetaMethod::Closed1d},
      {"thm31-finite", ZetaMethod::Closed1d},
      {"closed-case1", ZetaMethod::ClosedCase1},
      {"case1", ZetaMethod::ClosedCase1},
      {"closed-case2", ZetaMethod::ClosedCase2},
      {"case2-finite", ZetaMethod::ClosedCase2},
      {"limit-1d", ZetaMethod::Limit1d},
      {"thm31-limit", ZetaMethod::Limit1d},
      {"limit-case2", ZetaMethod::LimitCase2},
      {"case2-limit", ZetaMethod::LimitCase2},
      {"limit-nonsearch", ZetaMethod::LimitNonsearch},
      {"nonsearch-limit", ZetaMethod::LimitNonsearch},
  };
  const auto it = names.find(text);
  if (it == names.end()) throw std::invalid_argument("unknown zeta method '" + text + "'");
  return it->second;
}

std::string ZetaValue::flag_string() const {
  std::string out;
  if (singular()) out += "singular";
  if (branch_sensitive()) out += out.empty() ? "branch-sensitive" : "|branch-sensitive";
  return out;
}

bool in_real_disk(Complex u) { return u.imag() == 0.0 && std::abs(u.real()) < 1.0; }

ZetaValue zeta_direct(const ComplexMatrix& walk, std::size_t n_vertices, Complex u) {
  if (!walk.square()) throw std::invalid_argument("time evolution matrix must be square");
  if (n_vertices == 0) throw std::invalid_argument("vertex count must be positive");
  ComplexMatrix a = walk;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= -u;
    a(i, i) += 1.0;
  }
  const LogDet ld = lu_logdet(std::move(a));
  if (ld.singular) return zero_value(ZetaMethod::Direct, u, n_vertices);
  return root_of_logdet({ld.log_modulus, ld.phase}, n_vertices, ZetaMethod::Direct, u);
}

ZetaValue zeta_factorized(const TorusGraph& graph, const MarkedSet& marked, Complex u, SpectrumSource source) {
  const std::size_t n = graph.vertex_count();
  const std::size_t m = marked.count();
  const auto exponent = static_cast<double>(2 * (graph.edge_count() - n) + 3 * m);
  if (exponent > 0 && near(u, 1.0)) return zero_value(ZetaMethod::Factorized, u, n);

  std::vector<double> spectrum;
  bool found = false;
  if (source == SpectrumSource::ClosedFormWhenAvailable) spectrum = closed_form_dirichlet_spectrum(graph, marked, found);
  if (!found) spectrum = symmetric_eigenvalues(build_dirichlet(graph, marked).values);

  bool singular = false;
  Complex log_det = exponent == 0 ? Complex{} : exponent * log_factor(1.0 - u, singular);
  log_det += dirichlet_log_sum(spectrum, u, singular);
  if (singular) return zero_value(ZetaMethod::Factorized, u, n);
  return root_of_logdet(log_det, n, ZetaMethod::Factorized, u);
}

ZetaValue zeta_1d_finite(const SegmentDecomposition& decomp, Complex u) {
  const std::size_t n = decomp.vertex_count;
  const std::size_t m = decomp.marked_count();
  const std::size_t isolated = decomp.isolated.size();
  if ((m > 0 && near(u, 1.0)) || (isolated > 0 && near(u, -1.0))) return zero_value(ZetaMethod::Closed1d, u, n);

  bool singular = false;
  Complex log_det{};
  if (m > 0) log_det += 3.0 * static_cast<double>(m) * log_factor(1.0 - u, singular);
  if (isolated > 0) log_det += 2.0 * static_cast<double>(isolated) * log_factor(1.0 + u, singular);
  const Complex quad = 1.0 + u * u;
  for (const auto& run : decomp.free_runs) {
    // A path of length l contributes 1 - 2cos(2k pi/(l+1)) u + u^2; the
    // unmarked cycle has P = A/2 with eigenvalues cos(2k pi/n).
    const double denom = run.cyclic ? static_cast<double>(run.length) / 2.0 : static_cast<double>(run.length + 1);
    for (std::size_t k = 1; k <= run.length; ++k) {
      const double c = std::cos(2.0 * static_cast<double>(k) * std::numbers::pi / denom);
      log_det += log_factor(quad - 2.0 * c * u, singular);
    }
  }
  if (singular) return zero_value(ZetaMethod::Closed1d, u, n);
  return root_of_logdet(log_det, n, ZetaMethod::Closed1d, u);
}

SegmentRatios SegmentRatios::of(const SegmentDecomposition& decomp) {
  return {decomp.c_marked.value(), decomp.c_free.value(), decomp.c_isolated.value()};
}

QuadratureSpec default_periodic_quadrature(int dim) {
  return QuadratureSpec::periodic(dim, default_quadrature_points(dim));
}

QuadratureSpec default_half_angle_quadrature(int dim) {
  return QuadratureSpec::half_angle_last(dim, default_quadrature_points(dim));
}

ZetaValue zeta_1d_limit(const SegmentRatios& ratios, Complex u, const QuadratureSpec& quad) {
  for (double c : {ratios.marked, ratios.free, ratios.isolated}) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("segment ratios must lie in [0, 1]");
  }
  if (std::abs(ratios.marked + ratios.free + ratios.isolated - 1.0) > 1e-12) {
    throw std::invalid_argument("segment ratios must sum to 1");
  }
  if (quad.dim() != 1) throw std::invalid_argument("the one-dimensional limit needs a 1-axis quadrature");
  if ((ratios.marked > 0 && near(u, 1.0)) || (ratios.isolated > 0 && near(u, -1.0))) {
    return zero_value(ZetaMethod::Limit1d, u, 0);
  }
  if (ratios.free > 0 && std::abs(std::abs(u) - 1.0) < kUnitGuard) {
    throw std::invalid_argument("free-run integrand is singular on |u| = 1");
  }
  Complex log_value{};
  if (ratios.marked > 0) log_value += 3.0 * ratios.marked * std::log(1.0 - u);
  if (ratios.isolated > 0) log_value += 2.0 * ratios.isolated * std::log(1.0 + u);
  if (ratios.free > 0) {
    const Complex quad_term = 1.0 + u * u;
    const Complex integral =
        cosine_sum_average<Complex>(quad, [&](double c) { return std::log(quad_term - 2.0 * c * u); });
    log_value += ratios.free * integral;
  }
  auto out = exp_of_log(log_value, ZetaMethod::Limit1d, u);
  out.quadrature = quad;
  return out;
}

ZetaValue zeta_1d_limit(const SegmentRatios& ratios, Complex u) {
  return zeta_1d_limit(ratios, u, default_periodic_quadrature(1));
}

ZetaValue zeta_case1(int dim, Complex u) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (near(u, 1.0) || near(u, -1.0)) return zero_value(ZetaMethod::ClosedCase1, u, 0);
  const Complex log_value = (2.0 * dim - 0.5) * std::log(1.0 - u) + std::log(1.0 + u);
  return exp_of_log(log_value, ZetaMethod::ClosedCase1, u);
}

ZetaValue zeta_case2_finite(int dim, int half_side, Complex u) {
  if (dim < 1 || half_side < 1) throw std::invalid_argument("case 2 needs d >= 1 and N >= 1");
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) n *= 2 * static_cast<std::size_t>(half_side);
  if (near(u, 1.0)) return zero_value(ZetaMethod::ClosedCase2, u, n);
  // (2N)^d (2d - 1/2) is an integer: 2(eps - n) + 3m with eps = dn, m = n/2.
  const double exponent = static_cast<double>(n) * (2.0 * dim - 0.5);
  bool singular = false;
  Complex log_det = exponent * log_factor(1.0 - u, singular);
  log_det += dirichlet_log_sum(case2_dirichlet_spectrum(dim, half_side).values, u, singular);
  if (singular) return zero_value(ZetaMethod::ClosedCase2, u, n);
  return root_of_logdet(log_det, n, ZetaMethod::ClosedCase2, u);
}

namespace {

ZetaValue limit_with_integral(int dim, Complex u, const QuadratureSpec& quad, int width, double prefactor,
                              ZetaMethod method) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (quad.dim() != dim) throw std::invalid_argument("quadrature dimension does not match d");
  if (near(u, 1.0)) return zero_value(method, u, 0);
  const Complex a = (1.0 + u) * (1.0 + u);
  const Complex b = 4.0 * u / (static_cast<double>(dim) * dim);
  const Complex integral = cosine_sum_average<Complex>(quad, [&](double c) { return std::log(a - b * (c * c)); }, width);
  auto out = exp_of_log(prefactor * std::log(1.0 - u) + 0.5 * integral, method, u);
  out.quadrature = quad;
  return out;
}

}  // namespace

ZetaValue zeta_case2_limit(int dim, Complex u, const QuadratureSpec& quad, int width) {
  if (quad.rules.empty() || quad.rules.back() != AngleRule::MidpointHalfAngle) {
    throw std::invalid_argument("case 2 limit needs the half-angle rule on the last axis");
  }
  return limit_with_integral(dim, u, quad, width, 2.0 * dim - 0.5, ZetaMethod::LimitCase2);
}

ZetaValue zeta_case2_limit(int dim, Complex u) { return zeta_case2_limit(dim, u, default_half_angle_quadrature(dim)); }

ZetaValue zeta_nonsearch_limit(int dim, Complex u, const QuadratureSpec& quad, int width) {
  for (auto rule : quad.rules) {
    if (rule != AngleRule::PeriodicEquispaced) throw std::invalid_argument("non-search limit needs periodic rules");
  }
  return limit_with_integral(dim, u, quad, width, static_cast<double>(dim), ZetaMethod::LimitNonsearch);
}

ZetaValue zeta_nonsearch_limit(int dim, Complex u) {
  return zeta_nonsearch_limit(dim, u, default_periodic_quadrature(dim));
}

}  // namespace qwz
