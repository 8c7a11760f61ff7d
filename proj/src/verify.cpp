#include "qwzeta/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include "json.hpp"
#include "qwzeta/mahler.hpp"
#include "qwzeta/operators.hpp"
#include "qwzeta/spectra.hpp"
#include "qwzeta/zeta.hpp"

namespace qwz {

namespace {

struct Labeled {
  std::string label;
  MarkedSet marked;
};

std::vector<Labeled> standard_markings(const TorusGraph& torus, int random_count, std::mt19937_64& rng) {
  std::vector<Labeled> out;
  for (auto spec : {MarkingSpec::none(), MarkingSpec::all()}) out.push_back({spec.to_string(), resolve_marked(torus, spec)});
  if (torus.side() % 2 == 0) {
    for (auto spec : {MarkingSpec::checkerboard(), MarkingSpec::half_region()}) {
      out.push_back({spec.to_string(), resolve_marked(torus, spec)});
    }
  }
  for (int i = 0; i < random_count; ++i) {
    auto marked = random_marking(torus, rng);
    out.push_back({marked.spec().to_string(), std::move(marked)});
  }
  return out;
}

void check_budget(const TorusGraph& torus, std::size_t m, std::size_t max_dimension) {
  const std::size_t dim = 2 * torus.edge_count() + m;
  if (dim > max_dimension) {
    throw std::invalid_argument("walk dimension " + std::to_string(dim) + " for d = " + std::to_string(torus.dim()) +
                                ", L = " + std::to_string(torus.side()) + " exceeds the limit of " +
                                std::to_string(max_dimension) + " (raise --max-dim)");
  }
}

Check make_check(std::string name, double residual, double tolerance, std::string detail = {}) {
  return {std::move(name), residual, tolerance, residual < tolerance, std::move(detail)};
}

std::string torus_label(int d, int side) { return "d=" + std::to_string(d) + " L=" + std::to_string(side); }

int random_count(const VerifyOptions& o, int dim) {
  if (o.random_markings >= 0) return o.random_markings;
  return dim == 1 ? 20 : 5;
}

std::vector<int> sides_or(const VerifyOptions& o, std::vector<int> fallback) {
  return o.sides.empty() ? fallback : o.sides;
}

std::vector<int> default_sides(int dim) {
  if (dim == 1) return {4, 5, 6, 7, 8, 9, 10, 11, 12};
  return {4, 6};
}

std::vector<int> even_only(std::vector<int> sides) {
  sides.erase(std::remove_if(sides.begin(), sides.end(), [](int s) { return s % 2 != 0; }), sides.end());
  return sides;
}

// Direct determinant against another finite-torus evaluator, over markings and u.
void compare_with_direct(const VerifyOptions& o, int dim, const std::string& name,
                         const std::function<ZetaValue(const TorusGraph&, const MarkedSet&, Complex)>& other,
                         VerifyReport& report) {
  std::mt19937_64 rng(o.seed);
  for (int side : sides_or(o, default_sides(dim))) {
    const auto torus = build_torus(dim, side);
    double worst = 0.0;
    std::size_t configs = 0;
    for (const auto& [label, marked] : standard_markings(torus, random_count(o, dim), rng)) {
      check_budget(torus, marked.count(), o.max_dimension);
      const auto walk = build_time_evolution(build_duplication(torus, marked));
      for (Complex u : o.us) {
        worst = std::max(worst, relative_difference(zeta_direct(walk, torus.vertex_count(), u).value,
                                                    other(torus, marked, u).value));
      }
      ++configs;
    }
    report.checks.push_back(make_check(name + " " + torus_label(dim, side), worst, o.det_tolerance,
                                       std::to_string(configs) + " markings x " + std::to_string(o.us.size()) + " u"));
  }
}

void suite_prop22(const VerifyOptions& o, VerifyReport& r) {
  compare_with_direct(
      o, o.dim, "direct=factorized",
      [](const TorusGraph& t, const MarkedSet& m, Complex u) { return zeta_factorized(t, m, u); }, r);
}

void suite_thm31(const VerifyOptions& o, VerifyReport& r) {
  if (o.dim != 1) throw std::invalid_argument("suite thm31 is one-dimensional (use --d 1)");
  compare_with_direct(
      o, 1, "direct=closed-1d",
      [](const TorusGraph& t, const MarkedSet& m, Complex u) { return zeta_1d_finite(decompose_1d(t, m), u); }, r);
}

void suite_case1(const VerifyOptions& o, VerifyReport& r) {
  const auto sides = even_only(sides_or(o, {4, 6, 8}));
  if (sides.empty()) throw std::invalid_argument("suite case1 needs even side lengths");
  std::vector<std::vector<Complex>> per_side;
  for (int side : sides) {
    const auto torus = build_torus(o.dim, side);
    const auto marked = resolve_marked(torus, MarkingSpec::checkerboard());
    check_budget(torus, marked.count(), o.max_dimension);
    const auto walk = build_time_evolution(build_duplication(torus, marked));
    double worst = 0.0;
    std::vector<Complex> values;
    const auto n = static_cast<double>(torus.vertex_count());
    for (Complex u : o.us) {
      const auto direct = zeta_direct(walk, torus.vertex_count(), u);
      const auto closed = zeta_case1(o.dim, u);
      values.push_back(direct.value);
      if (in_real_disk(u)) {
        worst = std::max(worst, std::abs(direct.value - closed.value));
      } else {
        // Different principal n-th roots; the determinants themselves must agree.
        worst = std::max(worst, relative_difference(std::pow(direct.value, n), std::pow(closed.value, n)));
      }
    }
    per_side.push_back(values);
    r.checks.push_back(make_check("direct=closed-case1 " + torus_label(o.dim, side), worst, o.det_tolerance));
  }
  double spread = 0.0;
  for (std::size_t s = 1; s < per_side.size(); ++s) {
    for (std::size_t i = 0; i < o.us.size(); ++i) {
      if (in_real_disk(o.us[i])) spread = std::max(spread, std::abs(per_side[s][i] - per_side[0][i]));
    }
  }
  r.checks.push_back(make_check("case1 independent of L", spread, o.det_tolerance,
                                std::to_string(sides.size()) + " side lengths, real u only"));
}

void suite_case2(const VerifyOptions& o, VerifyReport& r) {
  const auto sides = even_only(sides_or(o, o.dim == 1 ? std::vector<int>{4, 6, 8, 10, 12} : std::vector<int>{4, 6}));
  if (sides.empty()) throw std::invalid_argument("suite case2 needs even side lengths");
  for (int side : sides) {
    const auto torus = build_torus(o.dim, side);
    const auto marked = resolve_marked(torus, MarkingSpec::half_region());
    check_budget(torus, marked.count(), o.max_dimension);
    const auto walk = build_time_evolution(build_duplication(torus, marked));
    double worst = 0.0;
    for (Complex u : o.us) {
      worst = std::max(worst, relative_difference(zeta_direct(walk, torus.vertex_count(), u).value,
                                                  zeta_case2_finite(o.dim, side / 2, u).value));
    }
    r.checks.push_back(make_check("direct=closed-case2 " + torus_label(o.dim, side), worst, o.det_tolerance));
  }
}

void suite_structure(const VerifyOptions& o, VerifyReport& r) {
  constexpr double tol = 1e-12;
  std::mt19937_64 rng(o.seed);
  for (int side : sides_or(o, default_sides(o.dim))) {
    const auto torus = build_torus(o.dim, side);
    double k_res = 0.0, l_res = 0.0, w_res = 0.0;
    for (const auto& [label, marked] : standard_markings(torus, random_count(o, o.dim), rng)) {
      check_budget(torus, marked.count(), o.max_dimension);
      const auto gm = build_duplication(torus, marked);
      const auto identity_n = RealMatrix::identity(torus.vertex_count());
      const auto k = build_K(gm).to_dense();
      const auto l = build_L(gm).to_dense();
      k_res = std::max(k_res, max_abs_diff(multiply(transpose(k), k), identity_n));
      l_res = std::max(l_res, max_abs_diff(multiply(transpose(l), l), identity_n));
      const auto w = build_time_evolution(gm);
      w_res = std::max(w_res, max_abs_diff(multiply(w, transpose(w)), ComplexMatrix::identity(w.rows())));
    }
    r.checks.push_back(make_check("K^T K = I " + torus_label(o.dim, side), k_res, tol));
    r.checks.push_back(make_check("L^T L = I " + torus_label(o.dim, side), l_res, tol));
    r.checks.push_back(make_check("W' W'^T = I " + torus_label(o.dim, side), w_res, tol));
  }
}

void suite_spectra(const VerifyOptions& o, VerifyReport& r) {
  constexpr double tol = 1e-10;
  double path_res = 0.0;
  for (std::size_t n = 1; n <= 50; ++n) {
    const auto numeric = make_spectrum(symmetric_eigenvalues(path_adjacency(n)), SpectrumProvenance::Numeric);
    path_res = std::max(path_res, max_sorted_residual(path_spectrum(n), numeric));
  }
  r.checks.push_back(make_check("path spectrum n<=50", path_res, tol));
  for (int side : sides_or(o, {3, 4, 5, 6, 7, 8})) {
    const auto torus = build_torus(o.dim, side);
    const auto numeric = make_spectrum(symmetric_eigenvalues(torus_adjacency(torus)), SpectrumProvenance::Numeric);
    r.checks.push_back(make_check("torus spectrum " + torus_label(o.dim, side),
                                  max_sorted_residual(torus_adjacency_spectrum(o.dim, side), numeric), tol));
  }
  for (int n = 2; n <= 3; ++n) {
    const auto torus = build_torus(o.dim, 2 * n);
    const auto p = build_dirichlet(torus, resolve_marked(torus, MarkingSpec::half_region()));
    const auto numeric = make_spectrum(symmetric_eigenvalues(p.values), SpectrumProvenance::Numeric);
    r.checks.push_back(make_check("case2 Dirichlet spectrum d=" + std::to_string(o.dim) + " N=" + std::to_string(n),
                                  max_sorted_residual(case2_dirichlet_spectrum(o.dim, n), numeric), tol));
  }
}

void suite_limits(const VerifyOptions& o, VerifyReport& r) {
  const bool one = o.dim == 1;
  const std::vector<int> ns = one ? std::vector<int>{8, 16, 32, 64, 128} : std::vector<int>{2, 4, 8, 16};
  const double bound = one ? 1e-3 : 1e-2;
  const std::size_t points = o.points ? o.points : (one ? 4096 : 1024);
  for (double u : {0.3, 0.6}) {
    const Complex limit = zeta_case2_limit(o.dim, u, QuadratureSpec::half_angle_last(o.dim, points), o.width).value;
    std::vector<double> gaps;
    for (int n : ns) gaps.push_back(std::abs(zeta_case2_finite(o.dim, n, u).value - limit));
    const bool monotone = std::is_sorted(gaps.rbegin(), gaps.rend()) &&
                          std::adjacent_find(gaps.begin(), gaps.end()) == gaps.end();
    Check c = make_check("case2 finite -> limit d=" + std::to_string(o.dim) + " u=" + std::to_string(u).substr(0, 3),
                         gaps.back(), bound, monotone ? "gap decreases in N" : "gap not monotone in N");
    c.pass = c.pass && monotone;
    r.checks.push_back(c);
  }
}

void suite_remarks(const VerifyOptions& o, VerifyReport& r) {
  constexpr double tol = 1e-7;
  const auto quad1 = QuadratureSpec::periodic(1, o.points ? o.points : default_quadrature_points(1));
  const auto half1 = QuadratureSpec::half_angle_last(1, o.points ? o.points : default_quadrature_points(1));
  double checker = 0.0, half = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double u = i / 10.0;
    checker = std::max(checker, std::abs(zeta_1d_limit({0.5, 0.0, 0.5}, u, quad1).value - zeta_case1(1, u).value));
    half = std::max(half, std::abs(zeta_1d_limit({0.5, 0.5, 0.0}, u, quad1).value - zeta_case2_limit(1, u, half1).value));
  }
  r.checks.push_back(make_check("limit-1d(1/2,0,1/2) = closed-case1 d=1", checker, tol));
  r.checks.push_back(make_check("limit-1d(1/2,1/2,0) = limit-case2 d=1", half, tol));
}

void suite_jensen(const VerifyOptions& o, VerifyReport& r) {
  constexpr double tol = 1e-8;
  const auto quad = QuadratureSpec::periodic(1, o.points ? o.points : 4096);
  double worst = 0.0;
  for (double u : {0.25, 0.5, 0.9, 1.5, 3.0}) {
    const double m = mahler_quadrature(MahlerIntegrand::JensenQuadratic, 1, u, quad).value;
    worst = std::max(worst, std::abs(m - 2.0 * std::log(std::max(1.0, std::abs(u)))));
  }
  r.checks.push_back(make_check("Jensen m(1-2cos(t)u+u^2) = 2 log max(1,|u|)", worst, tol));
}

void suite_cor51(const VerifyOptions& o, VerifyReport& r) {
  const std::size_t points = o.points ? o.points : default_quadrature_points(o.dim);
  const auto periodic = QuadratureSpec::periodic(o.dim, points);
  const auto half = QuadratureSpec::half_angle_last(o.dim, points);
  double ns = 0.0, s = 0.0, branch = 0.0;
  for (double u : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto lns = log_zeta_nonsearch(o.dim, u, periodic, o.width);
    const auto ls = log_zeta_search(o.dim, u, half, o.width);
    ns = std::max(ns, std::abs(lns.value - std::log(zeta_nonsearch_limit(o.dim, u, periodic, o.width).value.real())));
    s = std::max(s, std::abs(ls.value - std::log(zeta_case2_limit(o.dim, u, half, o.width).value.real())));
    branch = std::max({branch, lns.imag_residual, ls.imag_residual});
  }
  const std::string d = " d=" + std::to_string(o.dim);
  r.checks.push_back(make_check("log-zeta nonsearch = log limit-nonsearch" + d, ns, o.quad_tolerance));
  r.checks.push_back(make_check("log-zeta search = log limit-case2" + d, s, o.quad_tolerance));
  r.checks.push_back(make_check("branch cancellation mod 2pi" + d, branch, 1e-8));
}

}  // namespace

double relative_difference(Complex a, Complex b) {
  const double scale = std::abs(a);
  return scale == 0.0 ? std::abs(a - b) : std::abs(a - b) / scale;
}

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["suite"] = suite;
  doc["seed"] = seed;
  doc["pass"] = pass();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["max_residual"] = c.max_residual;
    item["tolerance"] = c.tolerance;
    item["pass"] = c.pass;
    if (!c.detail.empty()) item["detail"] = c.detail;
    doc["checks"].push_back(item);
  }
  return doc.dump(2);
}

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  report.suite = options.suite;
  report.seed = options.seed;
  const std::map<std::string, std::function<void(const VerifyOptions&, VerifyReport&)>> suites = {
      {"prop22", suite_prop22},   {"thm31", suite_thm31},   {"case1", suite_case1},
      {"case2", suite_case2},     {"structure", suite_structure}, {"spectra", suite_spectra},
      {"limits", suite_limits},   {"remarks", suite_remarks}, {"jensen", suite_jensen},
      {"cor51", suite_cor51},
  };
  if (options.suite == "all") {
    for (int dim : {1, 2}) {
      VerifyOptions o = options;
      o.dim = dim;
      o.sides.clear();
      suite_prop22(o, report);
      if (dim == 1) suite_thm31(o, report);
      suite_case1(o, report);
      suite_case2(o, report);
      suite_structure(o, report);
      suite_spectra(o, report);
      suite_limits(o, report);
      suite_cor51(o, report);
    }
    suite_remarks(options, report);
    suite_jensen(options, report);
    return report;
  }
  const auto it = suites.find(options.suite);
  if (it == suites.end()) throw std::invalid_argument("unknown verify suite '" + options.suite + "'");
  it->second(options, report);
  return report;
}

}  // namespace qwz
