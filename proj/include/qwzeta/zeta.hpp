#pragma once

// Evaluators of zeta(U, T, u)^{-1} = det(I - uU)^{1/n}, n the vertex count of
// the torus: the direct determinant, the factorization through the Dirichlet
// walk P_M, the closed forms for one-dimensional and half-marked tori, and
// their N -> infinity limits.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwzeta/graph.hpp"
#include "qwzeta/linalg.hpp"
#include "qwzeta/parallel.hpp"
#include "qwzeta/quadrature.hpp"

namespace qwz {

enum class ZetaMethod {
  Direct,
  Factorized,
  Closed1d,
  ClosedCase1,
  ClosedCase2,
  Limit1d,
  LimitCase2,
  LimitNonsearch,
};

std::string to_string(ZetaMethod method);
/// Canonical names (`direct`, `closed-case2`, ...) plus the aliases
/// `thm31-finite`, `thm31-limit`, `case1`, `case2-finite`, `case2-limit`,
/// `nonsearch-limit`.
ZetaMethod parse_zeta_method(const std::string& text);

enum ZetaFlag : unsigned {
  kZetaSingular = 1u << 0,
  /// Complex or out-of-disk u: principal branch of the 1/n-th root.
  kZetaBranchSensitive = 1u << 1,
};

struct ZetaValue {
  Complex value;
  Complex u;
  ZetaMethod method = ZetaMethod::Direct;
  /// Vertex count n in det(...)^{1/n}; 0 for the N -> infinity limits.
  std::size_t normalization = 0;
  unsigned flags = 0;
  std::optional<QuadratureSpec> quadrature;

  bool singular() const { return (flags & kZetaSingular) != 0; }
  bool branch_sensitive() const { return (flags & kZetaBranchSensitive) != 0; }
  std::string flag_string() const;
};

/// True for real u with |u| < 1, where every evaluator returns a positive real.
bool in_real_disk(Complex u);

ZetaValue zeta_direct(const ComplexMatrix& walk, std::size_t n_vertices, Complex u);

enum class SpectrumSource { Numeric, ClosedFormWhenAvailable };

/// (1-u)^{2(eps-n)+3m} det((1+u)^2 I - 4u P_M^2), evaluated through Spec(P_M).
ZetaValue zeta_factorized(const TorusGraph& graph, const MarkedSet& marked, Complex u,
                          SpectrumSource source = SpectrumSource::Numeric);

/// Closed form over the run decomposition of a marked cycle.
ZetaValue zeta_1d_finite(const SegmentDecomposition& decomp, Complex u);

struct SegmentRatios {
  double marked = 0.0;
  double free = 0.0;
  double isolated = 0.0;

  static SegmentRatios of(const SegmentDecomposition& decomp);
};

QuadratureSpec default_periodic_quadrature(int dim);
QuadratureSpec default_half_angle_quadrature(int dim);

ZetaValue zeta_1d_limit(const SegmentRatios& ratios, Complex u, const QuadratureSpec& quad);
ZetaValue zeta_1d_limit(const SegmentRatios& ratios, Complex u);

/// (1-u)^{2d-1/2} (1+u), independent of the torus size.
ZetaValue zeta_case1(int dim, Complex u);

/// Half-marked torus T_{2N}^d at finite N.
ZetaValue zeta_case2_finite(int dim, int half_side, Complex u);

ZetaValue zeta_case2_limit(int dim, Complex u, const QuadratureSpec& quad, int width = 1);
ZetaValue zeta_case2_limit(int dim, Complex u);

/// Limit for the walk without search on T_{2N}^d.
ZetaValue zeta_nonsearch_limit(int dim, Complex u, const QuadratureSpec& quad, int width = 1);
ZetaValue zeta_nonsearch_limit(int dim, Complex u);

/// Evaluates `eval(u)` over a grid with up to `width` threads; results follow
/// the input order.
template <class Eval>
std::vector<ZetaValue> zeta_sweep(std::span<const Complex> us, int width, Eval&& eval) {
  std::vector<ZetaValue> out(us.size());
  parallel_for(us.size(), resolve_width(width), [&](std::size_t i) { out[i] = eval(us[i]); });
  return out;
}

}  // namespace qwz
