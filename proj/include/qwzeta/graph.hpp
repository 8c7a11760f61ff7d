#pragma once

// Tori T_L^d, marked-vertex configurations, the 1D run decomposition and the
// duplication graph G_M on which the search walk lives.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qwz {

inline constexpr std::size_t kDefaultVertexBudget = std::size_t{1} << 20;

struct Edge {
  std::size_t a;
  std::size_t b;
};

/// The d-dimensional discrete torus with L vertices per axis.
///
/// Vertices are numbered row-major over coordinates (x_1, ..., x_d), the last
/// coordinate varying fastest. Edges are listed by (axis, base vertex): for each
/// axis, every vertex v contributes the edge {v, v + e_axis mod L}.
class TorusGraph {
 public:
  TorusGraph(int dim, int side, std::size_t vertex_budget = kDefaultVertexBudget);

  int dim() const { return dim_; }
  int side() const { return side_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  int degree() const { return 2 * dim_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::vector<int> coordinates(std::size_t vertex) const;
  std::size_t vertex_at(const std::vector<int>& coords) const;
  /// Neighbours in axis order, -1 step before +1 step.
  std::vector<std::size_t> neighbors(std::size_t vertex) const;

 private:
  int dim_;
  int side_;
  std::size_t vertex_count_;
  std::vector<std::size_t> strides_;
  std::vector<Edge> edges_;
};

TorusGraph build_torus(int dim, int side, std::size_t vertex_budget = kDefaultVertexBudget);

enum class MarkingKind { Explicit, Checkerboard, HalfRegion, None, All };

struct MarkingSpec {
  MarkingKind kind = MarkingKind::None;
  std::vector<std::size_t> ids;  // Explicit only

  static MarkingSpec explicit_ids(std::vector<std::size_t> ids);
  static MarkingSpec checkerboard() { return {MarkingKind::Checkerboard, {}}; }
  static MarkingSpec half_region() { return {MarkingKind::HalfRegion, {}}; }
  static MarkingSpec none() { return {MarkingKind::None, {}}; }
  static MarkingSpec all() { return {MarkingKind::All, {}}; }

  /// Accepts `checkerboard`, `half`, `none`, `all` and `explicit:i,j,...`.
  static MarkingSpec parse(const std::string& text);
  std::string to_string() const;
};

class MarkedSet {
 public:
  MarkedSet(MarkingSpec spec, std::vector<bool> mask);

  const MarkingSpec& spec() const { return spec_; }
  bool contains(std::size_t vertex) const { return mask_[vertex]; }
  std::size_t count() const { return count_; }
  std::size_t vertex_count() const { return mask_.size(); }
  const std::vector<bool>& mask() const { return mask_; }
  std::vector<std::size_t> ids() const;
  std::vector<std::size_t> unmarked_ids() const;

 private:
  MarkingSpec spec_;
  std::vector<bool> mask_;
  std::size_t count_;
};

/// Checkerboard: coordinate sum even. HalfRegion: 0 <= x_d <= L/2 - 1, so that
/// exactly half the vertices are marked and the complement is L/2 full layers.
MarkedSet resolve_marked(const TorusGraph& torus, const MarkingSpec& spec);

/// Uniformly random marking with 1 <= m <= n - 1 marked vertices.
MarkedSet random_marking(const TorusGraph& torus, std::mt19937_64& rng);

struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio of(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

Ratio operator+(const Ratio& lhs, const Ratio& rhs);

/// A circular run of consecutive vertices start, start+1, ... (mod n).
struct Run {
  std::size_t start = 0;
  std::size_t length = 0;
  /// The run is the whole cycle (only for m = 0 or m = n).
  bool cyclic = false;
};

struct SegmentDecomposition {
  std::size_t vertex_count = 0;
  std::vector<Run> marked_runs;
  std::vector<Run> free_runs;           // non-marked runs of >= 2 vertices
  std::vector<std::size_t> isolated;    // non-marked, both neighbours marked
  Ratio c_marked;
  Ratio c_free;
  Ratio c_isolated;
  std::vector<Ratio> c_runs;

  std::size_t marked_count() const;
  std::size_t free_count() const;
  /// Rebuilds the marking mask from the runs.
  std::vector<bool> reconstruct_mask() const;
};

/// Run decomposition of a marked cycle. With m = 0 the free part is the
/// whole cycle, reported as one cyclic free run.
SegmentDecomposition decompose_1d(const TorusGraph& torus, const MarkedSet& marked);

/// One edge of G_M: it touches X-vertex `x` and Y-vertex `y'`.
struct DuplicationEdge {
  std::size_t x;
  std::size_t y;
  bool self_pair;  // member of E_2, joins x to its own copy x'
};

struct ModifiedGraph {
  std::size_t vertex_count = 0;              // |X| = |Y|
  std::vector<DuplicationEdge> edges;        // E' first, then E_2
  std::vector<int> base_degree;              // d_G of the original graph
  std::vector<bool> marked;
  std::size_t marked_count = 0;
  std::size_t base_edge_count = 0;

  std::size_t edge_count() const { return edges.size(); }
};

/// Each base edge {a, b} contributes {a, b'} then {a', b}; the E_2 edges
/// {x, x'} follow in increasing marked-vertex order.
ModifiedGraph build_duplication(const TorusGraph& graph, const MarkedSet& marked);

}  // namespace qwz
