#include "qwzeta/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qwz {

TorusGraph::TorusGraph(int dim, int side, std::size_t vertex_budget) : dim_(dim), side_(side) {
  if (dim < 1) throw std::invalid_argument("torus dimension must be >= 1");
  if (side < 3) {
    throw std::invalid_argument("torus side must be >= 3 (L = " + std::to_string(side) +
                                " gives a multigraph)");
  }
  vertex_count_ = 1;
  for (int i = 0; i < dim; ++i) {
    if (vertex_count_ > vertex_budget / static_cast<std::size_t>(side)) {
      throw std::invalid_argument("torus with L^d vertices exceeds the vertex budget of " +
                                  std::to_string(vertex_budget));
    }
    vertex_count_ *= static_cast<std::size_t>(side);
  }
  strides_.assign(static_cast<std::size_t>(dim), 1);
  for (int axis = dim - 2; axis >= 0; --axis) {
    strides_[axis] = strides_[axis + 1] * static_cast<std::size_t>(side);
  }

  edges_.reserve(vertex_count_ * static_cast<std::size_t>(dim));
  for (int axis = 0; axis < dim; ++axis) {
    const std::size_t stride = strides_[axis];
    for (std::size_t v = 0; v < vertex_count_; ++v) {
      const auto coord = static_cast<int>((v / stride) % static_cast<std::size_t>(side));
      const std::size_t next = coord + 1 == side ? v - stride * (side - 1) : v + stride;
      edges_.push_back({v, next});
    }
  }
}

std::vector<int> TorusGraph::coordinates(std::size_t vertex) const {
  std::vector<int> coords(static_cast<std::size_t>(dim_));
  for (int axis = 0; axis < dim_; ++axis) {
    coords[axis] = static_cast<int>((vertex / strides_[axis]) % static_cast<std::size_t>(side_));
  }
  return coords;
}

std::size_t TorusGraph::vertex_at(const std::vector<int>& coords) const {
  if (coords.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("coordinate vector has wrong dimension");
  }
  std::size_t v = 0;
  for (int axis = 0; axis < dim_; ++axis) {
    const int c = ((coords[axis] % side_) + side_) % side_;
    v += static_cast<std::size_t>(c) * strides_[axis];
  }
  return v;
}

std::vector<std::size_t> TorusGraph::neighbors(std::size_t vertex) const {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(degree()));
  auto coords = coordinates(vertex);
  for (int axis = 0; axis < dim_; ++axis) {
    for (int step : {-1, 1}) {
      auto moved = coords;
      moved[axis] += step;
      out.push_back(vertex_at(moved));
    }
  }
  return out;
}

TorusGraph build_torus(int dim, int side, std::size_t vertex_budget) {
  return TorusGraph(dim, side, vertex_budget);
}

MarkingSpec MarkingSpec::explicit_ids(std::vector<std::size_t> ids) {
  return {MarkingKind::Explicit, std::move(ids)};
}

MarkingSpec MarkingSpec::parse(const std::string& text) {
  if (text == "checkerboard") return checkerboard();
  if (text == "half") return half_region();
  if (text == "none") return none();
  if (text == "all") return all();
  const std::string prefix = "explicit:";
  if (text.rfind(prefix, 0) != 0) {
    throw std::invalid_argument("unknown marking '" + text +
                                "' (expected checkerboard, half, none, all or explicit:i,j,...)");
  }
  std::vector<std::size_t> ids;
  std::string body = text.substr(prefix.size());
  if (!body.empty() && body.front() == '[' && body.back() == ']') {
    body = body.substr(1, body.size() - 2);
  }
  std::stringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || value < 0) {
      throw std::invalid_argument("bad vertex id '" + item + "' in explicit marking");
    }
    ids.push_back(static_cast<std::size_t>(value));
  }
  return explicit_ids(std::move(ids));
}

std::string MarkingSpec::to_string() const {
  switch (kind) {
    case MarkingKind::Checkerboard: return "checkerboard";
    case MarkingKind::HalfRegion: return "half";
    case MarkingKind::None: return "none";
    case MarkingKind::All: return "all";
    case MarkingKind::Explicit: break;
  }
  std::string out = "explicit:";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

MarkedSet::MarkedSet(MarkingSpec spec, std::vector<bool> mask)
    : spec_(std::move(spec)),
      mask_(std::move(mask)),
      count_(static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true))) {}

std::vector<std::size_t> MarkedSet::ids() const {
  std::vector<std::size_t> out;
  out.reserve(count_);
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    if (mask_[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> MarkedSet::unmarked_ids() const {
  std::vector<std::size_t> out;
  out.reserve(mask_.size() - count_);
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    if (!mask_[v]) out.push_back(v);
  }
  return out;
}

MarkedSet resolve_marked(const TorusGraph& torus, const MarkingSpec& spec) {
  const std::size_t n = torus.vertex_count();
  std::vector<bool> mask(n, false);
  const bool needs_even = spec.kind == MarkingKind::Checkerboard || spec.kind == MarkingKind::HalfRegion;
  if (needs_even && torus.side() % 2 != 0) {
    throw std::invalid_argument(spec.to_string() + " marking requires an even side length, got L = " +
                                std::to_string(torus.side()));
  }
  switch (spec.kind) {
    case MarkingKind::None:
      break;
    case MarkingKind::All:
      mask.assign(n, true);
      break;
    case MarkingKind::Checkerboard:
      for (std::size_t v = 0; v < n; ++v) {
        const auto c = torus.coordinates(v);
        mask[v] = std::accumulate(c.begin(), c.end(), 0) % 2 == 0;
      }
      break;
    case MarkingKind::HalfRegion:
      for (std::size_t v = 0; v < n; ++v) {
        mask[v] = torus.coordinates(v).back() < torus.side() / 2;
      }
      break;
    case MarkingKind::Explicit:
      for (std::size_t id : spec.ids) {
        if (id >= n) {
          throw std::invalid_argument("marked vertex " + std::to_string(id) + " out of range (n = " +
                                      std::to_string(n) + ")");
        }
        if (mask[id]) throw std::invalid_argument("marked vertex " + std::to_string(id) + " listed twice");
        mask[id] = true;
      }
      break;
  }
  return MarkedSet(spec, std::move(mask));
}

MarkedSet random_marking(const TorusGraph& torus, std::mt19937_64& rng) {
  const std::size_t n = torus.vertex_count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Fisher-Yates by hand so the sequence does not depend on the standard library.
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = rng() % (i + 1);
    std::swap(order[i], order[j]);
  }
  const std::size_t m = 1 + rng() % (n - 1);
  std::vector<std::size_t> ids(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  std::sort(ids.begin(), ids.end());
  return resolve_marked(torus, MarkingSpec::explicit_ids(std::move(ids)));
}

Ratio Ratio::of(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("ratio denominator must be positive");
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

Ratio operator+(const Ratio& lhs, const Ratio& rhs) {
  return Ratio::of(lhs.num * rhs.den + rhs.num * lhs.den, lhs.den * rhs.den);
}

std::size_t SegmentDecomposition::marked_count() const {
  std::size_t total = 0;
  for (const auto& r : marked_runs) total += r.length;
  return total;
}

std::size_t SegmentDecomposition::free_count() const {
  std::size_t total = 0;
  for (const auto& r : free_runs) total += r.length;
  return total;
}

std::vector<bool> SegmentDecomposition::reconstruct_mask() const {
  std::vector<bool> mask(vertex_count, false);
  for (const auto& r : marked_runs) {
    for (std::size_t k = 0; k < r.length; ++k) mask[(r.start + k) % vertex_count] = true;
  }
  return mask;
}

SegmentDecomposition decompose_1d(const TorusGraph& torus, const MarkedSet& marked) {
  if (torus.dim() != 1) {
    throw std::invalid_argument("run decomposition needs a one-dimensional torus, got d = " +
                                std::to_string(torus.dim()));
  }
  const std::size_t n = torus.vertex_count();
  const auto n64 = static_cast<std::int64_t>(n);
  SegmentDecomposition out;
  out.vertex_count = n;
  const std::size_t m = marked.count();

  if (m == n) {
    out.marked_runs.push_back({0, n, true});
  } else if (m == 0) {
    out.free_runs.push_back({0, n, true});
  } else {
    // Start at a boundary so that no run wraps past the starting point.
    std::size_t start = 0;
    while (marked.contains(start) == marked.contains((start + n - 1) % n)) ++start;
    std::size_t pos = 0;
    while (pos < n) {
      const std::size_t first = (start + pos) % n;
      const bool kind = marked.contains(first);
      std::size_t len = 0;
      while (pos + len < n && marked.contains((start + pos + len) % n) == kind) ++len;
      if (kind) {
        out.marked_runs.push_back({first, len, false});
      } else if (len == 1) {
        out.isolated.push_back(first);
      } else {
        out.free_runs.push_back({first, len, false});
      }
      pos += len;
    }
    std::sort(out.isolated.begin(), out.isolated.end());
  }

  out.c_marked = Ratio::of(static_cast<std::int64_t>(out.marked_count()), n64);
  out.c_free = Ratio::of(static_cast<std::int64_t>(out.free_count()), n64);
  out.c_isolated = Ratio::of(static_cast<std::int64_t>(out.isolated.size()), n64);
  for (const auto& r : out.free_runs) out.c_runs.push_back(Ratio::of(static_cast<std::int64_t>(r.length), n64));
  return out;
}

ModifiedGraph build_duplication(const TorusGraph& graph, const MarkedSet& marked) {
  if (marked.vertex_count() != graph.vertex_count()) {
    throw std::invalid_argument("marking does not belong to this graph");
  }
  ModifiedGraph out;
  out.vertex_count = graph.vertex_count();
  out.base_edge_count = graph.edge_count();
  out.base_degree.assign(graph.vertex_count(), graph.degree());
  out.marked = marked.mask();
  out.marked_count = marked.count();
  out.edges.reserve(2 * graph.edge_count() + marked.count());
  for (const auto& e : graph.edges()) {
    out.edges.push_back({e.a, e.b, false});
    out.edges.push_back({e.b, e.a, false});
  }
  for (std::size_t x : marked.ids()) out.edges.push_back({x, x, true});
  return out;
}

}  // namespace qwz
