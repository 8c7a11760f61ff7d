#include "qwzeta/operators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qwz {

SparseRealMatrix::SparseRealMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& t = entries_[i];
    if (t.row >= rows_ || t.col >= cols_) throw std::invalid_argument("triplet outside declared shape");
    if (i > 0 && entries_[i - 1].row == t.row && entries_[i - 1].col == t.col) {
      throw std::invalid_argument("duplicate triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) + ")");
    }
  }
}

RealMatrix SparseRealMatrix::to_dense() const {
  RealMatrix out(rows_, cols_);
  for (const auto& t : entries_) out(t.row, t.col) = t.value;
  return out;
}

SparseRealMatrix SparseRealMatrix::from_dense(const RealMatrix& dense) {
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < dense.rows(); ++i) {
    for (std::size_t j = 0; j < dense.cols(); ++j) {
      if (dense(i, j) != 0.0) entries.push_back({i, j, dense(i, j)});
    }
  }
  return SparseRealMatrix(dense.rows(), dense.cols(), std::move(entries));
}

void write_triplets(std::ostream& out, const SparseRealMatrix& m) {
  const auto old_precision = out.precision(17);
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const auto& t : m.entries()) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
  out.precision(old_precision);
}

SparseRealMatrix read_triplets(std::istream& in) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(in >> rows >> cols >> nnz)) throw std::invalid_argument("triplet header must be 'rows cols nnz'");
  std::vector<Triplet> entries(nnz);
  for (auto& t : entries) {
    if (!(in >> t.row >> t.col >> t.value)) throw std::invalid_argument("truncated triplet body");
  }
  return SparseRealMatrix(rows, cols, std::move(entries));
}

namespace {

// Incidence between edges and one side (X or Y) of the duplication graph.
SparseRealMatrix build_incidence(const ModifiedGraph& gm, bool y_side) {
  std::vector<Triplet> entries;
  entries.reserve(gm.edge_count());
  for (std::size_t e = 0; e < gm.edges.size(); ++e) {
    const auto& edge = gm.edges[e];
    const std::size_t v = y_side ? edge.y : edge.x;
    if (gm.marked[v]) {
      if (edge.self_pair) entries.push_back({e, v, 1.0});
    } else {
      entries.push_back({e, v, 1.0 / std::sqrt(static_cast<double>(gm.base_degree[v]))});
    }
  }
  return SparseRealMatrix(gm.edge_count(), gm.vertex_count, std::move(entries));
}

// Column-wise view of an incidence matrix whose rows have at most one entry.
struct Incidence {
  std::vector<std::ptrdiff_t> col_of_row;
  std::vector<double> value_of_row;
  std::vector<std::vector<std::size_t>> rows_of_col;

  explicit Incidence(const SparseRealMatrix& m)
      : col_of_row(m.rows(), -1), value_of_row(m.rows(), 0.0), rows_of_col(m.cols()) {
    for (const auto& t : m.entries()) {
      if (col_of_row[t.row] >= 0) throw std::logic_error("incidence row with two entries");
      col_of_row[t.row] = static_cast<std::ptrdiff_t>(t.col);
      value_of_row[t.row] = t.value;
      rows_of_col[t.col].push_back(t.row);
    }
  }

  // y += scale * (2 M M^T - I) x
  template <class T>
  void reflect_add(std::span<const T> x, T scale, std::span<T> y) const {
    std::vector<T> proj(rows_of_col.size(), T{});
    for (std::size_t r = 0; r < col_of_row.size(); ++r) {
      if (col_of_row[r] >= 0) proj[static_cast<std::size_t>(col_of_row[r])] += value_of_row[r] * x[r];
    }
    for (std::size_t r = 0; r < col_of_row.size(); ++r) {
      T v = -x[r];
      if (col_of_row[r] >= 0) v += 2.0 * value_of_row[r] * proj[static_cast<std::size_t>(col_of_row[r])];
      y[r] += scale * v;
    }
  }

  // row_out += scale * (row e of 2 M M^T - I)
  void add_reflection_row(std::size_t e, double scale, std::span<Complex> row_out) const {
    row_out[e] -= scale;
    const auto col = col_of_row[e];
    if (col < 0) return;
    const double a = 2.0 * scale * value_of_row[e];
    for (std::size_t f : rows_of_col[static_cast<std::size_t>(col)]) row_out[f] += a * value_of_row[f];
  }
};

}  // namespace

SparseRealMatrix build_K(const ModifiedGraph& gm) { return build_incidence(gm, false); }
SparseRealMatrix build_L(const ModifiedGraph& gm) { return build_incidence(gm, true); }

ComplexMatrix build_time_evolution(const ModifiedGraph& gm) {
  const Incidence k(build_K(gm));
  const Incidence l(build_L(gm));
  const std::size_t n = gm.edge_count();
  ComplexMatrix w(n, n);
  // Row e of R_L R_K = sum_g R_L(e, g) * (row g of R_K), where R_L(e, .) is
  // -delta_e plus the rank-one part through the Y-vertex of e.
  for (std::size_t e = 0; e < n; ++e) {
    auto row = w.row(e);
    k.add_reflection_row(e, -1.0, row);
    const auto col = l.col_of_row[e];
    if (col < 0) continue;
    const double a = 2.0 * l.value_of_row[e];
    for (std::size_t g : l.rows_of_col[static_cast<std::size_t>(col)]) {
      k.add_reflection_row(g, a * l.value_of_row[g], row);
    }
  }
  return w;
}

void apply_time_evolution(const ModifiedGraph& gm, std::span<const Complex> in, std::span<Complex> out) {
  const std::size_t n = gm.edge_count();
  if (in.size() != n || out.size() != n) throw std::invalid_argument("vector length must equal 2*epsilon + m");
  const Incidence k(build_K(gm));
  const Incidence l(build_L(gm));
  std::vector<Complex> mid(n, Complex{});
  k.reflect_add<Complex>(in, Complex{1.0}, mid);
  std::fill(out.begin(), out.end(), Complex{});
  l.reflect_add<Complex>(mid, Complex{1.0}, out);
}

DirichletMatrix build_dirichlet(const TorusGraph& graph, const MarkedSet& marked) {
  DirichletMatrix out;
  out.vertex_of_row = marked.unmarked_ids();
  const std::size_t size = out.vertex_of_row.size();
  std::vector<std::ptrdiff_t> row_of_vertex(graph.vertex_count(), -1);
  for (std::size_t i = 0; i < size; ++i) row_of_vertex[out.vertex_of_row[i]] = static_cast<std::ptrdiff_t>(i);
  out.values = RealMatrix(size, size);
  const double step = 1.0 / static_cast<double>(graph.degree());
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t nb : graph.neighbors(out.vertex_of_row[i])) {
      const auto j = row_of_vertex[nb];
      if (j >= 0) out.values(i, static_cast<std::size_t>(j)) += step;
    }
  }
  return out;
}

RealMatrix path_adjacency(std::size_t n) {
  RealMatrix out(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out(i, i + 1) = 1.0;
    out(i + 1, i) = 1.0;
  }
  return out;
}

RealMatrix torus_adjacency(const TorusGraph& graph) {
  RealMatrix out(graph.vertex_count(), graph.vertex_count());
  for (const auto& e : graph.edges()) {
    out(e.a, e.b) += 1.0;
    out(e.b, e.a) += 1.0;
  }
  return out;
}

}  // namespace qwz
