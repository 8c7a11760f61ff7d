#pragma once

// Matrices of the search walk: the edge-vertex incidences K and L, the time
// evolution W' = (2LL^T - I)(2KK^T - I), and the Dirichlet random walk P_M.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "qwzeta/graph.hpp"
#include "qwzeta/linalg.hpp"

namespace qwz {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

class SparseRealMatrix {
 public:
  SparseRealMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  /// Sorted by (row, col), no duplicates.
  const std::vector<Triplet>& entries() const { return entries_; }

  RealMatrix to_dense() const;
  static SparseRealMatrix from_dense(const RealMatrix& dense);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Triplet> entries_;
};

/// `rows cols nnz` header, then one `row col value` line per entry, values
/// printed with 17 significant digits.
void write_triplets(std::ostream& out, const SparseRealMatrix& m);
SparseRealMatrix read_triplets(std::istream& in);

/// Column x carries 1/sqrt(d_G(x)) on each E' edge at X-vertex x when x is
/// unmarked, and a single 1 on the E_2 edge {x, x'} when x is marked.
SparseRealMatrix build_K(const ModifiedGraph& gm);
/// Same construction over the Y side.
SparseRealMatrix build_L(const ModifiedGraph& gm);

/// Dense W' of dimension 2*epsilon + m. Real orthogonal; stored complex so it
/// feeds det(I - uW') directly.
ComplexMatrix build_time_evolution(const ModifiedGraph& gm);

/// Matrix-free product out = W' * in.
void apply_time_evolution(const ModifiedGraph& gm, std::span<const Complex> in, std::span<Complex> out);

/// Random walk restricted to the unmarked vertices: (P_M)_{v,x} = 1/d_G(x)
/// when v ~ x. vertex_of_row[i] is the base vertex behind row/column i.
struct DirichletMatrix {
  RealMatrix values;
  std::vector<std::size_t> vertex_of_row;

  std::size_t size() const { return vertex_of_row.size(); }
};

DirichletMatrix build_dirichlet(const TorusGraph& graph, const MarkedSet& marked);

/// Path adjacency D_n (ones on the first off-diagonals).
RealMatrix path_adjacency(std::size_t n);
RealMatrix torus_adjacency(const TorusGraph& graph);

}  // namespace qwz
