#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qwz {

using Complex = std::complex<double>;

/// Row-major dense matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = T{1};
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<Complex>;

template <class T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b);
template <class T>
DenseMatrix<T> transpose(const DenseMatrix<T>& a);

RealMatrix kron(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix to_complex(const RealMatrix& a);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const RealMatrix& a, const RealMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_entry(const RealMatrix& a);
double max_abs_entry(const ComplexMatrix& a);

/// log det A = log_modulus + i * phase, phase in (-pi, pi].
struct LogDet {
  double log_modulus = 0.0;
  double phase = 0.0;
  bool singular = false;

  Complex value() const;
};

/// LU with partial pivoting. An exactly zero pivot sets `singular` and
/// log_modulus = -inf rather than throwing.
LogDet lu_logdet(ComplexMatrix a);
LogDet lu_logdet(const RealMatrix& a);

/// Runs lu_logdet over a batch with up to `width` threads; output order
/// matches input order.
std::vector<LogDet> lu_logdet_batch(std::span<const ComplexMatrix> batch, int width);

/// Ascending eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
/// Throws std::invalid_argument if the input is not symmetric to 1e-12 (relative).
std::vector<double> symmetric_eigenvalues(RealMatrix a);

}  // namespace qwz
