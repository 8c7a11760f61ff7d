#include "qwzeta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qwzeta/parallel.hpp"

namespace qwz {

int resolve_width(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QWZETA_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

template <class T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  DenseMatrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      const auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

template <class T>
DenseMatrix<T> transpose(const DenseMatrix<T>& a) {
  DenseMatrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

template RealMatrix multiply(const RealMatrix&, const RealMatrix&);
template ComplexMatrix multiply(const ComplexMatrix&, const ComplexMatrix&);
template RealMatrix transpose(const RealMatrix&);
template ComplexMatrix transpose(const ComplexMatrix&);

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  }
  return out;
}

namespace {

template <class T>
double max_abs_diff_impl(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

template <class T>
double max_abs_entry_impl(const DenseMatrix<T>& a) {
  double worst = 0.0;
  for (const auto& v : a.data()) worst = std::max(worst, std::abs(v));
  return worst;
}

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phase = std::fmod(phase, two_pi);
  if (phase > std::numbers::pi) phase -= two_pi;
  if (phase <= -std::numbers::pi) phase += two_pi;
  return phase;
}

}  // namespace

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) { return max_abs_diff_impl(a, b); }
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs_diff_impl(a, b); }
double max_abs_entry(const RealMatrix& a) { return max_abs_entry_impl(a); }
double max_abs_entry(const ComplexMatrix& a) { return max_abs_entry_impl(a); }

Complex LogDet::value() const {
  if (singular) return {0.0, 0.0};
  return std::polar(std::exp(log_modulus), phase);
}

LogDet lu_logdet(ComplexMatrix a) {
  if (!a.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  LogDet out;
  double phase = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) {
      out.singular = true;
      out.log_modulus = -std::numeric_limits<double>::infinity();
      out.phase = 0.0;
      return out;
    }
    if (pivot != col) {
      std::swap_ranges(a.row(col).begin(), a.row(col).end(), a.row(pivot).begin());
      phase += std::numbers::pi;
    }
    const Complex p = a(col, col);
    out.log_modulus += std::log(best);
    phase += std::arg(p);
    const auto pivot_row = a.row(col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = a(r, col) / p;
      if (factor == Complex{}) continue;
      auto target = a.row(r);
      for (std::size_t c = col + 1; c < n; ++c) target[c] -= factor * pivot_row[c];
    }
  }
  out.phase = wrap_phase(phase);
  return out;
}

LogDet lu_logdet(const RealMatrix& a) { return lu_logdet(to_complex(a)); }

std::vector<LogDet> lu_logdet_batch(std::span<const ComplexMatrix> batch, int width) {
  std::vector<LogDet> out(batch.size());
  parallel_for(batch.size(), resolve_width(width), [&](std::size_t i) { out[i] = lu_logdet(batch[i]); });
  return out;
}

std::vector<double> symmetric_eigenvalues(RealMatrix a) {
  if (!a.square()) throw std::invalid_argument("eigenvalues of a non-square matrix");
  const std::size_t n = a.rows();
  double frob = 0.0;
  for (double v : a.data()) frob += v * v;
  frob = std::sqrt(frob);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(frob, 1.0)) {
        throw std::invalid_argument("symmetric_eigenvalues: input is not symmetric");
      }
    }
  }

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    }
    return std::sqrt(s);
  };

  const double target = 1e-13 * frob;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace qwz
