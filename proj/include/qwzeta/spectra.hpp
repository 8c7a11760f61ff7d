#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace qwz {

enum class SpectrumProvenance { ClosedForm, Numeric };

/// Eigenvalue multiset stored as an ascending list, one entry per multiplicity.
struct SpectrumList {
  std::vector<double> values;
  SpectrumProvenance provenance = SpectrumProvenance::ClosedForm;

  std::size_t size() const { return values.size(); }
  /// Groups values closer than `tol` into (value, multiplicity) pairs.
  std::vector<std::pair<double, std::size_t>> merged(double tol = 1e-12) const;
};

SpectrumList make_spectrum(std::vector<double> values, SpectrumProvenance provenance);

/// {2 cos(k pi / (n + 1)) : k = 1..n}; empty for n = 0.
SpectrumList path_spectrum(std::size_t n);

/// {2 sum_j cos(2 pi (k_j - 1) / L) : k_j = 1..L} for T_L^d.
SpectrumList torus_adjacency_spectrum(int dim, int side);

/// Dirichlet walk on the half-marked torus T_{2N}^d:
/// {(1/d)(sum_{j<d} cos((k_j - 1) pi / N) + cos(k_d pi / (N + 1)))},
/// k_1..k_{d-1} in 1..2N, k_d in 1..N.
SpectrumList case2_dirichlet_spectrum(int dim, int half_side);

/// Largest |a_i - b_i| between two sorted spectra of equal size.
double max_sorted_residual(const SpectrumList& a, const SpectrumList& b);

}  // namespace qwz
