#include "qwzeta/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qwz {

namespace {

// Calls fn(k) for every multi-index k in [0, extent)^dims, last index fastest.
template <class Fn>
void for_each_index(int dims, std::size_t extent, Fn&& fn) {
  std::vector<std::size_t> k(static_cast<std::size_t>(dims), 0);
  while (true) {
    fn(k);
    int axis = dims - 1;
    while (axis >= 0 && ++k[axis] == extent) k[axis--] = 0;
    if (axis < 0) return;
  }
}

}  // namespace

std::vector<std::pair<double, std::size_t>> SpectrumList::merged(double tol) const {
  std::vector<std::pair<double, std::size_t>> out;
  for (double v : values) {
    if (!out.empty() && std::abs(v - out.back().first) <= tol) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
    }
  }
  return out;
}

SpectrumList make_spectrum(std::vector<double> values, SpectrumProvenance provenance) {
  std::sort(values.begin(), values.end());
  return {std::move(values), provenance};
}

SpectrumList path_spectrum(std::size_t n) {
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    values.push_back(2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n + 1)));
  }
  return make_spectrum(std::move(values), SpectrumProvenance::ClosedForm);
}

SpectrumList torus_adjacency_spectrum(int dim, int side) {
  if (dim < 1 || side < 1) throw std::invalid_argument("torus spectrum needs d >= 1 and L >= 1");
  std::vector<double> angle_cos(static_cast<std::size_t>(side));
  for (int k = 0; k < side; ++k) angle_cos[k] = std::cos(2.0 * std::numbers::pi * k / side);
  std::vector<double> values;
  for_each_index(dim, static_cast<std::size_t>(side), [&](const std::vector<std::size_t>& k) {
    double s = 0.0;
    for (std::size_t kj : k) s += angle_cos[kj];
    values.push_back(2.0 * s);
  });
  return make_spectrum(std::move(values), SpectrumProvenance::ClosedForm);
}

SpectrumList case2_dirichlet_spectrum(int dim, int half_side) {
  if (dim < 1 || half_side < 1) throw std::invalid_argument("case2 spectrum needs d >= 1 and N >= 1");
  const double n = half_side;
  std::vector<double> periodic(2 * static_cast<std::size_t>(half_side));
  for (std::size_t k = 0; k < periodic.size(); ++k) periodic[k] = std::cos(static_cast<double>(k) * std::numbers::pi / n);
  std::vector<double> layered(static_cast<std::size_t>(half_side));
  for (std::size_t k = 0; k < layered.size(); ++k) {
    layered[k] = std::cos(static_cast<double>(k + 1) * std::numbers::pi / (n + 1.0));
  }
  std::vector<double> values;
  auto add = [&](double periodic_sum) {
    for (double c : layered) values.push_back((periodic_sum + c) / dim);
  };
  if (dim == 1) {
    add(0.0);
  } else {
    for_each_index(dim - 1, periodic.size(), [&](const std::vector<std::size_t>& k) {
      double s = 0.0;
      for (std::size_t kj : k) s += periodic[kj];
      add(s);
    });
  }
  return make_spectrum(std::move(values), SpectrumProvenance::ClosedForm);
}

double max_sorted_residual(const SpectrumList& a, const SpectrumList& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("spectra differ in size: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

}  // namespace qwz
