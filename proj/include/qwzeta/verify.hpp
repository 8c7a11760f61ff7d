#pragma once

// Verification suites behind `qwzeta verify`. Each suite compares two
// independent evaluation routes and records the worst residual per identity.

#include <cstdint>
#include <string>
#include <vector>

#include "qwzeta/graph.hpp"
#include "qwzeta/linalg.hpp"

namespace qwz {

struct Check {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool pass() const;
  /// Versioned JSON document (`schema: 1`).
  std::string to_json() const;
};

struct VerifyOptions {
  std::string suite = "all";
  int dim = 1;
  std::vector<int> sides;  // empty: suite defaults
  std::vector<Complex> us = {0.1, -0.1, 0.5, -0.5, 0.9, Complex(0.3, 0.2)};
  int random_markings = -1;  // -1: 20 for d = 1, 5 otherwise
  std::uint64_t seed = 7;
  double det_tolerance = 1e-9;
  double quad_tolerance = 1e-6;
  std::size_t max_dimension = 4096;  // cap on 2*epsilon + m
  std::size_t points = 0;            // 0: module defaults
  int width = 1;
};

inline const std::vector<std::string> kVerifySuites = {"prop22", "thm31", "case1",  "case2",  "structure",
                                                       "spectra", "limits", "remarks", "jensen", "cor51", "all"};

/// Throws std::invalid_argument for an unknown suite or a size budget overrun.
VerifyReport run_verify(const VerifyOptions& options);

/// Relative difference |a - b| / |a|, or |a - b| when a = 0.
double relative_difference(Complex a, Complex b);

}  // namespace qwz
