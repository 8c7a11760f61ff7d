#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "qwzeta/operators.hpp"

using namespace qwz;

namespace {

ModifiedGraph cycle4(std::vector<std::size_t> marks) {
  const auto t = build_torus(1, 4);
  return build_duplication(t, resolve_marked(t, MarkingSpec::explicit_ids(std::move(marks))));
}

std::vector<Triplet> column(const SparseRealMatrix& m, std::size_t c) {
  std::vector<Triplet> out;
  for (const auto& t : m.entries())
    if (t.col == c) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("K and L on the unmarked cycle") {
  const auto gm = cycle4({});
  const auto k = build_K(gm);
  const auto l = build_L(gm);
  CHECK(k.rows() == 8);
  CHECK(k.cols() == 4);
  for (std::size_t c = 0; c < 4; ++c) {
    for (const auto* m : {&k, &l}) {
      const auto col = column(*m, c);
      REQUIRE(col.size() == 2);
      for (const auto& t : col) CHECK(t.value == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
  }
}

TEST_CASE("marked column of K and L sits on the self-pair edge") {
  const auto gm = cycle4({0});
  CHECK(gm.edge_count() == 9);
  for (const auto& m : {build_K(gm), build_L(gm)}) {
    const auto col = column(m, 0);
    REQUIRE(col.size() == 1);
    CHECK(col[0].row == 8);
    CHECK(col[0].value == 1.0);
  }
}

TEST_CASE("isometries and orthogonality on random markings") {
  std::mt19937_64 rng(99);
  for (int d : {1, 2}) {
    for (int side : {3, 4, 5}) {
      const auto t = build_torus(d, side);
      for (int trial = 0; trial < 4; ++trial) {
        const auto gm = build_duplication(t, random_marking(t, rng));
        const auto k = build_K(gm).to_dense();
        const auto l = build_L(gm).to_dense();
        const auto id = RealMatrix::identity(t.vertex_count());
        CHECK(max_abs_diff(multiply(transpose(k), k), id) < 1e-12);
        CHECK(max_abs_diff(multiply(transpose(l), l), id) < 1e-12);
        const auto w = build_time_evolution(gm);
        CHECK(max_abs_diff(multiply(w, transpose(w)), ComplexMatrix::identity(w.rows())) < 1e-12);
        // Real orthogonal: imaginary parts vanish.
        for (auto z : w.data()) CHECK(z.imag() == 0.0);
      }
    }
  }
}

TEST_CASE("time evolution equals the product of reflections") {
  const auto t = build_torus(1, 5);
  const auto gm = build_duplication(t, resolve_marked(t, MarkingSpec::explicit_ids({1, 2})));
  const auto k = build_K(gm).to_dense();
  const auto l = build_L(gm).to_dense();
  const std::size_t n = gm.edge_count();
  auto reflect = [&](const RealMatrix& m) {
    auto r = multiply(m, transpose(m));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) = 2.0 * r(i, j) - (i == j ? 1.0 : 0.0);
    return r;
  };
  const auto expected = to_complex(multiply(reflect(l), reflect(k)));
  CHECK(max_abs_diff(build_time_evolution(gm), expected) < 1e-14);
}

TEST_CASE("matrix-free application matches the dense matrix") {
  const auto t = build_torus(2, 3);
  std::mt19937_64 rng(1);
  const auto gm = build_duplication(t, random_marking(t, rng));
  const auto w = build_time_evolution(gm);
  std::normal_distribution<double> g;
  std::vector<Complex> x(gm.edge_count()), y(gm.edge_count());
  for (auto& v : x) v = {g(rng), g(rng)};
  apply_time_evolution(gm, x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Complex expect{};
    for (std::size_t j = 0; j < x.size(); ++j) expect += w(i, j) * x[j];
    CHECK(std::abs(expect - y[i]) < 1e-13);
  }
  std::vector<Complex> short_vec(3);
  CHECK_THROWS_AS(apply_time_evolution(gm, short_vec, y), std::invalid_argument);
}

TEST_CASE("fully marked walk is block diagonal with +-1") {
  const auto gm = cycle4({0, 1, 2, 3});
  const auto w = build_time_evolution(gm);
  // Unmarked-incidence-free rows: both reflections are -1 on E', +1 on E_2.
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      const double expect = i != j ? 0.0 : 1.0;
      CHECK(w(i, j).real() == expect);
    }
  }
}

TEST_CASE("dirichlet matrix") {
  SUBCASE("two free runs") {
    const auto t = build_torus(1, 6);
    const auto p = build_dirichlet(t, resolve_marked(t, MarkingSpec::explicit_ids({0, 3})));
    CHECK(p.vertex_of_row == std::vector<std::size_t>{1, 2, 4, 5});
    RealMatrix expect(4, 4);
    expect(0, 1) = expect(1, 0) = expect(2, 3) = expect(3, 2) = 0.5;
    CHECK(max_abs_diff(p.values, expect) == 0.0);
  }
  SUBCASE("checkerboard is zero") {
    const auto t = build_torus(2, 4);
    const auto p = build_dirichlet(t, resolve_marked(t, MarkingSpec::checkerboard()));
    CHECK(p.size() == 8);
    CHECK(max_abs_entry(p.values) == 0.0);
  }
  SUBCASE("fully marked is empty") {
    const auto t = build_torus(1, 4);
    CHECK(build_dirichlet(t, resolve_marked(t, MarkingSpec::all())).size() == 0);
  }
  SUBCASE("half region matches the Kronecker structure") {
    const auto t = build_torus(2, 4);
    const auto p = build_dirichlet(t, resolve_marked(t, MarkingSpec::half_region()));
    // Free layers x_2 in {2,3}: rows ordered (x_1, x_2) with x_2 fastest, so the
    // matrix is (1/4)(A(C_4) (x) I_2 + I_4 (x) D_2).
    auto a = kron(torus_adjacency(build_torus(1, 4)), RealMatrix::identity(2));
    const auto b = kron(RealMatrix::identity(4), path_adjacency(2));
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) a(i, j) = 0.25 * (a(i, j) + b(i, j));
    CHECK(max_abs_diff(p.values, a) < 1e-15);
  }
}

TEST_CASE("adjacency matrices") {
  const auto a = torus_adjacency(build_torus(2, 3));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      row += a(i, j);
      CHECK(a(i, j) == a(j, i));
    }
    CHECK(row == 4.0);
  }
  CHECK(path_adjacency(1)(0, 0) == 0.0);
}

TEST_CASE("sparse matrix validation") {
  CHECK_THROWS_AS(SparseRealMatrix(2, 2, {{2, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseRealMatrix(2, 2, {{0, 0, 1.0}, {0, 0, 2.0}}), std::invalid_argument);
  const SparseRealMatrix m(2, 3, {{1, 2, 3.0}, {0, 0, 1.0}});
  CHECK(m.entries()[0].row == 0);
  CHECK(m.to_dense()(1, 2) == 3.0);
  CHECK(SparseRealMatrix::from_dense(m.to_dense()).nnz() == 2);
}

TEST_CASE("triplet round trip") {
  const auto k = build_K(cycle4({0, 2}));
  std::stringstream buf;
  write_triplets(buf, k);
  const std::string text = buf.str();
  CHECK(text.rfind("10 4 ", 0) == 0);
  const auto back = read_triplets(buf);
  CHECK(back.rows() == k.rows());
  CHECK(back.cols() == k.cols());
  CHECK(max_abs_diff(back.to_dense(), k.to_dense()) == 0.0);

  std::istringstream bad("3 3");
  CHECK_THROWS_AS(read_triplets(bad), std::invalid_argument);
  std::istringstream truncated("3 3 2\n0 0 1\n");
  CHECK_THROWS_AS(read_triplets(truncated), std::invalid_argument);
}
