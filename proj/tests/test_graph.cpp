#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "qwzeta/graph.hpp"

using namespace qwz;

TEST_CASE("torus sizes") {
  const auto c4 = build_torus(1, 4);
  CHECK(c4.vertex_count() == 4);
  CHECK(c4.edge_count() == 4);
  CHECK(c4.degree() == 2);

  const auto t = build_torus(2, 4);
  CHECK(t.vertex_count() == 16);
  CHECK(t.edge_count() == 32);
  CHECK(t.degree() == 4);

  CHECK_THROWS_AS(build_torus(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_torus(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_torus(3, 200, 1000), std::invalid_argument);
}

TEST_CASE("torus coordinates and neighbours") {
  const auto t = build_torus(3, 5);
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    CHECK(t.vertex_at(t.coordinates(v)) == v);
    const auto nb = t.neighbors(v);
    REQUIRE(nb.size() == 6);
    CHECK(std::set<std::size_t>(nb.begin(), nb.end()).size() == 6);
  }
  CHECK(t.coordinates(1) == std::vector<int>{0, 0, 1});
  CHECK(t.neighbors(0) == std::vector<std::size_t>{100, 25, 20, 5, 4, 1});

  // Every vertex appears in exactly 2d edges, with no repeated pair.
  std::vector<int> deg(t.vertex_count(), 0);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : t.edges()) {
    ++deg[e.a];
    ++deg[e.b];
    CHECK(seen.insert({std::min(e.a, e.b), std::max(e.a, e.b)}).second);
  }
  CHECK(std::all_of(deg.begin(), deg.end(), [](int k) { return k == 6; }));
}

TEST_CASE("marking examples") {
  const auto c4 = build_torus(1, 4);
  const auto cb = resolve_marked(c4, MarkingSpec::checkerboard());
  CHECK(cb.ids() == std::vector<std::size_t>{0, 2});
  CHECK(cb.count() == 2);

  const auto t = build_torus(2, 4);
  const auto half = resolve_marked(t, MarkingSpec::half_region());
  CHECK(half.count() == 8);
  for (std::size_t v : half.ids()) CHECK(t.coordinates(v)[1] <= 1);

  const auto c6 = build_torus(1, 6);
  CHECK(resolve_marked(c6, MarkingSpec::explicit_ids({1, 4})).count() == 2);
  CHECK(resolve_marked(c6, MarkingSpec::none()).count() == 0);
  CHECK(resolve_marked(c6, MarkingSpec::all()).count() == 6);
  CHECK(resolve_marked(c6, MarkingSpec::all()).unmarked_ids().empty());
}

TEST_CASE("marking errors") {
  const auto c5 = build_torus(1, 5);
  CHECK_THROWS_AS(resolve_marked(c5, MarkingSpec::checkerboard()), std::invalid_argument);
  CHECK_THROWS_AS(resolve_marked(c5, MarkingSpec::half_region()), std::invalid_argument);
  CHECK_THROWS_AS(resolve_marked(c5, MarkingSpec::explicit_ids({5})), std::invalid_argument);
  CHECK_THROWS_AS(resolve_marked(c5, MarkingSpec::explicit_ids({1, 1})), std::invalid_argument);
}

TEST_CASE("marking spec parse") {
  CHECK(MarkingSpec::parse("checkerboard").kind == MarkingKind::Checkerboard);
  CHECK(MarkingSpec::parse("half").kind == MarkingKind::HalfRegion);
  CHECK(MarkingSpec::parse("none").kind == MarkingKind::None);
  CHECK(MarkingSpec::parse("all").kind == MarkingKind::All);
  const auto e = MarkingSpec::parse("explicit:0,3");
  CHECK(e.kind == MarkingKind::Explicit);
  CHECK(e.ids == std::vector<std::size_t>{0, 3});
  CHECK(MarkingSpec::parse(e.to_string()).ids == e.ids);
  CHECK_THROWS_AS(MarkingSpec::parse("diagonal"), std::invalid_argument);
  CHECK_THROWS_AS(MarkingSpec::parse("explicit:1,x"), std::invalid_argument);
}

TEST_CASE("random marking is seeded and proper") {
  const auto t = build_torus(1, 9);
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 50; ++i) {
    const auto ma = random_marking(t, a);
    const auto mb = random_marking(t, b);
    CHECK(ma.ids() == mb.ids());
    CHECK(ma.count() >= 1);
    CHECK(ma.count() <= 8);
  }
}

TEST_CASE("ratio arithmetic") {
  CHECK(Ratio::of(2, 6) == Ratio{1, 3});
  CHECK(Ratio::of(0, 5) == Ratio{0, 1});
  CHECK(Ratio::of(1, 3) + Ratio::of(1, 6) == Ratio{1, 2});
  CHECK(Ratio::of(3, 4).value() == doctest::Approx(0.75));
}

TEST_CASE("decompose_1d examples") {
  SUBCASE("two free runs") {
    const auto t = build_torus(1, 6);
    const auto d = decompose_1d(t, resolve_marked(t, MarkingSpec::explicit_ids({0, 3})));
    REQUIRE(d.free_runs.size() == 2);
    CHECK(d.free_runs[0].start == 1);
    CHECK(d.free_runs[0].length == 2);
    CHECK(d.free_runs[1].start == 4);
    CHECK(d.isolated.empty());
    CHECK(d.c_marked == Ratio{1, 3});
    CHECK(d.c_free == Ratio{2, 3});
    CHECK(d.c_isolated == Ratio{0, 1});
  }
  SUBCASE("checkerboard gives isolated vertices") {
    const auto t = build_torus(1, 4);
    const auto d = decompose_1d(t, resolve_marked(t, MarkingSpec::checkerboard()));
    CHECK(d.free_runs.empty());
    CHECK(d.isolated == std::vector<std::size_t>{1, 3});
    CHECK(d.c_marked == Ratio{1, 2});
    CHECK(d.c_isolated == Ratio{1, 2});
  }
  SUBCASE("half region") {
    const auto t = build_torus(1, 8);
    const auto d = decompose_1d(t, resolve_marked(t, MarkingSpec::explicit_ids({0, 1, 2, 3})));
    REQUIRE(d.free_runs.size() == 1);
    CHECK(d.free_runs[0].start == 4);
    CHECK(d.free_runs[0].length == 4);
    CHECK(d.c_free == Ratio{1, 2});
  }
  SUBCASE("wrapping run") {
    const auto t = build_torus(1, 7);
    const auto d = decompose_1d(t, resolve_marked(t, MarkingSpec::explicit_ids({2, 3})));
    REQUIRE(d.free_runs.size() == 1);
    CHECK(d.free_runs[0].start == 4);
    CHECK(d.free_runs[0].length == 5);
    REQUIRE(d.marked_runs.size() == 1);
    CHECK(d.marked_runs[0].length == 2);
  }
  SUBCASE("degenerate markings") {
    const auto t = build_torus(1, 5);
    const auto none = decompose_1d(t, resolve_marked(t, MarkingSpec::none()));
    REQUIRE(none.free_runs.size() == 1);
    CHECK(none.free_runs[0].cyclic);
    CHECK(none.c_free == Ratio{1, 1});
    const auto all = decompose_1d(t, resolve_marked(t, MarkingSpec::all()));
    REQUIRE(all.marked_runs.size() == 1);
    CHECK(all.marked_runs[0].cyclic);
    CHECK(all.c_marked == Ratio{1, 1});
  }
  CHECK_THROWS_AS(decompose_1d(build_torus(2, 4), resolve_marked(build_torus(2, 4), MarkingSpec::none())),
                  std::invalid_argument);
}

TEST_CASE("decompose_1d round trip on random markings") {
  std::mt19937_64 rng(2024);
  for (int side = 3; side <= 16; ++side) {
    const auto t = build_torus(1, side);
    for (int trial = 0; trial < 40; ++trial) {
      const auto marked = random_marking(t, rng);
      const auto d = decompose_1d(t, marked);
      CHECK(d.reconstruct_mask() == marked.mask());
      CHECK(d.marked_count() == marked.count());
      CHECK(d.marked_count() + d.free_count() + d.isolated.size() == t.vertex_count());
      CHECK(d.c_marked + d.c_free + d.c_isolated == Ratio{1, 1});
      Ratio runs{0, 1};
      for (const auto& r : d.c_runs) runs = runs + r;
      CHECK(runs == d.c_free);
      for (const auto& r : d.free_runs) CHECK(r.length >= 2);
      for (std::size_t v : d.isolated) {
        CHECK(!marked.contains(v));
        CHECK(marked.contains((v + 1) % side));
        CHECK(marked.contains((v + side - 1) % side));
      }
    }
  }
}

TEST_CASE("duplication graph edge counts") {
  const auto c4 = build_torus(1, 4);
  CHECK(build_duplication(c4, resolve_marked(c4, MarkingSpec::none())).edge_count() == 8);
  CHECK(build_duplication(c4, resolve_marked(c4, MarkingSpec::checkerboard())).edge_count() == 10);
  const auto t = build_torus(2, 4);
  const auto gm = build_duplication(t, resolve_marked(t, MarkingSpec::checkerboard()));
  CHECK(gm.edge_count() == 72);
  CHECK(gm.base_edge_count == 32);
  CHECK(gm.marked_count == 8);
}

TEST_CASE("duplication graph layout") {
  const auto c4 = build_torus(1, 4);
  const auto gm = build_duplication(c4, resolve_marked(c4, MarkingSpec::explicit_ids({0, 2})));
  // Base edge {0,1}: (0, 1') then (1, 0').
  CHECK(gm.edges[0].x == 0);
  CHECK(gm.edges[0].y == 1);
  CHECK(gm.edges[1].x == 1);
  CHECK(gm.edges[1].y == 0);
  CHECK(!gm.edges[7].self_pair);
  CHECK(gm.edges[8].self_pair);
  CHECK(gm.edges[8].x == 0);
  CHECK(gm.edges[8].y == 0);
  CHECK(gm.edges[9].x == 2);

  // Bipartite double: each X vertex has d_G + [marked] incident edges, same for Y.
  std::vector<int> dx(4, 0), dy(4, 0);
  for (const auto& e : gm.edges) {
    ++dx[e.x];
    ++dy[e.y];
  }
  CHECK(dx == std::vector<int>{3, 2, 3, 2});
  CHECK(dy == dx);
}
