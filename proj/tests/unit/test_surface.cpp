#include <doctest.h>

#include <trajtopo/double_cover.hpp>
#include <trajtopo/error.hpp>
#include <trajtopo/surface.hpp>

#include "helpers.hpp"

using namespace trajtopo;
using namespace trajtopo::testing;

TEST_CASE("octahedron invariants") {
  auto s = octahedron();
  CHECK(s->V == 6);
  CHECK(s->E() == 12);
  CHECK(s->F() == 8);
  CHECK(s->euler() == 2);
  CHECK(s->genus() == 0);
  CHECK(s->first_betti() == 0);
  CHECK(s->closed());
  CHECK(s->simple);
  // every edge has two incident faces
  for (const auto &ef : s->edge_faces) {
    CHECK(ef[0] >= 0);
    CHECK(ef[1] >= 0);
  }
  // 4-regular
  for (const auto &ne : s->node_edges)
    CHECK(ne.size() == 4);
  CHECK(s->edge_between(0, 1) == s->edge_between(1, 0));
  CHECK(s->find_edge(0, 5) == -1);
  CHECK_THROWS_AS((void)s->edge_between(0, 5), Error);
}

TEST_CASE("square annulus invariants") {
  auto s = square_annulus();
  CHECK(s->V == 16);
  CHECK(s->F() == 16);
  CHECK(s->euler() == 0);
  CHECK(s->boundary_loops.size() == 2);
  CHECK(s->hole_loops.size() == 1);
  CHECK(s->outer_loop >= 0);
  CHECK(s->genus() == 0);
  CHECK(s->first_betti() == 1);
  auto holes = s->hole_loop_nodes();
  REQUIRE(holes.size() == 1);
  CHECK(holes[0].size() == 4);
}

TEST_CASE("inconsistent face orientation is rejected") {
  auto faces = std::vector<std::array<int, 3>>{
      {0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
      {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {1, 5, 4}}; // last face flipped
  CHECK_THROWS_AS((void)build_surface(std::move(faces)), Error);
}

TEST_CASE("non-manifold edge is rejected") {
  // three faces sharing edge (0,1)
  auto faces = std::vector<std::array<int, 3>>{{0, 1, 2}, {1, 0, 3}, {0, 1, 4}};
  CHECK_THROWS_AS((void)build_surface(std::move(faces)), Error);
}

TEST_CASE("degenerate and duplicate faces are rejected") {
  CHECK_THROWS_AS(
      (void)build_surface(std::vector<std::array<int, 3>>{{0, 1, 1}}), Error);
  CHECK_THROWS_AS((void)build_surface(std::vector<std::array<int, 3>>{
                      {0, 1, 2}, {0, 1, 2}}),
                  Error);
}

TEST_CASE("double cover of the annulus is a closed torus") {
  auto s = square_annulus();
  auto m = double_cover(s);
  CHECK(m.cover->closed());
  CHECK(m.cover->euler() == 2 * s->euler()); // 0
  CHECK(m.cover->genus() == 1);
  CHECK(m.cover->first_betti() == 2);
  // sheet-0 prefix preserves original ids
  CHECK(m.cover->V == 2 * s->V - 12 - 4); // boundary nodes shared once
  for (int v = 0; v < s->V; ++v)
    CHECK(m.node_map[v][0] == v);
  // the involution is its own inverse and fixes exactly boundary nodes
  int fixed = 0;
  for (int v = 0; v < m.cover->V; ++v) {
    CHECK(m.node_involution[m.node_involution[v]] == v);
    if (m.node_involution[v] == v)
      ++fixed;
  }
  CHECK(fixed == 12 + 4);
}

TEST_CASE("double cover of a closed surface errors") {
  CHECK_THROWS_AS((void)double_cover(octahedron()), Error);
}

TEST_CASE("cochain antisymmetric reads") {
  auto s = octahedron();
  Cochain1 w(s);
  w.set_directed(2, 0, 1.5);
  CHECK(w.on(2, 0) == doctest::Approx(1.5));
  CHECK(w.on(0, 2) == doctest::Approx(-1.5));
  CHECK(w.max_abs() == doctest::Approx(1.5));
}
