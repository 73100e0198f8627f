#include <doctest.h>

#include <trajtopo/classify.hpp>
#include <trajtopo/netgen.hpp>
#include <trajtopo/oracle.hpp>

#include "helpers.hpp"

using namespace trajtopo;
using namespace trajtopo::testing;

TEST_CASE("direct solve reassembles and is harmonic") {
  auto s = square_annulus();
  auto w = random_one_form(s, 5);
  auto r = oracle::direct_solve(s, w);
  REQUIRE(r.converged());
  for (int e = 0; e < s->E(); ++e)
    CHECK(w[e] ==
          doctest::Approx(r.df[e] + r.dg[e] + r.h[e]).epsilon(1e-10).scale(1));
  auto res = residual_norms(r.h);
  CHECK(res.dh_max < 1e-9);
  CHECK(res.delta_h_max < 1e-9);
}

TEST_CASE("tree-cotree rank equals the first Betti number") {
  auto s = square_annulus();
  oracle::TreeCotree tc(s);
  CHECK(tc.rank() == 1);

  DomainSpec d;
  d.holes = auto_holes(3, d.width, d.height);
  d.target_nodes = 200;
  d.seed = 8;
  auto g = grid_domain(d);
  oracle::TreeCotree tc3(g.surface);
  CHECK(tc3.rank() == 3);
}

TEST_CASE("hole loop has a nontrivial signature, contractible loop none") {
  auto s = square_annulus();
  oracle::TreeCotree tc(s);
  auto hole = s->hole_loop_nodes()[0];
  hole.push_back(hole.front());
  auto sig = tc.signature(hole);
  bool nontrivial = false;
  for (auto c : sig.crossings)
    nontrivial = nontrivial || c != 0;
  CHECK(nontrivial);
  // a single face boundary is contractible
  auto f = s->faces[0];
  auto sig0 = tc.signature({f[0], f[1], f[2], f[0]});
  for (auto c : sig0.crossings)
    CHECK(c == 0);
}

TEST_CASE("pair signature is zero exactly for homologous paths") {
  auto s = square_annulus();
  oracle::TreeCotree tc(s);
  // corner 0 to corner 15, one path around each side of the hole
  auto left = std::vector<int>{0, 4, 8, 12, 13, 14, 15};
  auto right = std::vector<int>{0, 1, 2, 3, 7, 11, 15};
  auto sig = tc.pair_signature(left, right);
  bool nontrivial = false;
  for (auto c : sig.crossings)
    nontrivial = nontrivial || c != 0;
  CHECK(nontrivial);
  auto same = tc.pair_signature(left, left);
  for (auto c : same.crossings)
    CHECK(c == 0);
}

TEST_CASE("geometric winding of polygons") {
  std::vector<std::array<double, 2>> square = {
      {0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(oracle::winding_of_polygon(square, {0.5, 0.5}) == 1);
  CHECK(oracle::winding_of_polygon(square, {2.0, 0.5}) == 0);
  std::vector<std::array<double, 2>> cw(square.rbegin(), square.rend());
  CHECK(oracle::winding_of_polygon(cw, {0.5, 0.5}) == -1);
}

TEST_CASE("winding_geometric matches the hole the loop surrounds") {
  DomainSpec d;
  d.holes = auto_holes(2, d.width, d.height);
  d.target_nodes = 200;
  d.jitter = 0.0;
  d.seed = 3;
  auto g = grid_domain(d);
  auto loops = g.surface->hole_loop_nodes();
  REQUIRE(loops.size() == 2);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    auto cyc = loops[i];
    cyc.push_back(cyc.front());
    auto w = oracle::winding_geometric(cyc, g.surface, g.anchors);
    REQUIRE(w.size() == 2);
    CHECK(std::abs(w[i]) == 1);
    CHECK(w[1 - i] == 0);
  }
}
