#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <trajtopo/error.hpp>
#include <trajtopo/netgen.hpp>
#include <trajtopo/oracle.hpp>

using namespace trajtopo;

TEST_CASE("grid domain hits the node target and hole count") {
  for (int holes : {1, 3}) {
    DomainSpec d;
    d.holes = auto_holes(holes, d.width, d.height);
    d.target_nodes = 400;
    d.seed = 21;
    auto g = grid_domain(d);
    CHECK(std::abs(g.surface->V - 400) <= 40); // within 10%
    CHECK(static_cast<int>(g.surface->hole_loops.size()) == holes);
    CHECK(g.surface->first_betti() == holes);
    CHECK(g.anchors.size() == static_cast<std::size_t>(holes));
    // each anchor sits inside its hole rectangle
    for (int i = 0; i < holes; ++i) {
      CHECK(g.holes[i].contains(g.anchors[i][0], g.anchors[i][1]));
    }
  }
}

TEST_CASE("interior average degree is near six") {
  DomainSpec d;
  d.holes = auto_holes(2, d.width, d.height);
  d.target_nodes = 500;
  d.seed = 2;
  auto g = grid_domain(d);
  double sum = 0;
  int n = 0;
  for (int v = 0; v < g.surface->V; ++v)
    if (!g.surface->node_on_boundary[v]) {
      sum += static_cast<double>(g.surface->node_edges[v].size());
      ++n;
    }
  REQUIRE(n > 0);
  double avg = sum / n;
  CHECK(avg >= 5.0);
  CHECK(avg <= 7.0);
}

TEST_CASE("jitter changes coordinates, not combinatorics") {
  DomainSpec d;
  d.holes = auto_holes(1, d.width, d.height);
  d.target_nodes = 200;
  d.seed = 9;
  d.jitter = 0.0;
  auto flat = grid_domain(d);
  d.jitter = 0.3;
  auto jittered = grid_domain(d);
  CHECK(flat.surface->V == jittered.surface->V);
  CHECK(flat.surface->faces == jittered.surface->faces);
  CHECK(flat.surface->coords != jittered.surface->coords);
}

TEST_CASE("domain spec validation") {
  DomainSpec d;
  d.jitter = 0.5;
  CHECK_THROWS_AS(d.validate(), Error);
  d = {};
  d.target_nodes = 5;
  CHECK_THROWS_AS(d.validate(), Error);
  d = {};
  d.holes = {{-0.1, 0.2, 0.3, 0.4}}; // sticks out of the domain
  CHECK_THROWS_AS(d.validate(), Error);
}

TEST_CASE("museum has rooms-1 holes and two doors per wall") {
  MuseumSpec ms;
  ms.rooms = 4;
  ms.target_nodes = 600;
  ms.seed = 3;
  auto m = museum_domain(ms);
  CHECK(m.rooms == 4);
  CHECK(m.walls.size() == 3);
  CHECK(m.doors.size() == 6);
  CHECK(m.surface->first_betti() == 3);
  CHECK(m.entrance >= 0);
  CHECK(m.exit >= 0);
  CHECK(m.room_nodes.size() == 4);
  // rooms partition: every door node belongs to one of its two rooms
  for (const auto &d : m.doors) {
    CHECK(d.room_b == d.room_a + 1);
    bool in_a = std::binary_search(m.room_nodes[d.room_a].begin(),
                                   m.room_nodes[d.room_a].end(), d.node);
    bool in_b = std::binary_search(m.room_nodes[d.room_b].begin(),
                                   m.room_nodes[d.room_b].end(), d.node);
    CHECK((in_a || in_b));
  }
}

TEST_CASE("museum trajectories are valid entrance-to-exit paths") {
  MuseumSpec ms;
  ms.rooms = 3;
  ms.target_nodes = 400;
  ms.seed = 7;
  auto m = museum_domain(ms);
  auto ts = museum_trajectories(m, 20, 13);
  CHECK(ts.size() == 20);
  for (const auto &t : ts) {
    t.validate(m.surface);
    CHECK(t.source() == m.entrance);
    CHECK(t.target() == m.exit);
  }
  // deterministic
  auto again = museum_trajectories(m, 20, 13);
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(ts[i].nodes == again[i].nodes);
}

TEST_CASE("side signature separates the two sides of a wall") {
  MuseumSpec ms;
  ms.rooms = 2;
  ms.target_nodes = 300;
  ms.seed = 5;
  auto m = museum_domain(ms);
  auto ts = museum_trajectories(m, 40, 17);
  std::set<std::vector<long long>> sigs;
  for (const auto &t : ts) {
    auto sig = side_signature(t, m.surface, m.anchors);
    CHECK(sig.residual < 0.25);
    sigs.insert(sig.winds);
  }
  CHECK(sigs.size() == 2); // 2^(rooms-1) possible side choices
}

TEST_CASE("classed trajectories realize the requested class structure") {
  DomainSpec d;
  d.holes = auto_holes(2, d.width, d.height);
  d.target_nodes = 250;
  d.seed = 11;
  auto g = grid_domain(d);
  int src = 0, dst = g.surface->V - 1;
  auto ts = classed_trajectories(g.surface, src, dst, 3, 4, 23);
  REQUIRE(ts.size() == 12);
  oracle::TreeCotree tc(g.surface);
  // group by tree-cotree signature against the first trajectory
  std::set<std::vector<long long>> classes;
  for (const auto &t : ts) {
    t.validate(g.surface);
    CHECK(t.source() == src);
    CHECK(t.target() == dst);
    classes.insert(tc.pair_signature(ts[0].nodes, t.nodes).crossings);
  }
  CHECK(classes.size() == 3);
}

TEST_CASE("multifloor gluing has the expected topology") {
  MuseumSpec ms;
  ms.rooms = 2;
  ms.target_nodes = 400;
  ms.levels = 3;
  ms.ladders = 2;
  ms.seed = 4;
  auto mf = multifloor_domain(ms);
  const auto &s = *mf.surface;
  // per floor: 1 outer boundary + (rooms-1) wall holes survive; all
  // ladder rims are glued away. chi is additive under gluing along
  // circles: each of the L floors is a disc with (rooms-1) wall holes
  // plus `ladders` shaft holes per adjacent pair it participates in.
  const int L = ms.levels, R = ms.rooms, d = ms.ladders;
  int expected_chi = L * (1 - (R - 1)) - 2 * d * (L - 1);
  int expected_b = L * R; // L outers + L*(R-1) wall rims
  CHECK(s.euler() == expected_chi);
  CHECK(static_cast<int>(s.boundary_loops.size()) == expected_b);
  CHECK(s.genus() == (2 - expected_b - expected_chi) / 2);
  CHECK(s.genus() == 2);
  CHECK(mf.levels == L);
  CHECK(mf.floor_nodes.size() == static_cast<std::size_t>(L));
  CHECK(mf.entrance >= 0);
  CHECK(mf.exit >= 0);
  // entrance on floor 0, exit on the top floor
  CHECK(std::binary_search(mf.floor_nodes[0].begin(), mf.floor_nodes[0].end(),
                           mf.entrance));
  CHECK(std::binary_search(mf.floor_nodes[L - 1].begin(),
                           mf.floor_nodes[L - 1].end(), mf.exit));
  CHECK(s.coord_dim == 3);
}

TEST_CASE("museum spec validation") {
  MuseumSpec ms;
  ms.rooms = 0;
  CHECK_THROWS_AS(ms.validate(), Error);
  ms = {};
  ms.target_nodes = 10;
  CHECK_THROWS_AS(ms.validate(), Error);
}
