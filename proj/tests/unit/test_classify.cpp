#include <doctest.h>

#include <cmath>

#include <trajtopo/basis.hpp>
#include <trajtopo/classify.hpp>
#include <trajtopo/netgen.hpp>

#include "helpers.hpp"

using namespace trajtopo;
using namespace trajtopo::testing;

namespace {

HarmonicBasis annulus_basis() {
  auto s = square_annulus();
  BasisConfig cfg;
  cfg.gossip.eps = 1e-9;
  return canonicalize(build_basis(s, cfg), s->hole_loop_nodes());
}

} // namespace

TEST_CASE("path_integral signs and reversal") {
  auto s = square_annulus();
  Cochain1 w(s);
  w.set_directed(0, 1, 2.0);
  w.set_directed(1, 2, 3.0);
  Trajectory g{"g", {0, 1, 2}};
  g.validate(s);
  CHECK(path_integral(w, g) == doctest::Approx(5.0));
  CHECK(path_integral(w, g.reversed()) == doctest::Approx(-5.0));
}

TEST_CASE("trajectory validation rejects non-adjacent hops") {
  auto s = square_annulus();
  Trajectory bad{"bad", {0, 15}};
  CHECK_THROWS_AS(bad.validate(s), Error);
  Trajectory empty{"e", {}};
  CHECK_THROWS_AS(empty.validate(s), Error);
}

TEST_CASE("sigma requires shared endpoints and separates classes") {
  auto b = annulus_basis();
  Trajectory left{"l", {0, 4, 8, 12, 13, 14, 15}};
  Trajectory right{"r", {0, 1, 2, 3, 7, 11, 15}};
  Trajectory right2{"r2", {0, 1, 5, 6, 7, 11, 15}};
  Trajectory other{"o", {0, 1, 2}};
  CHECK_THROWS_AS((void)sigma(left, other, b), Error);
  // same side of the hole: tiny sigma; opposite sides: period-sized
  CHECK(sigma(right, right2, b) < 1e-6);
  CHECK(sigma(left, right, b) == doctest::Approx(1.0).epsilon(1e-4));
  ClassifierConfig cfg;
  cfg.mu = 1e-4;
  CHECK(same_class(right, right2, b, cfg));
  CHECK_FALSE(same_class(left, right, b, cfg));
}

TEST_CASE("auto_mu lands between noise and class separation") {
  auto b = annulus_basis();
  std::vector<Trajectory> ts = {
      {"l", {0, 4, 8, 12, 13, 14, 15}},
      {"r", {0, 1, 2, 3, 7, 11, 15}},
      {"r2", {0, 1, 5, 6, 7, 11, 15}},
  };
  double mu = auto_mu(ts, b);
  CHECK(mu > sigma(ts[1], ts[2], b));
  CHECK(mu < sigma(ts[0], ts[1], b));
}

TEST_CASE("winding vector of closed walks is integral") {
  auto b = annulus_basis();
  auto s = b.forms[0].surface();
  auto loop = s->hole_loop_nodes()[0];
  Trajectory cyc{"c", loop};
  cyc.nodes.push_back(loop[0]);
  cyc.validate(s);
  auto wv = winding_vector(cyc, b);
  REQUIRE(wv.winds.size() == 1);
  CHECK(std::abs(wv.winds[0]) == 1);
  CHECK(wv.reliable());
  CHECK(wv.residual < 0.01);
  // open walks are rejected
  Trajectory open{"o", {0, 1, 2}};
  CHECK_THROWS_AS((void)winding_vector(open, b), Error);
}

TEST_CASE("bucketize groups by endpoints then by class") {
  auto b = annulus_basis();
  std::vector<Trajectory> ts = {
      {"l", {0, 4, 8, 12, 13, 14, 15}},
      {"r", {0, 1, 2, 3, 7, 11, 15}},
      {"r2", {0, 1, 5, 6, 7, 11, 15}},
      {"x", {0, 1, 2, 3}}, // different endpoints
  };
  ClassifierConfig cfg;
  cfg.mu = 1e-4;
  auto rep = bucketize(ts, b, cfg);
  CHECK(rep.n_buckets == 3);
  CHECK(rep.max_bucket == 2);
  CHECK(rep.n_singletons == 2);
  SUBCASE("quantize mode gives the same grouping") {
    cfg.quantize = true;
    auto q = bucketize(ts, b, cfg);
    CHECK(q.n_buckets == 3);
    CHECK(q.max_bucket == 2);
  }
}

TEST_CASE("shortest_path is a valid minimal path with deterministic ties") {
  auto s = square_annulus();
  auto p = shortest_path(s, 0, 15);
  REQUIRE_FALSE(p.empty());
  CHECK(p.front() == 0);
  CHECK(p.back() == 15);
  Trajectory t{"t", p};
  t.validate(s);
  CHECK(p == shortest_path(s, 0, 15));
  CHECK(shortest_path(s, 3, 3) == std::vector<int>{3});
}

TEST_CASE("snap_trace follows coordinates onto the mesh") {
  auto s = square_annulus();
  std::vector<std::array<double, 2>> pts = {{0.05, -0.02}, {3.1, 0.0},
                                            {2.9, 3.02}};
  auto r = snap_trace(pts, s, "trace");
  CHECK(r.traj.id == "trace");
  CHECK(r.traj.nodes.front() == 0);
  CHECK(r.traj.nodes.back() == 15);
  r.traj.validate(s);
  CHECK(r.far_points == 0);
  CHECK(r.max_snap_dist < 0.2);
}
