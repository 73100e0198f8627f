#include <doctest.h>

#include <cmath>

#include <trajtopo/basis.hpp>
#include <trajtopo/netgen.hpp>
#include <trajtopo/operators.hpp>
#include <trajtopo/oracle.hpp>

#include "helpers.hpp"

using namespace trajtopo;
using namespace trajtopo::testing;

namespace {

GridDomain two_hole_domain(std::uint64_t seed) {
  DomainSpec d;
  d.holes = auto_holes(2, d.width, d.height);
  d.target_nodes = 200;
  d.seed = seed;
  return grid_domain(d);
}

BasisConfig fast_cfg() {
  BasisConfig cfg;
  cfg.gossip.eps = 1e-7;
  return cfg;
}

} // namespace

TEST_CASE("basis dimension equals the hole count") {
  auto d = two_hole_domain(1);
  auto b = build_basis(d.surface, fast_cfg());
  CHECK(b.k() == 2);
  CHECK(oracle::harmonic_dim(d.surface) == 2);
  CHECK(b.seeds.size() == 2);
  CHECK_FALSE(b.canonical);
}

TEST_CASE("trivial homology is rejected / reported as zero") {
  DomainSpec d;
  d.target_nodes = 80;
  d.seed = 2;
  auto g = grid_domain(d);
  CHECK_THROWS_AS((void)build_basis(g.surface, fast_cfg()), Error);
  CHECK(hole_count(g.surface, fast_cfg()) == 0);
  CHECK(oracle::harmonic_dim(g.surface) == 0);
}

TEST_CASE("canonical basis has identity periods over the hole loops") {
  auto d = two_hole_domain(3);
  auto loops = d.surface->hole_loop_nodes();
  auto b = canonicalize(build_basis(d.surface, fast_cfg()), loops);
  REQUIRE(b.k() == 2);
  CHECK(b.canonical);
  for (int i = 0; i < b.k(); ++i) {
    auto p = periods(b.forms[i], loops);
    for (int j = 0; j < b.k(); ++j)
      CHECK(p[j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-3).scale(1));
  }
  // canonical forms stay harmonic
  for (const auto &f : b.forms) {
    auto res = residual_norms(f);
    CHECK(res.dh_max < 1e-4);
    CHECK(res.delta_h_max < 1e-4);
  }
}

TEST_CASE("periods of an exact form vanish") {
  auto s = square_annulus();
  Cochain0 f(s);
  for (int v = 0; v < s->V; ++v)
    f[v] = 0.3 * v * v;
  auto w = d0(f);
  auto p = periods(w, s->hole_loop_nodes());
  REQUIRE(p.size() == 1);
  CHECK(p[0] == doctest::Approx(0.0).epsilon(1e-10).scale(1));
}

TEST_CASE("probe_edges is deterministic and errors when short") {
  auto s = square_annulus();
  auto a = probe_edges(s, 0, 10);
  auto b = probe_edges(s, 0, 10);
  CHECK(a == b);
  CHECK(a.size() == 10);
  CHECK_THROWS_AS((void)probe_edges(s, 0, s->E() + 1), Error);
}

TEST_CASE("independence_rank sees through scaling and sums") {
  auto s = square_annulus();
  auto probes = probe_edges(s, 0, 12);
  Cochain1 a(s), b(s);
  for (int e = 0; e < s->E(); ++e) {
    a[e] = std::sin(e + 1.0);
    b[e] = std::cos(e + 1.0);
  }
  Cochain1 sum(s);
  for (int e = 0; e < s->E(); ++e)
    sum[e] = 2.0 * a[e] - 3.0 * b[e];
  CHECK(independence_rank({a, b}, probes, 1e-6) == 2);
  CHECK(independence_rank({a, b, sum}, probes, 1e-6) == 2);
  Cochain1 scaled(s);
  for (int e = 0; e < s->E(); ++e)
    scaled[e] = -0.5 * a[e];
  CHECK(independence_rank({a, scaled}, probes, 1e-6) == 1);
}

TEST_CASE("basis build is deterministic for a fixed seed") {
  auto d = two_hole_domain(4);
  BasisConfig cfg = fast_cfg();
  cfg.gossip.seed = 9;
  auto a = build_basis(d.surface, cfg);
  auto b = build_basis(d.surface, cfg);
  REQUIRE(a.k() == b.k());
  for (int i = 0; i < a.k(); ++i)
    CHECK(a.forms[i].values() == b.forms[i].values());
}
