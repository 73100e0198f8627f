#include <doctest.h>

#include <cmath>

#include <trajtopo/double_cover.hpp>
#include <trajtopo/hodge.hpp>
#include <trajtopo/netgen.hpp>
#include <trajtopo/operators.hpp>

#include "helpers.hpp"

using namespace trajtopo;
using namespace trajtopo::testing;

namespace {

double dot(const Cochain1 &a, const Cochain1 &b) {
  double s = 0;
  for (int e = 0; e < a.surface()->E(); ++e)
    s += a[e] * b[e];
  return s;
}

} // namespace

TEST_CASE("d1 after d0 vanishes exactly") {
  for (auto s : {octahedron(), square_annulus()}) {
    Cochain0 f(s);
    for (int v = 0; v < s->V; ++v)
      f[v] = std::sin(1.0 + v) * 10.0;
    auto curl = d1(d0(f));
    for (int k = 0; k < s->F(); ++k)
      CHECK(curl[k] == doctest::Approx(0.0).epsilon(1e-12).scale(1));
  }
}

TEST_CASE("delta1 after delta2 vanishes exactly on a closed surface") {
  auto s = octahedron();
  Cochain2 g(s);
  for (int k = 0; k < s->F(); ++k)
    g[k] = std::cos(2.0 + 3.0 * k) * 5.0;
  auto div = delta1(delta2(g));
  for (int v = 0; v < s->V; ++v)
    CHECK(div[v] == doctest::Approx(0.0).epsilon(1e-12).scale(1));
}

TEST_CASE("random_one_form is deterministic and seed-sensitive") {
  auto s = square_annulus();
  auto a = random_one_form(s, 42);
  auto b = random_one_form(s, 42);
  auto c = random_one_form(s, 43);
  CHECK(a.values() == b.values());
  CHECK(a.values() != c.values());
  CHECK(a.max_abs() <= 1.0);
  CHECK(a.max_abs() > 0.0);
}

TEST_CASE("decomposition reassembles the input edgewise") {
  auto s = square_annulus();
  auto w = random_one_form(s, 7);
  GossipConfig cfg;
  cfg.eps = 1e-9;
  auto r = decompose(s, w, cfg);
  REQUIRE(r.converged());
  for (int e = 0; e < s->E(); ++e)
    CHECK(w[e] ==
          doctest::Approx(r.df[e] + r.dg[e] + r.h[e]).epsilon(1e-9).scale(1));
  // harmonic part is curl- and divergence-free at solver accuracy
  auto res = residual_norms(r.h);
  CHECK(res.dh_max < 1e-6);
  CHECK(res.delta_h_max < 1e-6);
  CHECK(r.messages > 0);
}

TEST_CASE("decomposition parts are near-orthogonal on a closed surface") {
  // Orthogonality is a property of the closed solve; restriction to a
  // bounded surface reweights boundary edges, so it is checked on the
  // cover.
  auto cover = double_cover(square_annulus()).cover;
  auto w = random_one_form(cover, 13);
  GossipConfig cfg;
  cfg.eps = 1e-9;
  auto r = decompose(cover, w, cfg);
  REQUIRE(r.converged());
  double ndf = r.df.l2(), ndg = r.dg.l2(), nh = r.h.l2();
  REQUIRE(ndf > 0);
  REQUIRE(ndg > 0);
  REQUIRE(nh > 0);
  CHECK(std::abs(dot(r.df, r.dg)) / (ndf * ndg) < 1e-5);
  CHECK(std::abs(dot(r.df, r.h)) / (ndf * nh) < 1e-5);
  CHECK(std::abs(dot(r.dg, r.h)) / (ndg * nh) < 1e-5);
}

TEST_CASE("decomposition on a closed surface") {
  auto s = octahedron();
  auto w = random_one_form(s, 3);
  GossipConfig cfg;
  cfg.eps = 1e-10;
  auto r = decompose(s, w, cfg);
  REQUIRE(r.converged());
  // genus 0: no harmonic part
  CHECK(r.h.max_abs() < 1e-7);
  auto res = residual_norms(r.h);
  CHECK(res.dh_max < 1e-7);
  CHECK(res.delta_h_max < 1e-7);
}

TEST_CASE("harmonic part carries the period of a closed input") {
  auto s = square_annulus();
  GossipConfig cfg;
  cfg.eps = 1e-10;
  // a general 1-form is not closed, so only the exact part is
  // period-free; rebuild a closed input as h + d0(f) and check that the
  // solver returns the same harmonic representative with the full period.
  auto r0 = decompose(s, random_one_form(s, 11), cfg);
  REQUIRE(r0.converged());
  auto loop = s->hole_loop_nodes()[0];
  auto period = [&](const Cochain1 &c) {
    double p = 0;
    for (std::size_t i = 0; i < loop.size(); ++i)
      p += c.on(loop[i], loop[(i + 1) % loop.size()]);
    return p;
  };
  CHECK(period(r0.df) == doctest::Approx(0.0).epsilon(1e-6).scale(1));
  Cochain0 f(s);
  for (int v = 0; v < s->V; ++v)
    f[v] = std::sin(0.7 * v);
  auto grad = d0(f);
  Cochain1 w2(s);
  for (int e = 0; e < s->E(); ++e)
    w2[e] = r0.h[e] + grad[e];
  auto r2 = decompose(s, w2, cfg);
  REQUIRE(r2.converged());
  CHECK(period(r2.h) == doctest::Approx(period(w2)).epsilon(1e-5));
  for (int e = 0; e < s->E(); ++e)
    CHECK(r2.h[e] == doctest::Approx(r0.h[e]).epsilon(1e-5).scale(1));
}

TEST_CASE("round cap reports non-convergence") {
  auto d = grid_domain(DomainSpec{.holes = auto_holes(1, 1, 1),
                                  .target_nodes = 150,
                                  .seed = 5});
  auto w = random_one_form(d.surface, 1);
  GossipConfig cfg;
  cfg.eps = 1e-12;
  cfg.max_rounds = 3;
  auto r = decompose(d.surface, w, cfg);
  CHECK_FALSE(r.converged());
}

TEST_CASE("per-node freeze converges to the same fixed point") {
  auto s = square_annulus();
  auto w = random_one_form(s, 19);
  GossipConfig a;
  a.eps = 1e-10;
  GossipConfig b = a;
  b.per_node_freeze = true;
  b.max_rounds = 400000;
  auto ra = decompose(s, w, a);
  auto rb = decompose(s, w, b);
  REQUIRE(ra.converged());
  REQUIRE(rb.converged());
  for (int e = 0; e < s->E(); ++e)
    CHECK(ra.h[e] == doctest::Approx(rb.h[e]).epsilon(1e-5).scale(1));
}

TEST_CASE("config validation") {
  GossipConfig cfg;
  cfg.eps = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.damping = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
