#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>

#include <trajtopo/error.hpp>
#include <trajtopo/io.hpp>
#include <trajtopo/netgen.hpp>

#include "helpers.hpp"

using namespace trajtopo;
using namespace trajtopo::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path p;
  TempDir() {
    p = fs::temp_directory_path() /
        ("trajtopo_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
  }
  ~TempDir() { fs::remove_all(p); }
};

} // namespace

TEST_CASE("format_double round-trips shortest form") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-2.5e-7) == "-2.5e-07");
}

TEST_CASE("surface serializes and parses to identical bytes") {
  auto s = square_annulus();
  auto text = io::serialize_surface(*s);
  auto back = io::parse_surface(text);
  CHECK(back->V == s->V);
  CHECK(back->faces == s->faces);
  CHECK(back->coords == s->coords);
  CHECK(io::serialize_surface(*back) == text);
  CHECK(io::surface_hash(*back) == io::surface_hash(*s));
}

TEST_CASE("one-form files are tied to their surface by hash") {
  auto s = square_annulus();
  auto w = random_one_form(s, 6);
  auto text = io::serialize_one_form(w);
  auto back = io::parse_one_form(text, s);
  CHECK(back.values() == w.values());
  CHECK(io::serialize_one_form(back) == text);
  // a different mesh rejects the file
  auto other = octahedron();
  CHECK_THROWS_AS((void)io::parse_one_form(text, other), Error);
}

TEST_CASE("basis round-trip preserves forms and metadata") {
  DomainSpec d;
  d.holes = auto_holes(1, d.width, d.height);
  d.target_nodes = 120;
  d.seed = 3;
  auto g = grid_domain(d);
  BasisConfig cfg;
  cfg.gossip.eps = 1e-6;
  auto b = canonicalize(build_basis(g.surface, cfg),
                        g.surface->hole_loop_nodes());
  auto text = io::serialize_basis(b);
  auto back = io::parse_basis(text, g.surface);
  CHECK(back.k() == b.k());
  CHECK(back.canonical == b.canonical);
  CHECK(back.eps == b.eps);
  CHECK(back.seeds == b.seeds);
  for (int i = 0; i < b.k(); ++i)
    CHECK(back.forms[i].values() == b.forms[i].values());
  CHECK(io::serialize_basis(back) == text);
}

TEST_CASE("trajectories round-trip as JSONL") {
  std::vector<Trajectory> ts = {{"a", {0, 1, 2}}, {"b", {5, 6}}};
  auto text = io::serialize_trajectories(ts);
  auto back = io::parse_trajectories(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].id == "a");
  CHECK(back[0].nodes == std::vector<int>{0, 1, 2});
  CHECK(back[1].id == "b");
  CHECK(io::serialize_trajectories(back) == text);
}

TEST_CASE("file save/load and atomic_write") {
  TempDir tmp;
  auto s = square_annulus();
  auto p = tmp.p / "mesh.txt";
  io::save_surface(*s, p);
  auto back = io::load_surface(p);
  CHECK(back->faces == s->faces);
  io::atomic_write(tmp.p / "x.txt", "hello");
  CHECK(io::read_file(tmp.p / "x.txt") == "hello");
  // no temp leftovers
  int entries = 0;
  for (auto &e : fs::directory_iterator(tmp.p)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 2);
  CHECK_THROWS_AS((void)io::load_surface(tmp.p / "absent.txt"), Error);
}

TEST_CASE("malformed mesh text is rejected") {
  CHECK_THROWS_AS((void)io::parse_surface("garbage"), Error);
  CHECK_THROWS_AS((void)io::parse_surface("surf v=3 f=1 dim=0\nt 0 1 9\n"),
                  Error);
}
