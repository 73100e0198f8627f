#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <unistd.h>

#include <trajtopo/basis.hpp>
#include <trajtopo/netgen.hpp>
#include <trajtopo/simharness.hpp>

using namespace trajtopo;
namespace fs = std::filesystem;

namespace {

ExperimentSpec tiny_spec() {
  ExperimentSpec s;
  s.hole_counts = {1, 2};
  s.node_counts = {80};
  s.eps_values = {1e-3, 1e-4};
  s.seeds_per_cell = 2;
  return s;
}

} // namespace

TEST_CASE("compute_stat matches hand values") {
  auto st = compute_stat({2.0, 4.0, 6.0});
  CHECK(st.min == 2.0);
  CHECK(st.max == 6.0);
  CHECK(st.avg == doctest::Approx(4.0));
  CHECK(st.std == doctest::Approx(2.0)); // sample std, n-1
  CHECK(st.std_over_avg_pct == doctest::Approx(50.0));
}

TEST_CASE("sweep produces one row per cell with full run counts") {
  auto spec = tiny_spec();
  auto r = run_convergence_sweep(spec);
  CHECK(r.rows.size() == 4); // 2 holes x 1 node x 2 eps
  CHECK(r.raw.size() == 8);
  for (const auto &row : r.rows) {
    CHECK(row.n_runs == 2);
    CHECK(row.metrics.count("I_df"));
    CHECK(row.metrics.count("E_dh"));
    CHECK(row.metrics.count("messages"));
    CHECK(row.metrics.at("I_df").avg > 0);
  }
}

TEST_CASE("sweeps are deterministic") {
  auto spec = tiny_spec();
  auto a = run_convergence_sweep(spec);
  auto b = run_convergence_sweep(spec);
  CHECK(rows_to_csv(a.rows) == rows_to_csv(b.rows));
  CHECK(raw_to_jsonl(a.raw) == raw_to_jsonl(b.raw));
}

TEST_CASE("randomness study requires a single cell") {
  auto spec = tiny_spec();
  CHECK_THROWS_AS((void)run_randomness_study(spec), Error);
  spec.hole_counts = {1};
  spec.eps_values = {1e-3};
  auto r = run_randomness_study(spec);
  CHECK(r.rows.size() == 1);
}

TEST_CASE("persist writes the three artifacts") {
  auto spec = tiny_spec();
  spec.hole_counts = {1};
  spec.eps_values = {1e-3};
  spec.out_dir = fs::temp_directory_path() /
                 ("trajtopo_sim_" + std::to_string(::getpid()));
  auto r = run_convergence_sweep(spec);
  persist(r, spec, "eps");
  CHECK(fs::exists(spec.out_dir / "table.csv"));
  CHECK(fs::exists(spec.out_dir / "raw.jsonl"));
  CHECK(fs::exists(spec.out_dir / "plot.csv"));
  fs::remove_all(spec.out_dir);
}

TEST_CASE("classification study finds a safe interval on a clean domain") {
  DomainSpec d;
  d.holes = auto_holes(2, d.width, d.height);
  d.target_nodes = 150;
  d.seed = 6;
  auto g = grid_domain(d);
  auto ts = classed_trajectories(g.surface, 0, g.surface->V - 1, 3, 3, 2);
  BasisConfig bc;
  bc.gossip.eps = 1e-8;
  auto basis = canonicalize(build_basis(g.surface, bc),
                            g.surface->hole_loop_nodes());
  auto rep = run_classification_study(g.surface, ts, basis);
  CHECK(rep.n_trajs == 9);
  CHECK(rep.n_pairs == 36);
  CHECK(rep.safe_interval_nonempty);
  CHECK(rep.safe_mu_lo < rep.safe_mu_hi);
  // agreement hits 100% somewhere on the grid
  double best = 0;
  for (double a : rep.agreement)
    best = std::max(best, a);
  CHECK(best == doctest::Approx(1.0));
  auto j = classification_to_json(rep);
  CHECK(j.find("safe_mu_lo") != std::string::npos);
}

TEST_CASE("experiment spec validation") {
  ExperimentSpec s;
  s.seeds_per_cell = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.eps_values = {};
  CHECK_THROWS_AS(s.validate(), Error);
}
