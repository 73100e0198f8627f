#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "trajtopo/basis.hpp"
#include "trajtopo/classify.hpp"
#include "trajtopo/netgen.hpp"

namespace trajtopo {

/// Sweep over (hole count, node count, eps) cells; every cell runs
/// seeds_per_cell random 1-forms through the gossip decomposition.
struct ExperimentSpec {
  double width = 1.0;
  double height = 1.0;
  std::vector<int> hole_counts{3};
  std::vector<int> node_counts{400};
  std::vector<double> eps_values{5e-3};
  int seeds_per_cell = 20; // paper protocol is 100; 20 is the desk default
  std::uint64_t base_seed = 1;
  double jitter = 0.3;
  int max_rounds = 200000;
  std::filesystem::path out_dir; // empty = no files written

  void validate() const;
};

struct Stat {
  double min = 0, max = 0, avg = 0, std = 0, std_over_avg_pct = 0;
};
Stat compute_stat(const std::vector<double> &xs);

/// One sweep cell with per-metric statistics over its converged runs.
struct StatRow {
  int holes = 0;
  int nodes = 0; // actual mesh node count
  double eps = 0;
  int n_runs = 0;
  int n_nonconverged = 0; // recorded, excluded from the stats
  std::map<std::string, Stat> metrics;
};

/// Raw per-seed log line backing the stats (always persisted when out_dir
/// is set).
struct RawRun {
  int holes = 0;
  int nodes = 0;
  double eps = 0;
  std::uint64_t seed = 0;
  int iters_f = 0;
  int iters_g = 0;
  double err_dh = 0, err_delta_h = 0;
  double err_dh_rms = 0, err_delta_h_rms = 0;
  long long messages = 0;
  bool converged = false;
};

struct SweepResult {
  std::vector<StatRow> rows; // canonical (holes, nodes, eps) order
  std::vector<RawRun> raw;
};

/// Many seeds on a single fixed cell: iteration/error dispersion.
SweepResult run_randomness_study(const ExperimentSpec &spec);
/// Iteration counts across the eps / node / hole axes.
SweepResult run_convergence_sweep(const ExperimentSpec &spec);
/// Same sweep machinery; named for the residual-error reading.
SweepResult run_accuracy_sweep(const ExperimentSpec &spec);

std::string rows_to_csv(const std::vector<StatRow> &rows);
std::string raw_to_jsonl(const std::vector<RawRun> &raw);
/// Long-format (x, y, series) rows, one per (cell, metric) average.
std::string plot_csv(const std::vector<StatRow> &rows,
                     const std::string &x_axis);
/// Writes table.csv, raw.jsonl and plot.csv under spec.out_dir (no-op when
/// unset).
void persist(const SweepResult &r, const ExperimentSpec &spec,
             const std::string &x_axis);

/// Classifier-vs-oracle agreement over every same-endpoint trajectory
/// pair, with the mu-sensitivity curve and the widest 100%-agreement
/// interval (exact from the pairwise distances, not the grid).
struct ClassificationReport {
  int n_trajs = 0;
  int n_pairs = 0;
  std::vector<double> mu_grid;
  std::vector<double> agreement; // fraction correct per grid mu
  double safe_mu_lo = 0; // sup of same-class distances
  double safe_mu_hi = 0; // inf of cross-class distances; lo < hi = nonempty
  bool safe_interval_nonempty = false;
  bool covers_decade = false; // hi / lo >= 10
  bool contains_reference_interval = false; // [1e-5, 1e-4]
};

ClassificationReport
run_classification_study(const SurfacePtr &s,
                         const std::vector<Trajectory> &trajs,
                         const HarmonicBasis &basis,
                         std::vector<double> mu_grid = {});

std::string classification_to_json(const ClassificationReport &r);

} // namespace trajtopo
