#include "trajtopo/simharness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trajtopo/double_cover.hpp"
#include "trajtopo/io.hpp"
#include "trajtopo/oracle.hpp"

namespace trajtopo {

void ExperimentSpec::validate() const {
  if (hole_counts.empty() || node_counts.empty() || eps_values.empty())
    throw validation_error("every sweep axis needs at least one value");
  if (seeds_per_cell < 2)
    throw validation_error("seeds_per_cell must be >= 2 (std undefined)");
  for (int h : hole_counts)
    if (h < 0)
      throw validation_error("negative hole count");
  for (int n : node_counts)
    if (n < 20)
      throw validation_error("node counts must be >= 20");
  for (double e : eps_values)
    if (e <= 0)
      throw validation_error("eps values must be positive");
}

Stat compute_stat(const std::vector<double> &xs) {
  if (xs.empty())
    throw validation_error("no samples to aggregate");
  Stat s;
  s.min = s.max = xs[0];
  double sum = 0;
  for (double x : xs) {
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
    sum += x;
  }
  s.avg = sum / xs.size();
  double ss = 0;
  for (double x : xs)
    ss += (x - s.avg) * (x - s.avg);
  // Sample std (n - 1); callers guarantee >= 2 samples.
  s.std = xs.size() > 1 ? std::sqrt(ss / (xs.size() - 1)) : 0.0;
  s.std_over_avg_pct = s.avg != 0.0 ? 100.0 * s.std / std::abs(s.avg) : 0.0;
  return s;
}

namespace {

std::uint64_t run_seed(std::uint64_t base, std::size_t cell, int run) {
  // splitmix64 over a distinct counter per (cell, run).
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL *
                               (1 + cell * 1000003ULL +
                                static_cast<std::uint64_t>(run));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SweepResult run_sweep(const ExperimentSpec &spec) {
  spec.validate();
  SweepResult out;
  std::size_t cell_idx = 0;
  for (int nh : spec.hole_counts)
    for (int nv : spec.node_counts) {
      DomainSpec d;
      d.width = spec.width;
      d.height = spec.height;
      d.holes = auto_holes(nh, spec.width, spec.height);
      d.jitter = spec.jitter;
      d.target_nodes = nv;
      d.seed = spec.base_seed;
      auto dom = grid_domain(d);
      auto cover = double_cover(dom.surface);
      for (double eps : spec.eps_values) {
        GossipConfig cfg;
        cfg.eps = eps;
        cfg.max_rounds = spec.max_rounds;
        StatRow row;
        row.holes = nh;
        row.nodes = dom.surface->V;
        row.eps = eps;
        std::map<std::string, std::vector<double>> samples;
        for (int r = 0; r < spec.seeds_per_cell; ++r) {
          RawRun raw;
          raw.holes = nh;
          raw.nodes = dom.surface->V;
          raw.eps = eps;
          raw.seed = run_seed(spec.base_seed, cell_idx, r);
          auto w = random_one_form(dom.surface, raw.seed);
          auto dec = decompose(cover, w, cfg);
          raw.iters_f = dec.iters_f;
          raw.iters_g = dec.iters_g;
          raw.err_dh = dec.err_dh;
          raw.err_delta_h = dec.err_delta_h;
          raw.err_dh_rms = dec.err_dh_rms;
          raw.err_delta_h_rms = dec.err_delta_h_rms;
          raw.messages = dec.messages;
          raw.converged = dec.converged();
          out.raw.push_back(raw);
          ++row.n_runs;
          if (!raw.converged) {
            ++row.n_nonconverged;
            continue;
          }
          samples["I_df"].push_back(raw.iters_f);
          samples["I_dg"].push_back(raw.iters_g);
          samples["E_dh"].push_back(raw.err_dh);
          samples["E_delta_h"].push_back(raw.err_delta_h);
          samples["E_dh_rms"].push_back(raw.err_dh_rms);
          samples["E_delta_h_rms"].push_back(raw.err_delta_h_rms);
          samples["messages"].push_back(static_cast<double>(raw.messages));
          samples["msgs_per_round"].push_back(
              static_cast<double>(raw.messages) /
              std::max(1, raw.iters_f + raw.iters_g));
        }
        for (auto &[name, xs] : samples)
          row.metrics[name] = compute_stat(xs);
        out.rows.push_back(std::move(row));
        ++cell_idx;
      }
    }
  return out;
}

} // namespace

SweepResult run_randomness_study(const ExperimentSpec &spec) {
  spec.validate();
  if (spec.hole_counts.size() != 1 || spec.node_counts.size() != 1 ||
      spec.eps_values.size() != 1)
    throw validation_error("randomness study wants a single fixed cell");
  auto r = run_sweep(spec);
  persist(r, spec, "seed");
  return r;
}

SweepResult run_convergence_sweep(const ExperimentSpec &spec) {
  auto r = run_sweep(spec);
  persist(r, spec, "eps");
  return r;
}

SweepResult run_accuracy_sweep(const ExperimentSpec &spec) {
  auto r = run_sweep(spec);
  persist(r, spec, "eps");
  return r;
}

namespace {

const std::vector<std::string> kMetricOrder = {
    "I_df",     "I_dg",          "E_dh",           "E_delta_h",
    "E_dh_rms", "E_delta_h_rms", "msgs_per_round", "messages"};

} // namespace

std::string rows_to_csv(const std::vector<StatRow> &rows) {
  std::string out = "holes,nodes,eps,n_runs,n_nonconverged";
  for (const auto &m : kMetricOrder)
    for (const char *f : {"min", "max", "avg", "std", "std_avg_pct"})
      out += "," + m + "_" + f;
  out += "\n";
  for (const auto &r : rows) {
    out += std::to_string(r.holes) + "," + std::to_string(r.nodes) + "," +
           io::format_double(r.eps) + "," + std::to_string(r.n_runs) + "," +
           std::to_string(r.n_nonconverged);
    for (const auto &m : kMetricOrder) {
      auto it = r.metrics.find(m);
      if (it == r.metrics.end()) {
        out += ",,,,,";
        continue;
      }
      const Stat &s = it->second;
      for (double v : {s.min, s.max, s.avg, s.std, s.std_over_avg_pct})
        out += "," + io::format_double(v);
    }
    out += "\n";
  }
  return out;
}

std::string raw_to_jsonl(const std::vector<RawRun> &raw) {
  std::string out;
  for (const auto &r : raw) {
    out += "{\"holes\":" + std::to_string(r.holes) +
           ",\"nodes\":" + std::to_string(r.nodes) +
           ",\"eps\":" + io::format_double(r.eps) +
           ",\"seed\":" + std::to_string(r.seed) +
           ",\"iters_f\":" + std::to_string(r.iters_f) +
           ",\"iters_g\":" + std::to_string(r.iters_g) +
           ",\"err_dh\":" + io::format_double(r.err_dh) +
           ",\"err_delta_h\":" + io::format_double(r.err_delta_h) +
           ",\"err_dh_rms\":" + io::format_double(r.err_dh_rms) +
           ",\"err_delta_h_rms\":" + io::format_double(r.err_delta_h_rms) +
           ",\"messages\":" + std::to_string(r.messages) +
           ",\"converged\":" + (r.converged ? "true" : "false") + "}\n";
  }
  return out;
}

std::string plot_csv(const std::vector<StatRow> &rows,
                     const std::string &x_axis) {
  std::string out = "x,y,series\n";
  for (const auto &r : rows) {
    std::string x = x_axis == "holes"   ? std::to_string(r.holes)
                    : x_axis == "nodes" ? std::to_string(r.nodes)
                                        : io::format_double(r.eps);
    for (const auto &[name, s] : r.metrics)
      out += x + "," + io::format_double(s.avg) + "," + name + "\n";
  }
  return out;
}

void persist(const SweepResult &r, const ExperimentSpec &spec,
             const std::string &x_axis) {
  if (spec.out_dir.empty())
    return;
  io::atomic_write(spec.out_dir / "table.csv", rows_to_csv(r.rows));
  io::atomic_write(spec.out_dir / "raw.jsonl", raw_to_jsonl(r.raw));
  io::atomic_write(spec.out_dir / "plot.csv", plot_csv(r.rows, x_axis));
}

ClassificationReport
run_classification_study(const SurfacePtr &s,
                         const std::vector<Trajectory> &trajs,
                         const HarmonicBasis &basis,
                         std::vector<double> mu_grid) {
  ClassificationReport rep;
  rep.n_trajs = static_cast<int>(trajs.size());
  if (mu_grid.empty())
    for (int k = -8; k <= 0; ++k) // 1e-8 .. 1, 3 points per decade
      for (double m : {1.0, 2.0, 5.0})
        mu_grid.push_back(m * std::pow(10.0, k));
  std::sort(mu_grid.begin(), mu_grid.end());
  rep.mu_grid = mu_grid;

  oracle::TreeCotree tc(s);
  const oracle::HomologySignature trivial{
      std::vector<long long>(tc.rank(), 0)};

  double max_same = 0.0;
  double min_diff = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, bool>> pairs; // (distance, truth same)
  for (std::size_t i = 0; i < trajs.size(); ++i)
    for (std::size_t j = i + 1; j < trajs.size(); ++j) {
      if (trajs[i].source() != trajs[j].source() ||
          trajs[i].target() != trajs[j].target())
        continue;
      double d = sigma(trajs[i], trajs[j], basis);
      bool same = tc.pair_signature(trajs[i].nodes, trajs[j].nodes) == trivial;
      pairs.emplace_back(d, same);
      if (same)
        max_same = std::max(max_same, d);
      else
        min_diff = std::min(min_diff, d);
    }
  rep.n_pairs = static_cast<int>(pairs.size());

  for (double mu : mu_grid) {
    int ok = 0;
    for (const auto &[d, same] : pairs)
      if ((d < mu) == same)
        ++ok;
    rep.agreement.push_back(pairs.empty() ? 1.0
                                          : static_cast<double>(ok) /
                                                pairs.size());
  }

  rep.safe_mu_lo = max_same;
  rep.safe_mu_hi = std::isinf(min_diff) ? 0.0 : min_diff;
  if (pairs.empty()) {
    rep.safe_interval_nonempty = false;
  } else if (std::isinf(min_diff)) {
    // only same-class pairs: anything above max_same works
    rep.safe_mu_hi = std::numeric_limits<double>::infinity();
    rep.safe_interval_nonempty = true;
    rep.covers_decade = true;
    rep.contains_reference_interval = max_same < 1e-5;
  } else {
    rep.safe_interval_nonempty = max_same < min_diff;
    rep.covers_decade =
        rep.safe_interval_nonempty && min_diff >= 10.0 * std::max(
            max_same, std::numeric_limits<double>::min());
    rep.contains_reference_interval =
        max_same < 1e-5 && min_diff >= 1e-4;
  }
  return rep;
}

std::string classification_to_json(const ClassificationReport &r) {
  std::string out = "{\"n_trajs\":" + std::to_string(r.n_trajs) +
                    ",\"n_pairs\":" + std::to_string(r.n_pairs) +
                    ",\"safe_mu_lo\":" + io::format_double(r.safe_mu_lo) +
                    ",\"safe_mu_hi\":" + io::format_double(r.safe_mu_hi) +
                    ",\"safe_interval_nonempty\":" +
                    (r.safe_interval_nonempty ? "true" : "false") +
                    ",\"covers_decade\":" +
                    (r.covers_decade ? "true" : "false") +
                    ",\"contains_reference_interval\":" +
                    (r.contains_reference_interval ? "true" : "false") +
                    ",\"curve\":[";
  for (std::size_t i = 0; i < r.mu_grid.size(); ++i) {
    if (i)
      out += ",";
    out += "[" + io::format_double(r.mu_grid[i]) + "," +
           io::format_double(r.agreement[i]) + "]";
  }
  out += "]}\n";
  return out;
}

} // namespace trajtopo
