// Command-line front end: generation, decomposition, basis building,
// classification, oracle checks and experiment sweeps over the shared
// file formats. Exit codes: 0 ok, 1 usage, 2 bad data, 3 non-convergence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trajtopo/basis.hpp"
#include "trajtopo/classify.hpp"
#include "trajtopo/double_cover.hpp"
#include "trajtopo/hodge.hpp"
#include "trajtopo/io.hpp"
#include "trajtopo/netgen.hpp"
#include "trajtopo/oracle.hpp"
#include "trajtopo/simharness.hpp"
#include "trajtopo/surface.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace trajtopo;

namespace {

void write_json(const fs::path &p, const json &j) {
  io::atomic_write(p, j.dump(2) + "\n");
}

json load_json(const fs::path &p) {
  try {
    return json::parse(io::read_file(p));
  } catch (const json::exception &e) {
    throw Error(ErrorKind::Validation,
                "malformed JSON in '" + p.string() + "': " + e.what());
  }
}

json spec_to_json(const MuseumSpec &spec) {
  return json{{"rooms", spec.rooms},
              {"width", spec.width},
              {"height", spec.height},
              {"target_nodes", spec.target_nodes},
              {"jitter", spec.jitter},
              {"levels", spec.levels},
              {"ladders", spec.ladders},
              {"seed", spec.seed}};
}

MuseumSpec spec_from_json(const json &j) {
  MuseumSpec s;
  s.rooms = j.value("rooms", s.rooms);
  s.width = j.value("width", s.width);
  s.height = j.value("height", s.height);
  s.target_nodes = j.value("target_nodes", s.target_nodes);
  s.jitter = j.value("jitter", s.jitter);
  s.levels = j.value("levels", s.levels);
  s.ladders = j.value("ladders", s.ladders);
  s.seed = j.value("seed", s.seed);
  return s;
}

json museum_to_json(const MuseumDomain &m, const MuseumSpec &spec,
                    const std::string &mesh_rel) {
  json j;
  j["spec"] = spec_to_json(spec);
  j["mesh"] = mesh_rel;
  j["rooms"] = m.rooms;
  j["entrance"] = m.entrance;
  j["exit"] = m.exit;
  j["room_nodes"] = m.room_nodes;
  auto &doors = j["doors"] = json::array();
  for (const auto &d : m.doors)
    doors.push_back({d.room_a, d.room_b, d.node});
  auto &anchors = j["anchors"] = json::array();
  for (const auto &a : m.anchors)
    anchors.push_back({a[0], a[1]});
  auto &walls = j["walls"] = json::array();
  for (const auto &w : m.walls)
    walls.push_back({w.x0, w.y0, w.x1, w.y1});
  return j;
}

MuseumDomain museum_from_json(const json &j, const fs::path &base_dir) {
  MuseumDomain m;
  fs::path mesh = base_dir / j.at("mesh").get<std::string>();
  m.surface = io::load_surface(mesh);
  m.rooms = j.at("rooms").get<int>();
  m.entrance = j.at("entrance").get<int>();
  m.exit = j.at("exit").get<int>();
  m.room_nodes = j.at("room_nodes").get<std::vector<std::vector<int>>>();
  for (const auto &d : j.at("doors"))
    m.doors.push_back({d.at(0).get<int>(), d.at(1).get<int>(),
                       d.at(2).get<int>()});
  for (const auto &a : j.at("anchors"))
    m.anchors.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
  for (const auto &w : j.at("walls"))
    m.walls.push_back({w.at(0).get<double>(), w.at(1).get<double>(),
                       w.at(2).get<double>(), w.at(3).get<double>()});
  return m;
}

json bucket_report_to_json(const BucketReport &rep) {
  json j;
  j["n_buckets"] = rep.n_buckets;
  j["max_bucket"] = rep.max_bucket;
  j["n_singletons"] = rep.n_singletons;
  j["near_threshold_pairs"] = rep.near_threshold_pairs;
  auto &bs = j["buckets"] = json::array();
  for (const auto &b : rep.buckets)
    bs.push_back({{"key", b.key}, {"s", b.s}, {"t", b.t}, {"ids", b.ids}});
  return j;
}

// ---- subcommand bodies ------------------------------------------------

struct GenGridArgs {
  int nodes = 400, holes = 0;
  double width = 1.0, height = 1.0, jitter = 0.3;
  std::uint64_t seed = 0;
  std::string out, meta_out;
};

void cmd_gen_grid(const GenGridArgs &a) {
  DomainSpec d;
  d.width = a.width;
  d.height = a.height;
  d.holes = auto_holes(a.holes, a.width, a.height);
  d.jitter = a.jitter;
  d.target_nodes = a.nodes;
  d.seed = a.seed;
  auto g = grid_domain(d);
  io::save_surface(*g.surface, a.out);
  if (!a.meta_out.empty()) {
    json j;
    j["mesh"] = a.out;
    j["holes"] = a.holes;
    auto &anchors = j["anchors"] = json::array();
    for (const auto &p : g.anchors)
      anchors.push_back({p[0], p[1]});
    write_json(a.meta_out, j);
  }
  std::cout << json{{"nodes", g.surface->V},
                    {"edges", g.surface->E()},
                    {"faces", g.surface->F()},
                    {"holes", static_cast<int>(g.surface->hole_loops.size())},
                    {"mesh", a.out}}
                   .dump()
            << "\n";
}

struct GenMuseumArgs {
  MuseumSpec spec;
  std::string out, museum_out;
};

void cmd_gen_museum(const GenMuseumArgs &a) {
  if (a.spec.levels > 1) {
    auto mf = multifloor_domain(a.spec);
    io::save_surface(*mf.surface, a.out);
    if (!a.museum_out.empty()) {
      json j;
      j["spec"] = spec_to_json(a.spec);
      j["mesh"] = fs::path(a.out).filename().string();
      j["levels"] = mf.levels;
      j["entrance"] = mf.entrance;
      j["exit"] = mf.exit;
      j["floor_nodes"] = mf.floor_nodes;
      write_json(a.museum_out, j);
    }
    std::cout << json{{"nodes", mf.surface->V},
                      {"euler", mf.surface->euler()},
                      {"genus", mf.surface->genus()},
                      {"boundary_loops",
                       static_cast<int>(mf.surface->boundary_loops.size())},
                      {"mesh", a.out}}
                     .dump()
              << "\n";
    return;
  }
  auto m = museum_domain(a.spec);
  io::save_surface(*m.surface, a.out);
  if (a.museum_out.empty())
    throw Error(ErrorKind::Usage, "--museum-out is required for level-1 "
                                  "museums (gen trajs reads it)");
  write_json(a.museum_out,
             museum_to_json(m, a.spec, fs::path(a.out).filename().string()));
  std::cout << json{{"nodes", m.surface->V},
                    {"rooms", m.rooms},
                    {"obstacles", static_cast<int>(m.walls.size())},
                    {"mesh", a.out},
                    {"museum", a.museum_out}}
                   .dump()
            << "\n";
}

struct GenTrajsArgs {
  std::string museum, out;
  int n = 20;
  std::uint64_t seed = 0;
};

void cmd_gen_trajs(const GenTrajsArgs &a) {
  auto j = load_json(a.museum);
  auto m = museum_from_json(j, fs::path(a.museum).parent_path());
  auto ts = museum_trajectories(m, a.n, a.seed);
  io::save_trajectories(ts, a.out);
  std::cout << json{{"trajectories", static_cast<int>(ts.size())},
                    {"out", a.out}}
                   .dump()
            << "\n";
}

struct DecomposeArgs {
  std::string mesh, form_in, h_out;
  double eps = 1e-6;
  int max_rounds = 200000;
  std::uint64_t seed = 0;
};

void cmd_decompose(const DecomposeArgs &a) {
  auto s = io::load_surface(a.mesh);
  Cochain1 w = a.form_in.empty() ? random_one_form(s, a.seed)
                                 : io::load_one_form(a.form_in, s);
  GossipConfig cfg;
  cfg.eps = a.eps;
  cfg.max_rounds = a.max_rounds;
  auto dec = decompose(s, w, cfg);
  if (!dec.converged())
    throw Error(ErrorKind::NonConvergence,
                "gossip did not converge within " +
                    std::to_string(a.max_rounds) + " rounds");
  if (!a.h_out.empty())
    io::save_one_form(dec.h, a.h_out);
  std::cout << json{{"iters_f", dec.iters_f},
                    {"iters_g", dec.iters_g},
                    {"err_dh", dec.err_dh},
                    {"err_delta_h", dec.err_delta_h},
                    {"messages", dec.messages}}
                   .dump()
            << "\n";
}

struct BasisArgs {
  std::string mesh, out;
  double eps = 1e-6;
  int max_rounds = 200000;
  int confirmations = 5;
  std::uint64_t seed = 1;
  bool no_canonical = false;
};

void cmd_basis_build(const BasisArgs &a) {
  auto s = io::load_surface(a.mesh);
  BasisConfig cfg;
  cfg.gossip.eps = a.eps;
  cfg.gossip.max_rounds = a.max_rounds;
  cfg.gossip.seed = a.seed;
  cfg.confirmations = a.confirmations;
  auto b = build_basis(s, cfg);
  if (!a.no_canonical)
    b = canonicalize(b, s->hole_loop_nodes());
  io::save_basis(b, a.out);
  std::cout << json{{"k", b.k()},
                    {"canonical", b.canonical},
                    {"out", a.out}}
                   .dump()
            << "\n";
}

struct ClassifyArgs {
  std::string mesh, basis, trajs, out;
  double mu = 0.0; // 0 = auto
  bool quantize = false;
};

void cmd_classify(const ClassifyArgs &a) {
  auto s = io::load_surface(a.mesh);
  auto b = io::load_basis(a.basis, s);
  auto ts = io::load_trajectories(a.trajs);
  for (const auto &t : ts)
    t.validate(s);
  ClassifierConfig cfg;
  cfg.mu = a.mu > 0 ? a.mu : auto_mu(ts, b);
  cfg.quantize = a.quantize;
  auto rep = bucketize(ts, b, cfg);
  auto j = bucket_report_to_json(rep);
  j["mu"] = cfg.mu;
  j["mu_mode"] = a.mu > 0 ? "fixed" : "auto";
  if (!a.out.empty())
    write_json(a.out, j);
  std::cout << json{{"n_buckets", rep.n_buckets},
                    {"max_bucket", rep.max_bucket},
                    {"n_singletons", rep.n_singletons},
                    {"mu", cfg.mu}}
                   .dump()
            << "\n";
}

struct OracleArgs {
  std::string mesh, trajs;
  double compare_eps = 0.0; // > 0: gossip-vs-direct harmonic part check
  std::uint64_t seed = 0;
};

void cmd_oracle_check(const OracleArgs &a) {
  auto s = io::load_surface(a.mesh);
  json j;
  j["nodes"] = s->V;
  j["edges"] = s->E();
  j["faces"] = s->F();
  j["euler"] = s->euler();
  j["first_betti"] = s->first_betti();
  j["harmonic_dim"] = oracle::harmonic_dim(s);
  if (!a.trajs.empty()) {
    auto ts = io::load_trajectories(a.trajs);
    oracle::TreeCotree tc(s);
    const oracle::HomologySignature zero{
        std::vector<long long>(tc.rank(), 0)};
    // Count homology classes among same-endpoint trajectories.
    std::vector<int> reps;
    for (std::size_t t = 0; t < ts.size(); ++t) {
      ts[t].validate(s);
      bool found = false;
      for (int r : reps) {
        const auto &o = ts[r];
        if (o.source() == ts[t].source() && o.target() == ts[t].target() &&
            tc.pair_signature(ts[t].nodes, o.nodes) == zero) {
          found = true;
          break;
        }
      }
      if (!found)
        reps.push_back(static_cast<int>(t));
    }
    j["trajectories"] = static_cast<int>(ts.size());
    j["homology_classes"] = static_cast<int>(reps.size());
  }
  if (a.compare_eps > 0) {
    auto w = random_one_form(s, a.seed);
    GossipConfig cfg;
    cfg.eps = a.compare_eps;
    auto gossip = decompose(s, w, cfg);
    auto direct = oracle::direct_solve(s, w);
    double diff = 0;
    for (int e = 0; e < s->E(); ++e)
      diff = std::max(diff, std::abs(gossip.h[e] - direct.h[e]));
    j["h_gossip_vs_direct_max"] = diff;
    j["gossip_converged"] = gossip.converged();
  }
  std::cout << j.dump() << "\n";
}

struct SimArgs {
  std::string spec, out_dir;
};

ExperimentSpec experiment_from_json(const json &j, const ExperimentSpec &def) {
  ExperimentSpec s = def;
  s.hole_counts = j.value("holes", s.hole_counts);
  s.node_counts = j.value("nodes", s.node_counts);
  s.eps_values = j.value("eps", s.eps_values);
  s.seeds_per_cell = j.value("seeds", s.seeds_per_cell);
  s.base_seed = j.value("base_seed", s.base_seed);
  s.jitter = j.value("jitter", s.jitter);
  s.max_rounds = j.value("max_rounds", s.max_rounds);
  return s;
}

void print_rows(const SweepResult &r) {
  std::cout << rows_to_csv(r.rows);
}

void cmd_sim(const std::string &which, const SimArgs &a) {
  json j = a.spec.empty() ? json::object() : load_json(a.spec);
  if (which == "fig8") {
    int holes = j.value("holes", 3);
    std::vector<int> nodes = j.value("nodes", std::vector<int>{3000, 85});
    double eps = j.value("eps", 5e-6);
    int n_classes = j.value("classes", 4);
    int per_class = j.value("per_class", 5);
    std::uint64_t seed = j.value("seed", std::uint64_t{1});
    json out = json::array();
    for (int nv : nodes) {
      DomainSpec d;
      d.holes = auto_holes(holes, d.width, d.height);
      d.target_nodes = nv;
      d.seed = seed;
      auto g = grid_domain(d);
      int src = 0, dst = g.surface->V - 1;
      auto ts = classed_trajectories(g.surface, src, dst, n_classes,
                                     per_class, seed);
      BasisConfig bc;
      bc.gossip.eps = eps;
      bc.gossip.seed = seed;
      auto basis = canonicalize(build_basis(g.surface, bc),
                                g.surface->hole_loop_nodes());
      auto rep = run_classification_study(g.surface, ts, basis);
      json cell = json::parse(classification_to_json(rep));
      cell["nodes"] = g.surface->V;
      out.push_back(cell);
    }
    if (!a.out_dir.empty())
      write_json(fs::path(a.out_dir) / "fig8.json", out);
    std::cout << out.dump() << "\n";
    return;
  }

  ExperimentSpec def;
  def.out_dir = a.out_dir;
  if (which == "table1") {
    def.hole_counts = {6};
    def.node_counts = {3000};
    def.eps_values = {5e-3};
    def.seeds_per_cell = 20;
    auto r = run_randomness_study(experiment_from_json(j, def));
    print_rows(r);
  } else if (which == "fig6") {
    def.hole_counts = {1, 3, 6};
    def.node_counts = {400};
    def.eps_values = {5e-2, 5e-3, 5e-4};
    def.seeds_per_cell = 5;
    auto r = run_convergence_sweep(experiment_from_json(j, def));
    print_rows(r);
  } else { // fig7
    def.hole_counts = {3};
    def.node_counts = {500, 1000, 2000};
    def.eps_values = {5e-2, 5e-3, 5e-4};
    def.seeds_per_cell = 5;
    auto r = run_accuracy_sweep(experiment_from_json(j, def));
    print_rows(r);
  }
}

struct PipelineArgs {
  std::string spec, out_dir;
};

void cmd_pipeline(const PipelineArgs &a) {
  json spec = load_json(a.spec);
  fs::path out(a.out_dir);
  fs::create_directories(out);
  json summary;

  MuseumSpec ms = spec_from_json(spec.value("museum", json::object()));
  auto m = museum_domain(ms);
  io::save_surface(*m.surface, out / "museum.mesh");
  write_json(out / "museum.json", museum_to_json(m, ms, "museum.mesh"));
  summary["mesh"] = "museum.mesh";
  summary["nodes"] = m.surface->V;
  summary["obstacles"] = static_cast<int>(m.walls.size());

  BasisConfig bc;
  bc.gossip.eps = spec.value("eps", 1e-6);
  bc.gossip.seed = spec.value("basis_seed", std::uint64_t{1});
  auto basis = canonicalize(build_basis(m.surface, bc),
                            m.surface->hole_loop_nodes());
  io::save_basis(basis, out / "basis.json");
  summary["k"] = basis.k();

  int n = spec.value("n_trajs", 50);
  auto ts = museum_trajectories(m, n, spec.value("traj_seed",
                                                 std::uint64_t{7}));
  io::save_trajectories(ts, out / "trajs.jsonl");
  summary["trajectories"] = static_cast<int>(ts.size());

  ClassifierConfig cc;
  double mu = spec.value("mu", 0.0);
  cc.mu = mu > 0 ? mu : auto_mu(ts, basis);
  cc.quantize = spec.value("quantize", true);
  auto rep = bucketize(ts, basis, cc);
  write_json(out / "buckets.json", bucket_report_to_json(rep));
  summary["mu"] = cc.mu;
  summary["n_buckets"] = rep.n_buckets;

  // Oracle verification: bucketing must match the geometric ground truth.
  std::map<std::string, std::vector<std::string>> truth;
  for (const auto &t : ts) {
    auto sig = side_signature(t, m.surface, m.anchors);
    std::string key;
    for (long long w : sig.winds)
      key += std::to_string(w) + ",";
    truth[key].push_back(t.id);
  }
  bool match = truth.size() == static_cast<std::size_t>(rep.n_buckets);
  if (match) {
    std::set<std::vector<std::string>> a_sets, b_sets;
    for (auto &[k, ids] : truth) {
      std::sort(ids.begin(), ids.end());
      a_sets.insert(ids);
    }
    for (const auto &b : rep.buckets)
      b_sets.insert(b.ids);
    match = a_sets == b_sets;
  }
  summary["truth_classes"] = static_cast<int>(truth.size());
  summary["matches_ground_truth"] = match;

  auto cls = run_classification_study(m.surface, ts, basis);
  io::atomic_write(out / "classification.json", classification_to_json(cls));
  summary["agreement_pairs"] = cls.n_pairs;
  summary["safe_mu_lo"] = cls.safe_mu_lo;
  summary["safe_mu_hi"] = cls.safe_mu_hi;
  summary["safe_interval_nonempty"] = cls.safe_interval_nonempty;

  write_json(out / "summary.json", summary);
  std::cout << summary.dump() << "\n";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"combinatorial-topology toolkit: harmonic 1-forms and "
               "trajectory homology on triangulated sensor domains"};
  app.require_subcommand(1);
  app.set_config("--config");

  // gen
  auto *gen = app.add_subcommand("gen", "generate domains and trajectories");
  gen->require_subcommand(1);

  GenGridArgs gg;
  auto *gen_grid = gen->add_subcommand(
      "grid", "jittered triangulated grid with rectangular holes");
  gen_grid->add_option("--nodes", gg.nodes, "target node count");
  gen_grid->add_option("--holes", gg.holes, "number of auto-placed holes");
  gen_grid->add_option("--width", gg.width);
  gen_grid->add_option("--height", gg.height);
  gen_grid->add_option("--jitter", gg.jitter, "in [0, 0.5) grid spacings");
  gen_grid->add_option("--seed", gg.seed);
  gen_grid->add_option("--out", gg.out, "mesh output path")->required();
  gen_grid->add_option("--meta-out", gg.meta_out, "hole anchors JSON");
  gen_grid->callback([&] { cmd_gen_grid(gg); });

  GenMuseumArgs gm;
  auto *gen_museum = gen->add_subcommand(
      "museum", "stacked-room museum; levels > 1 builds the glued "
                "multi-floor surface");
  gen_museum->add_option("--rooms", gm.spec.rooms);
  gen_museum->add_option("--nodes", gm.spec.target_nodes);
  gen_museum->add_option("--width", gm.spec.width);
  gen_museum->add_option("--height", gm.spec.height);
  gen_museum->add_option("--jitter", gm.spec.jitter);
  gen_museum->add_option("--levels", gm.spec.levels);
  gen_museum->add_option("--ladders", gm.spec.ladders);
  gen_museum->add_option("--seed", gm.spec.seed);
  gen_museum->add_option("--out", gm.out, "mesh output path")->required();
  gen_museum->add_option("--museum-out", gm.museum_out,
                         "museum layout JSON (rooms, doors, anchors)");
  gen_museum->callback([&] { cmd_gen_museum(gm); });

  GenTrajsArgs gt;
  auto *gen_trajs = gen->add_subcommand(
      "trajs", "two-level random museum walks (rooms, then waypoints)");
  gen_trajs->add_option("--museum", gt.museum, "museum layout JSON")
      ->required();
  gen_trajs->add_option("-n,--count", gt.n);
  gen_trajs->add_option("--seed", gt.seed);
  gen_trajs->add_option("--out", gt.out, "JSONL output path")->required();
  gen_trajs->callback([&] { cmd_gen_trajs(gt); });

  // decompose
  DecomposeArgs da;
  auto *dec = app.add_subcommand(
      "decompose", "gossip Hodge decomposition of a 1-form");
  dec->add_option("--mesh", da.mesh)->required();
  dec->add_option("--form", da.form_in, "input 1-form (default: random)");
  dec->add_option("--seed", da.seed, "seed for the random 1-form");
  dec->add_option("--eps", da.eps);
  dec->add_option("--max-rounds", da.max_rounds);
  dec->add_option("--h-out", da.h_out, "write the harmonic part here");
  dec->callback([&] { cmd_decompose(da); });

  // basis build
  auto *basis = app.add_subcommand("basis", "harmonic basis operations");
  basis->require_subcommand(1);
  BasisArgs ba;
  auto *bb = basis->add_subcommand("build",
                                   "randomized harmonic basis with rank "
                                   "confirmation; canonical by default");
  bb->add_option("--mesh", ba.mesh)->required();
  bb->add_option("--eps", ba.eps);
  bb->add_option("--max-rounds", ba.max_rounds);
  bb->add_option("--confirmations", ba.confirmations);
  bb->add_option("--seed", ba.seed);
  bb->add_flag("--no-canonical", ba.no_canonical,
               "skip period-matrix canonicalization");
  bb->add_option("--out", ba.out)->required();
  bb->callback([&] { cmd_basis_build(ba); });

  // classify
  ClassifyArgs ca;
  auto *cls = app.add_subcommand("classify",
                                 "bucket trajectories by homology class");
  cls->add_option("--mesh", ca.mesh)->required();
  cls->add_option("--basis", ca.basis)->required();
  cls->add_option("--trajs", ca.trajs)->required();
  cls->add_option("--mu", ca.mu, "same-class threshold (0 = auto)");
  cls->add_flag("--quantize", ca.quantize,
                "integer-winding keys (canonical basis)");
  cls->add_option("--out", ca.out, "full bucket report JSON");
  cls->callback([&] { cmd_classify(ca); });

  // oracle check
  auto *orc = app.add_subcommand("oracle", "centralized ground-truth checks");
  orc->require_subcommand(1);
  OracleArgs oa;
  auto *ochk = orc->add_subcommand("check",
                                   "harmonic dimension, Betti numbers, "
                                   "optional gossip-vs-direct comparison");
  ochk->add_option("--mesh", oa.mesh)->required();
  ochk->add_option("--trajs", oa.trajs);
  ochk->add_option("--compare-eps", oa.compare_eps,
                   "also run gossip at this eps and compare harmonic parts");
  ochk->add_option("--seed", oa.seed);
  ochk->callback([&] { cmd_oracle_check(oa); });

  // sim
  auto *sim = app.add_subcommand("sim", "experiment sweeps");
  sim->require_subcommand(1);
  SimArgs sa;
  for (const char *name : {"table1", "fig6", "fig7", "fig8"}) {
    auto *sc = sim->add_subcommand(
        name, std::string("sweep preset '") + name + "' (see README)");
    sc->add_option("--spec", sa.spec, "JSON overrides");
    sc->add_option("--out", sa.out_dir, "output directory");
    sc->callback([&sa, name] { cmd_sim(name, sa); });
  }

  // pipeline
  PipelineArgs pa;
  auto *pipe = app.add_subcommand(
      "pipeline", "generate -> basis -> trajectories -> classify -> verify");
  pipe->add_option("--spec", pa.spec, "pipeline JSON spec")->required();
  pipe->add_option("--out", pa.out_dir, "output directory")->required();
  pipe->callback([&] { cmd_pipeline(pa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << json{{"error", e.what()}, {"kind", 1}}.dump() << "\n";
    return 1;
  } catch (const Error &e) {
    std::cerr << json{{"error", e.what()},
                      {"kind", static_cast<int>(e.kind())}}
                     .dump()
              << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception &e) {
    std::cerr << json{{"error", e.what()}, {"kind", 2}}.dump() << "\n";
    return 2;
  }
  return 0;
}
