#include "trajtopo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

namespace trajtopo {

void Trajectory::validate(const SurfacePtr &s) const {
  if (nodes.empty())
    throw validation_error("trajectory '" + id + "' is empty");
  for (int n : nodes)
    if (n < 0 || n >= s->V)
      throw validation_error("trajectory '" + id + "' references node " +
                             std::to_string(n) + " outside the surface");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (s->find_edge(nodes[i - 1], nodes[i]) < 0)
      throw validation_error("trajectory '" + id + "' hops " +
                             std::to_string(nodes[i - 1]) + "->" +
                             std::to_string(nodes[i]) +
                             " across a non-edge");
}

Trajectory Trajectory::reversed() const {
  Trajectory r{id + "_rev", nodes};
  std::reverse(r.nodes.begin(), r.nodes.end());
  return r;
}

double path_integral(const Cochain1 &w, const Trajectory &gamma) {
  double acc = 0.0;
  for (std::size_t i = 1; i < gamma.nodes.size(); ++i)
    acc += w.on(gamma.nodes[i - 1], gamma.nodes[i]);
  return acc;
}

TTuple t_tuple(const Trajectory &gamma, const HarmonicBasis &b) {
  if (gamma.nodes.empty())
    throw validation_error("cannot classify an empty trajectory");
  TTuple t;
  t.s = gamma.source();
  t.t = gamma.target();
  t.h.reserve(b.forms.size());
  for (const auto &w : b.forms)
    t.h.push_back(path_integral(w, gamma));
  return t;
}

double sigma(const Trajectory &g1, const Trajectory &g2,
             const HarmonicBasis &b) {
  if (g1.source() != g2.source() || g1.target() != g2.target())
    throw validation_error(
        "sigma requires shared endpoints: '" + g1.id + "' runs " +
        std::to_string(g1.source()) + "->" + std::to_string(g1.target()) +
        ", '" + g2.id + "' runs " + std::to_string(g2.source()) + "->" +
        std::to_string(g2.target()));
  double m = 0.0;
  for (const auto &w : b.forms)
    m = std::max(m, std::abs(path_integral(w, g1) - path_integral(w, g2)));
  return m;
}

bool same_class(const Trajectory &g1, const Trajectory &g2,
                const HarmonicBasis &b, const ClassifierConfig &cfg) {
  cfg.validate();
  return sigma(g1, g2, b) < cfg.mu;
}

double auto_mu(const std::vector<Trajectory> &trajs, const HarmonicBasis &b) {
  std::vector<double> ds;
  for (std::size_t i = 0; i < trajs.size(); ++i)
    for (std::size_t j = i + 1; j < trajs.size(); ++j)
      if (trajs[i].source() == trajs[j].source() &&
          trajs[i].target() == trajs[j].target())
        ds.push_back(sigma(trajs[i], trajs[j], b));
  if (ds.empty())
    return 1e-4;
  std::sort(ds.begin(), ds.end());
  // Distances below the solver tolerance are indistinguishable noise;
  // clamping to it keeps near-duplicate trajectories (sigma ~ 0) from
  // opening a spurious "largest gap" inside the noise cluster.
  const double floor = std::max(b.eps, 1e-12);
  double best_ratio = 0.0, best_mu = 0.0;
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    double lo = std::max(ds[i], floor);
    double hi = std::max(ds[i + 1], floor);
    double r = hi / lo;
    if (r > best_ratio) {
      best_ratio = r;
      best_mu = std::sqrt(lo * hi);
    }
  }
  if (best_ratio >= 10.0)
    return best_mu;
  // One cluster only: tiny values mean everything is homologous, large
  // ones mean nothing is.
  return ds.back() <= 1e-4 ? 10.0 * std::max(ds.back(), 1e-12)
                           : std::max(ds.front() / 10.0, 1e-12);
}

WindingVector winding_vector(const Trajectory &cycle,
                             const HarmonicBasis &b) {
  if (cycle.nodes.size() < 2 || cycle.source() != cycle.target())
    throw validation_error("winding_vector needs a closed walk");
  if (!b.canonical)
    throw validation_error(
        "winding_vector needs a canonical (unit-period) basis");
  WindingVector wv;
  wv.winds.reserve(b.forms.size());
  for (const auto &w : b.forms) {
    double a = path_integral(w, cycle);
    double r = std::round(a);
    wv.winds.push_back(static_cast<long long>(r));
    wv.residual = std::max(wv.residual, std::abs(a - r));
  }
  return wv;
}

namespace {

int uf_find(std::vector<int> &p, int x) {
  while (p[x] != x) {
    p[x] = p[p[x]];
    x = p[x];
  }
  return x;
}

} // namespace

BucketReport bucketize(const std::vector<Trajectory> &trajs,
                       const HarmonicBasis &b, const ClassifierConfig &cfg) {
  cfg.validate();
  if (cfg.quantize && !b.canonical)
    throw validation_error("quantized bucketing needs a canonical basis");

  // Group indices by endpoint pair first; classes never cross (s, t).
  std::map<std::pair<int, int>, std::vector<int>> by_st;
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    const auto &g = trajs[i];
    if (g.nodes.empty())
      throw validation_error("trajectory '" + g.id + "' is empty");
    by_st[{g.source(), g.target()}].push_back(static_cast<int>(i));
  }

  std::vector<double> h0; // per-form integrals of the group's reference
  BucketReport rep;
  int anon = 0;
  for (auto &[st, idx] : by_st) {
    std::map<std::string, std::vector<int>> keyed;
    if (cfg.quantize) {
      // Integrals relative to the group's first trajectory are near
      // integers for a canonical basis; the rounded vector is the key.
      h0.assign(b.forms.size(), 0.0);
      for (std::size_t k = 0; k < b.forms.size(); ++k)
        h0[k] = path_integral(b.forms[k], trajs[idx.front()]);
      for (int i : idx) {
        std::string key;
        for (std::size_t k = 0; k < b.forms.size(); ++k) {
          double a = path_integral(b.forms[k], trajs[i]) - h0[k];
          double r = std::round(a);
          if (std::abs(a - r) > 0.25)
            ++rep.near_threshold_pairs;
          key += (k ? "," : "") + std::to_string(static_cast<long long>(r));
        }
        keyed["w[" + key + "]"].push_back(i);
      }
    } else {
      std::vector<int> parent(idx.size());
      std::iota(parent.begin(), parent.end(), 0);
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t c = a + 1; c < idx.size(); ++c) {
          double d = sigma(trajs[idx[a]], trajs[idx[c]], b);
          if (std::abs(d - cfg.mu) <= 0.1 * cfg.mu)
            ++rep.near_threshold_pairs;
          if (d < cfg.mu) {
            int ra = uf_find(parent, static_cast<int>(a));
            int rc = uf_find(parent, static_cast<int>(c));
            if (ra != rc)
              parent[std::max(ra, rc)] = std::min(ra, rc);
          }
        }
      for (std::size_t a = 0; a < idx.size(); ++a)
        keyed["c" + std::to_string(uf_find(parent, static_cast<int>(a)))]
            .push_back(idx[a]);
    }
    for (auto &[key, members] : keyed) {
      Bucket bk;
      bk.key = cfg.quantize ? key : "c" + std::to_string(anon++);
      bk.s = st.first;
      bk.t = st.second;
      for (int i : members)
        bk.ids.push_back(trajs[i].id);
      std::sort(bk.ids.begin(), bk.ids.end());
      rep.buckets.push_back(std::move(bk));
    }
  }

  std::sort(rep.buckets.begin(), rep.buckets.end(),
            [](const Bucket &a, const Bucket &b2) {
              return std::tie(a.s, a.t, a.key) < std::tie(b2.s, b2.t, b2.key);
            });
  rep.n_buckets = static_cast<int>(rep.buckets.size());
  for (const auto &bk : rep.buckets) {
    rep.max_bucket = std::max(rep.max_bucket, static_cast<int>(bk.ids.size()));
    if (bk.ids.size() == 1)
      ++rep.n_singletons;
  }
  return rep;
}

std::vector<int> shortest_path(const SurfacePtr &s, int from, int to) {
  if (from < 0 || from >= s->V || to < 0 || to >= s->V)
    throw validation_error("shortest_path endpoint outside the surface");
  if (from == to)
    return {from};
  std::vector<int> prev(s->V, -1);
  std::queue<int> q;
  prev[from] = from;
  q.push(from);
  while (!q.empty() && prev[to] < 0) {
    int v = q.front();
    q.pop();
    for (const auto &ne : s->node_edges[v]) // sorted: lowest-id ties win
      if (prev[ne.nbr] < 0) {
        prev[ne.nbr] = v;
        q.push(ne.nbr);
      }
  }
  if (prev[to] < 0)
    throw validation_error("no path between nodes " + std::to_string(from) +
                           " and " + std::to_string(to));
  std::vector<int> path;
  for (int v = to; v != from; v = prev[v])
    path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

SnapResult snap_trace(const std::vector<std::array<double, 2>> &points,
                      const SurfacePtr &s, const std::string &id,
                      double snap_radius) {
  if (!s->has_coords())
    throw validation_error("snap_trace needs node coordinates");
  if (points.empty())
    throw validation_error("snap_trace got an empty trace");

  if (snap_radius <= 0.0) {
    std::vector<double> lens;
    lens.reserve(s->edges.size());
    for (const auto &e : s->edges) {
      double dx = s->coords[e.v][0] - s->coords[e.u][0];
      double dy = s->coords[e.v][1] - s->coords[e.u][1];
      lens.push_back(std::hypot(dx, dy));
    }
    std::nth_element(lens.begin(), lens.begin() + lens.size() / 2, lens.end());
    snap_radius = 3.0 * lens[lens.size() / 2];
  }

  SnapResult res;
  res.traj.id = id;
  int last = -1;
  for (const auto &p : points) {
    int best = -1;
    double bd = std::numeric_limits<double>::max();
    for (int v = 0; v < s->V; ++v) {
      double d = std::hypot(p[0] - s->coords[v][0], p[1] - s->coords[v][1]);
      if (d < bd) {
        bd = d;
        best = v;
      }
    }
    res.max_snap_dist = std::max(res.max_snap_dist, bd);
    if (bd > snap_radius)
      ++res.far_points;
    if (best == last)
      continue;
    if (last < 0) {
      res.traj.nodes.push_back(best);
    } else {
      auto hop = shortest_path(s, last, best);
      res.traj.nodes.insert(res.traj.nodes.end(), hop.begin() + 1, hop.end());
    }
    last = best;
  }
  if (res.traj.nodes.size() < 2)
    throw validation_error("trace '" + id +
                           "' snaps to fewer than two distinct nodes");
  return res;
}

} // namespace trajtopo
