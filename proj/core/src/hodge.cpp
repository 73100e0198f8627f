#include "trajtopo/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace trajtopo {

namespace {

// 53-bit mantissa mapping keeps the stream identical across platforms;
// mt19937_64 itself is fully specified by the standard.
double to_unit_interval(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

struct JacobiResult {
  std::vector<double> values;
  int iters = 0;
  bool converged = false;
};

// Synchronous Jacobi for deg*x - sum_nbr(x) = -rhs, i.e.
// x[i] <- (sum_nbr x - rhs[i]) / deg[i], from x = 0.
JacobiResult jacobi_sweep(const std::vector<std::vector<int>> &adjacency,
                          const std::vector<double> &rhs,
                          const GossipConfig &cfg) {
  const int n = static_cast<int>(rhs.size());
  JacobiResult res;
  res.values.assign(n, 0.0);
  std::vector<double> next(n, 0.0);
  std::vector<char> frozen(n, 0);

  for (int round = 1; round <= cfg.max_rounds; ++round) {
    double max_delta = 0.0;
    int n_frozen = 0;
    for (int i = 0; i < n; ++i) {
      if (cfg.per_node_freeze && frozen[i]) {
        next[i] = res.values[i];
        ++n_frozen;
        continue;
      }
      double sum = 0.0;
      for (int j : adjacency[i])
        sum += res.values[j];
      double upd = (sum - rhs[i]) / static_cast<double>(adjacency[i].size());
      if (cfg.damping != 1.0)
        upd = (1.0 - cfg.damping) * res.values[i] + cfg.damping * upd;
      double delta = std::abs(upd - res.values[i]);
      max_delta = std::max(max_delta, delta);
      if (cfg.per_node_freeze && delta < cfg.eps) {
        frozen[i] = 1;
        ++n_frozen;
      }
      next[i] = upd;
    }
    res.values.swap(next);
    res.iters = round;
    if (cfg.per_node_freeze ? n_frozen == n : max_delta < cfg.eps) {
      res.converged = true;
      break;
    }
  }
  return res;
}

} // namespace

Cochain1 random_one_form(const SurfacePtr &s, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> u(s->V);
  for (int v = 0; v < s->V; ++v)
    u[v] = 2.0 * to_unit_interval(gen()) - 1.0;
  Cochain1 w(s);
  for (int e = 0; e < s->E(); ++e)
    w[e] = 0.5 * (u[s->edges[e].u] + u[s->edges[e].v]);
  return w;
}

ScalarSolve solve_f(const SurfacePtr &s, const Cochain1 &w,
                    const GossipConfig &cfg) {
  cfg.validate();
  if (!s->closed())
    throw validation_error("solve_f requires a closed surface (double-cover "
                           "bounded domains first)");
  std::vector<std::vector<int>> adj(s->V);
  for (int v = 0; v < s->V; ++v)
    for (const auto &ne : s->node_edges[v])
      adj[v].push_back(ne.nbr);
  Cochain0 rhs = delta1(w);
  auto r = jacobi_sweep(adj, rhs.values(), cfg);
  return {Cochain0(s, std::move(r.values)), r.iters, r.converged};
}

FaceSolve solve_g(const SurfacePtr &s, const Cochain1 &w,
                  const GossipConfig &cfg) {
  cfg.validate();
  if (!s->closed())
    throw validation_error("solve_g requires a closed surface");
  Cochain2 dw = d1(w);
  // Fixed point of g <- (sum_nbr g + d1(w)) / deg solves the dual-graph
  // system d1(delta2 g) = d1(w).
  std::vector<double> rhs(s->F());
  for (int f = 0; f < s->F(); ++f)
    rhs[f] = -dw[f];
  auto r = jacobi_sweep(s->dual_adjacency, rhs, cfg);
  return {Cochain2(s, std::move(r.values)), r.iters, r.converged};
}

ResidualNorms residual_norms(const Cochain1 &h) {
  const auto &s = *h.surface();
  ResidualNorms out;
  Cochain2 dh = d1(h);
  double ss = 0.0;
  for (int f = 0; f < s.F(); ++f) {
    out.dh_max = std::max(out.dh_max, std::abs(dh[f]));
    ss += dh[f] * dh[f];
  }
  if (s.F() > 0)
    out.dh_rms = std::sqrt(ss / s.F());
  Cochain0 divh = delta1(h);
  ss = 0.0;
  int count = 0;
  for (int v = 0; v < s.V; ++v) {
    if (!s.closed() && s.node_on_boundary[v])
      continue;
    out.delta_h_max = std::max(out.delta_h_max, std::abs(divh[v]));
    ss += divh[v] * divh[v];
    ++count;
  }
  if (count > 0)
    out.delta_h_rms = std::sqrt(ss / count);
  return out;
}

namespace {

DecompositionResult decompose_closed(const SurfacePtr &s, const Cochain1 &w,
                                     const GossipConfig &cfg) {
  DecompositionResult res;
  auto fs = solve_f(s, w, cfg);
  auto gs = solve_g(s, w, cfg);
  res.f = std::move(fs.values);
  res.g = std::move(gs.values);
  res.iters_f = fs.iters;
  res.iters_g = gs.iters;
  res.converged_f = fs.converged;
  res.converged_g = gs.converged;
  res.df = d0(res.f);
  res.dg = delta2(res.g);
  res.h = Cochain1(s);
  for (int e = 0; e < s->E(); ++e)
    res.h[e] = w[e] - res.df[e] - res.dg[e];
  long long dual_dirs = 0;
  for (const auto &da : s->dual_adjacency)
    dual_dirs += static_cast<long long>(da.size());
  res.messages = 2LL * s->E() * res.iters_f + dual_dirs * res.iters_g;
  return res;
}

} // namespace

DecompositionResult decompose(const DoubleCoverMap &m, const Cochain1 &w,
                              const GossipConfig &cfg) {
  Cochain1 lifted = mirror_one_form(w, m);
  DecompositionResult cover_res = decompose_closed(m.cover, lifted, cfg);

  DecompositionResult res;
  res.iters_f = cover_res.iters_f;
  res.iters_g = cover_res.iters_g;
  res.converged_f = cover_res.converged_f;
  res.converged_g = cover_res.converged_g;
  res.messages = cover_res.messages;
  res.f = restrict_zero_form(cover_res.f, m).values;
  res.g = restrict_two_form(cover_res.g, m).values;
  res.df = restrict_one_form(cover_res.df, m).values;
  res.dg = restrict_one_form(cover_res.dg, m).values;
  const auto &s = m.original;
  res.h = Cochain1(s);
  for (int e = 0; e < s->E(); ++e)
    res.h[e] = w[e] - res.df[e] - res.dg[e];
  ResidualNorms rn = residual_norms(res.h);
  res.err_dh = rn.dh_max;
  res.err_delta_h = rn.delta_h_max;
  res.err_dh_rms = rn.dh_rms;
  res.err_delta_h_rms = rn.delta_h_rms;
  return res;
}

DecompositionResult decompose(const SurfacePtr &s, const Cochain1 &w,
                              const GossipConfig &cfg) {
  if (!s->closed()) {
    DoubleCoverMap m = double_cover(s);
    return decompose(m, w, cfg);
  }
  DecompositionResult res = decompose_closed(s, w, cfg);
  ResidualNorms rn = residual_norms(res.h);
  res.err_dh = rn.dh_max;
  res.err_delta_h = rn.delta_h_max;
  res.err_dh_rms = rn.dh_rms;
  res.err_delta_h_rms = rn.delta_h_rms;
  return res;
}

} // namespace trajtopo
