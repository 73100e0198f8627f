#include "trajtopo/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <deque>

namespace trajtopo {
namespace oracle {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

Eigen::VectorXd cg_solve(const SpMat &A, const Eigen::VectorXd &b) {
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-14);
  cg.setMaxIterations(50 * A.rows() + 1000);
  cg.compute(A);
  Eigen::VectorXd x = cg.solve(b);
  if (!x.allFinite())
    throw validation_error("direct solver breakdown");
  return x;
}

} // namespace

DecompositionResult direct_solve(const SurfacePtr &s, const Cochain1 &w) {
  const int V = s->V, E = s->E(), F = s->F();
  if (V > 5000)
    throw validation_error("direct_solve is budgeted for <= 5000 nodes");

  // Node system: graph Laplacian, L f = -delta1(w).
  std::vector<Triplet> lt;
  for (int e = 0; e < E; ++e) {
    int u = s->edges[e].u, v = s->edges[e].v;
    lt.emplace_back(u, u, 1.0);
    lt.emplace_back(v, v, 1.0);
    lt.emplace_back(u, v, -1.0);
    lt.emplace_back(v, u, -1.0);
  }
  SpMat L(V, V);
  L.setFromTriplets(lt.begin(), lt.end());
  Cochain0 div = delta1(w);
  Eigen::VectorXd bf(V);
  for (int v = 0; v < V; ++v)
    bf[v] = -div[v];
  Eigen::VectorXd fx = cg_solve(L, bf);

  // Face system: dual Laplacian with absent faces as zero-valued, so the
  // diagonal is always 3 (one per face edge); A g = d1(w). Nonsingular on
  // bounded surfaces, singular-but-consistent on closed ones.
  std::vector<Triplet> at;
  for (int f = 0; f < F; ++f)
    at.emplace_back(f, f, 3.0);
  for (int e = 0; e < E; ++e) {
    int l = s->edge_faces[e][0], r = s->edge_faces[e][1];
    // Boundary edges couple to the zero-valued absent side: diagonal only.
    if (l >= 0 && r >= 0) {
      at.emplace_back(l, r, -1.0);
      at.emplace_back(r, l, -1.0);
    }
  }
  SpMat A(F, F);
  A.setFromTriplets(at.begin(), at.end());
  Cochain2 dw = d1(w);
  Eigen::VectorXd bg(F);
  for (int f = 0; f < F; ++f)
    bg[f] = dw[f];
  Eigen::VectorXd gx = cg_solve(A, bg);

  DecompositionResult res;
  res.f = Cochain0(s, std::vector<double>(fx.data(), fx.data() + V));
  res.g = Cochain2(s, std::vector<double>(gx.data(), gx.data() + F));
  res.df = d0(res.f);
  res.dg = delta2(res.g);
  res.h = Cochain1(s);
  for (int e = 0; e < E; ++e)
    res.h[e] = w[e] - res.df[e] - res.dg[e];
  res.converged_f = res.converged_g = true;
  ResidualNorms rn = residual_norms(res.h);
  res.err_dh = rn.dh_max;
  res.err_delta_h = rn.delta_h_max;
  res.err_dh_rms = rn.dh_rms;
  res.err_delta_h_rms = rn.delta_h_rms;
  return res;
}

int harmonic_dim(const SurfacePtr &s) {
  const int V = s->V, E = s->E(), F = s->F();
  if (E > 2000)
    throw validation_error("harmonic_dim is budgeted for <= 2000 edges");
  Eigen::MatrixXd B1 = Eigen::MatrixXd::Zero(E, V); // d0
  for (int e = 0; e < E; ++e) {
    B1(e, s->edges[e].u) = -1.0;
    B1(e, s->edges[e].v) = 1.0;
  }
  Eigen::MatrixXd B2 = Eigen::MatrixXd::Zero(F, E); // d1
  for (int f = 0; f < F; ++f)
    for (const auto &fe : s->face_edges[f])
      B2(f, fe.edge) += fe.sign;
  Eigen::MatrixXd lap1 = B1 * B1.transpose() + B2.transpose() * B2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap1,
                                                    Eigen::EigenvaluesOnly);
  const auto &ev = es.eigenvalues();
  double lmax = std::max(1e-30, ev[E - 1]);
  int nullity = 0;
  for (int i = 0; i < E; ++i)
    if (ev[i] < 1e-8 * lmax)
      ++nullity;
  return nullity;
}

TreeCotree::TreeCotree(SurfacePtr s) : s_(std::move(s)) {
  const int V = s_->V, E = s_->E(), F = s_->F();
  const bool bounded = !s_->closed();

  // Primal spanning tree, BFS from node 0 over sorted adjacency.
  std::vector<char> in_tree(E, 0);
  {
    std::vector<char> seen(V, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (const auto &ne : s_->node_edges[v])
        if (!seen[ne.nbr]) {
          seen[ne.nbr] = 1;
          in_tree[ne.edge] = 1;
          q.push_back(ne.nbr);
        }
    }
  }

  // Dual spanning tree over the remaining edges. Bounded surfaces get one
  // virtual dual vertex for the outside, reached through boundary edges.
  const int virt = F;
  const int D = bounded ? F + 1 : F;
  struct DualArc {
    int other;
    int edge;
  };
  std::vector<std::vector<DualArc>> dadj(D);
  for (int e = 0; e < E; ++e) {
    if (in_tree[e])
      continue;
    int l = s_->edge_faces[e][0], r = s_->edge_faces[e][1];
    int a = l >= 0 ? l : virt;
    int b = r >= 0 ? r : virt;
    dadj[a].push_back({b, e});
    dadj[b].push_back({a, e});
  }
  for (auto &v : dadj)
    std::sort(v.begin(), v.end(), [](const DualArc &a, const DualArc &b) {
      return std::pair(a.other, a.edge) < std::pair(b.other, b.edge);
    });

  std::vector<int> parent_edge(D, -1);
  std::vector<int> order;
  std::vector<char> used(E, 0);
  {
    std::vector<char> seen(D, 0);
    int root = bounded ? virt : 0;
    std::deque<int> q{root};
    seen[root] = 1;
    while (!q.empty()) {
      int f = q.front();
      q.pop_front();
      order.push_back(f);
      for (const auto &arc : dadj[f])
        if (!seen[arc.other]) {
          seen[arc.other] = 1;
          parent_edge[arc.other] = arc.edge;
          used[arc.edge] = 1;
          q.push_back(arc.other);
        }
    }
    if (static_cast<int>(order.size()) != D)
      throw validation_error("dual graph disconnected outside primal tree");
  }

  for (int e = 0; e < E; ++e)
    if (!in_tree[e] && !used[e])
      generators_.push_back(e);

  // One closed integer 1-form per generator: set 1 on the generator, then
  // zero every face sum by resolving each face's dual-tree parent edge,
  // leaves first.
  z_.assign(generators_.size(), std::vector<long long>(E, 0));
  for (size_t gi = 0; gi < generators_.size(); ++gi) {
    auto &z = z_[gi];
    z[generators_[gi]] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int f = *it;
      if (f == virt || parent_edge[f] < 0)
        continue;
      int p = parent_edge[f];
      long long sum = 0;
      int psign = 0;
      for (const auto &fe : s_->face_edges[f]) {
        if (fe.edge == p)
          psign = fe.sign;
        else
          sum += fe.sign * z[fe.edge];
      }
      z[p] = -sum * psign; // psign in {-1, +1}
    }
  }
}

HomologySignature TreeCotree::signature(const std::vector<int> &cycle) const {
  if (cycle.size() < 2 || cycle.front() != cycle.back())
    throw validation_error("tree-cotree signature requires a closed walk");
  HomologySignature sig;
  sig.crossings.assign(z_.size(), 0);
  for (size_t i = 0; i + 1 < cycle.size(); ++i) {
    int a = cycle[i], b = cycle[i + 1];
    int e = s_->edge_between(a, b);
    int dir = a < b ? 1 : -1;
    for (size_t gi = 0; gi < z_.size(); ++gi)
      sig.crossings[gi] += dir * z_[gi][e];
  }
  return sig;
}

HomologySignature
TreeCotree::pair_signature(const std::vector<int> &gamma1,
                           const std::vector<int> &gamma2) const {
  if (gamma1.front() != gamma2.front() || gamma1.back() != gamma2.back())
    throw validation_error("pair signature requires shared endpoints");
  // gamma1 followed by reversed gamma2 closes the loop back at the source.
  std::vector<int> cycle = gamma1;
  for (auto it = gamma2.rbegin() + 1; it != gamma2.rend(); ++it)
    cycle.push_back(*it);
  return signature(cycle);
}

HomologySignature tree_cotree_signature(const std::vector<int> &cycle,
                                        const SurfacePtr &s) {
  return TreeCotree(s).signature(cycle);
}

long long winding_of_polygon(const std::vector<std::array<double, 2>> &poly,
                             const std::array<double, 2> &anchor) {
  double total = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const auto &p = poly[i];
    const auto &q = poly[(i + 1) % n];
    double ax = p[0] - anchor[0], ay = p[1] - anchor[1];
    double bx = q[0] - anchor[0], by = q[1] - anchor[1];
    double ra = std::hypot(ax, ay), rb = std::hypot(bx, by);
    if (ra < 1e-12 || rb < 1e-12)
      throw validation_error("cycle passes through an anchor point");
    double ang = std::atan2(ax * by - ay * bx, ax * bx + ay * by);
    total += ang;
  }
  return std::llround(total / (2.0 * M_PI));
}

std::vector<long long>
winding_geometric(const std::vector<int> &cycle, const SurfacePtr &s,
                  const std::vector<std::array<double, 2>> &anchors) {
  if (s->coord_dim != 2)
    throw validation_error("geometric winding requires 2D coordinates");
  if (cycle.size() < 2 || cycle.front() != cycle.back())
    throw validation_error("geometric winding requires a closed walk");
  std::vector<std::array<double, 2>> poly;
  poly.reserve(cycle.size() - 1);
  for (size_t i = 0; i + 1 < cycle.size(); ++i)
    poly.push_back({s->coords[cycle[i]][0], s->coords[cycle[i]][1]});
  std::vector<long long> out;
  out.reserve(anchors.size());
  for (const auto &a : anchors)
    out.push_back(winding_of_polygon(poly, a));
  return out;
}

} // namespace oracle
} // namespace trajtopo
