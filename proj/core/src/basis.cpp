#include "trajtopo/basis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

namespace trajtopo {

namespace {

constexpr double kRankTol = 1e-6; // relative pivot threshold

// Numerical rank by Gaussian elimination; pivots below
// max(tol * largest column norm, abs_floor) count as zero. The absolute
// floor matters because every candidate carries O(eps)-scale solver noise
// that a purely relative threshold would mistake for a new dimension.
int matrix_rank(std::vector<std::vector<double>> cols, double tol,
                double abs_floor = 0.0) {
  if (cols.empty())
    return 0;
  const size_t rows = cols[0].size();
  double max_norm = 0.0;
  for (const auto &c : cols) {
    double n2 = 0.0;
    for (double x : c)
      n2 += x * x;
    max_norm = std::max(max_norm, std::sqrt(n2));
  }
  const double thresh = std::max(tol * max_norm, abs_floor);
  int rank = 0;
  size_t pivot_row = 0;
  for (size_t c = 0; c < cols.size() && pivot_row < rows; ++c) {
    auto &col = cols[c];
    size_t best = pivot_row;
    for (size_t r = pivot_row; r < rows; ++r)
      if (std::abs(col[r]) > std::abs(col[best]))
        best = r;
    if (std::abs(col[best]) <= thresh)
      continue;
    for (auto &c2 : cols)
      std::swap(c2[pivot_row], c2[best]);
    for (size_t c2 = c + 1; c2 < cols.size(); ++c2) {
      double factor = cols[c2][pivot_row] / col[pivot_row];
      for (size_t r = pivot_row; r < rows; ++r)
        cols[c2][r] -= factor * col[r];
    }
    ++rank;
    ++pivot_row;
  }
  return rank;
}

} // namespace

std::vector<int> probe_edges(const SurfacePtr &s, int v, int m_prime) {
  if (m_prime < 1)
    throw validation_error("m_prime must be >= 1");
  if (m_prime > s->E())
    throw validation_error("surface has fewer than m_prime edges");

  std::vector<int> hop(s->V, -1);
  std::deque<int> q{v};
  hop[v] = 0;
  while (!q.empty()) {
    int n = q.front();
    q.pop_front();
    for (const auto &ne : s->node_edges[n])
      if (hop[ne.nbr] < 0) {
        hop[ne.nbr] = hop[n] + 1;
        q.push_back(ne.nbr);
      }
  }
  // Edge hop = nearer endpoint; gather in (hop, id) order.
  std::vector<std::pair<int, int>> keyed;
  keyed.reserve(s->E());
  for (int e = 0; e < s->E(); ++e)
    keyed.emplace_back(std::min(hop[s->edges[e].u], hop[s->edges[e].v]), e);
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  out.reserve(m_prime);
  for (int i = 0; i < m_prime; ++i)
    out.push_back(keyed[i].second);
  return out;
}

int independence_rank(const std::vector<const Cochain1 *> &forms,
                      const std::vector<int> &probes, double tol,
                      double abs_floor) {
  if (probes.size() < forms.size())
    throw validation_error("need at least as many probes as forms");
  std::vector<std::vector<double>> cols;
  cols.reserve(forms.size());
  for (const auto *f : forms) {
    std::vector<double> c;
    c.reserve(probes.size());
    for (int e : probes)
      c.push_back((*f)[e]);
    cols.push_back(std::move(c));
  }
  return matrix_rank(std::move(cols), tol, abs_floor);
}

int independence_rank(const std::vector<Cochain1> &forms,
                      const std::vector<int> &probes, double tol,
                      double abs_floor) {
  std::vector<const Cochain1 *> ptrs;
  for (const auto &f : forms)
    ptrs.push_back(&f);
  return independence_rank(ptrs, probes, tol, abs_floor);
}

std::vector<double> periods(const Cochain1 &w,
                            const std::vector<std::vector<int>> &loops) {
  std::vector<double> out;
  out.reserve(loops.size());
  for (const auto &loop : loops) {
    double sum = 0.0;
    for (size_t i = 0; i < loop.size(); ++i)
      sum += w.on(loop[i], loop[(i + 1) % loop.size()]);
    out.push_back(sum);
  }
  return out;
}

HarmonicBasis build_basis(const SurfacePtr &s, const BasisConfig &cfg) {
  cfg.gossip.validate();
  HarmonicBasis basis;
  basis.eps = cfg.gossip.eps;

  std::optional<DoubleCoverMap> cover;
  if (!s->closed())
    cover.emplace(double_cover(s));

  const auto loops = s->hole_loop_nodes();
  std::vector<std::vector<double>> loop_periods; // per accepted form

  // Designated probe node: highest degree, lowest id on ties.
  int probe_node = 0;
  for (int v = 1; v < s->V; ++v)
    if (s->node_edges[v].size() > s->node_edges[probe_node].size())
      probe_node = v;

  const double null_floor = cfg.null_floor_factor * cfg.gossip.eps;
  int consecutive_dependent = 0;
  for (int cand = 0; cand < cfg.max_candidates &&
                     consecutive_dependent < cfg.confirmations;
       ++cand) {
    std::uint64_t seed = cfg.gossip.seed + static_cast<std::uint64_t>(cand);
    GossipConfig gc = cfg.gossip;
    gc.seed = seed;
    Cochain1 w = random_one_form(s, seed);
    DecompositionResult res =
        cover ? decompose(*cover, w, gc) : decompose(s, w, gc);
    if (!res.converged())
      throw Error(ErrorKind::NonConvergence,
                  "gossip decomposition did not converge during basis build");

    bool independent = false;
    if (res.h.max_abs() >= null_floor) {
      const int k = basis.k();
      int m_prime = std::min(std::max(2 * (k + 1), 8), s->E());
      auto probes = probe_edges(s, probe_node, m_prime);
      std::vector<const Cochain1 *> all;
      for (const auto &f : basis.forms)
        all.push_back(&f);
      all.push_back(&res.h);
      independent =
          independence_rank(all, probes, kRankTol, null_floor) == k + 1;
      if (!loops.empty()) {
        // Hole-loop period rank as a second accept route: on bounded
        // planar domains the period map is injective on the harmonic
        // space, so it recognizes forms whose support barely reaches the
        // probe neighborhood; with the noise floor it can never push the
        // rank past the hole count.
        auto cols = loop_periods;
        cols.push_back(periods(res.h, loops));
        if (matrix_rank(std::move(cols), kRankTol, null_floor) == k + 1)
          independent = true;
      }
    }

    if (independent) {
      if (!loops.empty())
        loop_periods.push_back(periods(res.h, loops));
      basis.forms.push_back(std::move(res.h));
      basis.seeds.push_back(seed);
      consecutive_dependent = 0;
    } else {
      ++consecutive_dependent;
    }
  }

  if (basis.forms.empty())
    throw validation_error("trivial first homology: no harmonic forms exist");

  if (!loops.empty()) {
    basis.period_matrix.assign(loops.size(), {});
    for (size_t i = 0; i < loops.size(); ++i) {
      basis.period_matrix[i].resize(basis.forms.size());
      for (int j = 0; j < basis.k(); ++j)
        basis.period_matrix[i][j] = loop_periods[j][i];
    }
  }
  return basis;
}

HarmonicBasis canonicalize(const HarmonicBasis &b,
                           const std::vector<std::vector<int>> &hole_loops) {
  const int k = b.k();
  if (static_cast<int>(hole_loops.size()) != k)
    throw validation_error("canonicalize needs exactly k hole loops");

  Eigen::MatrixXd lambda(k, k);
  for (int j = 0; j < k; ++j) {
    auto pj = periods(b.forms[j], hole_loops);
    for (int i = 0; i < k; ++i)
      lambda(i, j) = pj[i];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(lambda);
  double smin = svd.singularValues()(k - 1);
  double smax = svd.singularValues()(0);
  if (smin <= 0.0 || smax / smin > 1e8)
    throw validation_error(
        "period matrix numerically singular: basis not independent over "
        "the hole loops");
  Eigen::MatrixXd inv = lambda.inverse();

  HarmonicBasis out;
  out.eps = b.eps;
  out.seeds = b.seeds;
  out.canonical = true;
  const SurfacePtr &s = b.forms[0].surface();
  // periods(eta_i)[l] = sum_j C(i,j) Lambda(l,j) must be delta_{li}, so
  // the coefficient matrix is the transpose of the inverse.
  for (int i = 0; i < k; ++i) {
    Cochain1 eta(s);
    for (int j = 0; j < k; ++j)
      for (int e = 0; e < s->E(); ++e)
        eta[e] += inv(j, i) * b.forms[j][e];
    out.forms.push_back(std::move(eta));
  }
  out.period_matrix.assign(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) {
    auto pr = periods(out.forms[i], hole_loops); // row i over all loops
    for (int j = 0; j < k; ++j)
      out.period_matrix[j][i] = pr[j]; // [loop][form]
  }
  return out;
}

int hole_count(const SurfacePtr &s, const BasisConfig &cfg) {
  try {
    return build_basis(s, cfg).k();
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::Validation)
      return 0;
    throw;
  }
}

} // namespace trajtopo
