#pragma once

#include <cstdint>
#include <vector>

#include "trajtopo/hodge.hpp"
#include "trajtopo/surface.hpp"

namespace trajtopo {

/// k independent harmonic 1-forms, optionally canonicalized so that the
/// period of form i over hole loop j is the Kronecker delta.
struct HarmonicBasis {
  std::vector<Cochain1> forms;
  double eps = 0.0;
  std::vector<std::uint64_t> seeds; // per-form seeds
  bool canonical = false;
  // period_matrix[i][j] = <forms[j], hole loop i>; present when loops known.
  std::vector<std::vector<double>> period_matrix;

  int k() const { return static_cast<int>(forms.size()); }
};

struct BasisConfig {
  GossipConfig gossip;
  int confirmations = 5; // consecutive dependent draws before stopping
  // Candidates with max-abs below null_floor_factor * eps are treated as
  // numerically zero (trivial-homology noise).
  double null_floor_factor = 1e3;
  int max_candidates = 256; // hard cap, independent of confirmations
};

/// Deterministic BFS edge probe around v: edges in (hop, canonical-id)
/// order until m_prime are gathered. Errors if the surface has fewer than
/// m_prime edges.
std::vector<int> probe_edges(const SurfacePtr &s, int v, int m_prime);

/// Numerical rank of the |probes| x |forms| sample matrix, Gaussian
/// elimination with pivots below max(tol * largest column norm, abs_floor)
/// treated as zero.
int independence_rank(const std::vector<const Cochain1 *> &forms,
                      const std::vector<int> &probes, double tol,
                      double abs_floor = 0.0);
int independence_rank(const std::vector<Cochain1> &forms,
                      const std::vector<int> &probes, double tol,
                      double abs_floor = 0.0);

/// Signed sum of w along each loop in its stored orientation.
std::vector<double> periods(const Cochain1 &w,
                            const std::vector<std::vector<int>> &loops);

/// Repeated randomized decomposition with rank testing until
/// `confirmations` consecutive candidates add nothing. Errors with
/// ErrorKind::Validation if the surface has trivial first homology.
HarmonicBasis build_basis(const SurfacePtr &s, const BasisConfig &cfg);

/// Re-expresses the basis against the hole loops: eta_i = sum_j
/// inv(Lambda)_{ij} omega_j, giving a near-identity period matrix. Errors
/// if the period matrix is numerically singular (cond > 1e8).
HarmonicBasis canonicalize(const HarmonicBasis &b,
                           const std::vector<std::vector<int>> &hole_loops);

/// build_basis's k, with trivial homology reported as 0.
int hole_count(const SurfacePtr &s, const BasisConfig &cfg);

} // namespace trajtopo
