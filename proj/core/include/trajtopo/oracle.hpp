#pragma once

#include <vector>

#include "trajtopo/hodge.hpp"
#include "trajtopo/surface.hpp"

namespace trajtopo {
namespace oracle {

/// Centralized ground truth. Everything in this namespace is exempt from
/// the decentralization constraint: it exists to check the gossip path.

/// Exact Hodge decomposition by sparse linear solves (CG to residual
/// 1e-12). Closed surfaces solve the primal and dual systems directly;
/// bounded surfaces use the direct bounded mode where absent faces act as
/// zero-valued in delta2.
DecompositionResult direct_solve(const SurfacePtr &s, const Cochain1 &w);

/// dim of the harmonic space: nullity of the 1-form Hodge Laplacian
/// d0*d0^T-style assembly, singular values below 1e-8 relative. Equals the
/// hole count on bounded planar domains and 2g on closed surfaces.
int harmonic_dim(const SurfacePtr &s);

/// Integer homology signature of a closed walk via a primal spanning tree
/// plus a dual spanning tree built from the leftover edges; the generator
/// edges induce integer-valued closed 1-forms whose path sums are the
/// signature. Deterministic (sorted-id BFS trees).
struct HomologySignature {
  std::vector<long long> crossings; // one per independent cycle class
  bool operator==(const HomologySignature &) const = default;
};

class TreeCotree {
public:
  explicit TreeCotree(SurfacePtr s);
  int rank() const { return static_cast<int>(generators_.size()); }
  /// Closed node walk (first == last, or closure implied).
  HomologySignature signature(const std::vector<int> &cycle) const;
  /// Signature of the closed walk gamma1 - gamma2 for same-endpoint paths.
  HomologySignature pair_signature(const std::vector<int> &gamma1,
                                   const std::vector<int> &gamma2) const;

private:
  SurfacePtr s_;
  std::vector<int> generators_;             // generator edge ids
  std::vector<std::vector<long long>> z_;   // per generator, closed cochain
};

HomologySignature tree_cotree_signature(const std::vector<int> &cycle,
                                        const SurfacePtr &s);

/// Winding numbers of a closed 2D polyline cycle around anchor points:
/// accumulated signed angle / 2pi, rounded. Requires coordinates.
std::vector<long long>
winding_geometric(const std::vector<int> &cycle, const SurfacePtr &s,
                  const std::vector<std::array<double, 2>> &anchors);

/// Winding of an explicit coordinate polygon (closed implicitly).
long long winding_of_polygon(const std::vector<std::array<double, 2>> &poly,
                             const std::array<double, 2> &anchor);

} // namespace oracle
} // namespace trajtopo
