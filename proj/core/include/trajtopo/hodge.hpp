#pragma once

#include <cstdint>

#include "trajtopo/double_cover.hpp"
#include "trajtopo/operators.hpp"
#include "trajtopo/surface.hpp"

namespace trajtopo {

struct GossipConfig {
  double eps = 1e-6;      // convergence threshold on the per-round update
  int max_rounds = 200000; // safety cap
  std::uint64_t seed = 0;
  // Under-relaxation, 1.0 = plain Jacobi. The default leaves a little
  // damping in because meshes with bipartite dual graphs (structured-grid
  // triangulations) give plain Jacobi an oscillating mode that never
  // decays; damping kills it without moving the fixed point.
  double damping = 0.9;
  // Paper-fidelity mode: nodes freeze individually once their own update
  // drops below eps, instead of the global synchronous stop rule.
  bool per_node_freeze = false;

  void validate() const {
    if (eps <= 0.0)
      throw validation_error("eps must be positive");
    if (max_rounds < 1)
      throw validation_error("max_rounds must be >= 1");
    if (damping <= 0.0 || damping > 1.0)
      throw validation_error("damping must be in (0, 1]");
  }
};

/// One Hodge run: omega = df + dg + h edgewise by construction.
struct DecompositionResult {
  Cochain0 f;
  Cochain2 g;
  Cochain1 df;
  Cochain1 dg; // the coexact part delta2(g)
  Cochain1 h;
  int iters_f = 0;
  int iters_g = 0;
  double err_dh = 0.0;       // max |d1 h| over faces
  double err_delta_h = 0.0;  // max |delta1 h| over interior nodes
  double err_dh_rms = 0.0;
  double err_delta_h_rms = 0.0;
  bool converged_f = false;
  bool converged_g = false;
  bool converged() const { return converged_f && converged_g; }
  // Gossip message accounting: one message per directed edge per round on
  // the surface the solve actually ran on (the cover for bounded inputs),
  // and per directed dual edge for the g-solve.
  long long messages = 0;
};

/// Per-node uniform [-1,1] potentials u_i from a seeded deterministic
/// generator; canonical edge value (u_i + u_j)/2 in the low->high
/// direction. Same seed, same form, bit for bit.
Cochain1 random_one_form(const SurfacePtr &s, std::uint64_t seed);

struct ScalarSolve {
  Cochain0 values;
  int iters = 0;
  bool converged = false;
};
struct FaceSolve {
  Cochain2 values;
  int iters = 0;
  bool converged = false;
};

/// Synchronous Jacobi sweeps of f <- (sum_nbr f - delta1(w)) / deg from
/// f = 0, stopping when the max per-node update drops below eps. The
/// surface must be closed and connected.
ScalarSolve solve_f(const SurfacePtr &s, const Cochain1 &w,
                    const GossipConfig &cfg);

/// Dual-graph analogue for the 2-form g.
FaceSolve solve_g(const SurfacePtr &s, const Cochain1 &w,
                  const GossipConfig &cfg);

/// Full Hodge decomposition. Bounded surfaces are double-covered, the
/// input mirrored, and the parts restricted back; closed surfaces solve
/// directly.
DecompositionResult decompose(const SurfacePtr &s, const Cochain1 &w,
                              const GossipConfig &cfg);
/// Same, reusing a prebuilt cover (w lives on m.original).
DecompositionResult decompose(const DoubleCoverMap &m, const Cochain1 &w,
                              const GossipConfig &cfg);

struct ResidualNorms {
  double dh_max = 0.0;
  double delta_h_max = 0.0; // over interior nodes on bounded surfaces
  double dh_rms = 0.0;
  double delta_h_rms = 0.0;
};

/// Harmonicity residuals of a 1-form: curl over faces, divergence over
/// nodes (interior nodes only when the surface has a boundary).
ResidualNorms residual_norms(const Cochain1 &h);

} // namespace trajtopo
