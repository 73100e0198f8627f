#pragma once

#include <array>
#include <string>
#include <vector>

#include "trajtopo/basis.hpp"
#include "trajtopo/surface.hpp"

namespace trajtopo {

/// Node path on a surface; consecutive nodes must be adjacent. Repeated
/// nodes (loops, detours) are allowed.
struct Trajectory {
  std::string id;
  std::vector<int> nodes;

  int source() const { return nodes.front(); }
  int target() const { return nodes.back(); }
  void validate(const SurfacePtr &s) const;
  Trajectory reversed() const;
};

/// Compact trajectory signature (source, target, per-basis-form path sums).
struct TTuple {
  int s = -1;
  int t = -1;
  std::vector<double> h;
};

struct ClassifierConfig {
  double mu = 1e-4;      // same-class threshold
  bool quantize = false; // integer-winding bucket keys (canonical basis only)

  void validate() const {
    if (mu <= 0.0)
      throw validation_error("mu must be positive");
  }
};

/// <w, gamma> = signed sum of w along gamma's directed hops.
double path_integral(const Cochain1 &w, const Trajectory &gamma);

TTuple t_tuple(const Trajectory &gamma, const HarmonicBasis &b);

/// max_k |<w_k, gamma1 - gamma2>|; requires shared endpoints.
double sigma(const Trajectory &g1, const Trajectory &g2,
             const HarmonicBasis &b);

bool same_class(const Trajectory &g1, const Trajectory &g2,
                const HarmonicBasis &b, const ClassifierConfig &cfg);

/// Threshold picked from the data alone: the largest multiplicative gap in
/// the sorted pairwise sigma values splits noise from genuine class
/// differences. Falls back to 1e-4 when no same-endpoint pair exists.
double auto_mu(const std::vector<Trajectory> &trajs, const HarmonicBasis &b);

struct WindingVector {
  std::vector<long long> winds;
  double residual = 0.0; // max |alpha_i - round(alpha_i)|
  bool reliable() const { return residual <= 0.25; }
};

/// Per-hole integer winding of a closed walk against a canonical basis.
WindingVector winding_vector(const Trajectory &cycle, const HarmonicBasis &b);

struct Bucket {
  std::string key; // winding key in quantize mode, else "c<n>"
  int s = -1;
  int t = -1;
  std::vector<std::string> ids; // sorted trajectory ids
};

struct BucketReport {
  std::vector<Bucket> buckets;
  int n_buckets = 0;
  int max_bucket = 0;
  int n_singletons = 0;
  // Pairs whose sigma landed within 10% of mu; decided, but flagged.
  int near_threshold_pairs = 0;
};

/// Groups by (s, t), then by quantized relative windings (canonical basis,
/// cfg.quantize) or union-find over pairwise same_class.
BucketReport bucketize(const std::vector<Trajectory> &trajs,
                       const HarmonicBasis &b, const ClassifierConfig &cfg);

/// Snaps a coordinate trace onto the mesh: nearest node per point,
/// consecutive distinct nodes joined by unweighted shortest paths.
/// snap_radius <= 0 selects the default 3x median edge length; farther
/// points still snap but are counted in `far_points`.
struct SnapResult {
  Trajectory traj;
  int far_points = 0;
  double max_snap_dist = 0.0;
};
SnapResult snap_trace(const std::vector<std::array<double, 2>> &points,
                      const SurfacePtr &s, const std::string &id,
                      double snap_radius = 0.0);

/// Unweighted shortest node path (deterministic BFS, lowest-id ties).
std::vector<int> shortest_path(const SurfacePtr &s, int from, int to);

} // namespace trajtopo
