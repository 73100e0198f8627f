#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "trajtopo/error.hpp"

namespace trajtopo {

/// Oriented triangulated 2-complex: the combinatorial domain everything
/// else runs on. Edges are stored once under canonical orientation
/// (lower node id -> higher node id); a 1-form value read against the
/// canonical direction flips sign. Double covers of bounded surfaces may
/// contain parallel edges, in which case the pair->edge lookup is disabled
/// (`simple == false`) and everything works through edge ids.
struct CombinatorialSurface {
  struct Edge {
    int u, v; // u < v
  };
  struct NodeEdge {
    int nbr;  // other endpoint
    int edge; // edge id
    int sign; // +1 if this node is edge.u (outgoing canonical direction)
  };
  struct FaceEdge {
    int edge;
    int sign; // +1 if the face's CCW boundary traverses u->v
  };

  int V = 0;
  int coord_dim = 0;                        // 0 (none), 2 or 3
  std::vector<std::array<double, 3>> coords; // per node, unused slots zero
  std::vector<std::array<int, 3>> faces;     // CCW node triples
  std::vector<Edge> edges;
  std::vector<std::array<int, 2>> edge_faces;        // {left, right}, -1 absent
  std::vector<std::array<FaceEdge, 3>> face_edges;   // per face, CCW order
  std::vector<std::vector<NodeEdge>> node_edges;     // sorted by (nbr, edge)
  std::vector<std::vector<int>> dual_adjacency;      // per face, sorted
  std::vector<std::vector<int>> boundary_loops;      // node cycles
  std::vector<int> hole_loops;                       // indices into boundary_loops
  int outer_loop = -1; // the unique non-hole loop if there is exactly one
  std::vector<char> node_on_boundary;
  bool simple = true;
  std::map<std::pair<int, int>, int> edge_ids; // populated only when simple

  int E() const { return static_cast<int>(edges.size()); }
  int F() const { return static_cast<int>(faces.size()); }
  bool closed() const { return boundary_loops.empty(); }
  int euler() const { return V - E() + F(); }
  // 2 - 2g - b = chi
  int genus() const {
    return (2 - static_cast<int>(boundary_loops.size()) - euler()) / 2;
  }
  // dim H_1: 2g for closed surfaces, 2g + b - 1 otherwise.
  int first_betti() const {
    int b = static_cast<int>(boundary_loops.size());
    return b == 0 ? 2 * genus() : 2 * genus() + b - 1;
  }

  bool has_coords() const { return coord_dim > 0; }

  /// Edge id between two adjacent nodes (simple surfaces only). Throws on
  /// non-edges.
  int edge_between(int a, int b) const;
  /// -1 if not adjacent.
  int find_edge(int a, int b) const;

  /// Hole loops as node cycles, in stored orientation.
  std::vector<std::vector<int>> hole_loop_nodes() const;
};

using SurfacePtr = std::shared_ptr<const CombinatorialSurface>;

/// Validates faces and assembles the full surface structure. With
/// coordinates the outer boundary loop is the one with the largest
/// bounding-box extent; without them `hole_marks` (node cycles, any
/// rotation/direction) must identify every hole when more than one
/// boundary loop exists.
SurfacePtr build_surface(std::vector<std::array<int, 3>> faces,
                         std::vector<std::array<double, 3>> coords = {},
                         int coord_dim = 0,
                         std::vector<std::vector<int>> hole_marks = {});

/// Internal finisher shared by build_surface and the double cover: takes
/// V/faces/edges/face_edges already filled in and derives the rest
/// (edge_faces, adjacency, boundary loops). Validates manifoldness.
void finalize_surface(CombinatorialSurface &s);

/// Real-valued function on nodes.
class Cochain0 {
public:
  Cochain0() = default;
  explicit Cochain0(SurfacePtr s, double fill = 0.0)
      : s_(std::move(s)), v_(s_->V, fill) {}
  Cochain0(SurfacePtr s, std::vector<double> values)
      : s_(std::move(s)), v_(std::move(values)) {}

  const SurfacePtr &surface() const { return s_; }
  double operator[](int node) const { return v_[node]; }
  double &operator[](int node) { return v_[node]; }
  const std::vector<double> &values() const { return v_; }
  std::vector<double> &values() { return v_; }

private:
  SurfacePtr s_;
  std::vector<double> v_;
};

/// Real-valued function on oriented edges; one stored value per canonical
/// edge, antisymmetric reads by construction.
class Cochain1 {
public:
  Cochain1() = default;
  explicit Cochain1(SurfacePtr s, double fill = 0.0)
      : s_(std::move(s)), v_(s_->E(), fill) {}
  Cochain1(SurfacePtr s, std::vector<double> values)
      : s_(std::move(s)), v_(std::move(values)) {}

  const SurfacePtr &surface() const { return s_; }
  double on_edge(int edge, int sign) const {
    return sign > 0 ? v_[edge] : -v_[edge];
  }
  /// Value in the direction a->b. Throws on non-edges.
  double on(int a, int b) const {
    int e = s_->edge_between(a, b);
    return on_edge(e, a < b ? 1 : -1);
  }
  void set_directed(int a, int b, double value) {
    int e = s_->edge_between(a, b);
    v_[e] = a < b ? value : -value;
  }
  double operator[](int edge) const { return v_[edge]; }
  double &operator[](int edge) { return v_[edge]; }
  const std::vector<double> &values() const { return v_; }
  std::vector<double> &values() { return v_; }

  double max_abs() const;
  double l2() const;

private:
  SurfacePtr s_;
  std::vector<double> v_;
};

/// Real-valued function on faces.
class Cochain2 {
public:
  Cochain2() = default;
  explicit Cochain2(SurfacePtr s, double fill = 0.0)
      : s_(std::move(s)), v_(s_->F(), fill) {}
  Cochain2(SurfacePtr s, std::vector<double> values)
      : s_(std::move(s)), v_(std::move(values)) {}

  const SurfacePtr &surface() const { return s_; }
  double operator[](int face) const { return v_[face]; }
  double &operator[](int face) { return v_[face]; }
  const std::vector<double> &values() const { return v_; }
  std::vector<double> &values() { return v_; }

private:
  SurfacePtr s_;
  std::vector<double> v_;
};

} // namespace trajtopo
