#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trajtopo/classify.hpp"
#include "trajtopo/surface.hpp"

namespace trajtopo {

/// Axis-aligned obstacle rectangle in world units.
struct Rect {
  double x0, y0, x1, y1;
  double cx() const { return 0.5 * (x0 + x1); }
  double cy() const { return 0.5 * (y0 + y1); }
  bool contains(double x, double y) const {
    return x > x0 && x < x1 && y > y0 && y < y1;
  }
};

/// Jittered structured-grid test domain. The combinatorics come from the
/// unjittered lattice; jitter perturbs coordinates only, scaled back
/// wherever it would degenerate a triangle.
struct DomainSpec {
  double width = 1.0;
  double height = 1.0;
  std::vector<Rect> holes; // pairwise disjoint, strictly inside
  double jitter = 0.3;     // in [0, 0.5) grid spacings
  int target_nodes = 400;
  std::uint64_t seed = 0;

  void validate() const;
};

/// `count` equal obstacle rectangles auto-placed on a sub-grid of the
/// unit-normalized domain.
std::vector<Rect> auto_holes(int count, double width, double height);

struct GridDomain {
  SurfacePtr surface;
  std::vector<Rect> holes;                      // as realized
  std::vector<std::array<double, 2>> anchors;   // one interior point per hole
};

/// Triangulated width x height grid with ~target_nodes nodes (within 10%);
/// faces whose lattice centroid falls inside a hole rectangle are removed.
GridDomain grid_domain(const DomainSpec &spec);

/// Museum floor plan: `rooms` rooms stacked bottom-to-top, separated by
/// free-standing wall slabs with a door gap at both ends. Each wall is one
/// obstacle/hole, so k = rooms - 1 and simple entrance->exit paths fall in
/// at most 2^k homology classes.
struct MuseumSpec {
  int rooms = 6;
  double width = 3.0;
  double height = 6.0;
  int target_nodes = 1200;
  double jitter = 0.25;
  int levels = 1;          // floors; > 1 builds the multi-floor gluing
  int ladders = 2;         // ladder shafts per adjacent floor pair
  std::uint64_t seed = 0;

  void validate() const;
};

struct MuseumDomain {
  SurfacePtr surface;
  struct Door {
    int room_a, room_b;
    int node; // mesh node inside the doorway
  };
  int rooms = 0;
  std::vector<std::vector<int>> room_nodes; // sorted members per room
  std::vector<Door> doors;                  // two per wall (left, right)
  int entrance = -1;
  int exit = -1;
  std::vector<Rect> walls;
  std::vector<std::array<double, 2>> anchors; // wall centers
};

MuseumDomain museum_domain(const MuseumSpec &spec);

/// Two-level walk generation: a seeded no-backtrack walk on the room
/// graph from the entrance room to the exit room picks a door per hop; a
/// random waypoint node per visited room is joined through the chosen
/// doors by unweighted shortest paths.
std::vector<Trajectory> museum_trajectories(const MuseumDomain &m, int n,
                                            std::uint64_t seed);

/// Random waypoint-routed source->target paths grouped into exactly
/// n_classes distinct homology classes (tree-cotree ground truth),
/// per_class paths each; ids are "c<class>p<index>". Errors if the domain
/// cannot produce that many classes within the attempt budget.
std::vector<Trajectory> classed_trajectories(const SurfacePtr &s, int source,
                                             int target, int n_classes,
                                             int per_class,
                                             std::uint64_t seed);

/// Ground-truth side label: winding of the trajectory closed off by a
/// canonical return detour (down the far-left outside lane) around each
/// obstacle anchor. Integer entries; bit i says which side of obstacle i
/// the path passed.
struct SideSignature {
  std::vector<long long> winds;
  double residual = 0.0; // worst distance to an integer before rounding
};
SideSignature side_signature(const Trajectory &gamma, const SurfacePtr &s,
                             const std::vector<std::array<double, 2>> &anchors);

/// Multi-floor museum: `levels` copies of the floor mesh with alternating
/// orientation, glued along small ladder-shaft holes between consecutive
/// floors (3D coordinates, z = floor height).
struct MultiFloorDomain {
  SurfacePtr surface;
  int levels = 0;
  std::vector<std::vector<int>> floor_nodes; // per-level node ids
  int entrance = -1; // bottom floor
  int exit = -1;     // top floor
};
MultiFloorDomain multifloor_domain(const MuseumSpec &spec);

} // namespace trajtopo
