#include "trajtopo/netgen.hpp"

#include "trajtopo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace trajtopo {

namespace {

double to_unit_interval(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

bool rects_overlap(const Rect &a, const Rect &b) {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

void validate_holes(const std::vector<Rect> &holes, double W, double H) {
  for (const auto &r : holes) {
    if (r.x1 <= r.x0 || r.y1 <= r.y0)
      throw validation_error("hole rectangle has non-positive extent");
    if (r.x0 <= 0 || r.y0 <= 0 || r.x1 >= W || r.y1 >= H)
      throw validation_error("hole rectangle is not strictly inside the domain");
  }
  for (std::size_t i = 0; i < holes.size(); ++i)
    for (std::size_t j = i + 1; j < holes.size(); ++j)
      if (rects_overlap(holes[i], holes[j]))
        throw validation_error("hole rectangles overlap");
}

// One structured-lattice floor: combinatorics from the unjittered nx x ny
// lattice, faces with centroid inside a hole rect removed, node ids
// compacted, coordinates jittered (scaled back where a triangle would
// degenerate).
struct LatticeMesh {
  int nx = 0, ny = 0;
  double dx = 0, dy = 0;
  int V = 0;
  std::vector<std::array<int, 3>> faces;      // compact ids
  std::vector<std::array<double, 3>> coords;  // jittered, z = 0
  std::vector<int> lat;                       // compact -> lattice index
  std::vector<int> id;                        // lattice -> compact or -1
  std::vector<std::vector<int>> hole_boundary; // per hole, compact ids, sorted

  double lat_x(int c) const { return (lat[c] % nx) * dx; }
  double lat_y(int c) const { return (lat[c] / nx) * dy; }

  int nearest(double x, double y) const {
    int best = -1;
    double bd = 0;
    for (int c = 0; c < V; ++c) {
      double d = std::hypot(lat_x(c) - x, lat_y(c) - y);
      if (best < 0 || d < bd) {
        bd = d;
        best = c;
      }
    }
    return best;
  }
};

LatticeMesh lattice_mesh(double W, double H, int nx, int ny,
                         const std::vector<Rect> &holes, double jitter,
                         std::uint64_t seed) {
  LatticeMesh m;
  m.nx = nx;
  m.ny = ny;
  m.dx = W / (nx - 1);
  m.dy = H / (ny - 1);

  auto vid = [nx](int i, int j) { return j * nx + i; };
  std::vector<std::array<int, 3>> faces; // lattice ids
  std::vector<int> face_hole;            // removing hole index or -1
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      // Removal is cell-atomic (decided by the cell center) so hole rims
      // are clean node rectangles: no chords between rim nodes, which
      // keeps rim sets equal to boundary loops and makes ladder gluing
      // manifold.
      double cx = (i + 0.5) * m.dx;
      double cy = (j + 0.5) * m.dy;
      int h = -1;
      for (std::size_t k = 0; k < holes.size(); ++k)
        if (holes[k].contains(cx, cy)) {
          h = static_cast<int>(k);
          break;
        }
      faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      face_hole.push_back(h);
      faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
      face_hole.push_back(h);
    }

  std::vector<char> kept_node(nx * ny, 0);
  for (std::size_t fi = 0; fi < faces.size(); ++fi)
    if (face_hole[fi] < 0)
      for (int n : faces[fi])
        kept_node[n] = 1;

  m.id.assign(nx * ny, -1);
  for (int n = 0; n < nx * ny; ++n)
    if (kept_node[n]) {
      m.id[n] = m.V++;
      m.lat.push_back(n);
    }

  for (std::size_t fi = 0; fi < faces.size(); ++fi)
    if (face_hole[fi] < 0)
      m.faces.push_back({m.id[faces[fi][0]], m.id[faces[fi][1]],
                         m.id[faces[fi][2]]});

  // Hole boundary = kept nodes touching a face this hole removed.
  std::vector<std::set<int>> hb(holes.size());
  std::vector<int> removed_count(holes.size(), 0);
  for (std::size_t fi = 0; fi < faces.size(); ++fi)
    if (face_hole[fi] >= 0) {
      ++removed_count[face_hole[fi]];
      for (int n : faces[fi])
        if (kept_node[n])
          hb[face_hole[fi]].insert(m.id[n]);
    }
  for (std::size_t k = 0; k < holes.size(); ++k) {
    if (removed_count[k] == 0)
      throw validation_error("hole " + std::to_string(k) +
                             " is too small to remove any face");
    m.hole_boundary.emplace_back(hb[k].begin(), hb[k].end());
  }

  // Jitter: a displacement per lattice node keeps the stream independent
  // of the hole layout.
  std::mt19937_64 gen(seed);
  std::vector<std::array<double, 2>> disp(nx * ny);
  for (auto &d : disp) {
    d[0] = (2.0 * to_unit_interval(gen()) - 1.0) * jitter * m.dx;
    d[1] = (2.0 * to_unit_interval(gen()) - 1.0) * jitter * m.dy;
  }
  m.coords.resize(m.V);
  auto place = [&] {
    for (int c = 0; c < m.V; ++c)
      m.coords[c] = {m.lat_x(c) + disp[m.lat[c]][0],
                     m.lat_y(c) + disp[m.lat[c]][1], 0.0};
  };
  place();
  const double min_area = 0.15 * m.dx * m.dy; // nominal is dx*dy/2
  for (int pass = 0; pass < 64; ++pass) {
    bool bad = false;
    for (const auto &f : m.faces) {
      const auto &a = m.coords[f[0]], &b = m.coords[f[1]], &c = m.coords[f[2]];
      double cross = (b[0] - a[0]) * (c[1] - a[1]) -
                     (b[1] - a[1]) * (c[0] - a[0]);
      if (cross < 2.0 * min_area) {
        bad = true;
        for (int n : f) {
          disp[m.lat[n]][0] *= 0.5;
          disp[m.lat[n]][1] *= 0.5;
        }
      }
    }
    if (!bad)
      break;
    place();
  }
  return m;
}

// nx/ny so the kept-node count lands within 10% of target (or within 3
// nodes on tiny lattices).
std::pair<int, int> choose_grid(double W, double H, int target,
                                const std::vector<Rect> &holes) {
  double hole_area = 0;
  for (const auto &r : holes)
    hole_area += (r.x1 - r.x0) * (r.y1 - r.y0);
  double want = target / std::max(0.1, 1.0 - hole_area / (W * H));
  int best_nx = 0, best_ny = 0, best_err = -1;
  for (int iter = 0; iter < 12; ++iter) {
    int nx = std::max(4, static_cast<int>(std::lround(std::sqrt(want * W / H))));
    int ny = std::max(4, static_cast<int>(std::lround(want / nx)));
    auto m = lattice_mesh(W, H, nx, ny, holes, 0.0, 0);
    int err = std::abs(m.V - target);
    if (best_err < 0 || err < best_err) {
      best_err = err;
      best_nx = nx;
      best_ny = ny;
    }
    if (err <= std::max(3, target / 10))
      return {nx, ny};
    want *= static_cast<double>(target) / m.V;
  }
  if (best_err <= std::max(3, target / 10))
    return {best_nx, best_ny};
  throw validation_error("cannot hit the node target within 10% for this "
                         "hole layout");
}

SurfacePtr finish_floor(const LatticeMesh &m) {
  auto s = build_surface(m.faces, m.coords, 2);
  return s;
}

double raw_winding(const std::vector<std::array<double, 2>> &poly,
                   const std::array<double, 2> &anchor) {
  double total = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto &p = poly[i];
    const auto &q = poly[(i + 1) % n];
    double ax = p[0] - anchor[0], ay = p[1] - anchor[1];
    double bx = q[0] - anchor[0], by = q[1] - anchor[1];
    double ra = std::hypot(ax, ay), rb = std::hypot(bx, by);
    if (ra < 1e-12 || rb < 1e-12)
      throw validation_error("trajectory passes through an obstacle anchor");
    total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return total / (2.0 * std::acos(-1.0));
}

} // namespace

void DomainSpec::validate() const {
  if (width <= 0 || height <= 0)
    throw validation_error("domain extents must be positive");
  if (jitter < 0 || jitter >= 0.5)
    throw validation_error("jitter must lie in [0, 0.5)");
  if (target_nodes < 20)
    throw validation_error("target_nodes must be at least 20");
  validate_holes(holes, width, height);
}

std::vector<Rect> auto_holes(int count, double width, double height) {
  if (count < 0)
    throw validation_error("hole count must be non-negative");
  std::vector<Rect> out;
  if (count == 0)
    return out;
  int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
  int rows = (count + cols - 1) / cols;
  double cw = width / cols, ch = height / rows;
  for (int k = 0; k < count; ++k) {
    double cx = (k % cols + 0.5) * cw;
    double cy = (k / cols + 0.5) * ch;
    out.push_back({cx - 0.22 * cw, cy - 0.22 * ch, cx + 0.22 * cw,
                   cy + 0.22 * ch});
  }
  return out;
}

GridDomain grid_domain(const DomainSpec &spec) {
  spec.validate();
  auto [nx, ny] = choose_grid(spec.width, spec.height, spec.target_nodes,
                              spec.holes);
  auto m = lattice_mesh(spec.width, spec.height, nx, ny, spec.holes,
                        spec.jitter, spec.seed);
  GridDomain out;
  out.surface = finish_floor(m);
  if (out.surface->hole_loops.size() != spec.holes.size())
    throw validation_error("hole layout merged or touched the outer "
                           "boundary (expected " +
                           std::to_string(spec.holes.size()) + " holes, got " +
                           std::to_string(out.surface->hole_loops.size()) +
                           ")");
  out.holes = spec.holes;
  for (const auto &r : spec.holes)
    out.anchors.push_back({r.cx(), r.cy()});
  return out;
}

void MuseumSpec::validate() const {
  if (rooms < 1)
    throw validation_error("museum needs at least one room");
  if (width <= 0 || height <= 0)
    throw validation_error("museum extents must be positive");
  if (jitter < 0 || jitter >= 0.5)
    throw validation_error("jitter must lie in [0, 0.5)");
  if (levels < 1)
    throw validation_error("levels must be at least 1");
  if (levels > 1 && ladders < 1)
    throw validation_error("multi-floor museums need at least one ladder");
  if (target_nodes < 60 * rooms)
    throw validation_error("target_nodes too small for this many rooms "
                           "(need at least 60 per room)");
}

namespace {

// Wall slabs between stacked rooms, sized off the unjittered spacing so
// each slab removes at least one full face row and each door spans a
// couple of columns.
std::vector<Rect> museum_walls(const MuseumSpec &spec, double dx, double dy) {
  std::vector<Rect> walls;
  double t = 2.2 * dy;
  double door = 2.8 * dx;
  for (int i = 1; i < spec.rooms; ++i) {
    double yc = spec.height * i / spec.rooms;
    walls.push_back({door, yc - 0.5 * t, spec.width - door, yc + 0.5 * t});
  }
  return walls;
}

std::pair<double, double> estimate_spacing(const MuseumSpec &spec) {
  int nx = std::max(4, static_cast<int>(std::lround(std::sqrt(
                           spec.target_nodes * spec.width / spec.height))));
  int ny = std::max(4, static_cast<int>(std::lround(
                           static_cast<double>(spec.target_nodes) / nx)));
  return {spec.width / (nx - 1), spec.height / (ny - 1)};
}

} // namespace

MuseumDomain museum_domain(const MuseumSpec &spec) {
  spec.validate();
  auto [dx0, dy0] = estimate_spacing(spec);
  if (spec.rooms > 1 && spec.height / spec.rooms <= 3.0 * dy0)
    throw validation_error("rooms too shallow for the lattice spacing; "
                           "raise target_nodes");
  auto walls = museum_walls(spec, dx0, dy0);
  DomainSpec d;
  d.width = spec.width;
  d.height = spec.height;
  d.holes = walls;
  d.jitter = spec.jitter;
  d.target_nodes = spec.target_nodes;
  d.seed = spec.seed;
  d.validate();

  auto [nx, ny] = choose_grid(d.width, d.height, d.target_nodes, d.holes);
  auto m = lattice_mesh(d.width, d.height, nx, ny, d.holes, d.jitter, d.seed);

  MuseumDomain out;
  out.surface = finish_floor(m);
  if (out.surface->hole_loops.size() != walls.size())
    throw validation_error("wall slabs merged or touched the boundary");
  out.rooms = spec.rooms;
  out.walls = walls;
  for (const auto &w : walls)
    out.anchors.push_back({w.cx(), w.cy()});

  out.room_nodes.resize(spec.rooms);
  for (int c = 0; c < m.V; ++c) {
    double y = m.lat_y(c);
    int room = 0;
    for (const auto &w : walls)
      if (w.cy() <= y)
        ++room;
    out.room_nodes[std::min(room, spec.rooms - 1)].push_back(c);
  }
  for (int r = 0; r < spec.rooms; ++r)
    if (out.room_nodes[r].empty())
      throw validation_error("room " + std::to_string(r) + " has no nodes");

  for (int i = 1; i < spec.rooms; ++i) {
    const auto &w = walls[i - 1];
    out.doors.push_back({i - 1, i, m.nearest(0.5 * w.x0, w.cy())});
    out.doors.push_back(
        {i - 1, i, m.nearest(0.5 * (w.x1 + spec.width), w.cy())});
  }
  out.entrance = m.nearest(0.5 * spec.width, 0.0);
  out.exit = m.nearest(0.5 * spec.width, spec.height);
  if (out.entrance == out.exit)
    throw validation_error("entrance and exit collapse onto one node");
  return out;
}

std::vector<Trajectory> museum_trajectories(const MuseumDomain &m, int n,
                                            std::uint64_t seed) {
  if (n < 0)
    throw validation_error("trajectory count must be non-negative");
  // Room reachability check over the door graph.
  std::vector<std::vector<int>> room_doors(m.rooms);
  for (std::size_t di = 0; di < m.doors.size(); ++di) {
    room_doors[m.doors[di].room_a].push_back(static_cast<int>(di));
    room_doors[m.doors[di].room_b].push_back(static_cast<int>(di));
  }
  auto room_of = [&](int node) {
    for (int r = 0; r < m.rooms; ++r)
      if (std::binary_search(m.room_nodes[r].begin(), m.room_nodes[r].end(),
                             node))
        return r;
    throw validation_error("node outside every room");
  };
  const int start_room = room_of(m.entrance);
  const int goal_room = room_of(m.exit);
  {
    std::vector<char> seen(m.rooms, 0);
    std::queue<int> q;
    seen[start_room] = 1;
    q.push(start_room);
    while (!q.empty()) {
      int r = q.front();
      q.pop();
      for (int di : room_doors[r]) {
        int o = m.doors[di].room_a == r ? m.doors[di].room_b
                                        : m.doors[di].room_a;
        if (!seen[o]) {
          seen[o] = 1;
          q.push(o);
        }
      }
    }
    if (!seen[goal_room])
      throw validation_error("no door path from entrance room to exit room");
  }

  std::mt19937_64 master(seed);
  std::vector<Trajectory> out;
  out.reserve(n);
  for (int t = 0; t < n; ++t) {
    std::mt19937_64 gen(master());
    auto pick = [&](int bound) {
      return static_cast<int>(to_unit_interval(gen()) * bound) % bound;
    };
    // No-backtrack walk on the room graph, choosing a concrete door per
    // hop; the cap falls back to allowing backtracks rather than giving up.
    std::vector<int> door_seq;
    std::vector<int> room_seq{start_room};
    int prev = -1, cur = start_room;
    const int cap = 4 * std::max(1, m.rooms);
    while (cur != goal_room) {
      std::vector<int> cand;
      for (int di : room_doors[cur]) {
        int o = m.doors[di].room_a == cur ? m.doors[di].room_b
                                          : m.doors[di].room_a;
        if (o != prev || static_cast<int>(room_seq.size()) > cap)
          cand.push_back(di);
      }
      if (cand.empty())
        cand = room_doors[cur];
      int di = cand[pick(static_cast<int>(cand.size()))];
      int nxt = m.doors[di].room_a == cur ? m.doors[di].room_b
                                          : m.doors[di].room_a;
      door_seq.push_back(di);
      room_seq.push_back(nxt);
      prev = cur;
      cur = nxt;
    }

    // Waypoints: entrance, one random node per intermediate room, exit.
    std::vector<int> wps(room_seq.size());
    wps.front() = m.entrance;
    wps.back() = m.exit;
    for (std::size_t i = 1; i + 1 < room_seq.size(); ++i) {
      const auto &rn = m.room_nodes[room_seq[i]];
      wps[i] = rn[pick(static_cast<int>(rn.size()))];
    }
    if (room_seq.size() == 1)
      wps = {m.entrance, m.exit};

    Trajectory traj;
    traj.id = "traj" + std::to_string(t);
    traj.nodes.push_back(m.entrance);
    auto extend = [&](int to) {
      auto hop = shortest_path(m.surface, traj.nodes.back(), to);
      traj.nodes.insert(traj.nodes.end(), hop.begin() + 1, hop.end());
    };
    for (std::size_t i = 0; i + 1 < wps.size(); ++i) {
      if (i < door_seq.size())
        extend(m.doors[door_seq[i]].node);
      extend(wps[i + 1]);
    }
    if (traj.nodes.size() == 1)
      extend(m.exit);
    out.push_back(std::move(traj));
  }
  return out;
}

std::vector<Trajectory> classed_trajectories(const SurfacePtr &s, int source,
                                             int target, int n_classes,
                                             int per_class,
                                             std::uint64_t seed) {
  if (n_classes < 1 || per_class < 1)
    throw validation_error("need at least one class and one path per class");
  if (source == target)
    throw validation_error("source and target must differ");
  oracle::TreeCotree tc(s);
  std::mt19937_64 gen(seed);
  auto pick_node = [&] {
    return static_cast<int>(to_unit_interval(gen()) * s->V) % s->V;
  };
  const auto ref = shortest_path(s, source, target);

  // Phase 1: one representative path per distinct homology class, found by
  // routing through random waypoints.
  std::map<std::vector<long long>, std::vector<int>> reps;
  std::vector<std::vector<long long>> order; // first-seen signatures
  const int rep_budget = 500 * n_classes;
  for (int attempt = 0;
       attempt < rep_budget && static_cast<int>(order.size()) < n_classes;
       ++attempt) {
    int k = 1 + attempt % 3;
    std::vector<int> nodes{source};
    for (int i = 0; i < k; ++i) {
      int w = pick_node();
      auto hop = shortest_path(s, nodes.back(), w);
      nodes.insert(nodes.end(), hop.begin() + 1, hop.end());
    }
    auto tail = shortest_path(s, nodes.back(), target);
    nodes.insert(nodes.end(), tail.begin() + 1, tail.end());
    if (nodes.size() < 2)
      continue;
    auto sig = tc.pair_signature(nodes, ref).crossings;
    if (reps.emplace(sig, std::move(nodes)).second)
      order.push_back(std::move(sig));
  }
  if (static_cast<int>(order.size()) < n_classes)
    throw validation_error("could not realize " + std::to_string(n_classes) +
                           " homology classes between these endpoints");

  // Phase 2: fill each class with local-detour variants of its
  // representative. Keeping same-class paths geometrically close bounds the
  // area they enclose together, which is what makes same-class responses
  // small under an approximately harmonic basis. Each detour reroutes a
  // short segment through a nearby node and is kept only if the homology
  // signature is unchanged.
  auto local_node = [&](int v, int radius) {
    std::vector<int> frontier{v}, seen{v};
    std::vector<char> vis(s->V, 0);
    vis[v] = 1;
    for (int r = 0; r < radius; ++r) {
      std::vector<int> next;
      for (int u : frontier)
        for (const auto &ne : s->node_edges[u])
          if (!vis[ne.nbr]) {
            vis[ne.nbr] = 1;
            next.push_back(ne.nbr);
            seen.push_back(ne.nbr);
          }
      frontier = std::move(next);
    }
    return seen[static_cast<std::size_t>(to_unit_interval(gen()) *
                                         seen.size()) %
                seen.size()];
  };
  std::vector<Trajectory> out;
  const int variant_budget = 200;
  for (int c = 0; c < n_classes; ++c) {
    const auto &rep = reps[order[c]];
    out.push_back({"c" + std::to_string(c) + "p0", rep});
    for (int p = 1; p < per_class; ++p) {
      bool done = false;
      for (int attempt = 0; attempt < variant_budget && !done; ++attempt) {
        auto nodes = rep;
        int n_detours = 1 + p % 3;
        for (int dtr = 0; dtr < n_detours; ++dtr) {
          if (nodes.size() < 3)
            break;
          std::size_t i = 1 + static_cast<std::size_t>(
                                  to_unit_interval(gen()) *
                                  (nodes.size() - 2)) %
                                  (nodes.size() - 2);
          std::size_t j = std::min(i + 4, nodes.size() - 1);
          int w = local_node(nodes[i], 3);
          std::vector<int> spliced(nodes.begin(), nodes.begin() + i + 1);
          auto leg1 = shortest_path(s, nodes[i], w);
          spliced.insert(spliced.end(), leg1.begin() + 1, leg1.end());
          auto leg2 = shortest_path(s, w, nodes[j]);
          spliced.insert(spliced.end(), leg2.begin() + 1, leg2.end());
          spliced.insert(spliced.end(), nodes.begin() + j + 1, nodes.end());
          nodes = std::move(spliced);
        }
        if (nodes == rep)
          continue;
        auto sig = tc.pair_signature(nodes, ref).crossings;
        if (sig == order[c]) {
          out.push_back({"c" + std::to_string(c) + "p" + std::to_string(p),
                         std::move(nodes)});
          done = true;
        }
      }
      if (!done)
        throw validation_error(
            "could not build enough same-class variants for class " +
            std::to_string(c));
    }
  }
  return out;
}

SideSignature side_signature(
    const Trajectory &gamma, const SurfacePtr &s,
    const std::vector<std::array<double, 2>> &anchors) {
  if (s->coord_dim != 2)
    throw validation_error("side_signature needs 2D coordinates");
  if (gamma.nodes.size() < 2)
    throw validation_error("side_signature needs a non-trivial trajectory");
  double minx = s->coords[0][0], maxx = s->coords[0][0];
  for (int v = 0; v < s->V; ++v) {
    minx = std::min(minx, s->coords[v][0]);
    maxx = std::max(maxx, s->coords[v][0]);
  }
  // Close the path with a detour down a lane left of the whole domain:
  // unambiguous with respect to every interior anchor.
  double lane = minx - 0.15 * std::max(1e-9, maxx - minx);
  std::vector<std::array<double, 2>> poly;
  poly.reserve(gamma.nodes.size() + 2);
  for (int v : gamma.nodes)
    poly.push_back({s->coords[v][0], s->coords[v][1]});
  poly.push_back({lane, s->coords[gamma.nodes.back()][1]});
  poly.push_back({lane, s->coords[gamma.nodes.front()][1]});

  SideSignature sig;
  for (const auto &a : anchors) {
    double w = raw_winding(poly, a);
    double r = std::round(w);
    sig.winds.push_back(static_cast<long long>(r));
    sig.residual = std::max(sig.residual, std::abs(w - r));
  }
  return sig;
}

MultiFloorDomain multifloor_domain(const MuseumSpec &spec) {
  spec.validate();
  if (spec.levels < 2)
    throw validation_error("multifloor_domain needs levels >= 2");
  const int L = spec.levels, d = spec.ladders, R = spec.rooms;
  const double W = spec.width, H = spec.height;

  auto [dx0, dy0] = estimate_spacing(spec);
  auto walls = museum_walls(spec, dx0, dy0);

  // Ladder shafts: pair p (floors p, p+1) gets d small holes in room
  // p mod R, at distinct x slots so no two pairs collide.
  std::vector<Rect> ladder_rects; // flattened, pair-major
  const int slots = (L - 1) * d + 1;
  for (int p = 0; p + 1 < L; ++p)
    for (int j = 0; j < d; ++j) {
      double cx = W * (p * d + j + 1) / slots;
      double cy = H * ((p % R) + 0.5) / R;
      ladder_rects.push_back(
          {cx - 1.2 * dx0, cy - 1.2 * dy0, cx + 1.2 * dx0, cy + 1.2 * dy0});
    }

  auto floor_holes = [&](int f) {
    std::vector<Rect> holes = walls;
    for (int p = std::max(0, f - 1); p <= std::min(L - 2, f); ++p)
      for (int j = 0; j < d; ++j)
        holes.push_back(ladder_rects[p * d + j]);
    return holes;
  };

  // One lattice size for every floor so ladder loops match node-for-node.
  auto [nx, ny] = choose_grid(W, H, spec.target_nodes, floor_holes(1 % L));

  // Re-place each ladder as an exact 2x2 block of actual cells. Rects
  // sized from the estimated spacing can miss every cell center of the
  // real lattice (silently cutting nothing), and two blocks closer than
  // two cells leave an interior edge between their rims, which becomes a
  // non-manifold edge once both rims are glued.
  {
    const double dx = W / (nx - 1), dy = H / (ny - 1);
    for (int p = 0; p + 1 < L; ++p) {
      int prev = -100;
      for (int j = 0; j < d; ++j) {
        double ideal = (nx - 1) * double(p * d + j + 1) / slots;
        int i0 = std::clamp(static_cast<int>(std::lround(ideal)) - 1, 1,
                            nx - 4);
        i0 = std::max(i0, prev + 4); // 2-cell block + 2-cell clearance
        if (i0 > nx - 4)
          throw validation_error(
              "lattice too coarse for the requested ladders per floor pair; "
              "raise target_nodes or lower ladders");
        prev = i0;
        int j0 = std::clamp(
            static_cast<int>(std::lround((ny - 1) * ((p % R) + 0.5) / R)) - 1,
            1, ny - 4);
        ladder_rects[p * d + j] = {i0 * dx, j0 * dy, (i0 + 2) * dx,
                                   (j0 + 2) * dy};
      }
    }
  }

  std::vector<LatticeMesh> floors;
  std::vector<int> offset(L + 1, 0);
  for (int f = 0; f < L; ++f) {
    validate_holes(floor_holes(f), W, H);
    floors.push_back(lattice_mesh(W, H, nx, ny, floor_holes(f), spec.jitter,
                                  spec.seed + static_cast<std::uint64_t>(f)));
    offset[f + 1] = offset[f] + floors[f].V;
  }

  // Glue: union floor-f and floor-(f+1) copies of each shared ladder loop.
  std::vector<int> parent(offset[L]);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const int n_walls = static_cast<int>(walls.size());
  for (int p = 0; p + 1 < L; ++p)
    for (int j = 0; j < d; ++j) {
      // hole_boundary order follows floor_holes: walls first, then the
      // floor's ladder rects in (pair, j) order.
      int lo_idx = n_walls + (p == 0 ? 0 : d) + j; // on floor p
      int hi_idx = n_walls + j;                    // on floor p + 1
      const auto &lo = floors[p].hole_boundary[lo_idx];
      const auto &hi = floors[p + 1].hole_boundary[hi_idx];
      if (lo.empty() || lo.size() != hi.size())
        throw validation_error("ladder loops differ between floors");
      // Match by lattice index; the sets are identical by construction.
      std::map<int, int> lo_by_lat;
      for (int c : lo)
        lo_by_lat[floors[p].lat[c]] = c;
      for (int c : hi) {
        auto it = lo_by_lat.find(floors[p + 1].lat[c]);
        if (it == lo_by_lat.end())
          throw validation_error("ladder loops differ between floors");
        int a = find(offset[p] + it->second);
        int b = find(offset[p + 1] + c);
        if (a != b)
          parent[std::max(a, b)] = std::min(a, b);
      }
    }

  std::vector<int> final_id(offset[L], -1);
  int V = 0;
  for (int g = 0; g < offset[L]; ++g)
    if (find(g) == g)
      final_id[g] = V++;
  for (int g = 0; g < offset[L]; ++g)
    final_id[g] = final_id[find(g)];

  const double zstep = H / R;
  std::vector<std::array<double, 3>> coords(V);
  std::vector<char> placed(V, 0);
  std::vector<std::array<int, 3>> faces;
  MultiFloorDomain out;
  out.levels = L;
  out.floor_nodes.resize(L);
  for (int f = 0; f < L; ++f) {
    const auto &m = floors[f];
    for (int c = 0; c < m.V; ++c) {
      int g = final_id[offset[f] + c];
      out.floor_nodes[f].push_back(g);
      if (!placed[g]) { // glued nodes keep the lower floor's x/y
        placed[g] = 1;
        coords[g] = {m.coords[c][0], m.coords[c][1], f * zstep};
      }
    }
    std::sort(out.floor_nodes[f].begin(), out.floor_nodes[f].end());
    out.floor_nodes[f].erase(std::unique(out.floor_nodes[f].begin(),
                                         out.floor_nodes[f].end()),
                             out.floor_nodes[f].end());
    for (const auto &fc : m.faces) {
      std::array<int, 3> g = {final_id[offset[f] + fc[0]],
                              final_id[offset[f] + fc[1]],
                              final_id[offset[f] + fc[2]]};
      if (f % 2 == 1) // alternate orientation so the gluing is consistent
        std::swap(g[1], g[2]);
      faces.push_back(g);
    }
  }

  // Hole marks: every boundary loop except floor 0's outer rectangle.
  std::vector<std::vector<int>> marks;
  for (int f = 0; f < L; ++f) {
    const auto &m = floors[f];
    for (int k = 0; k < n_walls; ++k) {
      std::vector<int> mk;
      for (int c : m.hole_boundary[k])
        mk.push_back(final_id[offset[f] + c]);
      marks.push_back(std::move(mk));
    }
    if (f > 0) {
      std::vector<int> perim;
      for (int c = 0; c < m.V; ++c) {
        int i = m.lat[c] % nx, j = m.lat[c] / nx;
        if (i == 0 || i == nx - 1 || j == 0 || j == ny - 1)
          perim.push_back(final_id[offset[f] + c]);
      }
      marks.push_back(std::move(perim));
    }
  }

  out.surface = build_surface(std::move(faces), std::move(coords), 3,
                              std::move(marks));
  out.entrance = final_id[offset[0] + floors[0].nearest(0.5 * W, 0.0)];
  out.exit = final_id[offset[L - 1] + floors[L - 1].nearest(0.5 * W, H)];
  return out;
}

} // namespace trajtopo
