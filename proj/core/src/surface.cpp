#include "trajtopo/surface.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace trajtopo {

int CombinatorialSurface::find_edge(int a, int b) const {
  if (!simple)
    throw validation_error("edge lookup by node pair on a non-simple surface");
  auto it = edge_ids.find({std::min(a, b), std::max(a, b)});
  return it == edge_ids.end() ? -1 : it->second;
}

int CombinatorialSurface::edge_between(int a, int b) const {
  int e = find_edge(a, b);
  if (e < 0)
    throw validation_error("no edge between nodes " + std::to_string(a) +
                           " and " + std::to_string(b));
  return e;
}

std::vector<std::vector<int>> CombinatorialSurface::hole_loop_nodes() const {
  std::vector<std::vector<int>> out;
  out.reserve(hole_loops.size());
  for (int li : hole_loops)
    out.push_back(boundary_loops[li]);
  return out;
}

double Cochain1::max_abs() const {
  double m = 0.0;
  for (double x : v_)
    m = std::max(m, std::abs(x));
  return m;
}

double Cochain1::l2() const {
  double s = 0.0;
  for (double x : v_)
    s += x * x;
  return std::sqrt(s);
}

namespace {

// Signed area of a loop in the xy-plane.
double loop_signed_area(const CombinatorialSurface &s,
                        const std::vector<int> &loop) {
  double a = 0.0;
  for (size_t i = 0; i < loop.size(); ++i) {
    const auto &p = s.coords[loop[i]];
    const auto &q = s.coords[loop[(i + 1) % loop.size()]];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

double loop_extent(const CombinatorialSurface &s, const std::vector<int> &loop) {
  double lo[3] = {1e300, 1e300, 1e300}, hi[3] = {-1e300, -1e300, -1e300};
  for (int n : loop)
    for (int d = 0; d < s.coord_dim; ++d) {
      lo[d] = std::min(lo[d], s.coords[n][d]);
      hi[d] = std::max(hi[d], s.coords[n][d]);
    }
  double ext = 0.0;
  for (int d = 0; d < s.coord_dim; ++d)
    ext = std::max(ext, hi[d] - lo[d]);
  return ext;
}

} // namespace

void finalize_surface(CombinatorialSurface &s) {
  const int E = s.E(), F = s.F();

  // edge -> incident faces via face_edges; each (edge, sign) at most once.
  s.edge_faces.assign(E, {-1, -1});
  for (int f = 0; f < F; ++f) {
    for (const auto &fe : s.face_edges[f]) {
      int slot = fe.sign > 0 ? 0 : 1; // left holds the face using u->v
      if (s.edge_faces[fe.edge][slot] != -1)
        throw validation_error(
            "inconsistent orientation or non-manifold edge: directed edge "
            "used twice (edge id " +
            std::to_string(fe.edge) + ")");
      s.edge_faces[fe.edge][slot] = f;
    }
  }

  // Node adjacency.
  s.node_edges.assign(s.V, {});
  for (int e = 0; e < E; ++e) {
    const auto &ed = s.edges[e];
    s.node_edges[ed.u].push_back({ed.v, e, +1});
    s.node_edges[ed.v].push_back({ed.u, e, -1});
  }
  for (auto &ne : s.node_edges)
    std::sort(ne.begin(), ne.end(), [](const auto &a, const auto &b) {
      return std::pair(a.nbr, a.edge) < std::pair(b.nbr, b.edge);
    });

  // Dual adjacency.
  s.dual_adjacency.assign(F, {});
  for (int e = 0; e < E; ++e) {
    int l = s.edge_faces[e][0], r = s.edge_faces[e][1];
    if (l >= 0 && r >= 0) {
      s.dual_adjacency[l].push_back(r);
      s.dual_adjacency[r].push_back(l);
    }
  }
  for (auto &da : s.dual_adjacency)
    std::sort(da.begin(), da.end());

  // Every edge has at least one face.
  for (int e = 0; e < E; ++e)
    if (s.edge_faces[e][0] < 0 && s.edge_faces[e][1] < 0)
      throw validation_error("edge with no incident face");

  // Boundary loops. A boundary edge has a single incident face; the free
  // (unused) direction orients the loop walk. Each boundary node must see
  // exactly one outgoing and one incoming free direction.
  s.node_on_boundary.assign(s.V, 0);
  std::map<int, std::pair<int, int>> out_free; // start node -> (end node, edge)
  for (int e = 0; e < E; ++e) {
    int l = s.edge_faces[e][0], r = s.edge_faces[e][1];
    if (l >= 0 && r >= 0)
      continue;
    int a, b; // free direction a->b
    if (l >= 0) { // face uses u->v, free direction v->u
      a = s.edges[e].v;
      b = s.edges[e].u;
    } else {
      a = s.edges[e].u;
      b = s.edges[e].v;
    }
    s.node_on_boundary[a] = 1;
    s.node_on_boundary[b] = 1;
    if (out_free.count(a))
      throw validation_error("non-manifold boundary node " + std::to_string(a));
    out_free[a] = {b, e};
  }
  s.boundary_loops.clear();
  std::set<int> visited;
  for (const auto &[start, _] : out_free) {
    if (visited.count(start))
      continue;
    std::vector<int> loop;
    int cur = start;
    do {
      if (visited.count(cur))
        throw validation_error("boundary loops are not vertex-disjoint");
      visited.insert(cur);
      loop.push_back(cur);
      auto it = out_free.find(cur);
      if (it == out_free.end())
        throw validation_error("open boundary walk at node " +
                               std::to_string(cur));
      cur = it->second.first;
    } while (cur != start);
    s.boundary_loops.push_back(std::move(loop));
  }

  // Orient loops CCW when 2D coordinates are available.
  if (s.coord_dim == 2)
    for (auto &loop : s.boundary_loops)
      if (loop_signed_area(s, loop) < 0.0)
        std::reverse(loop.begin(), loop.end());
  // Canonical rotation: the smallest node id leads.
  for (auto &loop : s.boundary_loops) {
    auto it = std::min_element(loop.begin(), loop.end());
    std::rotate(loop.begin(), it, loop.end());
  }
  std::sort(s.boundary_loops.begin(), s.boundary_loops.end(),
            [](const auto &a, const auto &b) {
              return std::pair(a.size(), a) < std::pair(b.size(), b);
            });

  // Connectivity.
  if (s.V == 0)
    throw validation_error("empty surface");
  std::vector<char> seen(s.V, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto &ne : s.node_edges[v])
      if (!seen[ne.nbr]) {
        seen[ne.nbr] = 1;
        ++reached;
        stack.push_back(ne.nbr);
      }
  }
  if (reached != s.V)
    throw validation_error("surface graph is disconnected");

  // chi = 2 - 2g - b must give integral, nonnegative genus.
  int chi = s.euler();
  int b = static_cast<int>(s.boundary_loops.size());
  int twice_g = 2 - b - chi;
  if (twice_g < 0 || twice_g % 2 != 0)
    throw validation_error("Euler characteristic inconsistent with an "
                           "orientable surface: chi=" +
                           std::to_string(chi) + " b=" + std::to_string(b));
}

SurfacePtr build_surface(std::vector<std::array<int, 3>> faces,
                         std::vector<std::array<double, 3>> coords,
                         int coord_dim,
                         std::vector<std::vector<int>> hole_marks) {
  if (faces.empty())
    throw validation_error("face list is empty");

  auto s = std::make_shared<CombinatorialSurface>();
  int maxid = -1;
  for (const auto &f : faces) {
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      throw validation_error("degenerate face");
    for (int n : f) {
      if (n < 0)
        throw validation_error("negative node id");
      maxid = std::max(maxid, n);
    }
  }
  s->V = maxid + 1;
  s->faces = std::move(faces);
  if (!coords.empty()) {
    if (static_cast<int>(coords.size()) != s->V)
      throw validation_error("coordinate count does not match node count");
    if (coord_dim != 2 && coord_dim != 3)
      throw validation_error("coordinates must be 2D or 3D");
    s->coords = std::move(coords);
    s->coord_dim = coord_dim;
  }

  // Canonical edge set, sorted by (u, v).
  std::map<std::pair<int, int>, int> face_count;
  for (const auto &f : s->faces)
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      auto key = std::pair(std::min(a, b), std::max(a, b));
      if (++face_count[key] > 2)
        throw validation_error("non-manifold edge (" + std::to_string(key.first) +
                               "," + std::to_string(key.second) +
                               "): more than two incident faces");
    }
  for (const auto &[key, cnt] : face_count) {
    s->edge_ids[key] = s->E();
    s->edges.push_back({key.first, key.second});
  }

  s->face_edges.assign(s->F(), {});
  for (int fi = 0; fi < s->F(); ++fi) {
    const auto &f = s->faces[fi];
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      int e = s->edge_ids.at({std::min(a, b), std::max(a, b)});
      s->face_edges[fi][k] = {e, a < b ? +1 : -1};
    }
  }

  finalize_surface(*s);

  // Outer-vs-hole classification.
  int nloops = static_cast<int>(s->boundary_loops.size());
  if (nloops > 0) {
    if (!hole_marks.empty()) {
      std::vector<std::set<int>> mark_sets;
      for (auto &m : hole_marks)
        mark_sets.emplace_back(m.begin(), m.end());
      for (int li = 0; li < nloops; ++li) {
        std::set<int> ls(s->boundary_loops[li].begin(),
                         s->boundary_loops[li].end());
        for (const auto &ms : mark_sets)
          if (ms == ls) {
            s->hole_loops.push_back(li);
            break;
          }
      }
      if (s->hole_loops.size() != mark_sets.size())
        throw validation_error("a hole mark does not match any boundary loop");
    } else if (s->coord_dim > 0 && nloops > 1) {
      int outer = 0;
      double best = -1.0;
      for (int li = 0; li < nloops; ++li) {
        double ext = loop_extent(*s, s->boundary_loops[li]);
        if (ext > best) {
          best = ext;
          outer = li;
        }
      }
      for (int li = 0; li < nloops; ++li)
        if (li != outer)
          s->hole_loops.push_back(li);
    } else if (nloops > 1) {
      throw validation_error("ambiguous outer loop: multiple boundary loops "
                             "but no coordinates or hole marks");
    }
    // The unique unmarked loop, if any, is the outer boundary.
    std::vector<int> non_hole;
    for (int li = 0; li < nloops; ++li)
      if (std::find(s->hole_loops.begin(), s->hole_loops.end(), li) ==
          s->hole_loops.end())
        non_hole.push_back(li);
    if (non_hole.size() == 1)
      s->outer_loop = non_hole[0];
  }

  return s;
}

} // namespace trajtopo
