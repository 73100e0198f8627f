#include "trajtopo/double_cover.hpp"

#include <algorithm>
#include <cmath>

namespace trajtopo {

DoubleCoverMap double_cover(const SurfacePtr &s) {
  if (s->closed())
    throw validation_error("double cover of a closed surface");

  DoubleCoverMap m;
  m.original = s;
  auto cover = std::make_shared<CombinatorialSurface>();

  const int V = s->V, E = s->E(), F = s->F();

  // Nodes: boundary nodes are shared, interior nodes get a sheet-1 copy.
  m.node_map.resize(V);
  int next = V;
  for (int v = 0; v < V; ++v) {
    m.node_map[v][0] = v;
    m.node_map[v][1] = s->node_on_boundary[v] ? v : next++;
  }
  cover->V = next;

  auto is_boundary_edge = [&](int e) {
    return s->edge_faces[e][0] < 0 || s->edge_faces[e][1] < 0;
  };

  // Edges: sheet-0 copies first (ids preserved), then sheet-1 copies of
  // interior edges. Boundary edges are shared.
  m.edge_map.resize(E);
  m.edge_orient1.assign(E, +1);
  cover->edges = s->edges;
  bool parallel = false;
  for (int e = 0; e < E; ++e) {
    m.edge_map[e][0] = e;
    if (is_boundary_edge(e)) {
      m.edge_map[e][1] = e;
      continue;
    }
    int a = m.node_map[s->edges[e].u][1];
    int b = m.node_map[s->edges[e].v][1];
    if (a == s->edges[e].u && b == s->edges[e].v)
      parallel = true; // interior chord between two boundary nodes
    m.edge_map[e][1] = cover->E();
    m.edge_orient1[e] = a < b ? +1 : -1;
    cover->edges.push_back({std::min(a, b), std::max(a, b)});
  }
  cover->simple = !parallel;
  if (cover->simple)
    for (int e = 0; e < cover->E(); ++e)
      cover->edge_ids[{cover->edges[e].u, cover->edges[e].v}] = e;

  // Faces: sheet-0 as-is, sheet-1 with reversed orientation.
  m.face_map.resize(F);
  cover->faces = s->faces;
  cover->face_edges = s->face_edges;
  for (int f = 0; f < F; ++f) {
    m.face_map[f][0] = f;
    m.face_map[f][1] = F + f;
    const auto &t = s->faces[f];
    cover->faces.push_back({m.node_map[t[0]][1], m.node_map[t[2]][1],
                            m.node_map[t[1]][1]});
    // Boundary of the mirrored face: reverses of the original directed
    // edges, in reverse order.
    std::array<CombinatorialSurface::FaceEdge, 3> fes;
    for (int k = 0; k < 3; ++k) {
      const auto &fe = s->face_edges[f][2 - k];
      int ce = m.edge_map[fe.edge][1];
      int sign;
      if (is_boundary_edge(fe.edge))
        sign = -fe.sign; // shared edge, reversed direction
      else
        sign = -fe.sign * m.edge_orient1[fe.edge];
      fes[k] = {ce, sign};
    }
    cover->face_edges.push_back(fes);
  }

  finalize_surface(*cover);
  if (!cover->closed())
    throw validation_error("double cover construction left a boundary");
  if (cover->euler() != 2 * s->euler())
    throw validation_error("double cover Euler characteristic mismatch");

  // Involutions.
  m.node_involution.assign(cover->V, -1);
  m.edge_involution.assign(cover->E(), -1);
  m.face_involution.assign(cover->F(), -1);
  for (int v = 0; v < V; ++v) {
    m.node_involution[m.node_map[v][0]] = m.node_map[v][1];
    m.node_involution[m.node_map[v][1]] = m.node_map[v][0];
  }
  for (int e = 0; e < E; ++e) {
    m.edge_involution[m.edge_map[e][0]] = m.edge_map[e][1];
    m.edge_involution[m.edge_map[e][1]] = m.edge_map[e][0];
  }
  for (int f = 0; f < F; ++f) {
    m.face_involution[m.face_map[f][0]] = m.face_map[f][1];
    m.face_involution[m.face_map[f][1]] = m.face_map[f][0];
  }

  m.cover = std::move(cover);
  return m;
}

Cochain1 mirror_one_form(const Cochain1 &w, const DoubleCoverMap &m) {
  Cochain1 out(m.cover);
  const int E = m.original->E();
  for (int e = 0; e < E; ++e) {
    out[m.edge_map[e][0]] = w[e];
    out[m.edge_map[e][1]] = m.edge_orient1[e] * w[e];
  }
  return out;
}

Restricted<Cochain1> restrict_one_form(const Cochain1 &c,
                                       const DoubleCoverMap &m) {
  Restricted<Cochain1> out;
  out.values = Cochain1(m.original);
  const int E = m.original->E();
  for (int e = 0; e < E; ++e) {
    out.values[e] = c[m.edge_map[e][0]];
    double mirrored = m.edge_orient1[e] * c[m.edge_map[e][1]];
    out.asymmetry = std::max(out.asymmetry, std::abs(mirrored - c[e]));
  }
  return out;
}

Restricted<Cochain0> restrict_zero_form(const Cochain0 &c,
                                        const DoubleCoverMap &m) {
  Restricted<Cochain0> out;
  out.values = Cochain0(m.original);
  for (int v = 0; v < m.original->V; ++v) {
    out.values[v] = c[m.node_map[v][0]];
    out.asymmetry = std::max(
        out.asymmetry, std::abs(c[m.node_map[v][1]] - c[m.node_map[v][0]]));
  }
  return out;
}

Restricted<Cochain2> restrict_two_form(const Cochain2 &c,
                                       const DoubleCoverMap &m) {
  Restricted<Cochain2> out;
  out.values = Cochain2(m.original);
  for (int f = 0; f < m.original->F(); ++f) {
    out.values[f] = c[m.face_map[f][0]];
    // Mirrored faces carry reversed orientation, so a symmetric solve
    // produces antisymmetric 2-form values.
    out.asymmetry = std::max(
        out.asymmetry, std::abs(c[m.face_map[f][1]] + c[m.face_map[f][0]]));
  }
  return out;
}

} // namespace trajtopo
