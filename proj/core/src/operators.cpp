#include "trajtopo/operators.hpp"

namespace trajtopo {

Cochain1 d0(const Cochain0 &f) {
  const auto &s = *f.surface();
  Cochain1 out(f.surface());
  for (int e = 0; e < s.E(); ++e)
    out[e] = f[s.edges[e].v] - f[s.edges[e].u];
  return out;
}

Cochain2 d1(const Cochain1 &w) {
  const auto &s = *w.surface();
  Cochain2 out(w.surface());
  for (int fi = 0; fi < s.F(); ++fi) {
    double sum = 0.0;
    for (const auto &fe : s.face_edges[fi])
      sum += w.on_edge(fe.edge, fe.sign);
    out[fi] = sum;
  }
  return out;
}

Cochain0 delta1(const Cochain1 &w) {
  const auto &s = *w.surface();
  Cochain0 out(w.surface());
  for (int v = 0; v < s.V; ++v) {
    double sum = 0.0;
    for (const auto &ne : s.node_edges[v])
      sum += w.on_edge(ne.edge, ne.sign);
    out[v] = sum;
  }
  return out;
}

Cochain1 delta2(const Cochain2 &g) {
  const auto &s = *g.surface();
  Cochain1 out(g.surface());
  for (int e = 0; e < s.E(); ++e) {
    int l = s.edge_faces[e][0], r = s.edge_faces[e][1];
    out[e] = (l >= 0 ? g[l] : 0.0) - (r >= 0 ? g[r] : 0.0);
  }
  return out;
}

} // namespace trajtopo
