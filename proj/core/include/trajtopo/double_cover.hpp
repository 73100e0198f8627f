#pragma once

#include "trajtopo/surface.hpp"

namespace trajtopo {

/// Glues a bounded surface to its orientation-reversed copy along all
/// boundary loops, producing a closed surface with chi doubled. Sheet-0
/// simplices keep their original ids (the first V/E/F entries of the
/// cover), so restriction is an array prefix read.
struct DoubleCoverMap {
  SurfacePtr original;
  SurfacePtr cover;
  std::vector<std::array<int, 2>> node_map; // original -> {sheet0, sheet1}
  std::vector<std::array<int, 2>> edge_map; // boundary edges map to themselves
  std::vector<std::array<int, 2>> face_map;
  std::vector<int> node_involution; // cover node -> sheet-swapped node
  std::vector<int> edge_involution;
  std::vector<int> face_involution;
  // +1 if the sheet-1 copy of edge e keeps the canonical direction of the
  // original (node_map[u][1] < node_map[v][1]), else -1.
  std::vector<int> edge_orient1;
};

/// Errors on a closed surface.
DoubleCoverMap double_cover(const SurfacePtr &s);

/// Symmetric lift: sheet-0 copy equals w; the sheet-1 value in the
/// direction of the mapped original edge equals the original value, so the
/// result is involution-invariant in the directed sense. Shared boundary
/// edges keep the original value.
Cochain1 mirror_one_form(const Cochain1 &w, const DoubleCoverMap &m);

template <typename C> struct Restricted {
  C values;
  double asymmetry = 0.0; // max deviation from involution symmetry
};

/// Reads sheet-0 values back onto the original surface. The asymmetry of
/// the input under the sheet-swap involution is measured and returned;
/// values above 1e-9 indicate the cochain did not come from a symmetric
/// computation.
Restricted<Cochain1> restrict_one_form(const Cochain1 &c,
                                       const DoubleCoverMap &m);
Restricted<Cochain0> restrict_zero_form(const Cochain0 &c,
                                        const DoubleCoverMap &m);
Restricted<Cochain2> restrict_two_form(const Cochain2 &c,
                                       const DoubleCoverMap &m);

} // namespace trajtopo
