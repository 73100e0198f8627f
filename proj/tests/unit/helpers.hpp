#pragma once

#include <array>
#include <vector>

#include <trajtopo/surface.hpp>

namespace trajtopo::testing {

/// Octahedron: the smallest closed orientable triangulation used here.
/// V=6, E=12, F=8, chi=2, genus 0. Nodes 0/5 are the poles, 1-4 the
/// equator.
inline SurfacePtr octahedron() {
  std::vector<std::array<int, 3>> faces = {
      {0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
      {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
  std::vector<std::array<double, 3>> coords = {
      {0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  return build_surface(std::move(faces), std::move(coords), 3);
}

/// Square annulus: a 4x4 node grid, 3x3 cells each split into two
/// triangles, with the center cell removed. V=16, F=16, one square hole
/// (nodes 5, 6, 10, 9), chi = 0, first Betti number 1.
inline SurfacePtr square_annulus() {
  auto vid = [](int i, int j) { return j * 4 + i; };
  std::vector<std::array<int, 3>> faces;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      if (i == 1 && j == 1)
        continue;
      faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  std::vector<std::array<double, 3>> coords;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i)
      coords.push_back({double(i), double(j), 0.0});
  return build_surface(std::move(faces), std::move(coords), 2);
}

} // namespace trajtopo::testing
