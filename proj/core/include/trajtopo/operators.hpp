#pragma once

#include "trajtopo/surface.hpp"

namespace trajtopo {

/// (d0 f)(u->v) = f(v) - f(u).
Cochain1 d0(const Cochain0 &f);

/// (d1 w)(face) = sum of w over the face's CCW directed boundary.
Cochain2 d1(const Cochain1 &w);

/// (delta1 w)(v) = sum of w over directed edges leaving v.
Cochain0 delta1(const Cochain1 &w);

/// (delta2 g)(u->v) = g(left face) - g(right face), where "left" is the
/// face whose CCW boundary contains u->v. Absent faces (boundary edges of
/// a bounded surface) contribute zero.
Cochain1 delta2(const Cochain2 &g);

} // namespace trajtopo
