#pragma once

#include <memory>

#include "geocross/surface.hpp"

// shared fixtures: the reference surface and hexagon decomposition are built
// once per test binary
namespace testutil {

inline const geocross::SurfaceGroup& surface() {
    static const geocross::SurfaceGroup S = geocross::SurfaceGroup::build_genus2();
    return S;
}

inline const geocross::HexagonDecomposition& hexagons() {
    static const geocross::HexagonDecomposition H = [] {
        geocross::HexagonDecomposition h = geocross::build_hexagons(surface());
        return h;
    }();
    return H;
}

} // namespace testutil
