#pragma once

#include <string>
#include <vector>

#include "geocross/surface.hpp"
#include "geocross/tracer.hpp"

// Transverse intersection counting. Two independent routes: the pairwise
// lift method compares each pair of octagon segments after applying the
// relative deck transformation, the hexagon method counts chord crossings
// inside each convex hexagon. Both count crossing pairs, so a triple point
// contributes three.

namespace geocross {

enum class CountMethod { pairwise_lift, hexagon };

struct CrossingPair {
    int i = 0, j = 0;          // strand indices (segment or hexagon-segment)
    HPoint witness;            // crossing point (domain coords of strand i)
    double angle = 0.0;        // crossing angle
};

struct IntersectionReport {
    int count = 0;
    std::vector<CrossingPair> pairs;
    CountMethod method = CountMethod::pairwise_lift;
    bool degenerate = false;   // some crossing was near-tangential
};

IntersectionReport count_self(const SurfaceGroup& S, const TracedArc& a,
                              CountMethod method);
IntersectionReport count_self(const SurfaceGroup& S, const HexagonDecomposition& H,
                              const TracedArc& a, CountMethod method);

IntersectionReport count_pair(const SurfaceGroup& S, const TracedArc& a,
                              const TracedArc& b);
IntersectionReport count_pair(const SurfaceGroup& S, const HexagonDecomposition& H,
                              const TracedArc& a, const TracedArc& b,
                              CountMethod method);

struct ClosedIntersection {
    int count = 0;
    bool primitive = true;
    std::string root;          // primitive root of the input word
    double length = 0.0;
    bool degenerate = false;
};

// geometric self-intersection number of the closed geodesic of a cyclically
// reduced hyperbolic word, by tracing one period of its axis
ClosedIntersection closed_self_intersection(const SurfaceGroup& S,
                                            const std::string& w);

// kappa L_a L_b with kappa from the growth constants; arguments must be >= 1
double quadratic_bound(double L_a, double L_b, const GrowthBound& gb);

} // namespace geocross
