#pragma once

#include <string>
#include <vector>

#include "geocross/hyp.hpp"
#include "geocross/surface.hpp"

// Geodesic arcs traced on the surface. The arc is a single straight geodesic
// t -> frame(i e^t) in the universal cover; folding accumulates the chamber
// isometry at each side crossing, so per-segment error does not compound
// along the arc.

namespace geocross {

struct ArcSegment {
    double t0 = 0.0, t1 = 0.0;   // arc parameters (arclength)
    Isometry chamber;            // segment in domain = chamber^{-1} . cover
    Isometry local_frame;        // domain point at t is local_frame(i e^{t - t0})
    HPoint start, end;           // endpoints in the fundamental domain
    double length() const { return t1 - t0; }
    HPoint point_at(double t) const {
        return local_frame.apply(HPoint(0.0, std::exp(t - t0)));
    }
};

struct TracedArc {
    UnitTangent start;
    double length = 0.0;
    Isometry frame;                  // cover geodesic t -> frame(i e^t)
    std::vector<ArcSegment> segments;
    std::string crossing_word;
    bool perturbed = false;

    HPoint cover_point(double t) const { return frame.apply(HPoint(0.0, std::exp(t))); }
    Geodesic cover_geodesic() const {
        return Geodesic::imaginary_axis().transformed(frame);
    }
    // endpoint frame on the surface (transported into the domain)
    UnitTangent end_frame(const SurfaceGroup& S) const;
};

struct GeodesicSpec {
    UnitTangent base;
    explicit GeodesicSpec(const SurfaceGroup& S, const UnitTangent& v);
};

// trace the geodesic of length l from v; corner hits are retried with the
// start angle nudged by 1e-9 and the result annotated as perturbed
TracedArc trace(const SurfaceGroup& S, const UnitTangent& v, double l);

// arc of length l centered at gamma(t_x): trace backward l/2 and forward l/2
TracedArc centered_subarc(const SurfaceGroup& S, const GeodesicSpec& g,
                          double t_x, double l);

struct HexSeg {
    int hex = -1;
    int lift = -1;
    double t0 = 0.0, t1 = 0.0;
    GeodesicSegment seg;          // chord in the coordinates of its hexagon lift
    bool full = false;            // does not contain an arc endpoint
    int arc_segment = -1;         // first octagon segment it came from
    Isometry base_frame;          // chord in base-hexagon coords: t -> base_frame(i e^t)
};

// maximal single-hexagon subarcs of a traced arc; N <= 2 + 3 l / C
std::vector<HexSeg> hexagon_segments(const HexagonDecomposition& H,
                                     const TracedArc& a);

// one period of the axis of a hyperbolic deck element, traced on the
// surface; retries from offset basepoints when the axis runs through
// octagon vertices
TracedArc trace_axis_period(const SurfaceGroup& S, const Isometry& W);

} // namespace geocross
