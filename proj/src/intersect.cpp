#include "geocross/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "geocross/words.hpp"

namespace geocross {

namespace {

constexpr double kDegenerateAngle = 1e-7;

// one crossing of cover geodesics GA (arc A) and h*GB (arc B, translated by
// the relative deck transformation); reports arc parameters of the crossing
struct LiftHit {
    bool hit = false;
    double ta = 0.0, tb = 0.0;
    HPoint z;
    double angle = 0.0;
};

LiftHit lift_crossing(const Isometry& FA, const Isometry& hFB) {
    LiftHit out;
    const Geodesic GA = Geodesic::imaginary_axis().transformed(FA);
    const Geodesic GB = Geodesic::imaginary_axis().transformed(hFB);
    HPoint z;
    if (!geodesic_intersect(GA, GB, z)) return out;
    const std::complex<double> wa = FA.inverse().apply(z.z());
    const std::complex<double> wb = hFB.inverse().apply(z.z());
    out.hit = true;
    out.ta = std::log(std::abs(wa));
    out.tb = std::log(std::abs(wb));
    out.z = z;
    out.angle = crossing_angle(GA, GB, z);
    return out;
}

IntersectionReport pairwise_lift_count(const TracedArc& a, const TracedArc& b,
                                       bool same) {
    // segment i against segment j translated by the relative deck
    // transformation; in domain coordinates the translation is already
    // applied, so the test compares the folded chords through their local
    // frames, whose entries stay O(1) along the arc
    IntersectionReport rep;
    rep.method = CountMethod::pairwise_lift;
    const size_t n = a.segments.size(), m = b.segments.size();
    for (size_t i = 0; i < n; ++i) {
        const ArcSegment& sa = a.segments[i];
        for (size_t j = same ? i + 1 : 0; j < m; ++j) {
            const ArcSegment& sb = b.segments[j];
            const LiftHit hit = lift_crossing(sa.local_frame, sb.local_frame);
            if (!hit.hit) continue;
            const double ta = sa.t0 + hit.ta;
            const double tb = sb.t0 + hit.tb;
            if (ta < sa.t0 || ta >= sa.t1) continue;
            if (tb < sb.t0 || tb >= sb.t1) continue;
            CrossingPair cp;
            cp.i = static_cast<int>(i);
            cp.j = static_cast<int>(j);
            cp.witness = hit.z;
            cp.angle = hit.angle;
            if (hit.angle < kDegenerateAngle) rep.degenerate = true;
            rep.pairs.push_back(cp);
        }
    }
    rep.count = static_cast<int>(rep.pairs.size());
    return rep;
}

IntersectionReport hexagon_count(const HexagonDecomposition& H, const TracedArc& a,
                                 const TracedArc& b, bool same) {

    IntersectionReport rep;
    rep.method = CountMethod::hexagon;
    const std::vector<HexSeg> sa = hexagon_segments(H, a);
    const std::vector<HexSeg> sb = same ? sa : hexagon_segments(H, b);
    for (size_t i = 0; i < sa.size(); ++i) {
        for (size_t j = same ? i + 1 : 0; j < sb.size(); ++j) {
            if (sa[i].hex != sb[j].hex) continue;
            // chords of the same convex hexagon cross at most once
            const LiftHit hit = lift_crossing(sa[i].base_frame, sb[j].base_frame);
            if (!hit.hit) continue;
            if (hit.ta < sa[i].t0 || hit.ta >= sa[i].t1) continue;
            if (hit.tb < sb[j].t0 || hit.tb >= sb[j].t1) continue;
            CrossingPair cp;
            cp.i = static_cast<int>(i);
            cp.j = static_cast<int>(j);
            cp.witness = HPoint::from(
                sa[i].base_frame.apply(std::complex<double>(0.0, std::exp(hit.ta))));
            cp.angle = hit.angle;
            if (hit.angle < kDegenerateAngle) rep.degenerate = true;
            rep.pairs.push_back(cp);
        }
    }
    rep.count = static_cast<int>(rep.pairs.size());
    return rep;
}

} // namespace

IntersectionReport count_self(const SurfaceGroup& S, const TracedArc& a,
                              CountMethod method) {
    if (method != CountMethod::pairwise_lift)
        throw std::invalid_argument("count_self: hexagon method needs a decomposition");
    (void)S;
    return pairwise_lift_count(a, a, true);
}

IntersectionReport count_self(const SurfaceGroup& S, const HexagonDecomposition& H,
                              const TracedArc& a, CountMethod method) {
    (void)S;
    if (method == CountMethod::pairwise_lift) return pairwise_lift_count(a, a, true);
    return hexagon_count(H, a, a, true);
}

IntersectionReport count_pair(const SurfaceGroup& S, const TracedArc& a,
                              const TracedArc& b) {
    (void)S;
    return pairwise_lift_count(a, b, false);
}

IntersectionReport count_pair(const SurfaceGroup& S, const HexagonDecomposition& H,
                              const TracedArc& a, const TracedArc& b,
                              CountMethod method) {
    (void)S;
    if (method == CountMethod::pairwise_lift) return pairwise_lift_count(a, b, false);
    return hexagon_count(H, a, b, false);
}

ClosedIntersection closed_self_intersection(const SurfaceGroup& S,
                                            const std::string& w) {
    using namespace words;
    if (w.empty() || cyclic_reduce(w) != w)
        throw std::invalid_argument("closed_self_intersection: word not cyclically reduced");
    Isometry M = S.word(w);
    if (!M.is_hyperbolic(1e-12))
        throw std::invalid_argument("closed_self_intersection: non-hyperbolic word");
    ClosedIntersection out;
    out.root = primitive_root(w);
    out.primitive = out.root.size() == w.size();
    out.length = translation_length(M);
    const TracedArc arc = trace_axis_period(S, M);
    // crossings of the closed curve are unordered parameter pairs mod the
    // period; a crossing at the basepoint shows up at both 0 and L, so the
    // pairs are canonicalized before counting
    const double L = out.length;
    std::set<std::pair<long long, long long>> keys;
    auto canon = [&](double t) {
        double u = std::fmod(t, L);
        if (u < 0.0) u += L;
        if (u > L - 1e-7) u = 0.0;
        return u;
    };
    for (size_t i = 0; i < arc.segments.size(); ++i) {
        const ArcSegment& sa = arc.segments[i];
        for (size_t j = i + 1; j < arc.segments.size(); ++j) {
            const ArcSegment& sb = arc.segments[j];
            HPoint z;
            const Geodesic ga = Geodesic::imaginary_axis().transformed(sa.local_frame);
            const Geodesic gb = Geodesic::imaginary_axis().transformed(sb.local_frame);
            if (!geodesic_intersect(ga, gb, z)) continue;
            const double ta =
                sa.t0 + std::log(std::abs(sa.local_frame.inverse().apply(z.z())));
            const double tb =
                sb.t0 + std::log(std::abs(sb.local_frame.inverse().apply(z.z())));
            if (ta < sa.t0 - 1e-9 || ta > sa.t1 + 1e-9) continue;
            if (tb < sb.t0 - 1e-9 || tb > sb.t1 + 1e-9) continue;
            if (crossing_angle(ga, gb, z) < kDegenerateAngle) out.degenerate = true;
            double u = canon(ta), v = canon(tb);
            if (std::abs(u - v) < 1e-7) continue;   // same strand parameter
            if (u > v) std::swap(u, v);
            keys.insert({std::llround(u * 1e7), std::llround(v * 1e7)});
        }
    }
    out.count = static_cast<long long>(keys.size());
    return out;
}

double quadratic_bound(double L_a, double L_b, const GrowthBound& gb) {
    if (L_a < 1.0 || L_b < 1.0)
        throw std::invalid_argument("quadratic_bound: arguments must be >= 1");
    if (!(gb.kappa > 0.0))
        throw std::invalid_argument("quadratic_bound: kappa not set");
    return gb.kappa * L_a * L_b;
}

} // namespace geocross
