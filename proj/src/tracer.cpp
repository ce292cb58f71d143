#include "geocross/tracer.hpp"

#include <algorithm>
#include <cmath>

namespace geocross {

UnitTangent TracedArc::end_frame(const SurfaceGroup& S) const {
    (void)S;
    const ArcSegment& last = segments.back();
    const Isometry local = flow_frame(last.local_frame, length - last.t0).normalized();
    const HPoint p = local.apply(HPoint(0.0, 1.0));
    return UnitTangent(p, tangent_angle(local, 0.0));
}

GeodesicSpec::GeodesicSpec(const SurfaceGroup& S, const UnitTangent& v) : base(v) {
    if (!S.inside(v.base, 1e-9))
        throw std::invalid_argument("GeodesicSpec: base point outside fundamental domain");
}

namespace {

// crossing parameter of the local geodesic s -> F(i e^s) with a side
// geodesic: transform the side by F^{-1} and cross with the imaginary axis
bool side_crossing_param(const Isometry& F_inv, const Geodesic& side, double s_min,
                         double& s_out) {
    const Geodesic g = side.transformed(F_inv);
    if (g.vertical) return false;
    if (std::abs(g.c) >= g.r) return false;
    const double y = std::sqrt(g.r * g.r - g.c * g.c);
    const double s = std::log(y);
    if (s <= s_min) return false;
    s_out = s;
    return true;
}

Isometry translate_frame(double t) {
    const double e = std::exp(t / 2.0);
    return Isometry(e, 0.0, 0.0, 1.0 / e);
}

struct TraceAttempt {
    bool ok = false;
    TracedArc arc;
};

TraceAttempt trace_once(const SurfaceGroup& S, const UnitTangent& v, double l) {
    TraceAttempt out;
    TracedArc& arc = out.arc;
    arc.start = v;
    arc.length = l;
    arc.frame = frame_isometry(v);
    // the local frame is rebased at every crossing so its entries stay O(1);
    // recomputing chamber^{-1} * frame would lose e^t of precision instead
    Isometry F = arc.frame;
    Isometry g;   // chamber
    double t = 0.0;
    int entry_side = -1;
    int steps = 0;
    while (t < l) {
        if (++steps > 100000) throw std::runtime_error("trace: step guard tripped");
        const Isometry F_inv = F.inverse();
        double best_s = 0.0;
        int best_k = -1;
        for (int k = 0; k < 8; ++k) {
            if (k == entry_side) continue;
            double sk;
            if (!side_crossing_param(F_inv, S.side_geodesic(k), 1e-12, sk)) continue;
            if (best_k < 0 || sk < best_s) { best_s = sk; best_k = k; }
        }
        const double remaining = l - t;
        auto local_pt = [&](double s) { return F.apply(HPoint(0.0, std::exp(s))); };
        if (best_k < 0 || best_s >= remaining) {
            ArcSegment seg;
            seg.t0 = t; seg.t1 = l; seg.chamber = g;
            seg.local_frame = F;
            seg.start = local_pt(0.0); seg.end = local_pt(remaining);
            arc.segments.push_back(seg);
            break;
        }
        const HPoint xp = local_pt(best_s);
        for (const HPoint& vv : S.vertices()) {
            if (hyp_dist(xp, vv) < 1e-10) return out;   // corner hit, caller perturbs
        }
        ArcSegment seg;
        seg.t0 = t; seg.t1 = t + best_s; seg.chamber = g;
        seg.local_frame = F;
        seg.start = local_pt(0.0); seg.end = xp;
        arc.segments.push_back(seg);
        const char letter = S.crossing_letter(best_k);
        arc.crossing_word.push_back(letter);
        g = (g * S.generator(letter)).normalized();
        F = (S.generator(letter).inverse() * F * translate_frame(best_s)).normalized();
        entry_side = S.paired_side(best_k);
        t += best_s;
    }
    out.ok = true;
    return out;
}

} // namespace

TracedArc trace(const SurfaceGroup& S, const UnitTangent& v, double l) {
    if (!(l > 0.0)) throw std::invalid_argument("trace: length must be positive");
    if (l > 1e4) throw std::invalid_argument("trace: length exceeds resource guard");
    if (!S.inside(v.base, 1e-9))
        throw std::invalid_argument("trace: start point outside fundamental domain");
    for (int attempt = 0; attempt < 64; ++attempt) {
        UnitTangent w(v.base, v.angle + attempt * 1e-9);
        TraceAttempt r = trace_once(S, w, l);
        if (r.ok) {
            r.arc.perturbed = attempt > 0;
            return r.arc;
        }
    }
    throw std::runtime_error("trace: persistent corner degeneracy");
}

TracedArc centered_subarc(const SurfaceGroup& S, const GeodesicSpec& g,
                          double t_x, double l) {
    // transport the base frame to time t_x - l/2, then trace forward
    const double t_start = t_x - l / 2.0;
    TracedArc out;
    if (std::abs(t_start) < 1e-15) {
        return trace(S, g.base, l);
    }
    // walk to the start: trace |t_start| in the needed direction, take the
    // transported frame (reversed back if we walked backwards)
    UnitTangent from = g.base;
    if (t_start > 0) {
        TracedArc lead = trace(S, g.base, t_start);
        from = lead.end_frame(S);
    } else {
        UnitTangent rev(g.base.base, g.base.angle + kPi);
        TracedArc lead = trace(S, rev, -t_start);
        UnitTangent e = lead.end_frame(S);
        from = UnitTangent(e.base, e.angle + kPi);
    }
    return trace(S, from, l);
}

TracedArc trace_axis_period(const SurfaceGroup& S, const Isometry& W) {
    const double ell = translation_length(W);
    const AxisInfo ax = axis_of(W);
    const HPoint summit = ax.geo.vertical ? HPoint(ax.geo.c, 1.0)
                                          : HPoint(ax.geo.c, ax.geo.r);
    // offsets along the axis dodge vertex-through configurations
    for (int attempt = 0; attempt < 24; ++attempt) {
        const double offset = attempt * 0.1372093;
        HPoint p0 = summit;
        if (attempt > 0) {
            const Isometry F = frame_isometry(
                UnitTangent(summit, direction_to(summit, W.apply(summit))));
            p0 = F.apply(HPoint(0.0, std::exp(offset)));
        }
        auto [p, g] = S.normalize_point(p0);
        const Isometry Wc = (g * W * g.inverse()).normalized();
        try {
            return trace(S, UnitTangent(p, direction_to(p, Wc.apply(p))), ell);
        } catch (const std::runtime_error&) {
            continue;
        }
    }
    throw std::runtime_error("trace_axis_period: persistent degeneracy");
}

std::vector<HexSeg> hexagon_segments(const HexagonDecomposition& H,
                                     const TracedArc& a) {
    struct Piece {
        int si; double t0, t1; int hex, lift;
        Isometry chamber, u;
    };
    std::vector<Piece> pieces;
    for (size_t si = 0; si < a.segments.size(); ++si) {
        const ArcSegment& seg = a.segments[si];
        const Isometry& F = seg.local_frame;
        const Geodesic geo = Geodesic::imaginary_axis().transformed(F);
        const Isometry F_inv = F.inverse();
        auto param_of = [&](const HPoint& z) {
            const std::complex<double> w = F_inv.apply(z.z());
            return seg.t0 + std::log(std::abs(w));
        };
        std::vector<double> cuts;
        for (const WallPiece& wp : H.walls) {
            HPoint z;
            if (!geodesic_intersect(geo, wp.geo, z)) continue;
            const double t = param_of(z);
            if (t <= seg.t0 + 1e-12 || t >= seg.t1 - 1e-12) continue;
            const double along = hyp_dist(z, wp.seg.start) + hyp_dist(z, wp.seg.end);
            if (along > wp.seg.length + 1e-9) continue;
            cuts.push_back(t);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double u, double v) { return std::abs(u - v) < 1e-11; }),
                   cuts.end());
        auto local_pt = [&](double s) { return seg.point_at(s); };
        double t0 = seg.t0;
        for (size_t ci = 0; ci <= cuts.size(); ++ci) {
            const double t1 = ci < cuts.size() ? cuts[ci] : seg.t1;
            const double tm = 0.5 * (t0 + t1);
            auto [hid, lid] = H.locate(local_pt(tm));
            pieces.push_back({static_cast<int>(si), t0, t1, hid, lid,
                              seg.chamber, H.lifts[hid][lid].u});
            t0 = t1;
        }
    }
    // merge pieces that stay in the same surface hexagon: within one chamber
    // this means equal lift; across a chamber crossing the lifts differ by the
    // pairing isometry that was applied
    std::vector<Piece> merged;
    for (size_t i = 0; i < pieces.size(); ++i) {
        const Piece& p = pieces[i];
        bool can_merge = false;
        if (!merged.empty() && merged.back().hex == p.hex &&
            std::abs(merged.back().t1 - p.t0) < 1e-11) {
            const Piece& q = merged.back();
            if (q.si == p.si) {
                can_merge = q.lift == p.lift;
            } else if (q.si + 1 == p.si) {
                // same cover hexagon iff g2 u2 = +- g1 u1
                const Isometry expect =
                    ((q.chamber.inverse() * p.chamber).inverse() * q.u).normalized();
                can_merge = expect.dist_to(p.u) < 1e-7;
            }
        }
        if (can_merge) {
            merged.back().t1 = p.t1;
        } else {
            merged.push_back(p);
        }
    }
    std::vector<HexSeg> out;
    out.reserve(merged.size());
    for (const Piece& p : merged) {
        HexSeg hs;
        hs.hex = p.hex; hs.lift = p.lift;
        hs.t0 = p.t0; hs.t1 = p.t1;
        hs.arc_segment = p.si;
        const ArcSegment& seg = a.segments[p.si];
        hs.seg = GeodesicSegment(seg.point_at(p.t0), seg.point_at(p.t1));
        // chord in base-hexagon coords at global parameters: compose the
        // bounded local frame with an exact diagonal time shift
        const double e0 = std::exp(-seg.t0 / 2.0);
        const Isometry shift(e0, 0.0, 0.0, 1.0 / e0);
        hs.base_frame = (p.u.inverse() * seg.local_frame * shift).normalized();
        out.push_back(hs);
    }
    for (size_t i = 0; i < out.size(); ++i) {
        out[i].full = !(i == 0 || i + 1 == out.size());
    }
    return out;
}

} // namespace geocross\n