#include <algorithm>
#include <random>

#include "geocross/surface.hpp"
#include "geocross/tracer.hpp"

namespace geocross {

Hexagon Hexagon::from_vertices(const std::array<HPoint, 6>& v, int pants_id) {
    Hexagon h;
    h.verts = v;
    h.pants = pants_id;
    // interior point: hyperbolic midpoint of an opposite vertex pair
    const double d = hyp_dist(v[0], v[3]);
    const Isometry F = frame_isometry(UnitTangent(v[0], direction_to(v[0], v[3])));
    h.inner = F.apply(HPoint(0.0, std::exp(d / 2.0)));
    for (int k = 0; k < 6; ++k) {
        h.sides[k] = Geodesic::through(v[k], v[(k + 1) % 6]);
        h.inside_sign[k] = h.sides[k].side_value(h.inner) > 0.0 ? 1.0 : -1.0;
    }
    return h;
}

Hexagon Hexagon::transformed(const Isometry& u) const {
    Hexagon h;
    h.pants = pants;
    for (int k = 0; k < 6; ++k) h.verts[k] = u.apply(verts[k]);
    h.inner = u.apply(inner);
    for (int k = 0; k < 6; ++k) {
        h.sides[k] = Geodesic::through(h.verts[k], h.verts[(k + 1) % 6]);
        h.inside_sign[k] = h.sides[k].side_value(h.inner) > 0.0 ? 1.0 : -1.0;
    }
    return h;
}

bool Hexagon::contains(const HPoint& p, double tol) const {
    return violation(p) <= tol;
}

double Hexagon::violation(const HPoint& p) const {
    double worst = -1e300;
    for (int k = 0; k < 6; ++k) {
        worst = std::max(worst, -inside_sign[k] * sides[k].side_value(p));
    }
    return worst;
}

std::pair<int, int> HexagonDecomposition::locate(const HPoint& p) const {
    int best_h = -1, best_l = -1;
    double best_v = 1e300;
    for (size_t h = 0; h < lifts.size(); ++h) {
        for (size_t l = 0; l < lifts[h].size(); ++l) {
            const double v = lifts[h][l].world.violation(p);
            if (v <= 1e-9) return {static_cast<int>(h), static_cast<int>(l)};
            if (v < best_v) {
                best_v = v;
                best_h = static_cast<int>(h);
                best_l = static_cast<int>(l);
            }
        }
    }
    return {best_h, best_l};
}

const std::vector<WallPiece>& HexagonDecomposition::boundary_edges() const {
    if (boundary_cache_.empty()) {
        for (const WallPiece& w : walls)
            if (!w.seam) boundary_cache_.push_back(w);
    }
    return boundary_cache_;
}

const std::vector<WallPiece>& HexagonDecomposition::seam_edges() const {
    if (seam_cache_.empty()) {
        for (const WallPiece& w : walls)
            if (w.seam) seam_cache_.push_back(w);
    }
    return seam_cache_;
}

namespace {

struct PantsHexagon {
    std::array<HPoint, 6> verts;   // fX_zx, fX_xy, fY_xy, fY_yz, fZ_yz, fZ_zx
    Geodesic seam_xy, seam_yz, seam_zx;
    double lX, lY, lZ;
    double sXY, sYZ, sZX;
};

PantsHexagon build_pants_hexagon(const Isometry& X, const Isometry& Y) {
    const Isometry Z = (X * Y).inverse().normalized();
    const Geodesic gX = axis_of(X).geo;
    const Geodesic gY = axis_of(Y).geo;
    const Geodesic gZ = axis_of(Z).geo;
    const PerpFeet pXY = common_perpendicular(gX, gY);
    const PerpFeet pYZ = common_perpendicular(gY, gZ);
    const PerpFeet pZX = common_perpendicular(gZ, gX);
    PantsHexagon h;
    h.verts = {pZX.on2, pXY.on1, pXY.on2, pYZ.on1, pYZ.on2, pZX.on1};
    h.seam_xy = pXY.perp;
    h.seam_yz = pYZ.perp;
    h.seam_zx = pZX.perp;
    h.lX = translation_length(X);
    h.lY = translation_length(Y);
    h.lZ = translation_length(Z);
    h.sXY = pXY.dist; h.sYZ = pYZ.dist; h.sZX = pZX.dist;

    // hexagon consistency: feet spaced by half the boundary lengths, right
    // angles by construction, and the alternating-sides cosh identity
    const double eX = std::abs(hyp_dist(pZX.on2, pXY.on1) - h.lX / 2.0);
    const double eY = std::abs(hyp_dist(pXY.on2, pYZ.on1) - h.lY / 2.0);
    const double eZ = std::abs(hyp_dist(pYZ.on2, pZX.on1) - h.lZ / 2.0);
    if (std::max({eX, eY, eZ}) > 1e-6)
        throw std::runtime_error("build_hexagons: feet not at half boundary lengths");
    const double lhs = std::cosh(h.lZ / 2.0);
    const double rhs = std::sinh(h.lX / 2.0) * std::sinh(h.lY / 2.0) * std::cosh(h.sXY) -
                       std::cosh(h.lX / 2.0) * std::cosh(h.lY / 2.0);
    if (std::abs(lhs - rhs) > 1e-6 * std::max(1.0, std::abs(lhs)))
        throw std::runtime_error("build_hexagons: hexagon identity violated");
    return h;
}

void append_wall_trace(const SurfaceGroup& S, std::vector<WallPiece>& walls,
                       const HPoint& from, const HPoint& toward, double len,
                       bool seam, int wall_id) {
    auto [p0, g0] = S.normalize_point(from);
    const HPoint toward_n = g0.apply(toward);
    const UnitTangent v(p0, direction_to(p0, toward_n));
    const TracedArc arc = trace(S, v, len);
    for (const ArcSegment& seg : arc.segments) {
        if (seg.length() < 1e-9) continue;
        WallPiece wp;
        wp.seg = GeodesicSegment(seg.start, seg.end);
        wp.geo = Geodesic::through(seg.start, seg.end);
        wp.seam = seam;
        wp.wall_id = wall_id;
        walls.push_back(wp);
    }
}

} // namespace

HexagonDecomposition build_hexagons(const SurfaceGroup& S) {
    HexagonDecomposition H;
    const Isometry X1 = S.word("a");
    const Isometry Y1 = S.word("bAB");
    const Isometry X2 = S.word("c");
    const Isometry Y2 = S.word("dCD");
    const PantsHexagon h1 = build_pants_hexagon(X1, Y1);
    const PantsHexagon h2 = build_pants_hexagon(X2, Y2);

    auto reflect_hex = [](const PantsHexagon& h) {
        std::array<HPoint, 6> v;
        for (int k = 0; k < 6; ++k) v[k] = reflect(h.seam_xy, h.verts[k]);
        return v;
    };
    H.hexagons.push_back(Hexagon::from_vertices(h1.verts, 0));
    H.hexagons.push_back(Hexagon::from_vertices(reflect_hex(h1), 0));
    H.hexagons.push_back(Hexagon::from_vertices(h2.verts, 1));
    H.hexagons.push_back(Hexagon::from_vertices(reflect_hex(h2), 1));

    // all right angles
    for (const Hexagon& hx : H.hexagons) {
        for (int k = 0; k < 6; ++k) {
            const double ang =
                angle_diff(direction_to(hx.verts[k], hx.verts[(k + 1) % 6]),
                           direction_to(hx.verts[k], hx.verts[(k + 5) % 6]));
            if (std::abs(ang - kPi / 2.0) > 1e-6)
                throw std::runtime_error("build_hexagons: non-right hexagon angle");
        }
    }

    // fold the wall system into the fundamental domain: 3 pants curves and
    // 6 seams (3 per pants; the mirror hexagon shares them)
    int wall_id = 0;
    for (const std::string& w : SurfaceGroup::pants_curve_words()) {
        const Isometry M = S.word(w);
        const HPoint p = axis_point(M);
        append_wall_trace(S, H.walls, p, M.apply(p), translation_length(M), false,
                          wall_id++);
    }
    for (const PantsHexagon* ph : {&h1, &h2}) {
        const std::array<std::pair<HPoint, HPoint>, 3> seams = {
            std::make_pair(ph->verts[1], ph->verts[2]),
            std::make_pair(ph->verts[3], ph->verts[4]),
            std::make_pair(ph->verts[5], ph->verts[0])};
        for (const auto& [a, b] : seams) {
            append_wall_trace(S, H.walls, a, b, hyp_dist(a, b), true, wall_id++);
        }
    }

    // lifts of each hexagon that can meet the fundamental domain; the ball
    // radius covers circumradius + hexagon diameter + base vertex offset
    const std::vector<Isometry> ball = S.deck_ball(8.7);
    const double Rd = S.circumradius();
    for (const Hexagon& base : H.hexagons) {
        double diam = 0.0;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                diam = std::max(diam, hyp_dist(base.verts[i], base.verts[j]));
        std::vector<HexLift> lifts;
        const HPoint o = S.center();
        for (const Isometry& u : ball) {
            Hexagon world = base.transformed(u);
            double dmin = 1e300;
            for (const HPoint& v : world.verts) dmin = std::min(dmin, hyp_dist(o, v));
            dmin = std::min(dmin, hyp_dist(o, world.inner));
            if (dmin > Rd + diam + 0.05) continue;
            // overlap test by sampling the candidate hexagon and the domain
            bool overlap = S.inside(world.inner, 1e-9);
            for (int k = 0; k < 6 && !overlap; ++k) {
                const double d = hyp_dist(world.verts[k], world.verts[(k + 1) % 6]);
                const Isometry F = frame_isometry(UnitTangent(
                    world.verts[k],
                    direction_to(world.verts[k], world.verts[(k + 1) % 6])));
                for (int s = 0; s <= 16 && !overlap; ++s) {
                    const HPoint q = F.apply(HPoint(0.0, std::exp(d * s / 16.0)));
                    if (S.inside(q, 1e-9)) overlap = true;
                }
            }
            for (int k = 0; k < 8 && !overlap; ++k) {
                if (world.contains(S.vertices()[k], 1e-9)) overlap = true;
            }
            if (!overlap) continue;
            lifts.push_back({u, world});
        }
        H.lifts.push_back(std::move(lifts));
    }
    return H;
}

double estimate_C(const SurfaceGroup& S, HexagonDecomposition& H,
                  int samples, std::uint64_t seed) {
    if (samples < 1000)
        throw std::invalid_argument("estimate_C: needs at least 1000 samples");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-1.6, 1.6);
    std::uniform_real_distribution<double> ulogy(-1.1, 1.1);
    std::uniform_real_distribution<double> uang(0.0, 2.0 * kPi);
    double cmin = 1e300;
    int done = 0;
    while (done < samples) {
        const HPoint p(ux(rng), std::exp(ulogy(rng)));
        if (!S.inside(p, -1e-9)) continue;
        const double theta = uang(rng);
        ++done;
        TracedArc arc;
        std::vector<HexSeg> segs;
        bool ok = false;
        for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
            arc = trace(S, UnitTangent(p, theta + attempt * 1e-7), 8.0);
            segs = hexagon_segments(H, arc);
            ok = true;
        }
        std::vector<double> full_lens;
        for (const HexSeg& hs : segs)
            if (hs.full) full_lens.push_back(hs.t1 - hs.t0);
        for (size_t i = 0; i + 2 < full_lens.size(); ++i) {
            const double s3 = full_lens[i] + full_lens[i + 1] + full_lens[i + 2];
            cmin = std::min(cmin, s3);
        }
    }
    if (!(cmin < 1e300))
        throw std::runtime_error("estimate_C: no full-segment triples observed");
    H.C_min = 0.9 * cmin;
    return H.C_min;
}

} // namespace geocross
