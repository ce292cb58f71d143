#include "geocross/cover.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "geocross/intersect.hpp"

namespace geocross {

CoverSpec build_cover(const CensusSlice& census, int n,
                      const std::function<double(double)>& f,
                      const GrowthBound& gb, CoverKind kind) {
    CoverSpec spec;
    spec.n = n;
    spec.epsilon = 2.0 * std::exp(-n / 4.0);
    spec.kind = kind;
    spec.K = static_cast<long long>(std::floor(gb.c_X * f(static_cast<double>(n))));
    if (!census.complete || census.L + 1e-9 < n || census.K < spec.K) {
        throw std::invalid_argument(
            "build_cover: census insufficient, requires complete slice with L >= " +
            std::to_string(n) + " and K >= " + std::to_string(spec.K));
    }
    for (const auto& r : census.records) {
        if (r.length <= n + 1e-9 && r.self_intersections <= spec.K)
            spec.members.push_back(r);
    }
    return spec;
}

namespace {
constexpr double kFatten = 0.6;   // distances below this are exact
}

CoverGeometry::CoverGeometry(const SurfaceGroup& S, const CoverSpec& cover) {
    pad_ = kFatten;
    const HPoint o = S.center();
    const double Rd = S.circumradius();
    const std::vector<Isometry> ball = S.deck_ball(2.0 * Rd + kFatten + 0.1);
    for (const auto& member : cover.members) {
        const Isometry M = S.word(member.word);
        const TracedArc arc = trace_axis_period(S, M);
        for (const ArcSegment& seg : arc.segments) {
            if (seg.length() < 1e-9) continue;
            for (const Isometry& u : ball) {
                const HPoint a = u.apply(seg.start);
                const HPoint b = u.apply(seg.end);
                // keep translates that can serve queries inside the domain
                const double reach = Rd + kFatten;
                if (hyp_dist(o, a) > reach + hyp_dist(a, b)) continue;
                FatSeg fs;
                const Geodesic geo = Geodesic::through(a, b);
                fs.to_std = map_to_imaginary_axis(geo);
                const double ta = std::log(std::abs(fs.to_std.apply(a.z())));
                const double tb = std::log(std::abs(fs.to_std.apply(b.z())));
                if (ta <= tb) {
                    fs.lo = ta; fs.hi = tb; fs.lo_pt = a; fs.hi_pt = b;
                } else {
                    fs.lo = tb; fs.hi = ta; fs.lo_pt = b; fs.hi_pt = a;
                }
                fs.xmin = std::min(a.x, b.x);
                fs.xmax = std::max(a.x, b.x);
                double ymax = std::max(a.y, b.y);
                if (!geo.vertical) {
                    // the summit belongs to the arc iff it lies between the endpoints
                    if ((a.x - geo.c) * (b.x - geo.c) < 0.0) ymax = geo.r;
                }
                const double ymin = std::min(a.y, b.y);
                fs.umin = std::log(ymin) - pad_;
                fs.umax = std::log(ymax) + pad_;
                fs.xmin -= pad_ * ymax;
                fs.xmax += pad_ * ymax;
                segs_.push_back(fs);
            }
        }
    }
    // grid over the domain bounding box in (x, ln y)
    gx0_ = -4.5; gx1_ = 4.5;
    gu0_ = std::log(0.075); gu1_ = std::log(12.5);
    nx_ = 96; nu_ = 96;
    grid_.assign(static_cast<size_t>(nx_) * nu_, {});
    for (size_t i = 0; i < segs_.size(); ++i) {
        const FatSeg& fs = segs_[i];
        const int ix0 = std::max(0, (int)std::floor((fs.xmin - gx0_) / (gx1_ - gx0_) * nx_));
        const int ix1 = std::min(nx_ - 1, (int)std::floor((fs.xmax - gx0_) / (gx1_ - gx0_) * nx_));
        const int iu0 = std::max(0, (int)std::floor((fs.umin - gu0_) / (gu1_ - gu0_) * nu_));
        const int iu1 = std::min(nu_ - 1, (int)std::floor((fs.umax - gu0_) / (gu1_ - gu0_) * nu_));
        for (int ix = ix0; ix <= ix1; ++ix)
            for (int iu = iu0; iu <= iu1; ++iu)
                grid_[static_cast<size_t>(iu) * nx_ + ix].push_back(static_cast<int>(i));
    }
}

int CoverGeometry::cell_of(double x, double u) const {
    const int ix = std::clamp((int)std::floor((x - gx0_) / (gx1_ - gx0_) * nx_), 0, nx_ - 1);
    const int iu = std::clamp((int)std::floor((u - gu0_) / (gu1_ - gu0_) * nu_), 0, nu_ - 1);
    return iu * nx_ + ix;
}

double CoverGeometry::distance(const HPoint& p) const {
    double best = 1e300;
    const auto& cell = grid_[cell_of(p.x, std::log(p.y))];
    for (int idx : cell) {
        const FatSeg& fs = segs_[idx];
        const std::complex<double> w = fs.to_std.apply(p.z());
        const double t = std::log(std::abs(w));
        double d;
        if (t < fs.lo) d = hyp_dist(p, fs.lo_pt);
        else if (t > fs.hi) d = hyp_dist(p, fs.hi_pt);
        else d = std::asinh(std::abs(w.real()) / w.imag());
        best = std::min(best, d);
    }
    return best;
}

bool CoverGeometry::within(const HPoint& p, double eps) const {
    const auto& cell = grid_[cell_of(p.x, std::log(p.y))];
    for (int idx : cell) {
        const FatSeg& fs = segs_[idx];
        const std::complex<double> w = fs.to_std.apply(p.z());
        const double t = std::log(std::abs(w));
        double d;
        if (t < fs.lo) d = hyp_dist(p, fs.lo_pt);
        else if (t > fs.hi) d = hyp_dist(p, fs.hi_pt);
        else d = std::asinh(std::abs(w.real()) / w.imag());
        if (d <= eps) return true;
    }
    return false;
}

HPoint random_surface_point(const SurfaceGroup& S, std::uint64_t& state) {
    std::mt19937_64 rng(state);
    std::uniform_real_distribution<double> ux(-4.3, 4.3);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    const double ya = 0.08, yb = 12.0;
    for (;;) {
        const double x = ux(rng);
        // y with density 1/y^2 via inverse cdf
        const double y = 1.0 / (1.0 / ya - uu(rng) * (1.0 / ya - 1.0 / yb));
        const HPoint p(x, y);
        if (S.inside(p, -1e-12)) {
            state = rng();
            return p;
        }
    }
}

MeasureReport lebesgue_measure(const SurfaceGroup& S, const CoverSpec& cover,
                               long long mc_samples, std::uint64_t seed) {
    if (mc_samples < 10000)
        throw std::invalid_argument("lebesgue_measure: needs at least 10^4 samples");
    MeasureReport rep;
    rep.mc_samples = mc_samples;
    const double per_member = 5.0 * cover.n * std::exp(-cover.n / 4.0);
    rep.lebesgue_bound = per_member * static_cast<double>(cover.members.size());
    for (const auto& m : cover.members) {
        rep.ball_count += static_cast<long long>(
            std::ceil(2.0 * cover.n / cover.epsilon));
        (void)m;
    }
    if (cover.members.empty()) {
        return rep;
    }
    const CoverGeometry geom(S, cover);
    std::uint64_t state = seed;
    long long hits = 0;
    for (long long s = 0; s < mc_samples; ++s) {
        const HPoint p = random_surface_point(S, state);
        if (geom.within(p, cover.epsilon)) ++hits;
    }
    const double area = 4.0 * kPi;
    const double frac = static_cast<double>(hits) / static_cast<double>(mc_samples);
    rep.lebesgue_mc = area * frac;
    rep.lebesgue_stderr =
        area * std::sqrt(std::max(frac * (1.0 - frac), 1e-12) /
                         static_cast<double>(mc_samples));
    return rep;
}

MeasureReport hausdorff_measure(const CoverSpec& cover, double h) {
    if (cover.kind != CoverKind::ball)
        throw std::invalid_argument("hausdorff_measure: cover kind must be ball");
    if (!(h > 0.0) || h > 2.0)
        throw std::invalid_argument("hausdorff_measure: h outside (0, 2]");
    MeasureReport rep;
    rep.h = h;
    const double n = cover.n;
    const double eps = cover.epsilon;
    double sum = 0.0;
    for (const auto& m : cover.members) {
        (void)m;
        sum += (2.0 * n / eps) * std::pow(2.0 * eps, h);
        rep.ball_count += static_cast<long long>(std::ceil(2.0 * n / eps));
    }
    rep.hausdorff_h = sum;
    return rep;
}

bool proxy_satisfies_budget(const SurfaceGroup& S, const GeodesicSpec& g,
                            const std::function<double(double)>& f, double L,
                            double n) {
    for (double l = L; l <= n + 1e-9; l += 1.0) {
        const TracedArc sub = centered_subarc(S, g, 0.0, l);
        const IntersectionReport rep = count_self(S, sub, CountMethod::pairwise_lift);
        if (rep.count > f(l)) return false;
    }
    return true;
}

CoveringReport covering_check(const SurfaceGroup& S, const CensusSlice& census,
                              const GeodesicSpec& g,
                              const std::function<double(double)>& f,
                              double L, int n, const GrowthBound& gb,
                              const CloserConfig& closer_cfg) {
    if (!proxy_satisfies_budget(S, g, f, L, n))
        throw std::invalid_argument("covering_check: proxy violates the subarc budget");
    CoveringReport rep;
    rep.lambert = std::sinh(1.0) / std::cosh(n / 2.0);
    const CoverSpec cover = build_cover(census, n, f, gb);
    const HPoint x = g.base.base;
    if (!cover.members.empty()) {
        const CoverGeometry geom(S, cover);
        rep.member_distance = geom.distance(x);
    }
    // witness: close the length-n centered subarc and measure the midpoint
    // distance to the closing axis
    const TracedArc sub = centered_subarc(S, g, 0.0, static_cast<double>(n));
    rep.closure = close_arc(S, sub, closer_cfg.eps, closer_cfg);
    if (rep.closure.success) {
        const Isometry h = S.word(rep.closure.word);
        const Geodesic ax = axis_of(h).geo;
        rep.witness_distance = ax.dist_to(sub.cover_point(n / 2.0));
        rep.witness_ok = rep.witness_distance <= rep.lambert + 1e-9;
        rep.outcome = rep.member_distance <= cover.epsilon
                          ? CoveringOutcome::covered
                          : CoveringOutcome::not_covered;
    } else {
        rep.outcome = rep.member_distance <= cover.epsilon
                          ? CoveringOutcome::covered
                          : CoveringOutcome::inconclusive;
    }
    return rep;
}

BoxDimension box_dimension(const SurfaceGroup& S, const std::vector<HPoint>& points,
                           const std::vector<double>& scales) {
    if (points.size() < 10000)
        throw std::invalid_argument("box_dimension: needs at least 10^4 points");
    if (scales.size() < 4)
        throw std::invalid_argument("box_dimension: needs at least 4 scales");
    const double smax = *std::max_element(scales.begin(), scales.end());
    const double smin = *std::min_element(scales.begin(), scales.end());
    if (smax / smin < 8.0)
        throw std::invalid_argument("box_dimension: scales must span a decade");

    // deck translates for the surface metric near the boundary
    const std::vector<Isometry> ball = S.deck_ball(2.0 * S.circumradius() + 0.7);

    BoxDimension out;
    out.scales = scales;
    std::sort(out.scales.rbegin(), out.scales.rend());
    for (double s : out.scales) {
        struct Center {
            HPoint p;
            double bdist;   // distance to the domain boundary
        };
        std::vector<Center> net;
        for (const HPoint& p : points) {
            bool covered = false;
            for (const Center& c : net) {
                double d = hyp_dist(p, c.p);
                if (d > s && c.bdist < s) {
                    for (const Isometry& u : ball) {
                        d = std::min(d, hyp_dist(p, u.apply(c.p)));
                        if (d <= s) break;
                    }
                }
                if (d <= s) { covered = true; break; }
            }
            if (!covered) {
                double bd = 1e300;
                for (int k = 0; k < 8; ++k)
                    bd = std::min(bd, S.side_geodesic(k).dist_to(p));
                net.push_back({p, bd});
            }
        }
        out.counts.push_back(static_cast<long long>(net.size()));
    }
    int occupied = 0;
    for (long long c : out.counts)
        if (c >= 1) ++occupied;
    if (occupied < 2)
        throw std::runtime_error("box_dimension: degenerate fit");
    // least squares over the three largest scales
    const size_t m = std::min<size_t>(3, out.counts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        const double X = std::log(1.0 / out.scales[i]);
        const double Y = std::log(static_cast<double>(out.counts[i]));
        sx += X; sy += Y; sxx += X * X; sxy += X * Y;
    }
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-12)
        throw std::runtime_error("box_dimension: degenerate fit");
    out.dimension = (m * sxy - sx * sy) / denom;
    return out;
}

DimBound dim_bound_and_k0(const GrowthBound& gb, double k, double factor) {
    if (!gb.a_x_fitted)
        throw std::invalid_argument("dim_bound_and_k0: a_X has not been fitted");
    DimBound out;
    out.mu = mu_of_k(gb.a_X, k, factor);
    out.dim_bound = 4.0 * out.mu + 1.0;
    double lo = 1e-12, hi = 10.0;
    if (mu_of_k(gb.a_X, hi, factor) < 0.25)
        throw std::runtime_error("dim_bound_and_k0: no root in (0, 10)");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mu_of_k(gb.a_X, mid, factor) < 0.25) lo = mid; else hi = mid;
    }
    out.k0 = 0.5 * (lo + hi);
    return out;
}

} // namespace geocross
