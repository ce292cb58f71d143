#include "geocross/hyp.hpp"

#include <algorithm>

namespace geocross {

double hyp_dist(const HPoint& p, const HPoint& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    const double u = (dx * dx + dy * dy) / (2.0 * p.y * q.y);
    // cosh d = 1 + u, written as 2 asinh(sqrt(u/2)) which stays accurate
    // for nearby points
    return 2.0 * std::asinh(std::sqrt(0.5 * u));
}

Isometry Isometry::normalized() const {
    double dt = det();
    if (!(dt > 0.0)) throw std::invalid_argument("Isometry: determinant must be positive");
    double s = 1.0 / std::sqrt(dt);
    Isometry n(a * s, b * s, c * s, d * s);
    if (n.a < 0.0 || (n.a == 0.0 && n.b < 0.0)) {
        n.a = -n.a; n.b = -n.b; n.c = -n.c; n.d = -n.d;
    }
    return n;
}

HPoint Isometry::apply(const HPoint& p) const {
    // imaginary part det * y / |cz+d|^2 computed directly: it is positive by
    // construction, which complex division cannot guarantee at extreme points
    const double u = c * p.x + d;
    const double v = c * p.y;
    const double den = u * u + v * v;
    const double x = ((a * p.x + b) * u + a * p.y * v) / den;
    const double y = det() * p.y / den;
    return HPoint(x, std::max(y, 5e-324));
}

double Isometry::dist_to(const Isometry& o) const {
    Isometry u = normalized(), v = o.normalized();
    return std::max(std::max(std::abs(u.a - v.a), std::abs(u.b - v.b)),
                    std::max(std::abs(u.c - v.c), std::abs(u.d - v.d)));
}

double translation_length(const Isometry& T) {
    const double t = std::abs(T.trace()) / std::sqrt(T.det());
    if (t <= 2.0) throw std::domain_error("translation_length: non-hyperbolic element");
    return 2.0 * std::acosh(t / 2.0);
}

UnitTangent::UnitTangent(const HPoint& p, double theta) : base(p) {
    angle = std::fmod(theta, 2.0 * kPi);
    if (angle < 0.0) angle += 2.0 * kPi;
}

Isometry frame_isometry(const UnitTangent& v) {
    const double sy = std::sqrt(v.base.y);
    Isometry T(sy, v.base.x / sy, 0.0, 1.0 / sy);
    const double phi = v.angle - kPi / 2.0;
    const double ch = std::cos(phi / 2.0), sh = std::sin(phi / 2.0);
    Isometry R(ch, sh, -sh, ch);
    return T * R;
}

Isometry flow_frame(const Isometry& F, double t) {
    const double e = std::exp(t / 2.0);
    return F * Isometry(e, 0.0, 0.0, 1.0 / e);
}

double tangent_angle(const Isometry& F, double t) {
    // gamma'(t) = F'(z) z with z = i e^t, F'(z) = det / (cz+d)^2
    const std::complex<double> z(0.0, std::exp(t));
    const std::complex<double> w = z / ((F.c * z + F.d) * (F.c * z + F.d));
    double ang = std::arg(w);
    if (ang < 0.0) ang += 2.0 * kPi;
    return ang;
}

double direction_to(const HPoint& p, const HPoint& q) {
    const double scale = 1.0 + std::abs(p.x) + p.y;
    if (std::abs(p.x - q.x) < 1e-14 * scale) {
        return q.y > p.y ? kPi / 2.0 : 3.0 * kPi / 2.0;
    }
    const double c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) /
                     (2.0 * (q.x - p.x));
    const double phi_p = std::atan2(p.y, p.x - c);
    const double phi_q = std::atan2(q.y, q.x - c);
    double ang = (phi_q > phi_p) ? phi_p + kPi / 2.0 : phi_p - kPi / 2.0;
    ang = std::fmod(ang, 2.0 * kPi);
    if (ang < 0.0) ang += 2.0 * kPi;
    return ang;
}

Isometry two_point_isometry(const HPoint& p1, const HPoint& p2,
                            const HPoint& q1, const HPoint& q2) {
    const double dp = hyp_dist(p1, p2), dq = hyp_dist(q1, q2);
    if (std::abs(dp - dq) > 1e-8 * (1.0 + dp))
        throw std::invalid_argument("two_point_isometry: distances differ");
    Isometry F1 = frame_isometry(UnitTangent(p1, direction_to(p1, p2)));
    Isometry F2 = frame_isometry(UnitTangent(q1, direction_to(q1, q2)));
    return (F2 * F1.inverse()).normalized();
}

GeodesicSegment::GeodesicSegment(const HPoint& s, const HPoint& e)
    : start(s), end(e), length(hyp_dist(s, e)) {
    if (length <= 0.0) throw std::invalid_argument("GeodesicSegment: degenerate");
}

Geodesic Geodesic::through(const HPoint& p, const HPoint& q) {
    const double scale = 1.0 + std::abs(p.x) + std::abs(q.x);
    if (std::abs(p.x - q.x) < 1e-13 * scale) {
        return vline(0.5 * (p.x + q.x));
    }
    const double c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) /
                     (2.0 * (q.x - p.x));
    const double dx = p.x - c;
    return circle(c, std::sqrt(dx * dx + p.y * p.y));
}

Geodesic Geodesic::transformed(const Isometry& T) const {
    // push two points through and rebuild
    HPoint p1, p2;
    if (vertical) {
        p1 = HPoint(c, 1.0);
        p2 = HPoint(c, 2.0);
    } else {
        p1 = HPoint(c + r * std::cos(1.0), r * std::sin(1.0));
        p2 = HPoint(c + r * std::cos(2.0), r * std::sin(2.0));
    }
    return through(T.apply(p1), T.apply(p2));
}

double Geodesic::dist_to(const HPoint& p) const {
    if (vertical) return std::asinh(std::abs(p.x - c) / p.y);
    const double dx = p.x - c;
    const double q = dx * dx + p.y * p.y - r * r;
    return std::asinh(std::abs(q) / (2.0 * r * p.y));
}

double Geodesic::side_value(const HPoint& p) const {
    if (vertical) return p.x - c;
    const double dx = p.x - c;
    return std::sqrt(dx * dx + p.y * p.y) - r;
}

int Geodesic::side_of(const HPoint& p) const {
    const double v = side_value(p);
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

bool geodesic_intersect(const Geodesic& g1, const Geodesic& g2, HPoint& out) {
    if (g1.vertical && g2.vertical) return false;
    if (g1.vertical) return geodesic_intersect(g2, g1, out);
    if (g2.vertical) {
        const double x = g2.c;
        const double h2 = g1.r * g1.r - (x - g1.c) * (x - g1.c);
        if (h2 <= 0.0) return false;
        out = HPoint(x, std::sqrt(h2));
        return true;
    }
    const double scale = 1.0 + std::abs(g1.c) + std::abs(g2.c) + g1.r + g2.r;
    if (std::abs(g1.c - g2.c) < 1e-12 * scale) return false;   // same or concentric
    const double x = (g1.r * g1.r - g2.r * g2.r + g2.c * g2.c - g1.c * g1.c) /
                     (2.0 * (g2.c - g1.c));
    const double h2 = g1.r * g1.r - (x - g1.c) * (x - g1.c);
    if (h2 <= 0.0) return false;
    out = HPoint(x, std::sqrt(h2));
    return true;
}

static double tangent_of_geo_at(const Geodesic& g, const HPoint& p) {
    if (g.vertical) return kPi / 2.0;
    const double phi = std::atan2(p.y, p.x - g.c);
    return phi + kPi / 2.0;   // orientation irrelevant for crossing angles
}

double crossing_angle(const Geodesic& g1, const Geodesic& g2, const HPoint& at) {
    double d = angle_diff(tangent_of_geo_at(g1, at), tangent_of_geo_at(g2, at));
    if (d > kPi / 2.0) d = kPi - d;
    return d;
}

AxisInfo axis_of(const Isometry& T) {
    Isometry M = T.normalized();
    const double tr = M.trace();
    if (std::abs(tr) <= 2.0)
        throw std::domain_error("axis_of: non-hyperbolic element");
    AxisInfo out;
    if (std::abs(M.c) < 1e-14) {
        // fixed points: infinity and b/(d-a)
        const double x = M.b / (M.d - M.a);
        out.geo = Geodesic::vline(x);
        // |derivative at infinity| ~ (a/d)^2; a e^t behaviour: attracting at
        // infinity iff |a| > |d|
        if (std::abs(M.a) > std::abs(M.d)) {
            out.pos_at_infinity = true;
            out.fixed_neg = x;
        } else {
            out.neg_at_infinity = true;
            out.fixed_pos = x;
        }
        return out;
    }
    const double disc = std::sqrt(tr * tr - 4.0);
    const double x1 = (M.a - M.d + disc) / (2.0 * M.c);
    const double x2 = (M.a - M.d - disc) / (2.0 * M.c);
    // derivative at the fixed point is 1/(cx+d)^2: attracting iff |cx+d| > 1
    const double d1 = std::abs(M.c * x1 + M.d);
    if (d1 > 1.0) {
        out.fixed_pos = x1; out.fixed_neg = x2;
    } else {
        out.fixed_pos = x2; out.fixed_neg = x1;
    }
    out.geo = Geodesic::circle(0.5 * (x1 + x2), 0.5 * std::abs(x1 - x2));
    return out;
}

HPoint axis_point(const Isometry& T) {
    AxisInfo ax = axis_of(T);
    if (ax.geo.vertical) return HPoint(ax.geo.c, 1.0);
    return HPoint(ax.geo.c, ax.geo.r);
}

Isometry map_to_imaginary_axis(const Geodesic& g) {
    if (g.vertical) {
        return Isometry(1.0, -g.c, 0.0, 1.0);
    }
    const double u = g.c - g.r, v = g.c + g.r;
    // z -> (z - u) / (z - v), fixed up to have positive determinant
    Isometry M(1.0, -u, 1.0, -v);
    if (M.det() < 0.0) M = Isometry(-1.0, u, 1.0, -v);
    return M.normalized();
}

PerpFeet common_perpendicular(const Geodesic& g1, const Geodesic& g2) {
    const Isometry S = map_to_imaginary_axis(g1);
    const Geodesic h = g2.transformed(S);
    if (h.vertical || std::abs(h.c) <= h.r)
        throw std::invalid_argument("common_perpendicular: geodesics meet");
    const double rho = std::sqrt(h.c * h.c - h.r * h.r);
    const Geodesic perp = Geodesic::circle(0.0, rho);
    HPoint f2;
    if (!geodesic_intersect(perp, h, f2))
        throw std::runtime_error("common_perpendicular: no intersection");
    const Isometry Si = S.inverse().normalized();
    PerpFeet out;
    out.on1 = Si.apply(HPoint(0.0, rho));
    out.on2 = Si.apply(f2);
    out.dist = hyp_dist(out.on1, out.on2);
    out.perp = perp.transformed(Si);
    return out;
}

HPoint reflect(const Geodesic& g, const HPoint& p) {
    if (g.vertical) return HPoint(2.0 * g.c - p.x, p.y);
    const std::complex<double> w =
        g.c + g.r * g.r / std::conj(p.z() - std::complex<double>(g.c, 0.0));
    return HPoint::from(w);
}

double lambert_bound(double l) {
    if (!(l > 0.0)) throw std::invalid_argument("lambert_bound: l must be positive");
    return std::sinh(1.0) / std::cosh(l / 2.0);
}

double lambert_exp_majorant(double l) {
    return 2.0 * std::exp(-l / 2.0);
}

double exp_majorant_threshold() {
    // sinh(1)/cosh(l/2) <= 2 e^{-l/2}  <=>  sinh(1) <= 1 + e^{-l}
    return -std::log(std::sinh(1.0) - 1.0);
}

double circle_curvature(double phi) {
    if (phi < 0.0 || phi > kPi)
        throw std::invalid_argument("circle_curvature: phi outside [0, pi]");
    return std::abs(std::cos(phi));
}

double angle_diff(double a1, double a2) {
    double d = std::fmod(std::abs(a1 - a2), 2.0 * kPi);
    return std::min(d, 2.0 * kPi - d);
}

} // namespace geocross
