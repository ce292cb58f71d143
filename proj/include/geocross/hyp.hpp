#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

// Upper half-plane model of the hyperbolic plane. Points are x + iy with
// y > 0, orientation-preserving isometries are real 2x2 matrices of
// determinant 1 acting by Mobius transformations, and geodesics are
// vertical half-lines or semicircles centered on the real axis.

namespace geocross {

constexpr double kPi = 3.14159265358979323846;

struct HPoint {
    double x = 0.0;
    double y = 1.0;

    HPoint() = default;
    HPoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0)) throw std::invalid_argument("HPoint: y must be positive");
    }
    std::complex<double> z() const { return {x, y}; }
    static HPoint from(std::complex<double> w) { return HPoint(w.real(), w.imag()); }
};

// d(p,q) = arccosh(1 + |p-q|^2 / (2 Im p Im q))
double hyp_dist(const HPoint& p, const HPoint& q);

struct Isometry {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    Isometry() = default;
    Isometry(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Isometry identity() { return {}; }

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }

    // rescale to det 1 and make the sign canonical (a > 0, or a == 0 and b > 0)
    Isometry normalized() const;
    Isometry inverse() const { return Isometry(d, -b, -c, a); }

    HPoint apply(const HPoint& p) const;
    std::complex<double> apply(std::complex<double> z) const {
        return (a * z + b) / (c * z + d);
    }

    Isometry operator*(const Isometry& o) const {
        return Isometry(a * o.a + b * o.c, a * o.b + b * o.d,
                        c * o.a + d * o.c, c * o.b + d * o.d);
    }

    bool is_hyperbolic(double tol = 1e-9) const { return std::abs(trace()) > 2.0 + tol; }

    // max |entry| difference after sign normalization
    double dist_to(const Isometry& o) const;
};

// l(T) = 2 arccosh(|tr T| / 2); throws for |tr| <= 2
double translation_length(const Isometry& T);

struct UnitTangent {
    HPoint base;
    double angle = 0.0;   // Euclidean chart angle, normalized to [0, 2pi)

    UnitTangent() = default;
    UnitTangent(const HPoint& p, double theta);
};

// Isometry taking the standard frame (i, pointing up) to (p, angle).
// Geodesic flow is then t -> F(i e^t).
Isometry frame_isometry(const UnitTangent& v);

// Frame of the standard-frame flow at time t under frame F: F * diag(e^{t/2}, e^{-t/2}).
Isometry flow_frame(const Isometry& F, double t);

// tangent angle of t -> F(i e^t) at time t
double tangent_angle(const Isometry& F, double t);

// initial angle at p of the geodesic from p to q (p != q)
double direction_to(const HPoint& p, const HPoint& q);

// unique orientation-preserving isometry (p1,p2) -> (q1,q2); requires
// d(p1,p2) == d(q1,q2) up to tolerance
Isometry two_point_isometry(const HPoint& p1, const HPoint& p2,
                            const HPoint& q1, const HPoint& q2);

struct GeodesicSegment {
    HPoint start;
    HPoint end;
    double length = 0.0;

    GeodesicSegment() = default;
    GeodesicSegment(const HPoint& s, const HPoint& e);
};

// Complete geodesic: semicircle (c, r) on the real axis, or vertical line x = c.
struct Geodesic {
    bool vertical = false;
    double c = 0.0;   // center (circle) or x (vertical)
    double r = 1.0;   // radius; unused when vertical

    static Geodesic circle(double c_, double r_) {
        Geodesic g; g.vertical = false; g.c = c_; g.r = r_; return g;
    }
    static Geodesic vline(double x_) {
        Geodesic g; g.vertical = true; g.c = x_; return g;
    }
    static Geodesic through(const HPoint& p, const HPoint& q);
    static Geodesic imaginary_axis() { return vline(0.0); }

    Geodesic transformed(const Isometry& T) const;

    // sinh d(z, G) = | |z-c|^2 - r^2 | / (2 r Im z)  for circles
    double dist_to(const HPoint& p) const;

    // signed side value; the sign convention is fixed by side_of
    double side_value(const HPoint& p) const;
    int side_of(const HPoint& p) const;   // -1, 0, +1 with tolerance 0
};

// intersection point of two distinct complete geodesics, if any
bool geodesic_intersect(const Geodesic& g1, const Geodesic& g2, HPoint& out);

// crossing angle of two geodesics at a common point, in [0, pi/2]
double crossing_angle(const Geodesic& g1, const Geodesic& g2, const HPoint& at);

// axis of a hyperbolic isometry together with its translation direction;
// fixed_neg is repelling, fixed_pos attracting (either may be infinity for
// vertical axes, signalled by `vertical`)
struct AxisInfo {
    Geodesic geo;
    double fixed_neg = 0.0;
    double fixed_pos = 0.0;
    bool pos_at_infinity = false;
    bool neg_at_infinity = false;
};
AxisInfo axis_of(const Isometry& T);

// a point on the axis of T (the summit of the semicircle, or x + i for vertical)
HPoint axis_point(const Isometry& T);

// isometry sending g to the imaginary axis (endpoints to 0, infinity)
Isometry map_to_imaginary_axis(const Geodesic& g);

// common perpendicular of two disjoint geodesics: feet on g1 and g2 and the
// distance between them; throws if the geodesics meet
struct PerpFeet {
    HPoint on1;
    HPoint on2;
    double dist = 0.0;
    Geodesic perp;
};
PerpFeet common_perpendicular(const Geodesic& g1, const Geodesic& g2);

// reflection of a point across a geodesic (orientation-reversing)
HPoint reflect(const Geodesic& g, const HPoint& p);

// sinh(1)/cosh(l/2), the Lambert quadrilateral midpoint distance bound
double lambert_bound(double l);
// 2 e^{-l/2}; majorizes lambert_bound only for l below exp_majorant_threshold()
double lambert_exp_majorant(double l);
// solution of sinh(1) = 1 + e^{-l}: threshold below which the exponential
// majorant dominates the exact bound
double exp_majorant_threshold();

// |cos(phi)|: hyperbolic curvature of a Euclidean circle meeting the real
// axis at angle phi
double circle_curvature(double phi);

double angle_diff(double a1, double a2);   // wrapped to [0, pi]

} // namespace geocross
