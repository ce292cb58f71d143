#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geocross/hyp.hpp"

// Concrete closed genus-2 surface: the regular hyperbolic octagon with all
// interior angles pi/4, centered at i, sides glued in the pattern
// a b a^-1 b^-1 c d c^-1 d^-1. Also carries the pants decomposition
// {a, c, [a,b]} cut into right-angled hexagons, and the X-dependent
// constants used by the covering experiments.

namespace geocross {

struct GrowthBound {
    double C = 0.0;        // min length of three consecutive full segments
    double kappa = 0.0;    // (2 + 3/C)^2
    double R_hat = 0.0;    // empirical closing-arc length bound
    double d = 0.0;        // 2 kappa R_hat
    double c_X = 0.0;      // 2 + d/2
    double a_X = 0.0;      // census-fit constant (>= e once fitted)
    double injectivity_radius = 0.0;
    bool r_hat_lower_bound_only = false;
    bool a_x_fitted = false;

    void set_C(double C_) {
        C = C_;
        kappa = (2.0 + 3.0 / C) * (2.0 + 3.0 / C);
    }
    void set_R_hat(double r) {
        R_hat = r;
        d = 2.0 * kappa * R_hat;
        c_X = 2.0 + d / 2.0;
    }
};

class SurfaceGroup {
public:
    static SurfaceGroup build_genus2();

    const Isometry& generator(char letter) const;   // a,b,c,d,A,B,C,D
    Isometry word(const std::string& w) const;

    const std::array<HPoint, 8>& vertices() const { return verts_; }
    const Geodesic& side_geodesic(int k) const { return side_geo_[k]; }
    GeodesicSegment side_segment(int k) const;
    char crossing_letter(int side) const { return nbr_letter_[side]; }
    int paired_side(int side) const { return pair_side_[side]; }

    HPoint center() const { return HPoint(0.0, 1.0); }
    double circumradius() const { return circumradius_; }
    double apothem() const { return apothem_; }
    double side_length() const { return side_length_; }

    bool inside(const HPoint& p, double tol = 0.0) const;
    // largest violation of the side constraints; <= 0 means inside
    double boundary_violation(const HPoint& p) const;

    // (p', g) with p' = g p in the closed fundamental domain
    std::pair<HPoint, Isometry> normalize_point(const HPoint& p) const;

    // area by numerical boundary integration of dx/y (Green's theorem form)
    double area_numeric(int quad_points = 4096) const;

    GrowthBound growth;

    std::string serialize() const;
    static SurfaceGroup deserialize(const std::string& text);
    std::uint64_t hash() const;

    // deck transformations u with d(i, u i) <= radius, via BFS on the tiling
    std::vector<Isometry> deck_ball(double radius) const;

    static const std::vector<std::string>& pants_curve_words();

private:
    SurfaceGroup() = default;
    void finish_build(bool validate);

    std::array<HPoint, 8> verts_{};
    std::array<Isometry, 8> gens_{};      // indexed a,b,c,d,A,B,C,D
    std::array<Geodesic, 8> side_geo_{};
    std::array<double, 8> inside_sign_{};
    std::array<char, 8> nbr_letter_{};
    std::array<int, 8> pair_side_{};
    double circumradius_ = 0.0, apothem_ = 0.0, side_length_ = 0.0;
};

int letter_index(char ch);

struct Hexagon {
    std::array<HPoint, 6> verts;
    std::array<Geodesic, 6> sides;
    std::array<double, 6> inside_sign;
    HPoint inner;
    int pants = 0;

    static Hexagon from_vertices(const std::array<HPoint, 6>& v, int pants);
    Hexagon transformed(const Isometry& u) const;
    bool contains(const HPoint& p, double tol = 0.0) const;
    double violation(const HPoint& p) const;
};

struct WallPiece {
    GeodesicSegment seg;
    Geodesic geo;
    bool seam = false;
    int wall_id = 0;
};

struct HexLift {
    Isometry u;       // lift = u * base hexagon
    Hexagon world;
};

class HexagonDecomposition {
public:
    std::vector<Hexagon> hexagons;                 // 4 base hexagons
    std::vector<std::vector<HexLift>> lifts;       // copies meeting the domain
    std::vector<WallPiece> walls;                  // folded into the domain
    double C_min = 0.0;

    // (hexagon id, lift index); falls back to smallest violation
    std::pair<int, int> locate(const HPoint& p) const;

    const std::vector<WallPiece>& boundary_edges() const;   // cached filters
    const std::vector<WallPiece>& seam_edges() const;

private:
    mutable std::vector<WallPiece> boundary_cache_, seam_cache_;
};

// pants decomposition {a, c, [a,b]} cut along seams into 4 right-angled
// hexagons; validates angles, half-length sides and the hexagon identity
HexagonDecomposition build_hexagons(const SurfaceGroup& S);

// minimum observed sum of three consecutive full segments over random traced
// arcs, scaled by 0.9; also stores the result into H.C_min
double estimate_C(const SurfaceGroup& S, HexagonDecomposition& H,
                  int samples, std::uint64_t seed);

std::uint64_t fnv1a64(const std::string& s);

} // namespace geocross
