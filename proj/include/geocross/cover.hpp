#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "geocross/census.hpp"
#include "geocross/closer.hpp"
#include "geocross/surface.hpp"
#include "geocross/tracer.hpp"

// Cover families C_n: epsilon(n)-neighborhoods of the census geodesics with
// length <= n and at most c_X f(n) self-intersections, with epsilon(n) =
// 2 e^{-n/4}; the ball variant C_n^H covers each neighborhood by 2n/eps(n)
// balls of radius 2 eps(n).

namespace geocross {

enum class CoverKind { neighborhood, ball };

struct CoverSpec {
    int n = 0;
    double epsilon = 0.0;           // 2 e^{-n/4}
    long long K = 0;                // floor(c_X f(n))
    CoverKind kind = CoverKind::neighborhood;
    std::vector<ClosedGeodesicRecord> members;
};

CoverSpec build_cover(const CensusSlice& census, int n,
                      const std::function<double(double)>& f,
                      const GrowthBound& gb,
                      CoverKind kind = CoverKind::neighborhood);

struct MeasureReport {
    double lebesgue_bound = 0.0;
    double lebesgue_mc = 0.0;
    double lebesgue_stderr = 0.0;
    double hausdorff_h = 0.0;
    double h = 0.0;
    long long ball_count = 0;
    long long mc_samples = 0;
};

// precomputed point-to-geodesic distance structure for the cover members
class CoverGeometry {
public:
    CoverGeometry(const SurfaceGroup& S, const CoverSpec& cover);
    // distance from a domain point to the nearest member geodesic, exact for
    // values below the build threshold
    double distance(const HPoint& p) const;
    bool within(const HPoint& p, double eps) const;
    size_t segment_count() const { return segs_.size(); }

private:
    struct FatSeg {
        Isometry to_std;      // maps the segment geodesic to the imaginary axis
        double lo = 0.0, hi = 0.0;   // parameter range, log scale
        HPoint lo_pt, hi_pt;  // endpoints at the lo / hi parameters
        double xmin = 0, xmax = 0, umin = 0, umax = 0;   // (x, ln y) bbox
    };
    std::vector<FatSeg> segs_;
    std::vector<std::vector<int>> grid_;
    double gx0_ = 0, gx1_ = 0, gu0_ = 0, gu1_ = 0;
    int nx_ = 0, nu_ = 0;
    double pad_ = 0.0;
    int cell_of(double x, double u) const;
};

// uniform random point of the fundamental domain (hyperbolic area measure)
HPoint random_surface_point(const SurfaceGroup& S, std::uint64_t& state);

MeasureReport lebesgue_measure(const SurfaceGroup& S, const CoverSpec& cover,
                               long long mc_samples, std::uint64_t seed);

MeasureReport hausdorff_measure(const CoverSpec& cover, double h);

enum class CoveringOutcome { covered, not_covered, inconclusive };

struct CoveringReport {
    CoveringOutcome outcome = CoveringOutcome::inconclusive;
    double member_distance = 1e300;   // midpoint to nearest cover member
    double witness_distance = 1e300;  // midpoint to the closing geodesic axis
    double lambert = 0.0;             // sinh(1)/cosh(n/2)
    bool witness_ok = false;
    ClosingCertificate closure;
};

// checks that the midpoint of the proxy geodesic lies within eps(n) of a
// member of C_n; the proxy must satisfy the subarc budget f on [L, n]
CoveringReport covering_check(const SurfaceGroup& S, const CensusSlice& census,
                              const GeodesicSpec& g,
                              const std::function<double(double)>& f,
                              double L, int n, const GrowthBound& gb,
                              const CloserConfig& closer_cfg = {});

// subarc self-intersection budget check for proxy arcs: every centered
// subarc of length l in [L, n] has at most f(l) self-intersections
bool proxy_satisfies_budget(const SurfaceGroup& S, const GeodesicSpec& g,
                            const std::function<double(double)>& f, double L,
                            double n);

struct BoxDimension {
    double dimension = 0.0;
    std::vector<double> scales;
    std::vector<long long> counts;   // greedy net sizes per scale
};

// covering-number slope: greedy epsilon-nets in the surface metric at the
// given scales, least squares over the three largest occupied scales
BoxDimension box_dimension(const SurfaceGroup& S, const std::vector<HPoint>& points,
                           const std::vector<double>& scales);

struct DimBound {
    double dim_bound = 0.0;   // 4 mu(k) + 1
    double k0 = 0.0;          // mu(k0) = 1/4
    double mu = 0.0;
};

DimBound dim_bound_and_k0(const GrowthBound& gb, double k, double factor = 4.0);

} // namespace geocross
