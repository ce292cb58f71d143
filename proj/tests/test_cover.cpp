#include "doctest.h"

#include <cmath>
#include <random>

#include "geocross/cover.hpp"
#include "test_helpers.hpp"

using namespace geocross;

namespace {

const GrowthBound& growth() {
    static const GrowthBound gb = [] {
        const SurfaceGroup& S = testutil::surface();
        HexagonDecomposition H = build_hexagons(S);
        GrowthBound g;
        g.set_C(estimate_C(S, H, 1000, 5150));
        const REstimate est = estimate_R(S, 0.1, 30, 99887766);
        g.set_R_hat(est.R_hat);
        g.r_hat_lower_bound_only = est.lower_bound_only;
        g.a_X = std::exp(1.0);
        g.a_x_fitted = true;
        g.injectivity_radius = 2.256767929932603 / 2.0;
        return g;
    }();
    return gb;
}

const CensusSlice& census8() {
    static const CensusSlice slice =
        enumerate_census(testutil::surface(), 8.0, 1LL << 40);
    return slice;
}

} // namespace

TEST_CASE("build_cover") {
    const CensusSlice& census = census8();
    const GrowthBound& gb = growth();
    auto f_sq = [](double l) { return 0.01 * l * l; };

    SUBCASE("epsilon formula") {
        const CoverSpec c8 = build_cover(census, 8, f_sq, gb);
        CHECK(c8.epsilon == 2.0 * std::exp(-2.0));
        CHECK(c8.epsilon == doctest::Approx(0.270671).epsilon(1e-5));
    }

    SUBCASE("zero budget keeps exactly the simple geodesics") {
        auto f0 = [](double) { return 0.0; };
        const CoverSpec c = build_cover(census, 7, f0, gb);
        long long simple = 0;
        for (const auto& r : census.records)
            if (r.length <= 7.0 + 1e-9 && r.self_intersections == 0) ++simple;
        CHECK(static_cast<long long>(c.members.size()) == simple);
    }

    SUBCASE("member count nondecreasing in n") {
        size_t prev = 0;
        for (int n = 4; n <= 8; ++n) {
            const CoverSpec c = build_cover(census, n, f_sq, gb);
            CHECK(c.members.size() >= prev);
            prev = c.members.size();
            // member filter matches a recount
            CHECK(static_cast<long long>(c.members.size()) ==
                  census.count_upto(n, c.K));
        }
    }

    SUBCASE("insufficient census is a hard error") {
        CHECK_THROWS(build_cover(census, 9, f_sq, gb));
        CensusSlice partial = census;
        partial.complete = false;
        CHECK_THROWS(build_cover(partial, 6, f_sq, gb));
    }
}

TEST_CASE("lebesgue measure") {
    const SurfaceGroup& S = testutil::surface();
    const CensusSlice& census = census8();
    const GrowthBound& gb = growth();

    SUBCASE("empty cover measures zero") {
        CoverSpec empty;
        empty.n = 6;
        empty.epsilon = 2.0 * std::exp(-1.5);
        const MeasureReport rep = lebesgue_measure(S, empty, 10000, 42);
        CHECK(rep.lebesgue_bound == 0.0);
        CHECK(rep.lebesgue_mc == 0.0);
    }

    SUBCASE("analytic bound and seed stability") {
        auto f0 = [](double) { return 0.0; };
        const CoverSpec c = build_cover(census, 6, f0, gb);
        const MeasureReport r1 = lebesgue_measure(S, c, 20000, 1001);
        const MeasureReport r2 = lebesgue_measure(S, c, 20000, 2002);
        CHECK(r1.lebesgue_bound ==
              doctest::Approx(5.0 * 6.0 * std::exp(-1.5) * c.members.size()));
        CHECK(r1.lebesgue_mc <= r1.lebesgue_bound + 3.0 * r1.lebesgue_stderr);
        // independent seeds agree within 3 sigma of each other
        const double sigma = std::hypot(r1.lebesgue_stderr, r2.lebesgue_stderr);
        CHECK(std::abs(r1.lebesgue_mc - r2.lebesgue_mc) <= 3.0 * sigma + 1e-12);
        // the union measure never exceeds the surface area
        CHECK(r1.lebesgue_mc <= 4.0 * kPi + 1e-9);
    }
}

TEST_CASE("hausdorff measure") {
    const CensusSlice& census = census8();
    const GrowthBound& gb = growth();
    auto f_sq = [](double l) { return 0.01 * l * l; };
    const CoverSpec ball = build_cover(census, 8, f_sq, gb, CoverKind::ball);

    SUBCASE("kind and exponent preconditions") {
        const CoverSpec nbhd = build_cover(census, 8, f_sq, gb);
        CHECK_THROWS(hausdorff_measure(nbhd, 1.0));
        CHECK_THROWS(hausdorff_measure(ball, 0.0));
        CHECK_THROWS(hausdorff_measure(ball, 2.5));
    }

    SUBCASE("summation matches the closed form") {
        // (2n/eps)(2 eps)^h = 4^h n e^{-(n/4)(h-1)}; the vanishing threshold
        // h > 4 mu + 1 needs the decaying exponent
        for (double h : {0.5, 1.0, 1.5, 2.0}) {
            const MeasureReport rep = hausdorff_measure(ball, h);
            const double n = 8.0;
            const double closed_form = static_cast<double>(ball.members.size()) *
                                       std::pow(4.0, h) * n *
                                       std::exp(-(n / 4.0) * (h - 1.0));
            CHECK(rep.hausdorff_h ==
                  doctest::Approx(closed_form).epsilon(1e-9));
        }
    }

    SUBCASE("per-member values at pinned exponents") {
        // h = 1 cancels the exponent: 4 n per member
        const MeasureReport r1 = hausdorff_measure(ball, 1.0);
        CHECK(r1.hausdorff_h / ball.members.size() == doctest::Approx(4.0 * 8.0));
        // h = 1.5, n = 8: 4^{1.5} * 8 * e^{-1} = 64 / e per member
        const MeasureReport r15 = hausdorff_measure(ball, 1.5);
        CHECK(r15.hausdorff_h / ball.members.size() ==
              doctest::Approx(64.0 / std::exp(1.0)).epsilon(1e-9));
    }
}

TEST_CASE("covering check") {
    const SurfaceGroup& S = testutil::surface();
    const CensusSlice& census = census8();
    const GrowthBound& gb = growth();
    auto f_id = [](double l) { return l; };

    SUBCASE("soundness floor: a member covers its own axis") {
        const TracedArc period = trace_axis_period(S, S.word("a"));
        const GeodesicSpec g(S, period.start);
        const CoveringReport rep = covering_check(S, census, g, f_id, 5.0, 6, gb);
        CHECK(rep.outcome == CoveringOutcome::covered);
        CHECK(rep.member_distance < 1e-7);
        if (rep.closure.success) {
            CHECK(rep.witness_distance <= rep.lambert + 1e-9);
            CHECK(rep.witness_ok);
        }
    }

    SUBCASE("budget violations are rejected") {
        // f == -1 can never be satisfied
        const TracedArc period = trace_axis_period(S, S.word("a"));
        const GeodesicSpec g(S, period.start);
        auto f_neg = [](double) { return -1.0; };
        CHECK_THROWS(covering_check(S, census, g, f_neg, 5.0, 6, gb));
    }
}

TEST_CASE("box dimension") {
    const SurfaceGroup& S = testutil::surface();
    std::mt19937_64 rng(13131);

    SUBCASE("preconditions") {
        std::vector<HPoint> few(100, HPoint(0, 1));
        CHECK_THROWS(box_dimension(S, few, {0.4, 0.2, 0.1, 0.05}));
        std::vector<HPoint> many(10000, HPoint(0, 1));
        CHECK_THROWS(box_dimension(S, many, {0.4, 0.2}));
        CHECK_THROWS(box_dimension(S, many, {0.4, 0.3, 0.25, 0.2}));
    }

    SUBCASE("a closed geodesic has dimension about 1") {
        const TracedArc arc = trace_axis_period(S, S.word("a"));
        std::vector<HPoint> pts;
        const int N = 10000;
        for (int i = 0; i < N; ++i) {
            const double t = arc.length * i / N;
            for (const ArcSegment& seg : arc.segments) {
                if (t >= seg.t0 && t < seg.t1) {
                    pts.push_back(seg.point_at(t));
                    break;
                }
            }
        }
        const BoxDimension bd = box_dimension(S, pts, {0.3, 0.15, 0.075, 0.0375});
        CHECK(bd.dimension > 0.9);
        CHECK(bd.dimension < 1.1);
    }

    SUBCASE("uniform surface samples have dimension about 2") {
        std::vector<HPoint> pts;
        std::uint64_t state = 777;
        for (int i = 0; i < 12000; ++i) pts.push_back(random_surface_point(S, state));
        const BoxDimension bd = box_dimension(S, pts, {0.4, 0.2, 0.1, 0.05});
        CHECK(bd.dimension > 1.85);
        CHECK(bd.dimension < 2.05);
    }
}

TEST_CASE("dimension bound and threshold") {
    GrowthBound gb = growth();

    SUBCASE("root of mu equals a quarter") {
        const DimBound db = dim_bound_and_k0(gb, 0.1);
        CHECK(std::abs(mu_of_k(gb.a_X, db.k0) - 0.25) < 1e-9);
        CHECK(db.dim_bound == doctest::Approx(4.0 * db.mu + 1.0));
    }

    SUBCASE("bound tends to one as k vanishes") {
        double prev = 1e300;
        for (double k : {0.2, 0.1, 0.05, 0.01}) {
            const DimBound db = dim_bound_and_k0(gb, k);
            CHECK(db.dim_bound < prev);
            CHECK(db.dim_bound > 1.0);
            prev = db.dim_bound;
        }
        CHECK(dim_bound_and_k0(gb, 1e-6).dim_bound ==
              doctest::Approx(1.0).epsilon(1e-3));
    }

    SUBCASE("unfitted growth bound is rejected") {
        GrowthBound raw;
        raw.set_C(1.0);
        CHECK_THROWS(dim_bound_and_k0(raw, 0.1));
    }
}
