#include "doctest.h"

#include <random>

#include "geocross/closer.hpp"
#include "geocross/intersect.hpp"
#include "geocross/words.hpp"
#include "test_helpers.hpp"

using namespace geocross;

TEST_CASE("closing a subarc of a closed geodesic recovers its class") {
    const SurfaceGroup& S = testutil::surface();
    for (const char* w : {"ad", "abc"}) {
        const Isometry W = S.word(w);
        const double lw = translation_length(W);
        const TracedArc period = trace_axis_period(S, W);
        // a bit over two periods of the axis
        const TracedArc arc = trace(S, period.start, 2.2 * lw);
        const ClosingCertificate cert = close_arc(S, arc, 0.1);
        REQUIRE(cert.success);
        CHECK(cert.fellow_travel_distance < 1e-5);
        CHECK(cert.angle_deficits.first < 1e-5);
        CHECK(cert.angle_deficits.second < 1e-5);
        // returned word is conjugate to a power of the original class
        const std::string root =
            words::primitive_root(words::canonical_class(cert.word));
        CHECK(root == words::canonical_class(w));
        const double ratio = cert.closed_length / lw;
        CHECK(std::abs(ratio - std::round(ratio)) < 1e-6);
    }
}

TEST_CASE("angle deficits of a holonomy closure vanish") {
    const SurfaceGroup& S = testutil::surface();
    const Isometry W = S.word("ad");
    const TracedArc period = trace_axis_period(S, W);
    const TracedArc arc = trace(S, period.start, translation_length(W));
    // the crossing word of one full period closes the arc exactly
    const auto [d1, d2] = angle_deficit_of_closure(S, arc, arc.crossing_word);
    CHECK(d1 < 1e-6);
    CHECK(d2 < 1e-6);
    CHECK_THROWS(angle_deficit_of_closure(S, arc, "aA"));
}

TEST_CASE("random arc closures satisfy the certificate bounds") {
    const SurfaceGroup& S = testutil::surface();
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> ulen(5.0, 20.0);
    std::uint64_t state = rng();
    int succ = 0;
    const int total = 20;
    for (int t = 0; t < total; ++t) {
        const UnitTangent v = random_frame(S, state);
        const double l = ulen(rng);
        const TracedArc arc = trace(S, v, l);
        const ClosingCertificate cert = close_arc(S, arc, 0.1);
        if (!cert.success) continue;
        ++succ;
        CHECK(cert.fellow_travel_distance <= 1.0);
        CHECK(cert.angle_deficits.first <= 0.1 + 1e-12);
        CHECK(cert.angle_deficits.second <= 0.1 + 1e-12);
        CHECK(cert.closed_length <= l + cert.beta_length + 1e-3);
        CHECK(cert.intersection_count >= 0);
        // direct recomputation of the fellow-travel certificate
        const Geodesic ax = axis_of(S.word(cert.word)).geo;
        double worst = 0.0;
        for (int k = 0; k < 64; ++k)
            worst = std::max(worst, ax.dist_to(arc.cover_point(l * k / 63.0)));
        CHECK(worst == doctest::Approx(cert.fellow_travel_distance).epsilon(1e-6));
    }
    CHECK(succ >= (total * 3) / 4);
}

TEST_CASE("deficit targets control the axis distance") {
    const SurfaceGroup& S = testutil::surface();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ulen(6.0, 14.0);
    double worst_ft[3] = {0.0, 0.0, 0.0};
    const double epses[3] = {0.3, 0.1, 0.03};
    std::uint64_t state = rng();
    for (int t = 0; t < 12; ++t) {
        const UnitTangent v = random_frame(S, state);
        const double l = ulen(rng);
        const TracedArc arc = trace(S, v, l);
        for (int e = 0; e < 3; ++e) {
            const ClosingCertificate cert = close_arc(S, arc, epses[e]);
            if (cert.success)
                worst_ft[e] = std::max(worst_ft[e], cert.fellow_travel_distance);
        }
    }
    // observed fellow-travel bound shrinks with the deficit target
    CHECK(worst_ft[1] <= worst_ft[0] + 1e-12);
    CHECK(worst_ft[2] <= worst_ft[1] + 1e-12);
    CHECK(worst_ft[1] <= 1.0);
}

TEST_CASE("estimate_R") {
    const SurfaceGroup& S = testutil::surface();
    CloserConfig cfg;
    const REstimate est = estimate_R(S, 0.1, 20, 515151, cfg);
    CHECK(est.R_hat > 0.0);
    CHECK(est.successes > 0);

    SUBCASE("nonincreasing in the search radius") {
        CloserConfig deeper = cfg;
        deeper.radius = cfg.radius + 1;
        const REstimate est2 = estimate_R(S, 0.1, 20, 515151, deeper);
        CHECK(est2.R_hat <= est.R_hat + 1e-12);
    }

    SUBCASE("derived constants") {
        GrowthBound gb;
        gb.set_C(0.9);
        gb.set_R_hat(est.R_hat);
        CHECK(gb.d == doctest::Approx(2.0 * gb.kappa * est.R_hat));
        CHECK(gb.c_X == doctest::Approx(2.0 + gb.d / 2.0));
    }

    CHECK_THROWS(estimate_R(S, 0.1, 5, 1, cfg));
}

TEST_CASE("close_arc rejects short arcs") {
    const SurfaceGroup& S = testutil::surface();
    const TracedArc arc = trace(S, UnitTangent(S.center(), 1.0), 2.0);
    CHECK_THROWS_AS(close_arc(S, arc, 0.1), std::invalid_argument);
}
