// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is pinned here; randomized parts use
// fixed seeds so the run is reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "geocross/census.hpp"
#include "geocross/closer.hpp"
#include "geocross/cover.hpp"
#include "geocross/intersect.hpp"
#include "geocross/surface.hpp"
#include "geocross/tracer.hpp"
#include "geocross/words.hpp"

using namespace geocross;

namespace {

int g_failures = 0;

struct Criterion {
    const char* name;
    std::vector<std::string> problems;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Criterion(const char* n) : name(n) {}
    void expect(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
    void finish() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (problems.empty()) {
            std::printf("[PASS] %-52s (%.1fs)\n", name, secs);
        } else {
            ++g_failures;
            std::printf("[FAIL] %-52s (%.1fs)\n", name, secs);
            for (const std::string& p : problems)
                std::printf("       - %s\n", p.c_str());
        }
        std::fflush(stdout);
    }
};

std::mt19937_64 g_rng(20260810);

HPoint random_point(std::mt19937_64& rng, double box = 10.0) {
    std::uniform_real_distribution<double> ux(-box, box);
    std::uniform_real_distribution<double> uy(std::log(0.05), std::log(box));
    return HPoint(ux(rng), std::exp(uy(rng)));
}

Isometry random_isometry(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (;;) {
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (a * d - b * c > 0.1) return Isometry(a, b, c, d).normalized();
    }
}

// conjugate formed in extended precision so the check reflects the length
// function rather than rounding of the sandwich product
Isometry conjugate_ld(const Isometry& g, const Isometry& T) {
    const long double a = g.a, b = g.b, c = g.c, d = g.d;
    const long double p = a * T.a + b * T.c, q = a * T.b + b * T.d;
    const long double r = c * T.a + d * T.c, s = c * T.b + d * T.d;
    const long double ca = p * d - q * c, cb = -p * b + q * a;
    const long double cc = r * d - s * c, cd = -r * b + s * a;
    const long double sc = 1.0L / std::sqrt(ca * cd - cb * cc);
    return Isometry(static_cast<double>(ca * sc), static_cast<double>(cb * sc),
                    static_cast<double>(cc * sc), static_cast<double>(cd * sc));
}

// --------------------------------------------------------------------------

void criterion1_kernel() {
    Criterion c("1. kernel: metric, invariance, conjugation");
    std::mt19937_64 rng(111);
    for (int t = 0; t < 1000; ++t) {
        const HPoint p = random_point(rng), q = random_point(rng), r = random_point(rng);
        c.expect(std::abs(hyp_dist(p, q) - hyp_dist(q, p)) < 1e-9, "metric symmetry");
        c.expect(hyp_dist(p, r) <= hyp_dist(p, q) + hyp_dist(q, r) + 1e-9,
                 "triangle inequality");
    }
    for (int t = 0; t < 1000; ++t) {
        const Isometry T = random_isometry(rng);
        const HPoint p = random_point(rng), q = random_point(rng);
        c.expect(std::abs(hyp_dist(T.apply(p), T.apply(q)) - hyp_dist(p, q)) < 1e-10,
                 "apply preserves distances");
    }
    int done = 0;
    while (done < 1000) {
        const Isometry T = random_isometry(rng);
        if (!T.is_hyperbolic(1e-3)) continue;
        ++done;
        const Isometry C = conjugate_ld(random_isometry(rng), T).normalized();
        c.expect(std::abs(translation_length(T) - translation_length(C)) < 1e-10,
                 "translation length conjugation invariance");
    }
    c.finish();
}

void criterion2_intersections(const SurfaceGroup& S, const HexagonDecomposition& H) {
    Criterion c("2. intersection oracle equivalence + quadratic bound");
    std::mt19937_64 rng(222);
    std::uniform_real_distribution<double> ul(2.0, 15.0);
    std::uint64_t state = rng();
    int mismatches = 0;
    for (int t = 0; t < 200; ++t) {
        const UnitTangent v = random_frame(S, state);
        const TracedArc a = trace(S, v, ul(rng));
        const int n1 = count_self(S, H, a, CountMethod::pairwise_lift).count;
        const int n2 = count_self(S, H, a, CountMethod::hexagon).count;
        if (n1 != n2) ++mismatches;
    }
    c.expect(mismatches == 0,
             "pairwise-lift vs hexagon mismatches: " + std::to_string(mismatches));
    std::uniform_real_distribution<double> upl(1.0, 12.0);
    int bound_violations = 0;
    for (int t = 0; t < 100; ++t) {
        const double la = upl(rng), lb = upl(rng);
        const TracedArc a = trace(S, random_frame(S, state), la);
        const TracedArc b = trace(S, random_frame(S, state), lb);
        const int cnt = count_pair(S, a, b).count;
        if (cnt > quadratic_bound(la, lb, S.growth)) ++bound_violations;
    }
    c.expect(bound_violations == 0,
             "quadratic bound violations: " + std::to_string(bound_violations));
    c.finish();
}

void criterion3_closing(const SurfaceGroup& S) {
    Criterion c("3. arc closing: rate, fellow travel, length, count");
    std::mt19937_64 rng(333);
    std::uniform_real_distribution<double> ulen(5.0, 20.0);
    std::uint64_t state = rng();
    const double R_hat = S.growth.R_hat;
    const double d = S.growth.d;
    int successes = 0;
    const int total = 50;
    for (int t = 0; t < total; ++t) {
        const UnitTangent v = random_frame(S, state);
        const double l = ulen(rng);
        const TracedArc arc = trace(S, v, l);
        const ClosingCertificate cert = close_arc(S, arc, 0.1);
        if (!cert.success) continue;
        ++successes;
        c.expect(cert.fellow_travel_distance <= 1.0, "fellow travel exceeds 1");
        c.expect(cert.angle_deficits.first <= 0.1 + 1e-12 &&
                     cert.angle_deficits.second <= 0.1 + 1e-12,
                 "deficit exceeds eps on a success");
        c.expect(cert.closed_length <= l + R_hat + 1e-6,
                 "closed length exceeds l + R_hat");
        if (l >= R_hat) {
            c.expect(cert.closed_length <= 2.0 * l + 1e-6,
                     "closed length exceeds 2l in the l >= R_hat regime");
        }
        const int self = count_self(S, arc, CountMethod::pairwise_lift).count;
        c.expect(static_cast<double>(cert.intersection_count) <= self + d * l + 1e-6,
                 "intersection count exceeds #a.a + d l");
    }
    c.expect(successes * 10 >= total * 9,
             "success rate below 90%: " + std::to_string(successes) + "/50");
    c.finish();
}

void criterion4_census(const SurfaceGroup& S, const CensusSlice& census12) {
    Criterion c("4. census integrity vs raw-word oracle (L = 8)");
    const double L = 8.0;
    // census records restricted to L
    std::vector<const ClosedGeodesicRecord*> recs;
    size_t max_word = 0;
    for (const auto& r : census12.records) {
        if (r.length <= L + 1e-9) {
            recs.push_back(&r);
            max_word = std::max(max_word, r.word.size());
        }
    }
    const int oracle_len = 8;
    c.expect(max_word + 1 <= static_cast<size_t>(oracle_len),
             "oracle word cutoff does not dominate census word lengths");
    for (const auto* r : recs) {
        c.expect(std::abs(r->length - 2.0 * std::acosh(r->trace_abs / 2.0)) < 1e-9,
                 "length-trace identity");
    }
    c.expect(census12.complete, "census slice not complete");

    // raw-word enumeration with geometric conjugacy linking
    struct Rep {
        Isometry M;
        std::string word;
    };
    std::map<long long, std::vector<Rep>> buckets;
    const std::vector<Isometry> ball =
        S.deck_ball(S.circumradius() + (S.circumradius() + L / 2.0 + 0.4));
    long long oracle_classes = 0;
    std::vector<std::string> frontier = {""};
    std::set<std::string> canon_oracle;
    for (int n = 0; n < oracle_len; ++n) {
        std::vector<std::string> next;
        for (const std::string& w : frontier) {
            for (const char* ch = words::kLetters; *ch; ++ch) {
                if (!w.empty() && w.back() == words::inverse_letter(*ch)) continue;
                next.push_back(w + *ch);
            }
        }
        for (const std::string& w : next) {
            if (words::cyclic_reduce(w) != w) continue;
            Isometry M = S.word(w);
            if (!M.is_hyperbolic(1e-9)) continue;
            const double ell = translation_length(M);
            if (ell > L + 1e-9) continue;
            // normalize the axis into the fundamental domain
            auto [p0, g0] = S.normalize_point(axis_point(M));
            M = conjugate_ld(g0, M).normalized();
            const HPoint q = axis_point(M);
            auto& bucket = buckets[std::llround(ell * 1e7)];
            bool placed = false;
            for (const Isometry& u : ball) {
                const HPoint uq = u.apply(q);
                // a conjugator in the right coset lands q within half a period
                // of the representative axis crossing of the domain
                if (hyp_dist(S.center(), uq) > S.circumradius() + L / 2.0 + 0.4)
                    continue;
                const Isometry C = conjugate_ld(u, M).normalized();
                const Isometry Ci = conjugate_ld(u, M.inverse().normalized()).normalized();
                for (const Rep& r : bucket) {
                    if (C.dist_to(r.M) < 1e-6 || Ci.dist_to(r.M) < 1e-6) {
                        placed = true;
                        break;
                    }
                }
                if (placed) break;
            }
            if (!placed) {
                bucket.push_back({M, w});
                ++oracle_classes;
                canon_oracle.insert(words::canonical_class(w));
            }
        }
        frontier.swap(next);
    }
    c.expect(oracle_classes == static_cast<long long>(recs.size()),
             "oracle classes " + std::to_string(oracle_classes) + " vs census " +
                 std::to_string(recs.size()));
    std::set<std::string> canon_census;
    for (const auto* r : recs) canon_census.insert(r->word);
    c.expect(canon_oracle == canon_census, "canonical class sets differ");
    c.finish();
}

void criterion5_growth(const SurfaceGroup& S, const CensusSlice& census12) {
    Criterion c("5. growth bound fit (Lemma 4.1 shape)");
    const std::vector<int> ns = {4, 5, 6, 7, 8, 9, 10, 11, 12};
    const std::vector<double> ks = {0.1, 0.2, 0.4};
    const GrowthFit fit = growth_check(census12, ns, ks, S.growth, 4.0);
    c.expect(fit.ok, "fit failed");
    for (size_t i = 0; i < ks.size(); ++i) {
        for (size_t j = 0; j < ns.size(); ++j) {
            c.expect(fit.slack[i][j] >= -1e-9,
                     "negative slack at k=" + std::to_string(ks[i]) +
                         " n=" + std::to_string(ns[j]));
        }
    }
    c.expect(fit.mu[0] < fit.mu[1] && fit.mu[1] < fit.mu[2],
             "mu(k) not strictly decreasing as k decreases");
    std::printf("       fitted a_X = %.6f, mu = {%.4f, %.4f, %.4f}\n", fit.a_X,
                fit.mu[0], fit.mu[1], fit.mu[2]);
    c.finish();
}

void criterion6_measures(const SurfaceGroup& S, const CensusSlice& census12) {
    Criterion c("6. cover measures: MC vs bound, nu_h, decay at k=0.05");
    const double k = 0.05;
    auto f = [k](double l) { return (k * l) * (k * l); };
    double prev_mc = 1e300;
    bool strictly_decreasing = true;
    for (int n : {6, 8, 10, 12}) {
        const CoverSpec cover = build_cover(census12, n, f, S.growth);
        const MeasureReport leb = lebesgue_measure(S, cover, 20000, 606060 + n);
        c.expect(leb.lebesgue_mc <= leb.lebesgue_bound + 3.0 * leb.lebesgue_stderr,
                 "MC exceeds the analytic bound at n=" + std::to_string(n));
        const CoverSpec ball = build_cover(census12, n, f, S.growth, CoverKind::ball);
        for (double h : {0.5, 1.0, 1.5}) {
            const MeasureReport hm = hausdorff_measure(ball, h);
            const double closed_form = static_cast<double>(ball.members.size()) *
                                       std::pow(4.0, h) * n *
                                       std::exp(-(n / 4.0) * (h - 1.0));
            c.expect(std::abs(hm.hausdorff_h - closed_form) <=
                         1e-9 * std::max(1.0, std::abs(closed_form)),
                     "nu_h summation differs from the closed form");
        }
        std::printf("       n=%2d members=%6zu eps=%.4f bound=%9.2f mc=%7.4f+-%.4f\n",
                    n, cover.members.size(), cover.epsilon, leb.lebesgue_bound,
                    leb.lebesgue_mc, leb.lebesgue_stderr);
        if (leb.lebesgue_mc >= prev_mc) strictly_decreasing = false;
        prev_mc = leb.lebesgue_mc;
    }
    c.expect(strictly_decreasing,
             "lambda(C_n) MC estimates not strictly decreasing over n (the cover "
             "saturates the surface at desk scale; k = 0.05 exceeds the decay "
             "threshold k0)");
    c.finish();
}

void criterion7_covering(const SurfaceGroup& S, const CensusSlice& census12) {
    Criterion c("7. covering check (Lemma 3.1) with Lambert witnesses");
    auto f = [](double l) { return l; };
    const double L = 5.0;
    std::uint64_t state = 777777;
    const std::vector<int> ns = {10, 12};
    int proxies = 0, draws = 0;
    int n_observed = -1;
    while (proxies < 20 && draws < 500) {
        ++draws;
        const UnitTangent v = random_frame(S, state);
        const GeodesicSpec g(S, v);
        bool all_covered = true;
        bool valid = true;
        for (int n : ns) {
            try {
                const CoveringReport cr =
                    covering_check(S, census12, g, f, L, n, S.growth);
                if (cr.outcome != CoveringOutcome::covered) all_covered = false;
                if (cr.closure.success) {
                    c.expect(cr.witness_distance <= cr.lambert + 1e-9,
                             "witness beyond sinh(1)/cosh(n/2) at n=" +
                                 std::to_string(n));
                }
            } catch (const std::invalid_argument&) {
                valid = false;   // proxy violates the subarc budget: redraw
                break;
            }
        }
        if (!valid) continue;
        ++proxies;
        if (all_covered && n_observed < 0) n_observed = ns.front();
        c.expect(all_covered, "proxy " + std::to_string(proxies) +
                                  " not covered for all tested n");
    }
    c.expect(proxies == 20, "could not assemble 20 budget-satisfying proxies");
    std::printf("       N_observed = %d over n in {10, 12}\n", n_observed);
    c.finish();
}

void criterion8_dimension(const SurfaceGroup& S, const CensusSlice& census12) {
    Criterion c("8. dimension phenomenon and bounds");
    const std::vector<double> scales = {0.3, 0.15, 0.075, 0.0375};

    std::uint64_t state = 888888;
    std::vector<HPoint> surf_pts;
    for (int i = 0; i < 12000; ++i) surf_pts.push_back(random_surface_point(S, state));
    const BoxDimension bd_surface = box_dimension(S, surf_pts, scales);
    c.expect(bd_surface.dimension >= 1.85 && bd_surface.dimension <= 2.05,
             "surface dimension " + std::to_string(bd_surface.dimension));

    auto curve_points = [&](const std::string& w, int n) {
        const TracedArc arc = trace_axis_period(S, S.word(w));
        std::vector<HPoint> pts;
        for (int i = 0; i < n; ++i) {
            const double t = arc.length * i / n;
            for (const ArcSegment& seg : arc.segments) {
                if (t >= seg.t0 && t < seg.t1 + 1e-12) {
                    pts.push_back(seg.point_at(t));
                    break;
                }
            }
        }
        return pts;
    };
    const BoxDimension bd_curve = box_dimension(S, curve_points("a", 12000), scales);
    c.expect(bd_curve.dimension >= 0.9 && bd_curve.dimension <= 1.1,
             "single geodesic dimension " + std::to_string(bd_curve.dimension));

    std::vector<std::string> simple;
    for (const auto& r : census12.records)
        if (r.self_intersections == 0 && r.length <= 10.0 + 1e-9)
            simple.push_back(r.word);
    std::vector<HPoint> union_pts;
    for (const std::string& w : simple) {
        const Isometry W = S.word(w);
        const int per = std::max<int>(
            8, static_cast<int>(std::ceil(translation_length(W) / 0.0375)));
        const auto s = curve_points(w, per);
        union_pts.insert(union_pts.end(), s.begin(), s.end());
    }
    const BoxDimension bd_simple = box_dimension(S, union_pts, scales);
    c.expect(bd_simple.dimension >= 0.8 && bd_simple.dimension <= 1.4,
             "simple union dimension " + std::to_string(bd_simple.dimension));
    std::printf("       dims: surface=%.3f geodesic=%.3f simple-union=%.3f (%zu curves)\n",
                bd_surface.dimension, bd_curve.dimension, bd_simple.dimension,
                simple.size());

    GrowthBound gb = S.growth;
    const GrowthFit fit = growth_check(census12, {4, 5, 6, 7, 8, 9, 10, 11, 12},
                                       {0.1, 0.2, 0.4}, gb);
    gb.a_X = fit.a_X;
    gb.a_x_fitted = true;
    const DimBound db = dim_bound_and_k0(gb, 0.1);
    c.expect(std::abs(mu_of_k(gb.a_X, db.k0) - 0.25) < 1e-9, "mu(k0) differs from 1/4");
    double prev = 1e300;
    for (double kk : {0.2, 0.1, 0.05, 0.01}) {
        const DimBound d2 = dim_bound_and_k0(gb, kk);
        c.expect(d2.dim_bound < prev, "dim bound not decreasing toward 1");
        c.expect(d2.dim_bound > 1.0, "dim bound fell to 1 or below");
        prev = d2.dim_bound;
    }
    c.expect(dim_bound_and_k0(gb, 1e-7).dim_bound < 1.0001,
             "dim bound does not approach 1 as k -> 0");
    c.finish();
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    std::printf("building reference surface and growth constants...\n");
    SurfaceGroup S = SurfaceGroup::build_genus2();
    HexagonDecomposition H = build_hexagons(S);
    S.growth.set_C(estimate_C(S, H, 2000, 20260810));
    const REstimate est = estimate_R(S, 0.1, 300, 20260811);
    S.growth.set_R_hat(est.R_hat);
    S.growth.r_hat_lower_bound_only = est.lower_bound_only;
    std::printf("  C=%.4f kappa=%.2f R_hat=%.3f (%d/%d closures) d=%.1f c_X=%.1f\n",
                S.growth.C, S.growth.kappa, S.growth.R_hat, est.successes,
                est.trials, S.growth.d, S.growth.c_X);

    std::printf("enumerating census to L = 12...\n");
    CensusOptions opts;
    const CensusSlice census12 = enumerate_census(S, 12.0, 1LL << 40, opts);
    std::printf("  %zu classes, complete=%d\n", census12.records.size(),
                (int)census12.complete);

    criterion1_kernel();
    criterion2_intersections(S, H);
    criterion3_closing(S);
    criterion4_census(S, census12);
    criterion5_growth(S, census12);
    criterion6_measures(S, census12);
    criterion7_covering(S, census12);
    criterion8_dimension(S, census12);

    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 8 criteria failed (total %.0fs)\n", g_failures, total);
    return g_failures == 0 ? 0 : 1;
}
