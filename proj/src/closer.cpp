#include "geocross/closer.hpp"

#include <cmath>
#include <random>

#include "geocross/intersect.hpp"
#include "geocross/words.hpp"

namespace geocross {

namespace {

// Candidate holonomies are kept factored as g_end * s: forming the product
// explicitly would square its entry magnitude and lose the determinant to
// cancellation on long arcs, while each factor applies accurately.

struct ClosureContext {
    const SurfaceGroup* S = nullptr;
    const TracedArc* arc = nullptr;
    HPoint p;                // arc start point
    HPoint E;                // arc endpoint in the cover
    double tauE = 0.0;       // forward tangent at the endpoint
    Geodesic cont;           // full cover geodesic of the arc
    double length = 0.0;
    Isometry g_end;          // crossing word product
};

ClosureContext make_context(const SurfaceGroup& S, const TracedArc& a) {
    ClosureContext ctx;
    ctx.S = &S;
    ctx.arc = &a;
    ctx.p = a.start.base;
    ctx.E = a.cover_point(a.length);
    ctx.tauE = tangent_angle(a.frame, a.length);
    ctx.cont = a.cover_geodesic();
    ctx.length = a.length;
    ctx.g_end = S.word(a.crossing_word);
    return ctx;
}

// derivative angle of the Mobius map A at z (A orientation preserving)
double mobius_derivative_arg(const Isometry& A, std::complex<double> z) {
    const std::complex<double> q = A.c * z + A.d;
    return std::arg(std::complex<double>(1.0, 0.0) / (q * q));
}

struct CandidateEval {
    bool qualifies = false;
    double beta = 0.0;
    double d1 = 0.0, d2 = 0.0;
    double trace_abs = 0.0;   // |trace| of the normalized candidate
    HPoint hp;
};

CandidateEval eval_candidate(const ClosureContext& ctx, const Isometry& s,
                             double eps) {
    CandidateEval out;
    const Isometry& g = ctx.g_end;
    // trace and determinant of g*s from accurate factors
    const double det = g.det() * s.det();
    if (!(det > 0.0)) return out;
    const double tr = (g.a * s.a + g.b * s.c) + (g.c * s.b + g.d * s.d);
    out.trace_abs = std::abs(tr) / std::sqrt(det);
    if (out.trace_abs <= 2.0 + 1e-6) return out;
    out.hp = g.apply(s.apply(ctx.p));
    out.beta = hyp_dist(ctx.E, out.hp);
    if (out.beta < 1e-9) {
        out.qualifies = true;
        return out;
    }
    out.d1 = angle_diff(ctx.tauE, direction_to(ctx.E, out.hp));
    if (out.d1 > eps) return out;
    // forward tangent of beta at its far end vs the transported start frame:
    // the frame direction is the derivative of g o s o frame at the standard
    // base, accumulated factor by factor
    const double fwd = std::fmod(direction_to(out.hp, ctx.E) + kPi, 2.0 * kPi);
    const std::complex<double> z0(0.0, 1.0);
    const Isometry& F = ctx.arc->frame;
    const std::complex<double> z1 = F.apply(z0);
    const std::complex<double> z2 = s.apply(z1);
    double ang = mobius_derivative_arg(F, z0) + mobius_derivative_arg(s, z1) +
                 mobius_derivative_arg(g, z2) + kPi / 2.0;   // arg of i
    ang = std::fmod(ang, 2.0 * kPi);
    if (ang < 0.0) ang += 2.0 * kPi;
    out.d2 = angle_diff(fwd, ang);
    if (out.d2 > eps) return out;
    out.qualifies = true;
    return out;
}

// normalized candidate matrix, using the factored determinant
Isometry candidate_matrix(const ClosureContext& ctx, const Isometry& s) {
    const Isometry& g = ctx.g_end;
    const double scale = 1.0 / std::sqrt(g.det() * s.det());
    Isometry h(g.a * s.a + g.b * s.c, g.a * s.b + g.b * s.d,
               g.c * s.a + g.d * s.c, g.c * s.b + g.d * s.d);
    h.a *= scale; h.b *= scale; h.c *= scale; h.d *= scale;
    if (h.a < 0.0 || (h.a == 0.0 && h.b < 0.0)) {
        h.a = -h.a; h.b = -h.b; h.c = -h.c; h.d = -h.d;
    }
    return h;
}

double fellow_travel(const ClosureContext& ctx, const Geodesic& axis, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = ctx.length * i / (samples - 1);
        worst = std::max(worst, axis.dist_to(ctx.arc->cover_point(t)));
    }
    return worst;
}

struct SearchState {
    const ClosureContext* ctx = nullptr;
    const CloserConfig* cfg = nullptr;
    double eps = 0.0;
    long long nodes = 0;
    bool found = false;
    Isometry best_h;
    std::string best_suffix;
    CandidateEval best_eval;
    double best_ft = 0.0;
};

// DFS over reduced suffixes, keeping the qualifying candidate with the
// shortest closing arc (ShortLex breaks ties through the visit order);
// subtrees that can neither reach the forward cone nor beat the current
// best are cut
void dfs(SearchState& st, const Isometry& s, const std::string& suffix, int depth,
         int max_depth) {
    ++st.nodes;
    const CandidateEval ev = eval_candidate(*st.ctx, s, st.eps);
    if (ev.qualifies && (!st.found || ev.beta < st.best_eval.beta - 1e-12)) {
        const Isometry h = candidate_matrix(*st.ctx, s);
        const double ft = fellow_travel(*st.ctx, axis_of(h).geo, st.cfg->ft_samples);
        if (ft <= 1.0) {
            st.found = true;
            st.best_h = h;
            st.best_suffix = suffix;
            st.best_eval = ev;
            st.best_ft = ft;
        }
    }
    if (depth == max_depth) return;
    if (ev.trace_abs == 0.0 && !(s.det() > 0.25)) return;   // numerically spent
    const int rem = max_depth - depth;
    const HPoint hp = st.ctx->g_end.apply(s.apply(st.ctx->p));
    const double dgeo = st.ctx->cont.dist_to(hp);
    const std::complex<double> w = st.ctx->arc->frame.inverse().apply(hp.z());
    const double tpar = std::log(std::abs(w));
    const double gap = (st.ctx->length - 1.0) - tpar;
    double need = std::max(dgeo - st.cfg->beam_slack, gap - st.cfg->beam_slack);
    if (st.found) {
        const double to_E = hyp_dist(hp, st.ctx->E);
        need = std::max(need, to_E - st.best_eval.beta);
    }
    if (need > st.cfg->beam_step * rem) return;
    for (const char* ch = words::kLetters; *ch; ++ch) {
        if (!suffix.empty() && suffix.back() == words::inverse_letter(*ch)) continue;
        dfs(st, (s * st.ctx->S->generator(*ch)).normalized(), suffix + *ch,
            depth + 1, max_depth);
    }
}

} // namespace

ClosingCertificate close_arc(const SurfaceGroup& S, const TracedArc& a,
                             double eps, const CloserConfig& cfg) {
    if (a.length < 3.0)
        throw std::invalid_argument("close_arc: arc length must be >= 3");
    const ClosureContext ctx = make_context(S, a);
    SearchState st;
    st.ctx = &ctx;
    st.cfg = &cfg;
    st.eps = eps;
    ClosingCertificate cert;
    cert.eps = eps;
    dfs(st, Isometry::identity(), "", 0, cfg.radius);
    cert.nodes_visited = st.nodes;
    if (!st.found) {
        // best effort: report the plain crossing word as the failed candidate
        cert.success = false;
        cert.word = words::free_reduce(a.crossing_word);
        if (ctx.g_end.is_hyperbolic(1e-6)) {
            cert.closed_length = translation_length(ctx.g_end);
            const auto ev = eval_candidate(ctx, Isometry::identity(), 2.0 * kPi);
            cert.beta_length = ev.beta;
            cert.angle_deficits = {ev.d1, ev.d2};
            cert.fellow_travel_distance =
                fellow_travel(ctx, axis_of(ctx.g_end).geo, cfg.ft_samples);
        }
        return cert;
    }
    cert.success = true;
    cert.word = words::free_reduce(a.crossing_word + st.best_suffix);
    cert.closed_length = translation_length(st.best_h);
    cert.fellow_travel_distance = st.best_ft;
    cert.angle_deficits = {st.best_eval.d1, st.best_eval.d2};
    cert.beta_length = st.best_eval.beta;
    const std::string cyc = words::cyclic_reduce(cert.word);
    if (!cyc.empty()) {
        cert.intersection_count = closed_self_intersection(S, cyc).count;
    }
    return cert;
}

std::pair<double, double> angle_deficit_of_closure(const SurfaceGroup& S,
                                                   const TracedArc& a,
                                                   const std::string& w) {
    const ClosureContext ctx = make_context(S, a);
    // express the candidate as crossing word * suffix
    const Isometry s = (ctx.g_end.inverse() * S.word(w)).normalized();
    const CandidateEval ev = eval_candidate(ctx, s, 2.0 * kPi);
    if (ev.trace_abs <= 2.0 + 1e-6)
        throw std::invalid_argument("angle_deficit_of_closure: non-hyperbolic word");
    return {ev.d1, ev.d2};
}

UnitTangent random_frame(const SurfaceGroup& S, std::uint64_t& state) {
    std::mt19937_64 rng(state);
    std::uniform_real_distribution<double> ux(-1.6, 1.6);
    std::uniform_real_distribution<double> ulogy(-1.1, 1.1);
    std::uniform_real_distribution<double> uang(0.0, 2.0 * kPi);
    for (;;) {
        const HPoint p(ux(rng), std::exp(ulogy(rng)));
        const double th = uang(rng);
        if (S.inside(p, -1e-9)) {
            state = rng();
            return UnitTangent(p, th);
        }
    }
}

REstimate estimate_R(const SurfaceGroup& S, double eps, int trials,
                     std::uint64_t seed, const CloserConfig& cfg) {
    if (trials < 20)
        throw std::invalid_argument("estimate_R: needs at least 20 trials");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ulen(5.0, 20.0);
    REstimate est;
    est.trials = trials;
    std::uint64_t state = rng();
    for (int t = 0; t < trials; ++t) {
        const UnitTangent v = random_frame(S, state);
        const double l = ulen(rng);
        const TracedArc arc = trace(S, v, l);
        const ClosingCertificate cert = close_arc(S, arc, eps, cfg);
        if (cert.success) {
            ++est.successes;
            est.R_hat = std::max(est.R_hat, cert.beta_length);
        } else {
            est.lower_bound_only = true;
        }
    }
    return est;
}

} // namespace geocross
