#include "geocross/census.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "geocross/intersect.hpp"
#include "geocross/words.hpp"

namespace geocross {

namespace {

// boundary circle coordinates: angle of (x - i)/(x + i); infinity maps to 0
double bd_angle(double x) {
    const std::complex<double> w = (std::complex<double>(x, -1.0)) /
                                   (std::complex<double>(x, 1.0));
    double a = std::arg(w);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

using ArcList = std::vector<std::pair<double, double>>;   // ccw arcs, hi may exceed 2pi

std::pair<double, double> arc_between(double a1, double a2, double contains) {
    const double lo = std::min(a1, a2), hi = std::max(a1, a2);
    double c = std::fmod(contains, 2.0 * kPi);
    if (c < 0.0) c += 2.0 * kPi;
    if (lo <= c && c <= hi) return {lo, hi};
    return {hi, lo + 2.0 * kPi};
}

ArcList arc_intersect(const ArcList& arcs, std::pair<double, double> b) {
    ArcList out;
    for (const auto& [lo, hi] : arcs) {
        for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
            const double l2 = b.first + shift, h2 = b.second + shift;
            const double lo3 = std::max(lo, l2), hi3 = std::min(hi, h2);
            if (lo3 < hi3 - 1e-13) out.push_back({lo3, hi3});
        }
    }
    return out;
}

// boundary arc on the far side of a gate geodesic from z_ref
std::pair<double, double> far_arc(const Geodesic& g, const HPoint& z_ref) {
    if (g.vertical) {
        const double probe = z_ref.x < g.c ? g.c + 1.0 : g.c - 1.0;
        return arc_between(bd_angle(g.c), 0.0 /* infinity */, bd_angle(probe));
    }
    const double a1 = bd_angle(g.c - g.r), a2 = bd_angle(g.c + g.r);
    const bool ref_inside = std::hypot(z_ref.x - g.c, z_ref.y) < g.r;
    const double probe = ref_inside ? g.c + 2.0 * g.r : g.c;
    return arc_between(a1, a2, bd_angle(probe));
}

struct BeamSearch {
    const SurfaceGroup* S = nullptr;
    double L = 0.0;
    const CensusOptions* opts = nullptr;
    HPoint o;
    double Rd = 0.0;
    double cosh_half_L = 0.0;
    long long nodes = 0;
    bool guard_hit = false;
    std::map<std::string, double> found;   // canonical word -> length
    std::set<std::string> seen_cyclic;     // cheap pre-dedup of raw emissions

    void emit(const std::string& word, const Isometry& M) {
        const double tr = std::abs(M.trace());
        if (tr <= 2.0 + 1e-12 || tr / 2.0 > cosh_half_L) return;
        const double ell = 2.0 * std::acosh(tr / 2.0);
        if (ell > L + 1e-9) return;
        if (axis_of(M).geo.dist_to(o) > Rd + 0.55) return;
        const std::string cyc = words::cyclic_reduce(word);
        if (cyc.empty()) return;
        const std::string key = std::min(words::min_rotation(cyc),
                                         words::min_rotation(words::inverse_word(cyc)));
        if (!seen_cyclic.insert(key).second) return;
        const std::string cw = words::canonical_class(cyc);
        auto it = found.find(cw);
        if (it == found.end()) found.emplace(cw, ell);
    }

    void dfs(const Isometry& g, int entry_side, const ArcList& arcs,
             std::string& word, int depth) {
        if (++nodes > opts->node_limit || depth >= opts->max_depth) {
            guard_hit = true;
            return;
        }
        const HPoint z_ref = g.apply(o);
        for (int k = 0; k < 8; ++k) {
            if (k == entry_side) continue;
            const Geodesic gate = S->side_geodesic(k).transformed(g);
            const auto fa = far_arc(gate, z_ref);
            ArcList arcs2;
            if (word.empty()) arcs2 = {fa};
            else {
                arcs2 = arc_intersect(arcs, fa);
                if (arcs2.empty()) continue;
            }
            const char letter = S->crossing_letter(k);
            const Isometry g2 = (g * S->generator(letter)).normalized();
            if (hyp_dist(o, g2.apply(o)) - 2.0 * Rd > L + 0.05) continue;
            word.push_back(letter);
            emit(word, g2);
            dfs(g2, S->paired_side(k), arcs2, word, depth + 1);
            word.pop_back();
        }
    }
};

} // namespace

long long CensusSlice::count_upto(double length_bound, long long intersection_bound) const {
    long long n = 0;
    for (const auto& r : records) {
        if (r.length <= length_bound + 1e-9 && r.self_intersections <= intersection_bound)
            ++n;
    }
    return n;
}

CensusSlice enumerate_census(const SurfaceGroup& S, double L, long long K,
                             const CensusOptions& opts) {
    if (L > opts.length_guard)
        throw std::invalid_argument("enumerate_census: L exceeds the resource guard");
    BeamSearch bs;
    bs.S = &S;
    bs.L = L;
    bs.opts = &opts;
    bs.o = S.center();
    bs.Rd = S.circumradius();
    bs.cosh_half_L = std::cosh((L + 1e-9) / 2.0);
    std::string word;
    bs.dfs(Isometry::identity(), -1, {}, word, 0);

    CensusSlice slice;
    slice.L = L;
    slice.K = K;
    slice.surface_hash = S.hash();
    slice.complete = !bs.guard_hit;
    // order by length so primitive-root lookups can scan earlier records
    std::vector<std::pair<double, std::string>> ordered;
    ordered.reserve(bs.found.size());
    for (const auto& [cw, ell] : bs.found) ordered.push_back({ell, cw});
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [ell, cw] : ordered) {
        ClosedGeodesicRecord rec;
        rec.word = cw;
        rec.length = ell;
        rec.trace_abs = 2.0 * std::cosh(ell / 2.0);
        rec.root = cw;
        // a proper power u^m has its root u in the census at length ell/m
        const double shortest = slice.records.empty() ? ell : slice.records.front().length;
        for (int m = 2; m <= 64; ++m) {
            const double target = ell / m;
            if (target < shortest - 1e-8) break;
            bool done = false;
            for (const auto& prev : slice.records) {
                if (prev.length > target + 1e-8) break;
                if (std::abs(prev.length - target) > 1e-8) continue;
                std::string pw;
                for (int q = 0; q < m; ++q) pw += prev.word;
                if (words::canonical_class(pw) == cw) {
                    rec.primitive = false;
                    rec.root = prev.word;
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
        if (opts.compute_intersections) {
            rec.self_intersections = closed_self_intersection(S, cw).count;
            if (rec.self_intersections > K) continue;
        }
        slice.records.push_back(std::move(rec));
    }
    return slice;
}

std::string save_census(const CensusSlice& slice) {
    std::ostringstream os;
    os << "# format_version=1\n";
    os << "# surface_hash=" << std::hex << slice.surface_hash << std::dec << "\n";
    os << "# L=" << slice.L << "\n";
    os << "# K=" << slice.K << "\n";
    os << "# complete=" << (slice.complete ? 1 : 0) << "\n";
    os.precision(17);
    for (const auto& r : slice.records) {
        os << r.word << "," << r.trace_abs << "," << r.length << ","
           << r.self_intersections << "," << (r.primitive ? 1 : 0) << "\n";
    }
    return os.str();
}

CensusSlice load_census(const std::string& text, const SurfaceGroup& S) {
    std::istringstream is(text);
    std::string line;
    CensusSlice slice;
    bool have_hash = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string val = line.substr(eq + 1);
            if (key == "format_version") {
                if (val != "1") throw std::runtime_error("census file: unknown version");
            } else if (key == "surface_hash") {
                slice.surface_hash = std::stoull(val, nullptr, 16);
                have_hash = true;
            } else if (key == "L") slice.L = std::stod(val);
            else if (key == "K") slice.K = std::stoll(val);
            else if (key == "complete") slice.complete = val == "1";
            continue;
        }
        std::istringstream ls(line);
        ClosedGeodesicRecord r;
        std::string tok;
        std::getline(ls, r.word, ',');
        std::getline(ls, tok, ','); r.trace_abs = std::stod(tok);
        std::getline(ls, tok, ','); r.length = std::stod(tok);
        std::getline(ls, tok, ','); r.self_intersections = std::stoll(tok);
        std::getline(ls, tok, ','); r.primitive = tok == "1";
        r.root = r.word;
        slice.records.push_back(std::move(r));
    }
    if (!have_hash || slice.surface_hash != S.hash())
        throw std::runtime_error("census file: surface hash mismatch");
    return slice;
}

double mu_of_k(double a_X, double k, double factor) {
    return factor * a_X * k * std::log(a_X / k + a_X);
}

GrowthFit growth_check(const CensusSlice& master, const std::vector<int>& ns,
                       const std::vector<double>& ks, const GrowthBound& gb,
                       double factor) {
    if (!master.complete)
        throw std::invalid_argument("growth_check: refuses to fit on an incomplete slice");
    GrowthFit fit;
    fit.factor = factor;
    fit.ks = ks;
    fit.ns = ns;
    for (int n : ns) {
        if (n > master.L + 1e-9)
            throw std::invalid_argument("growth_check: slice does not cover requested n");
    }
    auto ok_for = [&](double a) {
        for (double k : ks) {
            const double mu = mu_of_k(a, k, factor);
            for (int n : ns) {
                const long long K = static_cast<long long>(gb.c_X * (k * n) * (k * n));
                const long long cnt = master.count_upto(n, K);
                if (cnt == 0) continue;
                if (mu * n < std::log(static_cast<double>(cnt))) return false;
            }
        }
        return true;
    };
    const double e = std::exp(1.0);
    double lo = e, hi = e;
    while (!ok_for(hi)) {
        hi *= 2.0;
        if (hi > 1e8) throw std::runtime_error("growth_check: fit diverged");
    }
    if (ok_for(lo)) {
        fit.a_X = e;   // desk-scale counts are already below the bound at a_X = e
    } else {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (ok_for(mid)) hi = mid; else lo = mid;
        }
        fit.a_X = hi;
    }
    for (double k : ks) fit.mu.push_back(mu_of_k(fit.a_X, k, factor));
    fit.slack.resize(ks.size());
    for (size_t i = 0; i < ks.size(); ++i) {
        for (int n : ns) {
            const long long K = static_cast<long long>(gb.c_X * (ks[i] * n) * (ks[i] * n));
            const long long cnt = master.count_upto(n, K);
            const double lc = cnt > 0 ? std::log(static_cast<double>(cnt)) : 0.0;
            fit.slack[i].push_back(fit.mu[i] * n - lc);
        }
    }
    fit.ok = true;
    return fit;
}

} // namespace geocross
