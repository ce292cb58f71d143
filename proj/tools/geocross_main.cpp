// Command-line front end: build/serialize the surface, run censuses, trace
// arcs, close arcs, build covers, and run the measure/dimension experiments.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "geocross/census.hpp"
#include "geocross/closer.hpp"
#include "geocross/cover.hpp"
#include "geocross/intersect.hpp"
#include "geocross/surface.hpp"
#include "geocross/tracer.hpp"
#include "geocross/words.hpp"

using json = nlohmann::json;
using namespace geocross;

namespace {

struct RunConfig {
    std::string surface_path;
    std::string census_path;
    std::string out;
    std::uint64_t seed = 20260810;
    double max_length = 12.0;
    int max_word_length = 96;
    int closer_radius = 9;
    double eps = 0.1;
    int c_samples = 2000;
    int r_trials = 300;
    long long mc_samples = 20000;

    json echo() const {
        return json{{"surface", surface_path}, {"census", census_path},
                    {"out", out},              {"seed", seed},
                    {"max_length", max_length}, {"max_word_length", max_word_length},
                    {"closer_radius", closer_radius}, {"eps", eps},
                    {"c_samples", c_samples},  {"r_trials", r_trials},
                    {"mc_samples", mc_samples}};
    }
};

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    in >> j;
    if (j.contains("surface")) cfg.surface_path = j["surface"];
    if (j.contains("census")) cfg.census_path = j["census"];
    if (j.contains("out")) cfg.out = j["out"];
    if (j.contains("seed")) cfg.seed = j["seed"];
    if (j.contains("max_length")) cfg.max_length = j["max_length"];
    if (j.contains("max_word_length")) cfg.max_word_length = j["max_word_length"];
    if (j.contains("closer_radius")) cfg.closer_radius = j["closer_radius"];
    if (j.contains("eps")) cfg.eps = j["eps"];
    if (j.contains("c_samples")) cfg.c_samples = j["c_samples"];
    if (j.contains("r_trials")) cfg.r_trials = j["r_trials"];
    if (j.contains("mc_samples")) cfg.mc_samples = j["mc_samples"];
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

SurfaceGroup load_or_build_surface(const RunConfig& cfg) {
    if (!cfg.surface_path.empty())
        return SurfaceGroup::deserialize(read_file(cfg.surface_path));
    SurfaceGroup S = SurfaceGroup::build_genus2();
    HexagonDecomposition H = build_hexagons(S);
    S.growth.set_C(estimate_C(S, H, cfg.c_samples, cfg.seed));
    CloserConfig ccfg;
    ccfg.radius = cfg.closer_radius;
    const REstimate est = estimate_R(S, cfg.eps, cfg.r_trials, cfg.seed + 1, ccfg);
    S.growth.set_R_hat(est.R_hat);
    S.growth.r_hat_lower_bound_only = est.lower_bound_only;
    const CensusSlice small = enumerate_census(S, 4.0, 1LL << 40);
    S.growth.injectivity_radius =
        small.records.empty() ? 0.0 : small.records.front().length / 2.0;
    return S;
}

json report_header(const char* command, const RunConfig& cfg) {
    return json{{"schema", "geocross-report-v1"},
                {"command", command},
                {"config", cfg.echo()}};
}

int emit_report(json& rep, const std::vector<std::string>& violations,
                const std::string& out_path) {
    rep["violations"] = violations;
    rep["ok"] = violations.empty();
    const std::string text = rep.dump(2) + "\n";
    if (!out_path.empty()) write_file(out_path, text);
    std::cout << text;
    return violations.empty() ? 0 : 1;
}

// ---------------------------------------------------------------- surface

int cmd_surface(const RunConfig& cfg) {
    SurfaceGroup S = load_or_build_surface(cfg);
    const std::string text = S.serialize();
    if (!cfg.out.empty()) write_file(cfg.out, text);
    json rep = report_header("surface", cfg);
    rep["surface_hash"] = S.hash();
    rep["area_numeric"] = S.area_numeric(1 << 16);
    rep["growth"] = {{"C", S.growth.C},         {"kappa", S.growth.kappa},
                     {"R_hat", S.growth.R_hat}, {"d", S.growth.d},
                     {"c_X", S.growth.c_X},
                     {"injectivity_radius", S.growth.injectivity_radius},
                     {"r_hat_lower_bound_only", S.growth.r_hat_lower_bound_only}};
    std::vector<std::string> violations;
    if (std::abs(S.area_numeric(1 << 16) - 4.0 * kPi) > 1e-6)
        violations.push_back("surface area differs from 4 pi");
    return emit_report(rep, violations, "");
}

// ----------------------------------------------------------------- census

int cmd_census(const RunConfig& cfg, double L, long long K) {
    const SurfaceGroup S = load_or_build_surface(cfg);
    CensusOptions opts;
    opts.length_guard = std::max(cfg.max_length, 14.0);
    opts.max_depth = cfg.max_word_length;
    const CensusSlice slice = enumerate_census(S, L, K, opts);
    const std::string text = save_census(slice);
    if (!cfg.out.empty()) write_file(cfg.out, text);
    else std::cout << text;
    json rep = report_header("census", cfg);
    rep["L"] = L;
    rep["K"] = K;
    rep["classes"] = slice.records.size();
    rep["complete"] = slice.complete;
    std::cerr << rep.dump(2) << "\n";
    return slice.complete ? 0 : 1;
}

// ------------------------------------------------------------------ trace

int cmd_trace(const RunConfig& cfg, double x, double y, double angle, double len) {
    const SurfaceGroup S = load_or_build_surface(cfg);
    const TracedArc arc = trace(S, UnitTangent(HPoint(x, y), angle), len);
    std::ostringstream os;
    os.precision(16);
    os << "frame " << x << " " << y << " " << angle << "\n";
    os << "length " << len << "\n";
    os << "crossing_word " << (arc.crossing_word.empty() ? "-" : arc.crossing_word)
       << "\n";
    os << "perturbed " << (arc.perturbed ? 1 : 0) << "\n";
    for (const ArcSegment& seg : arc.segments) {
        os << "segment " << seg.t0 << " " << seg.t1 << " " << seg.start.x << " "
           << seg.start.y << " " << seg.end.x << " " << seg.end.y << "\n";
    }
    if (!cfg.out.empty()) write_file(cfg.out, os.str());
    else std::cout << os.str();
    return 0;
}

// -------------------------------------------------------------- close-arc

int cmd_close_arc(const RunConfig& cfg, double x, double y, double angle,
                  double len) {
    const SurfaceGroup S = load_or_build_surface(cfg);
    const TracedArc arc = trace(S, UnitTangent(HPoint(x, y), angle), len);
    CloserConfig ccfg;
    ccfg.radius = cfg.closer_radius;
    const ClosingCertificate cert = close_arc(S, arc, cfg.eps, ccfg);
    json rep = report_header("close-arc", cfg);
    rep["certificate"] = {
        {"word", cert.word},
        {"closed_length", cert.closed_length},
        {"fellow_travel_distance", cert.fellow_travel_distance},
        {"angle_deficits", {cert.angle_deficits.first, cert.angle_deficits.second}},
        {"beta_length", cert.beta_length},
        {"intersection_count", cert.intersection_count},
        {"success", cert.success},
        {"eps", cert.eps}};
    std::vector<std::string> violations;
    if (!cert.success) violations.push_back("closure search exhausted");
    return emit_report(rep, violations, cfg.out);
}

// ------------------------------------------------------------------ cover

int cmd_cover(const RunConfig& cfg, int n, double k) {
    const SurfaceGroup S = load_or_build_surface(cfg);
    if (cfg.census_path.empty())
        throw std::runtime_error("cover: requires --census (needs L >= n)");
    const CensusSlice census = load_census(read_file(cfg.census_path), S);
    auto f = [k](double l) { return (k * l) * (k * l); };
    const CoverSpec cover = build_cover(census, n, f, S.growth);
    const MeasureReport leb = lebesgue_measure(S, cover, cfg.mc_samples, cfg.seed);
    const CoverSpec ballcover = build_cover(census, n, f, S.growth, CoverKind::ball);
    const MeasureReport h15 = hausdorff_measure(ballcover, 1.5);
    json rep = report_header("cover", cfg);
    rep["n"] = n;
    rep["k"] = k;
    rep["epsilon"] = cover.epsilon;
    rep["K"] = cover.K;
    rep["members"] = cover.members.size();
    rep["lebesgue"] = {{"bound", leb.lebesgue_bound},
                       {"mc", leb.lebesgue_mc},
                       {"stderr", leb.lebesgue_stderr},
                       {"samples", leb.mc_samples}};
    rep["hausdorff_h15"] = {{"value", h15.hausdorff_h}, {"ball_count", h15.ball_count}};
    std::vector<std::string> violations;
    if (leb.lebesgue_mc > leb.lebesgue_bound + 3.0 * leb.lebesgue_stderr)
        violations.push_back("MC estimate exceeds the analytic bound beyond 3 sigma");
    return emit_report(rep, violations, cfg.out);
}

// -------------------------------------------------------------- dimension

std::vector<HPoint> geodesic_samples(const SurfaceGroup& S, const std::string& word,
                                     int n) {
    const TracedArc arc = trace_axis_period(S, S.word(word));
    std::vector<HPoint> pts;
    pts.reserve(n);
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
}

int cmd_dimension(const RunConfig& cfg, const std::string& what,
                  const std::string& csv_path) {
    const SurfaceGroup S = load_or_build_surface(cfg);
    const std::vector<double> scales = {0.3, 0.15, 0.075, 0.0375};
    std::vector<HPoint> pts;
    if (what == "surface") {
        std::uint64_t state = cfg.seed;
        for (int i = 0; i < 12000; ++i) pts.push_back(random_surface_point(S, state));
    } else if (what == "geodesic") {
        pts = geodesic_samples(S, "a", 12000);
    } else if (what == "simple") {
        if (cfg.census_path.empty())
            throw std::runtime_error("dimension simple: requires --census");
        const CensusSlice census = load_census(read_file(cfg.census_path), S);
        std::vector<std::string> simple;
        for (const auto& r : census.records)
            if (r.self_intersections == 0 && r.length <= 10.0 + 1e-9)
                simple.push_back(r.word);
        if (simple.empty()) throw std::runtime_error("no simple geodesics in census");
        for (const std::string& w : simple) {
            const int per = std::max<int>(
                8, static_cast<int>(std::ceil(
                       translation_length(S.word(w)) / 0.0375)));
            const auto s = geodesic_samples(S, w, per);
            pts.insert(pts.end(), s.begin(), s.end());
        }
    } else {
        throw std::runtime_error("dimension: what must be surface|geodesic|simple");
    }
    const BoxDimension bd = box_dimension(S, pts, scales);
    json rep = report_header("dimension", cfg);
    rep["what"] = what;
    rep["dimension"] = bd.dimension;
    rep["scales"] = bd.scales;
    rep["counts"] = bd.counts;
    if (!csv_path.empty()) {
        std::ostringstream os;
        os << "scale,count\n";
        for (size_t i = 0; i < bd.scales.size(); ++i)
            os << bd.scales[i] << "," << bd.counts[i] << "\n";
        write_file(csv_path, os.str());
    }
    std::vector<std::string> violations;
    return emit_report(rep, violations, cfg.out);
}

// ------------------------------------------------------------- experiment

int experiment_measure_decay(const RunConfig& cfg, const SurfaceGroup& S,
                             const CensusSlice& census) {
    const double k = 0.05;
    auto f = [k](double l) { return (k * l) * (k * l); };
    json rep = report_header("experiment/measure-decay", cfg);
    std::vector<std::string> violations;
    json rows = json::array();
    double prev_mc = 1e300;
    bool monotone = true;
    for (int n : {6, 8, 10, 12}) {
        const CoverSpec cover = build_cover(census, n, f, S.growth);
        const MeasureReport leb =
            lebesgue_measure(S, cover, cfg.mc_samples, cfg.seed + n);
        rows.push_back({{"n", n},
                        {"members", cover.members.size()},
                        {"epsilon", cover.epsilon},
                        {"per_member_bound", 5.0 * n * std::exp(-n / 4.0)},
                        {"bound", leb.lebesgue_bound},
                        {"mc", leb.lebesgue_mc},
                        {"stderr", leb.lebesgue_stderr}});
        if (leb.lebesgue_mc > leb.lebesgue_bound + 3.0 * leb.lebesgue_stderr)
            violations.push_back("n=" + std::to_string(n) +
                                 ": MC exceeds bound beyond 3 sigma");
        if (leb.lebesgue_mc >= prev_mc) monotone = false;
        prev_mc = leb.lebesgue_mc;
    }
    rep["k"] = k;
    rep["rows"] = rows;
    rep["mc_strictly_decreasing"] = monotone;
    if (!monotone)
        violations.push_back("lambda(C_n) MC estimates are not strictly decreasing");
    return emit_report(rep, violations, cfg.out);
}

int experiment_dimension(const RunConfig& cfg, const SurfaceGroup& S,
                         const CensusSlice& census) {
    json rep = report_header("experiment/dimension", cfg);
    std::vector<std::string> violations;
    const std::vector<double> scales = {0.3, 0.15, 0.075, 0.0375};

    std::uint64_t state = cfg.seed;
    std::vector<HPoint> surf_pts;
    for (int i = 0; i < 12000; ++i) surf_pts.push_back(random_surface_point(S, state));
    const BoxDimension bd_surface = box_dimension(S, surf_pts, scales);

    const BoxDimension bd_curve =
        box_dimension(S, geodesic_samples(S, "a", 12000), scales);

    std::vector<std::string> simple;
    for (const auto& r : census.records)
        if (r.self_intersections == 0 && r.length <= 10.0 + 1e-9)
            simple.push_back(r.word);
    std::vector<HPoint> union_pts;
    for (const std::string& w : simple) {
        const int per = std::max<int>(
            8, static_cast<int>(std::ceil(
                   translation_length(S.word(w)) / 0.0375)));
        const auto s = geodesic_samples(S, w, per);
        union_pts.insert(union_pts.end(), s.begin(), s.end());
    }
    const BoxDimension bd_simple = box_dimension(S, union_pts, scales);

    GrowthBound gb = S.growth;
    std::vector<int> ns;
    for (int n = 4; n <= static_cast<int>(census.L + 1e-9); ++n) ns.push_back(n);
    const GrowthFit fit = growth_check(census, ns, {0.1, 0.2, 0.4}, gb);
    gb.a_X = fit.a_X;
    gb.a_x_fitted = true;
    json dims = json::array();
    for (double k : {0.2, 0.1, 0.05, 0.01}) {
        const DimBound db = dim_bound_and_k0(gb, k);
        dims.push_back({{"k", k}, {"dim_bound", db.dim_bound}, {"mu", db.mu},
                        {"k0", db.k0}});
    }
    rep["surface_dimension"] = bd_surface.dimension;
    rep["geodesic_dimension"] = bd_curve.dimension;
    rep["simple_union_dimension"] = bd_simple.dimension;
    rep["simple_curves"] = simple.size();
    rep["a_X"] = fit.a_X;
    rep["dim_bounds"] = dims;
    if (bd_surface.dimension < 1.85 || bd_surface.dimension > 2.05)
        violations.push_back("surface dimension outside [1.85, 2.05]");
    if (bd_curve.dimension < 0.9 || bd_curve.dimension > 1.1)
        violations.push_back("single-geodesic dimension outside [0.9, 1.1]");
    if (bd_simple.dimension < 0.8 || bd_simple.dimension > 1.4)
        violations.push_back("simple-union dimension outside [0.8, 1.4]");
    return emit_report(rep, violations, cfg.out);
}

int experiment_covering(const RunConfig& cfg, const SurfaceGroup& S,
                        const CensusSlice& census) {
    json rep = report_header("experiment/covering", cfg);
    std::vector<std::string> violations;
    auto f = [](double l) { return l; };
    const double L = 5.0;
    CloserConfig ccfg;
    ccfg.radius = cfg.closer_radius;
    std::uint64_t state = cfg.seed;
    json rows = json::array();
    int n_observed = -1;
    const std::vector<int> ns = {10, 12};
    int proxies_done = 0;
    int draws = 0;
    while (proxies_done < 20 && draws < 400) {
        ++draws;
        const UnitTangent v = random_frame(S, state);
        const GeodesicSpec g(S, v);
        bool all_true = true;
        json row;
        bool ok = true;
        for (int n : ns) {
            try {
                const CoveringReport cr =
                    covering_check(S, census, g, f, L, n, S.growth, ccfg);
                row["n" + std::to_string(n)] = {
                    {"outcome", cr.outcome == CoveringOutcome::covered
                                    ? "covered"
                                    : (cr.outcome == CoveringOutcome::not_covered
                                           ? "not_covered"
                                           : "inconclusive")},
                    {"member_distance", cr.member_distance},
                    {"witness_distance", cr.witness_distance},
                    {"lambert", cr.lambert}};
                if (cr.outcome != CoveringOutcome::covered) all_true = false;
                if (cr.closure.success && !cr.witness_ok)
                    violations.push_back("witness exceeds the Lambert bound");
            } catch (const std::invalid_argument&) {
                ok = false;   // proxy violated the budget; draw another
                break;
            }
        }
        if (!ok) continue;
        ++proxies_done;
        rows.push_back(row);
        if (all_true && n_observed < 0) n_observed = ns.front();
        if (!all_true) violations.push_back("proxy not covered at some n");
    }
    rep["rows"] = rows;
    rep["proxies"] = proxies_done;
    rep["N_observed"] = n_observed;
    return emit_report(rep, violations, cfg.out);
}

int cmd_experiment(const RunConfig& cfg, const std::string& name) {
    const SurfaceGroup S = load_or_build_surface(cfg);
    if (cfg.census_path.empty())
        throw std::runtime_error("experiment: requires --census");
    const CensusSlice census = load_census(read_file(cfg.census_path), S);
    if (name == "measure-decay") return experiment_measure_decay(cfg, S, census);
    if (name == "dimension") return experiment_dimension(cfg, S, census);
    if (name == "covering") return experiment_covering(cfg, S, census);
    throw std::runtime_error("experiment: unknown name " + name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geodesic self-intersection experiments on a genus-2 surface"};
    app.require_subcommand(1);
    app.fallthrough();   // global options may follow the subcommand name

    RunConfig cfg;
    // a config file provides defaults; explicit flags override them
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                load_config_file(argv[i + 1], cfg);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
        }
    }
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--surface", cfg.surface_path, "surface file");
    app.add_option("--census", cfg.census_path, "census file");
    app.add_option("--out", cfg.out, "output path");

    auto* sc_surface = app.add_subcommand("surface", "build the reference surface");
    sc_surface->add_option("--c-samples", cfg.c_samples, "estimate_C samples");
    sc_surface->add_option("--r-trials", cfg.r_trials, "estimate_R trials");

    double arg_L = 8.0;
    long long arg_K = 1LL << 40;
    auto* sc_census = app.add_subcommand("census", "enumerate closed geodesics");
    sc_census->add_option("--max-length", arg_L, "length bound L");
    sc_census->add_option("--max-intersections", arg_K, "intersection bound K");

    double arg_x = 0.0, arg_y = 1.0, arg_angle = 0.7, arg_len = 8.0;
    auto* sc_trace = app.add_subcommand("trace", "trace a geodesic arc");
    sc_trace->add_option("--x", arg_x);
    sc_trace->add_option("--y", arg_y);
    sc_trace->add_option("--angle", arg_angle);
    sc_trace->add_option("--length", arg_len);

    auto* sc_close = app.add_subcommand("close-arc", "close an arc into a geodesic");
    sc_close->add_option("--x", arg_x);
    sc_close->add_option("--y", arg_y);
    sc_close->add_option("--angle", arg_angle);
    sc_close->add_option("--length", arg_len);
    sc_close->add_option("--eps", cfg.eps);
    sc_close->add_option("--radius", cfg.closer_radius);

    int arg_n = 8;
    double arg_k = 0.05;
    auto* sc_cover = app.add_subcommand("cover", "build a cover and measure it");
    sc_cover->add_option("--n", arg_n);
    sc_cover->add_option("--k", arg_k);

    std::string arg_what = "surface", arg_csv;
    auto* sc_dim = app.add_subcommand("dimension", "box dimension estimates");
    sc_dim->add_option("--what", arg_what, "surface|geodesic|simple");
    sc_dim->add_option("--csv", arg_csv, "scale,count CSV output");

    std::string arg_name = "measure-decay";
    auto* sc_exp = app.add_subcommand("experiment", "run a named experiment");
    sc_exp->add_option("--name", arg_name, "measure-decay|dimension|covering");

    CLI11_PARSE(app, argc, argv);
    try {
        if (sc_surface->parsed()) return cmd_surface(cfg);
        if (sc_census->parsed()) return cmd_census(cfg, arg_L, arg_K);
        if (sc_trace->parsed()) return cmd_trace(cfg, arg_x, arg_y, arg_angle, arg_len);
        if (sc_close->parsed())
            return cmd_close_arc(cfg, arg_x, arg_y, arg_angle, arg_len);
        if (sc_cover->parsed()) return cmd_cover(cfg, arg_n, arg_k);
        if (sc_dim->parsed()) return cmd_dimension(cfg, arg_what, arg_csv);
        if (sc_exp->parsed()) return cmd_experiment(cfg, arg_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
