#include "geocross/surface.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <sstream>

namespace geocross {

int letter_index(char ch) {
    switch (ch) {
        case 'a': return 0; case 'b': return 1; case 'c': return 2; case 'd': return 3;
        case 'A': return 4; case 'B': return 5; case 'C': return 6; case 'D': return 7;
    }
    throw std::invalid_argument(std::string("letter_index: bad letter ") + ch);
}

const Isometry& SurfaceGroup::generator(char letter) const {
    return gens_[letter_index(letter)];
}

Isometry SurfaceGroup::word(const std::string& w) const {
    Isometry M;
    int k = 0;
    for (char ch : w) {
        M = M * generator(ch);
        if (++k % 32 == 0) M = M.normalized();
    }
    return M.normalized();
}

GeodesicSegment SurfaceGroup::side_segment(int k) const {
    return GeodesicSegment(verts_[k], verts_[(k + 1) % 8]);
}

SurfaceGroup SurfaceGroup::build_genus2() {
    SurfaceGroup S;
    // regular octagon of the {8,8} tiling, built in the disk and mapped to
    // the half-plane by z -> i(1+z)/(1-z)
    const double Rc = std::acosh(3.0 + 2.0 * std::sqrt(2.0));
    const double rd = std::tanh(Rc / 2.0);
    for (int k = 0; k < 8; ++k) {
        const double th = kPi / 8.0 + k * kPi / 4.0;
        const std::complex<double> zd = rd * std::complex<double>(std::cos(th), std::sin(th));
        const std::complex<double> zh =
            std::complex<double>(0.0, 1.0) * (1.0 + zd) / (1.0 - zd);
        S.verts_[k] = HPoint::from(zh);
    }
    const auto& v = S.verts_;
    // gluing realizing the relator [a,b][c,d]: a maps side 2 onto side 0,
    // b maps side 1 onto side 3, c maps side 6 onto side 4, d maps side 5
    // onto side 7
    const Isometry a = two_point_isometry(v[3], v[2], v[0], v[1]);
    const Isometry b = two_point_isometry(v[4], v[3], v[1], v[2]).inverse().normalized();
    const Isometry c = two_point_isometry(v[7], v[6], v[4], v[5]);
    const Isometry d = two_point_isometry(v[0], v[7], v[5], v[6]).inverse().normalized();
    S.gens_[0] = a; S.gens_[1] = b; S.gens_[2] = c; S.gens_[3] = d;
    S.gens_[4] = a.inverse().normalized(); S.gens_[5] = b.inverse().normalized();
    S.gens_[6] = c.inverse().normalized(); S.gens_[7] = d.inverse().normalized();
    S.finish_build(true);
    return S;
}

void SurfaceGroup::finish_build(bool validate) {
    circumradius_ = std::acosh(3.0 + 2.0 * std::sqrt(2.0));
    apothem_ = std::acosh(1.0 + std::sqrt(2.0));
    side_length_ = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    nbr_letter_ = {'a', 'B', 'A', 'b', 'c', 'D', 'C', 'd'};
    const HPoint o = center();
    for (int k = 0; k < 8; ++k) {
        side_geo_[k] = Geodesic::through(verts_[k], verts_[(k + 1) % 8]);
        inside_sign_[k] = side_geo_[k].side_value(o) > 0.0 ? 1.0 : -1.0;
    }
    // side crossed by letter L is entered through its paired side in the
    // new chamber: pair_side[k] = index of N_k^{-1}(side k)
    for (int k = 0; k < 8; ++k) {
        const Isometry Ninv = generator(nbr_letter_[k]).inverse();
        const HPoint w1 = Ninv.apply(verts_[k]);
        const HPoint w2 = Ninv.apply(verts_[(k + 1) % 8]);
        pair_side_[k] = -1;
        for (int j = 0; j < 8; ++j) {
            const HPoint& u1 = verts_[j];
            const HPoint& u2 = verts_[(j + 1) % 8];
            const bool fwd = hyp_dist(w1, u1) < 1e-6 && hyp_dist(w2, u2) < 1e-6;
            const bool rev = hyp_dist(w1, u2) < 1e-6 && hyp_dist(w2, u1) < 1e-6;
            if (fwd || rev) { pair_side_[k] = j; break; }
        }
        if (pair_side_[k] < 0)
            throw std::runtime_error("surface build: side pairing image is not a side");
    }
    if (validate) {
        const Isometry rel = word("abABcdCD");
        if (rel.dist_to(Isometry::identity()) > 1e-8)
            throw std::runtime_error("surface build: relator product is not the identity");
        for (int k = 0; k < 8; ++k) {
            const double ang = angle_diff(direction_to(verts_[k], verts_[(k + 1) % 8]),
                                          direction_to(verts_[k], verts_[(k + 7) % 8]));
            if (std::abs(ang - kPi / 4.0) > 1e-9)
                throw std::runtime_error("surface build: interior angle defect");
        }
    }
}

bool SurfaceGroup::inside(const HPoint& p, double tol) const {
    return boundary_violation(p) <= tol;
}

double SurfaceGroup::boundary_violation(const HPoint& p) const {
    double worst = -1e300;
    for (int k = 0; k < 8; ++k) {
        const double val = -inside_sign_[k] * side_geo_[k].side_value(p);
        worst = std::max(worst, val);
    }
    return worst;
}

std::pair<HPoint, Isometry> SurfaceGroup::normalize_point(const HPoint& p) const {
    HPoint q = p;
    Isometry g;
    for (int step = 0; step < 10000; ++step) {
        int worst = -1;
        double worst_val = 1e-13;
        for (int k = 0; k < 8; ++k) {
            const double val = -inside_sign_[k] * side_geo_[k].side_value(q);
            if (val > worst_val) { worst_val = val; worst = k; }
        }
        if (worst < 0) return {q, g};
        const Isometry Ninv = generator(nbr_letter_[worst]).inverse();
        q = Ninv.apply(q);
        g = (Ninv * g).normalized();
    }
    throw std::runtime_error("normalize_point: did not terminate");
}

double SurfaceGroup::area_numeric(int quad_points) const {
    // area = oint dx / y over the boundary (Green's theorem for dA = dx dy / y^2),
    // each side integrated in x with y(x) = sqrt(r^2 - (x-c)^2) by Simpson
    double total = 0.0;
    const int n_per_side = std::max(8, quad_points / 8);
    for (int k = 0; k < 8; ++k) {
        const Geodesic g = side_geo_[k];
        const HPoint A = verts_[k], B = verts_[(k + 1) % 8];
        const int m = n_per_side + (n_per_side % 2);
        const double h = (B.x - A.x) / m;
        double acc = 0.0;
        for (int i = 0; i <= m; ++i) {
            const double x = A.x + i * h;
            const double y2 = g.r * g.r - (x - g.c) * (x - g.c);
            const double f = 1.0 / std::sqrt(std::max(y2, 1e-300));
            const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * f;
        }
        total += acc * h / 3.0;
    }
    return std::abs(total);
}

std::vector<Isometry> SurfaceGroup::deck_ball(double radius) const {
    const HPoint o = center();
    auto key = [](const Isometry& M) {
        const Isometry n = M.normalized();
        const double s = std::max({1.0, std::abs(n.a), std::abs(n.b),
                                   std::abs(n.c), std::abs(n.d)});
        auto q = [&](double x) { return std::llround(x / s * 1e8); };
        return std::array<long long, 4>{q(n.a), q(n.b), q(n.c), q(n.d)};
    };
    std::map<std::array<long long, 4>, bool> seen;
    std::deque<Isometry> dq;
    std::vector<Isometry> out;
    Isometry id;
    seen[key(id)] = true;
    dq.push_back(id);
    out.push_back(id);
    while (!dq.empty()) {
        Isometry M = dq.front();
        dq.pop_front();
        for (int i = 0; i < 8; ++i) {
            Isometry M2 = (M * gens_[i]).normalized();
            if (hyp_dist(o, M2.apply(o)) > radius) continue;
            auto k = key(M2);
            if (seen.count(k)) continue;
            seen[k] = true;
            dq.push_back(M2);
            out.push_back(M2);
        }
    }
    return out;
}

const std::vector<std::string>& SurfaceGroup::pants_curve_words() {
    static const std::vector<std::string> w = {"a", "c", "abAB"};
    return w;
}

static std::string fmt16(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string SurfaceGroup::serialize() const {
    std::ostringstream os;
    os << "geocross-surface v1\n";
    os << "generators 4\n";
    for (char ch : std::string("abcd")) {
        const Isometry& g = generator(ch);
        os << ch << " " << fmt16(g.a) << " " << fmt16(g.b) << " "
           << fmt16(g.c) << " " << fmt16(g.d) << "\n";
    }
    os << "vertices 8\n";
    for (const HPoint& p : verts_) os << fmt16(p.x) << " " << fmt16(p.y) << "\n";
    os << "pants 3\n";
    for (const std::string& w : pants_curve_words()) os << w << "\n";
    os << "growth " << fmt16(growth.C) << " " << fmt16(growth.kappa) << " "
       << fmt16(growth.R_hat) << " " << fmt16(growth.d) << " " << fmt16(growth.c_X)
       << " " << fmt16(growth.a_X) << " " << fmt16(growth.injectivity_radius)
       << " " << (growth.r_hat_lower_bound_only ? 1 : 0)
       << " " << (growth.a_x_fitted ? 1 : 0) << "\n";
    return os.str();
}

SurfaceGroup SurfaceGroup::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "geocross-surface v1")
        throw std::runtime_error("surface file: bad header");
    std::string tok;
    int n = 0;
    is >> tok >> n;
    if (tok != "generators" || n != 4)
        throw std::runtime_error("surface file: bad generator block");
    SurfaceGroup S;
    for (int i = 0; i < 4; ++i) {
        char ch;
        double a, b, c, d;
        is >> ch >> a >> b >> c >> d;
        S.gens_[letter_index(ch)] = Isometry(a, b, c, d);
    }
    for (int i = 0; i < 4; ++i)
        S.gens_[4 + i] = S.gens_[i].inverse().normalized();
    is >> tok >> n;
    if (tok != "vertices" || n != 8)
        throw std::runtime_error("surface file: bad vertex block");
    for (int i = 0; i < 8; ++i) {
        double x, y;
        is >> x >> y;
        S.verts_[i] = HPoint(x, y);
    }
    is >> tok >> n;
    if (tok != "pants" || n != 3)
        throw std::runtime_error("surface file: bad pants block");
    for (int i = 0; i < 3; ++i) is >> tok;
    is >> tok;
    if (tok != "growth") throw std::runtime_error("surface file: bad growth block");
    int lb = 0, fitted = 0;
    is >> S.growth.C >> S.growth.kappa >> S.growth.R_hat >> S.growth.d >>
        S.growth.c_X >> S.growth.a_X >> S.growth.injectivity_radius >> lb >> fitted;
    S.growth.r_hat_lower_bound_only = lb != 0;
    S.growth.a_x_fitted = fitted != 0;
    S.finish_build(true);
    return S;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t SurfaceGroup::hash() const {
    // hash of the geometry only (growth constants are derived data)
    std::string s = serialize();
    const auto pos = s.find("growth ");
    if (pos != std::string::npos) s = s.substr(0, pos);
    return fnv1a64(s);
}

} // namespace geocross
