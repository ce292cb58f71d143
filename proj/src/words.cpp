#include "geocross/words.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace geocross {
namespace words {

char inverse_letter(char ch) {
    if (ch >= 'a' && ch <= 'd') return static_cast<char>(ch - 'a' + 'A');
    if (ch >= 'A' && ch <= 'D') return static_cast<char>(ch - 'A' + 'a');
    throw std::invalid_argument(std::string("bad letter: ") + ch);
}

bool is_letter(char ch) {
    return (ch >= 'a' && ch <= 'd') || (ch >= 'A' && ch <= 'D');
}

std::string inverse_word(const std::string& w) {
    std::string out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_letter(*it));
    return out;
}

std::string free_reduce(const std::string& w) {
    std::string out;
    out.reserve(w.size());
    for (char ch : w) {
        if (!out.empty() && out.back() == inverse_letter(ch)) out.pop_back();
        else out.push_back(ch);
    }
    return out;
}

std::string cyclic_reduce(const std::string& w) {
    std::string u = free_reduce(w);
    while (u.size() >= 2 && u.front() == inverse_letter(u.back())) {
        u = free_reduce(u.substr(1, u.size() - 2));
    }
    return u;
}

const std::vector<std::string>& relator_forms() {
    static const std::vector<std::string> forms = [] {
        std::set<std::string> s;
        std::string r = kRelator;
        std::string ri = inverse_word(r);
        for (size_t k = 0; k < r.size(); ++k) {
            s.insert(r.substr(k) + r.substr(0, k));
            s.insert(ri.substr(k) + ri.substr(0, k));
        }
        return std::vector<std::string>(s.begin(), s.end());
    }();
    return forms;
}

// replace cyclic subword u (length >= 4) occurring in a relator form by the
// inverse of its complement; returns empty when no match of that length
static bool replace_relator_subword(const std::string& w, size_t len, std::string& out) {
    const size_t n = w.size();
    if (n < len) return false;
    const std::string dbl = w + w;
    for (size_t i = 0; i < n; ++i) {
        const std::string u = dbl.substr(i, len);
        for (const std::string& r : relator_forms()) {
            const size_t idx = r.find(u);
            if (idx == std::string::npos) continue;
            const std::string rr = r.substr(idx) + r.substr(0, idx);   // u is prefix
            const std::string comp = rr.substr(len);                   // u * comp = 1
            const std::string repl = inverse_word(comp);
            if (repl == u) continue;
            out = cyclic_reduce(repl + dbl.substr(i + len, n - len));
            return true;
        }
    }
    return false;
}

std::string dehn_reduce(const std::string& w) {
    std::string u = cyclic_reduce(w);
    bool changed = true;
    while (changed && u.size() >= 5) {
        changed = false;
        for (size_t len = std::min<size_t>(8, u.size()); len >= 5; --len) {
            std::string v;
            if (replace_relator_subword(u, len, v)) {
                u = v;
                changed = true;
                break;
            }
        }
    }
    return u;
}

std::vector<std::string> half_swaps(const std::string& w) {
    std::vector<std::string> out;
    const size_t n = w.size();
    if (n < 4) return out;
    const std::string dbl = w + w;
    for (size_t i = 0; i < n; ++i) {
        const std::string u = dbl.substr(i, 4);
        for (const std::string& r : relator_forms()) {
            const size_t idx = r.find(u);
            if (idx == std::string::npos) continue;
            const std::string rr = r.substr(idx) + r.substr(0, idx);
            const std::string repl = inverse_word(rr.substr(4));
            if (repl == u) continue;
            out.push_back(cyclic_reduce(repl + dbl.substr(i + 4, n - 4)));
        }
    }
    return out;
}

std::string min_rotation(const std::string& w) {
    if (w.empty()) return w;
    std::string best = w;
    std::string cur = w;
    for (size_t k = 1; k < w.size(); ++k) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

std::string canonical_class(const std::string& w) {
    std::string base = dehn_reduce(w);
    std::set<std::string> seen;
    std::vector<std::string> frontier = {base, dehn_reduce(inverse_word(base))};
    std::set<std::string> all;
    size_t guard = 0;
    while (!frontier.empty()) {
        if (++guard > 4096) break;   // closure is tiny in practice
        std::vector<std::string> next;
        for (const std::string& u : frontier) {
            if (seen.count(u)) continue;
            seen.insert(u);
            const std::string ud = dehn_reduce(u);
            if (ud.size() < u.size()) return canonical_class(ud);
            all.insert(u);
            for (const std::string& s : half_swaps(u)) {
                if (!seen.count(s)) next.push_back(s);
                const std::string si = inverse_word(s);
                if (!seen.count(si)) next.push_back(si);
            }
        }
        frontier.swap(next);
    }
    std::string best;
    bool first = true;
    for (const std::string& u : all) {
        for (const std::string& v : {min_rotation(u), min_rotation(inverse_word(u))}) {
            if (first || v < best) { best = v; first = false; }
        }
    }
    return best;
}

std::string primitive_root(const std::string& w) {
    const size_t n = w.size();
    for (size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (size_t i = 0; i + p < n && ok; ++i) {
            if (w[i] != w[i + p]) ok = false;
        }
        if (ok) return w.substr(0, p);
    }
    return w;
}

} // namespace words
} // namespace geocross
