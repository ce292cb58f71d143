#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "geocross/surface.hpp"

// Closed-geodesic census. Enumeration follows geodesic tubes out of the
// fundamental domain: a depth-first search over crossing words, pruned by a
// boundary-shadow beam (the set of geodesics realizing the tube) and a
// displacement lower bound. Every conjugacy class with translation length
// at most L has a representative whose axis crosses the domain, and all its
// tube prefixes survive the pruning, so the search is exhaustive.

namespace geocross {

struct ClosedGeodesicRecord {
    std::string word;          // canonical cyclically reduced representative
    double trace_abs = 0.0;
    double length = 0.0;
    long long self_intersections = 0;
    bool primitive = true;
    std::string root;          // primitive root (== word when primitive)
};

struct CensusSlice {
    double L = 0.0;
    long long K = 0;
    bool complete = false;
    std::uint64_t surface_hash = 0;
    std::vector<ClosedGeodesicRecord> records;   // sorted by (length, word)

    long long count_upto(double length_bound, long long intersection_bound) const;
};

struct CensusOptions {
    double length_guard = 14.0;
    int max_depth = 96;
    long long node_limit = 400000000;
    bool compute_intersections = true;
};

// all conjugacy classes with length <= L and self-intersections <= K;
// complete unless a resource guard was hit
CensusSlice enumerate_census(const SurfaceGroup& S, double L, long long K,
                             const CensusOptions& opts = {});

std::string save_census(const CensusSlice& slice);
CensusSlice load_census(const std::string& text, const SurfaceGroup& S);

struct GrowthFit {
    double a_X = 0.0;
    double factor = 4.0;       // mu(k) = factor * a k ln(a/k + a)
    std::vector<double> ks;
    std::vector<int> ns;
    // slack[i][j] = mu(ks[i]) * ns[j] - log count(ns[j], floor(c_X (k n)^2))
    std::vector<std::vector<double>> slack;
    std::vector<double> mu;    // mu(k) at the fitted a_X
    bool ok = false;
};

// smallest a_X >= e making log #G_n(c_X (k n)^2) <= mu(k) n hold for all
// tested (n, k); refuses to fit on incomplete slices
GrowthFit growth_check(const CensusSlice& master, const std::vector<int>& ns,
                       const std::vector<double>& ks, const GrowthBound& gb,
                       double factor = 4.0);

double mu_of_k(double a_X, double k, double factor = 4.0);

} // namespace geocross
