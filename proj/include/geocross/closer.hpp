#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "geocross/surface.hpp"
#include "geocross/tracer.hpp"

// Closing arcs into nearby closed geodesics. Candidate holonomies are the
// arc's crossing word extended by short suffixes; the suffix tree is searched
// depth by depth (ShortLex) and pruned by distance to the arc's continuation
// geodesic. A candidate is accepted when both corner deficits are at most
// eps and the certified fellow-travel distance is at most 1.

namespace geocross {

struct CloserConfig {
    double eps = 0.1;          // target corner angle deficit
    int radius = 9;            // suffix word-length search radius
    int ft_samples = 64;       // sample points for the fellow-travel certificate
    double beam_step = 3.06;   // per-letter reach used by the beam prune
    double beam_slack = 1.2;
};

struct ClosingCertificate {
    std::string word;                  // freely reduced holonomy word
    double closed_length = 0.0;
    double fellow_travel_distance = 0.0;
    std::pair<double, double> angle_deficits{0.0, 0.0};
    double beta_length = 0.0;
    long long intersection_count = -1; // computed for successful closures
    bool success = false;
    double eps = 0.0;
    long long nodes_visited = 0;
};

ClosingCertificate close_arc(const SurfaceGroup& S, const TracedArc& a,
                             double eps, const CloserConfig& cfg = {});

// corner deficits of the piecewise-geodesic closed curve alpha . beta for a
// given candidate holonomy word; each in [0, pi]
std::pair<double, double> angle_deficit_of_closure(const SurfaceGroup& S,
                                                   const TracedArc& a,
                                                   const std::string& w);

struct REstimate {
    double R_hat = 0.0;
    bool lower_bound_only = false;  // some trial exhausted its search
    int successes = 0;
    int trials = 0;
};

// empirical closing-arc length bound over random arcs with l in [5, 20]
REstimate estimate_R(const SurfaceGroup& S, double eps, int trials,
                     std::uint64_t seed, const CloserConfig& cfg = {});

// uniform random unit tangent frame with base point in the fundamental domain
UnitTangent random_frame(const SurfaceGroup& S, std::uint64_t& state);

} // namespace geocross
