/// @file synthetic.hpp
/// @brief Deterministic synthetic city generator: clustered neighborhoods,
/// a planar street graph, candidate sites along its segments, a station
/// activity log, and an incumbent baseline deployment.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmedian/instance.hpp"

namespace pmedian {

struct SyntheticSpec {
    std::uint64_t seed = 1;
    int n_customers = 100;
    int n_sites = 500;
    double graph_density = 0.5;  // probability of keeping each non-tree grid edge
    int p = 10;
    int n_stations = -1;         // activity-log stations; -1 means p
    DistanceKind meta_distance = DistanceKind::Graph;
    WeightKind meta_weight = WeightKind::Citizens;
};

struct SyntheticCity {
    InstanceBundle bundle;
    // Graph node coordinates (by node id), kept for tests and plotting; not
    // part of the on-disk instance format.
    std::vector<GeoPoint> node_coords;
};

// Deterministic by seed. Throws ValidationError on infeasible parameters
// (n_customers < 1, n_sites < n_customers, p out of range, bad density).
SyntheticCity generate_synthetic_city(const SyntheticSpec& spec);

// Generate and write the instance files (customers.csv, sites.csv, graph.csv,
// meta.json, activity.csv, baseline.txt) into dir. Same bytes for same spec.
SyntheticCity write_synthetic_city(const SyntheticSpec& spec, const std::string& dir);

}  // namespace pmedian
