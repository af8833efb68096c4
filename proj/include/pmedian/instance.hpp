/// @file instance.hpp
/// @brief Problem instance: customers, candidate sites, weight models, the
/// station-activity demand derivation, and directory-based ingestion.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pmedian/distance.hpp"
#include "pmedian/errors.hpp"
#include "pmedian/geo.hpp"

namespace pmedian {

struct Customer {
    int id = 0;
    double lat = 0.0;
    double lon = 0.0;
    std::int64_t population = 0;
    std::optional<int> graph_node;
};

struct CandidateSite {
    int id = 0;
    double lat = 0.0;
    double lon = 0.0;
    std::optional<int> graph_node;
};

enum class WeightKind : std::uint8_t { Uniform = 0, Citizens = 1, Demand = 2 };

std::string to_string(WeightKind k);
WeightKind weight_kind_from_string(const std::string& s);

struct WeightModel {
    WeightKind kind = WeightKind::Uniform;
    std::vector<double> weights;  // length |N|, finite, >= 0
};

// One station's occupancy samples plus its position.
struct StationActivityLog {
    struct Station {
        int id = 0;
        double lat = 0.0;
        double lon = 0.0;
    };
    struct Row {
        int station_id = 0;
        std::int64_t timestamp = 0;
        std::int64_t occupied = 0;
        std::int64_t slots = 0;
    };
    std::vector<Station> stations;
    std::vector<Row> rows;
};

// Immutable after construction; safe to share read-only across solver runs.
struct Instance {
    std::vector<Customer> customers;
    std::vector<CandidateSite> sites;
    int p = 1;
    DistanceKind distance_kind = DistanceKind::Euclidean;
    std::shared_ptr<const DistanceMatrix> distances;
    WeightModel weight_model;
    std::vector<int> fixed_sites;  // site ids every solution must contain

    std::size_t n_customers() const { return customers.size(); }
    std::size_t n_sites() const { return sites.size(); }
    double dist(std::size_t customer, std::size_t site) const {
        return distances->at(customer, site);
    }
    // Index of the site with the given external id; throws ValidationError.
    int site_index(int site_id) const;

    void validate() const;  // full invariant check
};

// Everything a directory of instance files contains, before a distance kind
// and weight kind are bound.
struct InstanceBundle {
    std::vector<Customer> customers;
    std::vector<CandidateSite> sites;
    std::optional<StreetGraph> graph;
    std::optional<StationActivityLog> activity;
    std::vector<int> baseline_site_ids;  // from baseline.txt, may be empty
    int p = 1;
    DistanceKind meta_distance = DistanceKind::Euclidean;
    WeightKind meta_weight = WeightKind::Uniform;
    std::vector<int> fixed_site_ids;

    bool has_graph() const { return graph.has_value(); }
    bool has_activity() const { return activity.has_value(); }
};

// mean(occupied samples) / mean(slots samples) for one station, in [0, 1].
double station_activity(const StationActivityLog& log, int station_id);

// weight_i = population_i * activity of the Euclidean-nearest station
// (ties: lowest station id).
WeightModel derive_demand_weights(const std::vector<Customer>& customers,
                                  const StationActivityLog& log);

WeightModel make_weights(WeightKind kind, const std::vector<Customer>& customers,
                         const StationActivityLog* activity);

InstanceBundle load_bundle(const std::string& dir);

// Bind a bundle to a concrete scenario. Computes the matrix unless one is
// supplied (e.g. from the cache).
Instance make_instance(const InstanceBundle& bundle, DistanceKind distance,
                       WeightKind weight,
                       std::shared_ptr<const DistanceMatrix> matrix = nullptr);

// Load the directory with the scenario named in meta.json.
Instance load_instance(const std::string& dir);

}  // namespace pmedian
