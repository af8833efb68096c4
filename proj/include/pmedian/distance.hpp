/// @file distance.hpp
/// @brief Street graph, customer x site distance matrices (Euclidean and
/// shortest-path), and the binary matrix cache.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmedian/geo.hpp"

namespace pmedian {

struct Customer;
struct CandidateSite;

enum class DistanceKind : std::uint8_t { Euclidean = 0, Graph = 1 };

std::string to_string(DistanceKind k);
DistanceKind distance_kind_from_string(const std::string& s);

struct GraphEdge {
    int u = 0;
    int v = 0;
    double length_m = 0.0;
};

// Undirected weighted street graph. Node ids are arbitrary non-negative ints;
// they are compacted internally for the Dijkstra runs.
class StreetGraph {
  public:
    StreetGraph() = default;
    explicit StreetGraph(std::vector<GraphEdge> edges);

    const std::vector<GraphEdge>& edges() const { return edges_; }
    std::size_t node_count() const { return node_ids_.size(); }
    bool has_node(int id) const;
    // Node ids sorted ascending; position in this list is the dense index.
    const std::vector<int>& node_ids() const { return node_ids_; }
    int dense_index(int id) const;  // throws if id is not a graph node

    // Shortest-path length from `source` (a node id) to every node, indexed
    // densely (see node_ids()), +inf if unreachable. Binary-heap Dijkstra;
    // ties in tentative distance break by node id.
    std::vector<double> dijkstra(int source) const;

  private:
    std::vector<GraphEdge> edges_;
    std::vector<int> node_ids_;                             // sorted distinct ids
    std::vector<std::vector<std::pair<int, double>>> adj_;  // dense index -> (dense, w)
};

struct DistanceMatrix {
    std::size_t n_customers = 0;
    std::size_t n_sites = 0;
    DistanceKind kind = DistanceKind::Euclidean;
    std::vector<double> values;  // row-major, n_customers x n_sites

    double at(std::size_t customer, std::size_t site) const {
        return values[customer * n_sites + site];
    }
    double& at(std::size_t customer, std::size_t site) {
        return values[customer * n_sites + site];
    }
};

// Projection centered at the mean coordinate of customers and sites.
LocalProjection instance_projection(const std::vector<Customer>& customers,
                                    const std::vector<CandidateSite>& sites);

DistanceMatrix euclidean_matrix(const std::vector<Customer>& customers,
                                const std::vector<CandidateSite>& sites);
DistanceMatrix euclidean_matrix_serial(const std::vector<Customer>& customers,
                                       const std::vector<CandidateSite>& sites);

// One single-source Dijkstra per customer anchor. Every customer and site
// must carry a graph_node present in the graph; an unreachable pair is an
// error naming the pair.
DistanceMatrix graph_matrix(const StreetGraph& graph,
                            const std::vector<Customer>& customers,
                            const std::vector<CandidateSite>& sites);
DistanceMatrix graph_matrix_serial(const StreetGraph& graph,
                                   const std::vector<Customer>& customers,
                                   const std::vector<CandidateSite>& sites);

// Cache format: "PMED", u32 version, u8 kind, u64 rows, u64 cols, row-major
// f64 payload, trailing CRC32 of everything before it.
void save_matrix(const DistanceMatrix& m, const std::string& path);
DistanceMatrix load_matrix(const std::string& path);
DistanceMatrix load_matrix_checked(const std::string& path, std::size_t expect_customers,
                                   std::size_t expect_sites);

}  // namespace pmedian
