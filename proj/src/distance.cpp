#include "pmedian/distance.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <limits>
#include <queue>

#include <zlib.h>

#include "pmedian/instance.hpp"
#include "io_util.hpp"

namespace pmedian {

std::string to_string(DistanceKind k) {
    return k == DistanceKind::Euclidean ? "euclidean" : "graph";
}

DistanceKind distance_kind_from_string(const std::string& s) {
    if (s == "euclidean") return DistanceKind::Euclidean;
    if (s == "graph") return DistanceKind::Graph;
    throw ValidationError("unknown distance kind: '" + s + "'");
}

StreetGraph::StreetGraph(std::vector<GraphEdge> edges) : edges_(std::move(edges)) {
    node_ids_.reserve(edges_.size() * 2);
    for (const auto& e : edges_) {
        if (e.u == e.v) throw ValidationError("street graph has a self-loop at node " +
                                              std::to_string(e.u));
        if (!(e.length_m > 0.0))
            throw ValidationError("non-positive edge length on edge " + std::to_string(e.u) +
                                  "-" + std::to_string(e.v));
        node_ids_.push_back(e.u);
        node_ids_.push_back(e.v);
    }
    std::sort(node_ids_.begin(), node_ids_.end());
    node_ids_.erase(std::unique(node_ids_.begin(), node_ids_.end()), node_ids_.end());

    adj_.assign(node_ids_.size(), {});
    for (const auto& e : edges_) {
        int ui = dense_index(e.u);
        int vi = dense_index(e.v);
        adj_[static_cast<std::size_t>(ui)].emplace_back(vi, e.length_m);
        adj_[static_cast<std::size_t>(vi)].emplace_back(ui, e.length_m);
    }
    // Sorted adjacency keeps traversal independent of edge insertion order.
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool StreetGraph::has_node(int id) const {
    return std::binary_search(node_ids_.begin(), node_ids_.end(), id);
}

int StreetGraph::dense_index(int id) const {
    auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), id);
    if (it == node_ids_.end() || *it != id)
        throw ValidationError("graph node " + std::to_string(id) + " not in street graph");
    return static_cast<int>(it - node_ids_.begin());
}

std::vector<double> StreetGraph::dijkstra(int source) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const int src = dense_index(source);
    std::vector<double> dist(node_ids_.size(), inf);
    // (distance, node id) so equal distances pop in node-id order.
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[static_cast<std::size_t>(src)] = 0.0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (const auto& [v, w] : adj_[static_cast<std::size_t>(u)]) {
            double nd = d + w;
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    return dist;
}

LocalProjection instance_projection(const std::vector<Customer>& customers,
                                    const std::vector<CandidateSite>& sites) {
    double lat = 0.0, lon = 0.0;
    const double n = static_cast<double>(customers.size() + sites.size());
    if (n == 0) return LocalProjection(0.0, 0.0);
    for (const auto& c : customers) {
        lat += c.lat;
        lon += c.lon;
    }
    for (const auto& s : sites) {
        lat += s.lat;
        lon += s.lon;
    }
    return LocalProjection(lat / n, lon / n);
}

namespace {

void fill_euclidean_row(const LocalProjection& proj, const Customer& c,
                        const std::vector<CandidateSite>& sites, double* row) {
    const XY pc = proj.to_xy(GeoPoint{c.lat, c.lon});
    for (std::size_t j = 0; j < sites.size(); ++j) {
        const XY ps = proj.to_xy(GeoPoint{sites[j].lat, sites[j].lon});
        row[j] = std::hypot(pc.x - ps.x, pc.y - ps.y);
    }
}

}  // namespace

DistanceMatrix euclidean_matrix_serial(const std::vector<Customer>& customers,
                                       const std::vector<CandidateSite>& sites) {
    DistanceMatrix m;
    m.n_customers = customers.size();
    m.n_sites = sites.size();
    m.kind = DistanceKind::Euclidean;
    m.values.resize(m.n_customers * m.n_sites);
    const LocalProjection proj = instance_projection(customers, sites);
    for (std::size_t i = 0; i < customers.size(); ++i)
        fill_euclidean_row(proj, customers[i], sites, &m.values[i * m.n_sites]);
    return m;
}

DistanceMatrix euclidean_matrix(const std::vector<Customer>& customers,
                                const std::vector<CandidateSite>& sites) {
    DistanceMatrix m;
    m.n_customers = customers.size();
    m.n_sites = sites.size();
    m.kind = DistanceKind::Euclidean;
    m.values.resize(m.n_customers * m.n_sites);
    const LocalProjection proj = instance_projection(customers, sites);
    const std::int64_t n = static_cast<std::int64_t>(customers.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        fill_euclidean_row(proj, customers[static_cast<std::size_t>(i)], sites,
                           &m.values[static_cast<std::size_t>(i) * m.n_sites]);
    return m;
}

namespace {

int anchor_of(const Customer& c) {
    if (!c.graph_node)
        throw ValidationError("customer " + std::to_string(c.id) + " has no graph_node anchor");
    return *c.graph_node;
}

int anchor_of(const CandidateSite& s) {
    if (!s.graph_node)
        throw ValidationError("site " + std::to_string(s.id) + " has no graph_node anchor");
    return *s.graph_node;
}

// Distances from one customer's anchor to every site anchor (by dense node
// index). Throws naming the first unreachable pair.
void fill_graph_row(const StreetGraph& graph, const Customer& c,
                    const std::vector<CandidateSite>& sites,
                    const std::vector<int>& site_dense, double* row) {
    const std::vector<double> dist = graph.dijkstra(anchor_of(c));
    for (std::size_t j = 0; j < sites.size(); ++j) {
        double d = dist[static_cast<std::size_t>(site_dense[j])];
        if (!std::isfinite(d))
            throw ValidationError("no path between customer " + std::to_string(c.id) +
                                  " and site " + std::to_string(sites[j].id));
        row[j] = d;
    }
}

}  // namespace

DistanceMatrix graph_matrix_serial(const StreetGraph& graph,
                                   const std::vector<Customer>& customers,
                                   const std::vector<CandidateSite>& sites) {
    DistanceMatrix m;
    m.n_customers = customers.size();
    m.n_sites = sites.size();
    m.kind = DistanceKind::Graph;
    m.values.resize(m.n_customers * m.n_sites);
    std::vector<int> site_dense(sites.size());
    for (std::size_t j = 0; j < sites.size(); ++j)
        site_dense[j] = graph.dense_index(anchor_of(sites[j]));
    for (std::size_t i = 0; i < customers.size(); ++i)
        fill_graph_row(graph, customers[i], sites, site_dense, &m.values[i * m.n_sites]);
    return m;
}

DistanceMatrix graph_matrix(const StreetGraph& graph,
                            const std::vector<Customer>& customers,
                            const std::vector<CandidateSite>& sites) {
    DistanceMatrix m;
    m.n_customers = customers.size();
    m.n_sites = sites.size();
    m.kind = DistanceKind::Graph;
    m.values.resize(m.n_customers * m.n_sites);
    std::vector<int> site_dense(sites.size());
    for (std::size_t j = 0; j < sites.size(); ++j)
        site_dense[j] = graph.dense_index(anchor_of(sites[j]));

    const std::int64_t n = static_cast<std::int64_t>(customers.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            fill_graph_row(graph, customers[static_cast<std::size_t>(i)], sites, site_dense,
                           &m.values[static_cast<std::size_t>(i) * m.n_sites]);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return m;
}

namespace {

constexpr char kMagic[4] = {'P', 'M', 'E', 'D'};
constexpr std::uint32_t kCacheVersion = 1;

template <typename T>
void put_raw(std::string& out, const T& v) {
    out.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get_raw(const std::string& buf, std::size_t& off, const std::string& what) {
    if (off + sizeof(T) > buf.size()) throw ParseError("matrix cache truncated reading " + what);
    T v;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

}  // namespace

void save_matrix(const DistanceMatrix& m, const std::string& path) {
    std::string buf;
    buf.reserve(25 + m.values.size() * sizeof(double) + 4);
    buf.append(kMagic, 4);
    put_raw(buf, kCacheVersion);
    put_raw(buf, static_cast<std::uint8_t>(m.kind));
    put_raw(buf, static_cast<std::uint64_t>(m.n_customers));
    put_raw(buf, static_cast<std::uint64_t>(m.n_sites));
    buf.append(reinterpret_cast<const char*>(m.values.data()),
               m.values.size() * sizeof(double));
    const auto crc = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(buf.size())));
    put_raw(buf, crc);
    detail::atomic_write(path, buf);
}

DistanceMatrix load_matrix(const std::string& path) {
    const std::string buf = detail::slurp(path);
    if (buf.size() < 4 + 4 + 1 + 8 + 8 + 4) throw ParseError("matrix cache truncated: " + path);
    const std::size_t body = buf.size() - 4;
    std::uint32_t stored_crc;
    std::memcpy(&stored_crc, buf.data() + body, 4);
    const auto crc = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(body)));
    if (crc != stored_crc) throw ParseError("matrix cache checksum mismatch: " + path);

    std::size_t off = 0;
    if (std::memcmp(buf.data(), kMagic, 4) != 0)
        throw ParseError("matrix cache bad magic: " + path);
    off = 4;
    const auto version = get_raw<std::uint32_t>(buf, off, "version");
    if (version != kCacheVersion)
        throw ParseError("matrix cache unsupported version " + std::to_string(version));
    const auto kind = get_raw<std::uint8_t>(buf, off, "kind");
    if (kind > 1) throw ParseError("matrix cache bad kind byte");
    DistanceMatrix m;
    m.kind = static_cast<DistanceKind>(kind);
    m.n_customers = get_raw<std::uint64_t>(buf, off, "rows");
    m.n_sites = get_raw<std::uint64_t>(buf, off, "cols");
    const std::size_t expect = m.n_customers * m.n_sites * sizeof(double);
    if (body - off != expect) throw ParseError("matrix cache payload size mismatch: " + path);
    m.values.resize(m.n_customers * m.n_sites);
    std::memcpy(m.values.data(), buf.data() + off, expect);
    for (double v : m.values)
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("matrix cache contains a negative or non-finite entry");
    return m;
}

DistanceMatrix load_matrix_checked(const std::string& path, std::size_t expect_customers,
                                   std::size_t expect_sites) {
    DistanceMatrix m = load_matrix(path);
    if (m.n_customers != expect_customers || m.n_sites != expect_sites)
        throw ValidationError("matrix cache dimensions " + std::to_string(m.n_customers) + "x" +
                              std::to_string(m.n_sites) + " do not match instance " +
                              std::to_string(expect_customers) + "x" +
                              std::to_string(expect_sites));
    return m;
}

}  // namespace pmedian
