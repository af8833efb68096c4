#include "pmedian/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pmedian/rng.hpp"
#include "io_util.hpp"

namespace fs = std::filesystem;

namespace pmedian {

namespace {

// City footprint (roughly 10 x 10 km on the Andalusian coast).
constexpr double kCenterLat = 36.72;
constexpr double kCenterLon = -4.42;
constexpr double kHalfLat = 0.045;
constexpr double kHalfLon = 0.056;

// Round to the file precision so in-memory and reloaded instances agree.
double round_coord(double v) { return std::llround(v * 1e7) / 1e7; }

struct Grid {
    int side = 0;
    std::vector<GeoPoint> nodes;           // node id = row * side + col
    std::vector<std::pair<int, int>> all_edges;  // grid-neighbor pairs (u < v)
};

Grid make_grid(int side, Rng& rng) {
    Grid g;
    g.side = side;
    g.nodes.reserve(static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
    const double step_lat = 2.0 * kHalfLat / (side - 1);
    const double step_lon = 2.0 * kHalfLon / (side - 1);
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const double jlat = rng.uniform(-0.3, 0.3) * step_lat;
            const double jlon = rng.uniform(-0.3, 0.3) * step_lon;
            g.nodes.push_back(GeoPoint{
                round_coord(kCenterLat - kHalfLat + r * step_lat + jlat),
                round_coord(kCenterLon - kHalfLon + c * step_lon + jlon)});
        }
    }
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const int u = r * side + c;
            if (c + 1 < side) g.all_edges.emplace_back(u, u + 1);
            if (r + 1 < side) g.all_edges.emplace_back(u, u + side);
        }
    }
    return g;
}

// Randomized spanning tree (random DFS) plus each remaining grid edge with
// probability density: connected and planar.
std::vector<std::pair<int, int>> choose_edges(const Grid& g, double density, Rng& rng) {
    const int n = g.side * g.side;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : g.all_edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> tree;
    std::vector<int> stack{0};
    visited[0] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        std::vector<int> unvisited;
        for (int v : adj[static_cast<std::size_t>(u)])
            if (!visited[static_cast<std::size_t>(v)]) unvisited.push_back(v);
        if (unvisited.empty()) {
            stack.pop_back();
            continue;
        }
        const int v = unvisited[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(unvisited.size()) - 1))];
        visited[static_cast<std::size_t>(v)] = 1;
        tree.emplace_back(std::min(u, v), std::max(u, v));
        stack.push_back(v);
    }

    std::vector<std::pair<int, int>> chosen = tree;
    std::sort(chosen.begin(), chosen.end());
    for (const auto& e : g.all_edges) {
        if (std::binary_search(chosen.begin(), chosen.end(), e)) continue;
        if (rng.uniform01() < density) chosen.push_back(e);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

}  // namespace

SyntheticCity generate_synthetic_city(const SyntheticSpec& spec) {
    if (spec.n_customers < 1) throw ValidationError("n_customers must be >= 1");
    if (spec.n_sites < spec.n_customers)
        throw ValidationError("n_sites must be >= n_customers");
    if (spec.p < 1 || spec.p > spec.n_sites)
        throw ValidationError("p out of range [1, n_sites]");
    if (!(spec.graph_density >= 0.0 && spec.graph_density <= 1.0))
        throw ValidationError("graph_density must be in [0, 1]");

    Rng rng(spec.seed);
    SyntheticCity city;
    InstanceBundle& b = city.bundle;
    b.p = spec.p;
    b.meta_distance = spec.meta_distance;
    b.meta_weight = spec.meta_weight;

    // Clustered neighborhoods with heavy-tailed populations.
    const int n_clusters =
        std::clamp(static_cast<int>(std::lround(std::sqrt(spec.n_customers))), 1, 40);
    std::vector<GeoPoint> centers;
    std::vector<double> spreads;
    for (int c = 0; c < n_clusters; ++c) {
        centers.push_back(GeoPoint{rng.uniform(kCenterLat - kHalfLat, kCenterLat + kHalfLat),
                                   rng.uniform(kCenterLon - kHalfLon, kCenterLon + kHalfLon)});
        spreads.push_back(rng.uniform(0.002, 0.008));
    }
    for (int i = 0; i < spec.n_customers; ++i) {
        const int c = rng.uniform_int(0, n_clusters - 1);
        Customer cust;
        cust.id = i;
        cust.lat = round_coord(std::clamp(centers[static_cast<std::size_t>(c)].lat +
                                              rng.normal(0.0, spreads[static_cast<std::size_t>(c)]),
                                          kCenterLat - kHalfLat, kCenterLat + kHalfLat));
        cust.lon = round_coord(std::clamp(centers[static_cast<std::size_t>(c)].lon +
                                              rng.normal(0.0, spreads[static_cast<std::size_t>(c)]),
                                          kCenterLon - kHalfLon, kCenterLon + kHalfLon));
        cust.population = std::llround(rng.lognormal(7.0, 1.0));
        b.customers.push_back(cust);
    }

    // Street grid sized so sites spread a few per segment.
    const int side = std::max(5, static_cast<int>(std::ceil(std::sqrt(spec.n_sites / 4.0))));
    const Grid grid = make_grid(side, rng);
    const auto edge_pairs = choose_edges(grid, spec.graph_density, rng);
    city.node_coords = grid.nodes;

    // Sites sit on uniformly chosen segments, anchored to the nearer end.
    for (int s = 0; s < spec.n_sites; ++s) {
        const auto& [u, v] =
            edge_pairs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(edge_pairs.size()) - 1))];
        const double t = rng.uniform(0.1, 0.9);
        const GeoPoint& a = grid.nodes[static_cast<std::size_t>(u)];
        const GeoPoint& bb = grid.nodes[static_cast<std::size_t>(v)];
        CandidateSite site;
        site.id = s;
        site.lat = round_coord(a.lat + t * (bb.lat - a.lat));
        site.lon = round_coord(a.lon + t * (bb.lon - a.lon));
        site.graph_node = t < 0.5 ? u : v;
        b.sites.push_back(site);
    }

    // Customers anchor to their nearest graph node (ties: lower node id).
    {
        const LocalProjection proj = instance_projection(b.customers, b.sites);
        for (auto& cust : b.customers) {
            int best = -1;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t nid = 0; nid < grid.nodes.size(); ++nid) {
                const double d =
                    proj.distance_m(GeoPoint{cust.lat, cust.lon}, grid.nodes[nid]);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(nid);
                }
            }
            cust.graph_node = best;
        }

        // Edge lengths are projected segment lengths under the same centroid
        // projection the loader computes, rounded to the file precision so
        // the in-memory graph equals its reloaded form.
        std::vector<GraphEdge> edges;
        edges.reserve(edge_pairs.size());
        for (const auto& [u, v] : edge_pairs) {
            GraphEdge e;
            e.u = u;
            e.v = v;
            e.length_m = std::llround(proj.distance_m(grid.nodes[static_cast<std::size_t>(u)],
                                                      grid.nodes[static_cast<std::size_t>(v)]) *
                                      1e6) /
                         1e6;
            edges.push_back(e);
        }
        b.graph = StreetGraph(std::move(edges));
    }

    // Station activity log: stations on a subset of sites, occupancy around a
    // per-station base rate.
    const int n_stations = spec.n_stations < 0 ? spec.p : spec.n_stations;
    if (n_stations > 0) {
        StationActivityLog log;
        std::vector<int> pool(static_cast<std::size_t>(spec.n_sites));
        for (int s = 0; s < spec.n_sites; ++s) pool[static_cast<std::size_t>(s)] = s;
        for (int t = 0; t < n_stations; ++t) {
            const int j = rng.uniform_int(t, spec.n_sites - 1);
            std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(j)]);
            const CandidateSite& site = b.sites[static_cast<std::size_t>(pool[static_cast<std::size_t>(t)])];
            log.stations.push_back({t, site.lat, site.lon});
            const std::int64_t slots = 10 + rng.uniform_int(0, 20);
            const double base = rng.uniform(0.15, 0.9);
            for (int h = 0; h < 64; ++h) {
                StationActivityLog::Row row;
                row.station_id = t;
                row.timestamp = 1538895600 + 3600LL * h;
                row.slots = slots;
                const double rate = std::clamp(base + rng.normal(0.0, 0.1), 0.0, 1.0);
                row.occupied = std::llround(rate * static_cast<double>(slots));
                log.rows.push_back(row);
            }
        }
        b.activity = log;
    }

    // Incumbent baseline: p sites greedily picked nearest the population
    // centroid with a minimum spacing, mimicking a center-heavy deployment.
    {
        const LocalProjection proj = instance_projection(b.customers, b.sites);
        double sw = 0.0, sx = 0.0, sy = 0.0;
        for (const auto& cust : b.customers) {
            const XY xy = proj.to_xy(GeoPoint{cust.lat, cust.lon});
            const double w = static_cast<double>(cust.population);
            sw += w;
            sx += w * xy.x;
            sy += w * xy.y;
        }
        const XY center{sw > 0 ? sx / sw : 0.0, sw > 0 ? sy / sw : 0.0};
        std::vector<std::pair<double, int>> by_dist;
        for (std::size_t j = 0; j < b.sites.size(); ++j) {
            const XY xy = proj.to_xy(GeoPoint{b.sites[j].lat, b.sites[j].lon});
            by_dist.emplace_back(std::hypot(xy.x - center.x, xy.y - center.y),
                                 static_cast<int>(j));
        }
        std::sort(by_dist.begin(), by_dist.end());
        std::vector<int> chosen;
        std::vector<XY> chosen_xy;
        const double min_spacing = 250.0;
        for (const auto& [d, j] : by_dist) {
            if (static_cast<int>(chosen.size()) >= spec.p) break;
            const XY xy = proj.to_xy(GeoPoint{b.sites[static_cast<std::size_t>(j)].lat,
                                              b.sites[static_cast<std::size_t>(j)].lon});
            bool ok = true;
            for (const XY& c : chosen_xy)
                if (std::hypot(xy.x - c.x, xy.y - c.y) < min_spacing) {
                    ok = false;
                    break;
                }
            if (ok) {
                chosen.push_back(b.sites[static_cast<std::size_t>(j)].id);
                chosen_xy.push_back(xy);
            }
        }
        // Relax spacing if the city is too small to honor it.
        for (const auto& [d, j] : by_dist) {
            if (static_cast<int>(chosen.size()) >= spec.p) break;
            const int id = b.sites[static_cast<std::size_t>(j)].id;
            if (std::find(chosen.begin(), chosen.end(), id) == chosen.end())
                chosen.push_back(id);
        }
        b.baseline_site_ids = chosen;
    }
    return city;
}

namespace {

std::string format_coord(double v) { return detail::fmt("%.7f", v); }

}  // namespace

SyntheticCity write_synthetic_city(const SyntheticSpec& spec, const std::string& dir) {
    SyntheticCity city = generate_synthetic_city(spec);
    const InstanceBundle& b = city.bundle;
    fs::create_directories(dir);

    {
        std::ostringstream out;
        out << "id,lat,lon,population,graph_node\n";
        for (const auto& c : b.customers)
            out << c.id << "," << format_coord(c.lat) << "," << format_coord(c.lon) << ","
                << c.population << "," << *c.graph_node << "\n";
        detail::atomic_write((fs::path(dir) / "customers.csv").string(), out.str());
    }
    {
        std::ostringstream out;
        out << "id,lat,lon,graph_node\n";
        for (const auto& s : b.sites)
            out << s.id << "," << format_coord(s.lat) << "," << format_coord(s.lon) << ","
                << *s.graph_node << "\n";
        detail::atomic_write((fs::path(dir) / "sites.csv").string(), out.str());
    }
    {
        std::ostringstream out;
        out << "u,v,length_m\n";
        for (const auto& e : b.graph->edges())
            out << e.u << "," << e.v << "," << detail::fmt("%.6f", e.length_m) << "\n";
        detail::atomic_write((fs::path(dir) / "graph.csv").string(), out.str());
    }
    {
        nlohmann::json meta;
        meta["p"] = b.p;
        meta["distance"] = to_string(b.meta_distance);
        meta["weight"] = to_string(b.meta_weight);
        meta["fixed_sites"] = b.fixed_site_ids;
        detail::atomic_write((fs::path(dir) / "meta.json").string(), meta.dump(2) + "\n");
    }
    if (b.activity) {
        std::ostringstream out;
        out << "station_id,lat,lon,timestamp,occupied,slots\n";
        for (const auto& row : b.activity->rows) {
            const auto& st = b.activity->stations[static_cast<std::size_t>(row.station_id)];
            out << row.station_id << "," << format_coord(st.lat) << "," << format_coord(st.lon)
                << "," << row.timestamp << "," << row.occupied << "," << row.slots << "\n";
        }
        detail::atomic_write((fs::path(dir) / "activity.csv").string(), out.str());
    }
    if (!b.baseline_site_ids.empty()) {
        std::ostringstream out;
        for (int id : b.baseline_site_ids) out << id << "\n";
        detail::atomic_write((fs::path(dir) / "baseline.txt").string(), out.str());
    }
    return city;
}

}  // namespace pmedian
