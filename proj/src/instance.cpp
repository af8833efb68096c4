#include "pmedian/instance.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "io_util.hpp"

namespace fs = std::filesystem;

namespace pmedian {

std::string to_string(WeightKind k) {
    switch (k) {
        case WeightKind::Uniform: return "uniform";
        case WeightKind::Citizens: return "citizens";
        case WeightKind::Demand: return "demand";
    }
    return "uniform";
}

WeightKind weight_kind_from_string(const std::string& s) {
    if (s == "uniform") return WeightKind::Uniform;
    if (s == "citizens") return WeightKind::Citizens;
    if (s == "demand") return WeightKind::Demand;
    throw ValidationError("unknown weight kind: '" + s + "'");
}

int Instance::site_index(int site_id) const {
    for (std::size_t j = 0; j < sites.size(); ++j)
        if (sites[j].id == site_id) return static_cast<int>(j);
    throw ValidationError("unknown site id " + std::to_string(site_id));
}

void Instance::validate() const {
    if (customers.empty()) throw ValidationError("instance has no customers");
    if (sites.empty()) throw ValidationError("instance has no candidate sites");
    if (p < 1 || p > static_cast<int>(sites.size()))
        throw ValidationError("p = " + std::to_string(p) + " out of range [1, " +
                              std::to_string(sites.size()) + "]");
    if (static_cast<int>(fixed_sites.size()) > p)
        throw ValidationError("more fixed sites than p");
    std::set<int> seen;
    for (const auto& c : customers) {
        if (c.population < 0)
            throw ValidationError("customer " + std::to_string(c.id) + " has negative population");
        if (!seen.insert(c.id).second)
            throw ValidationError("duplicate customer id " + std::to_string(c.id));
    }
    seen.clear();
    for (const auto& s : sites)
        if (!seen.insert(s.id).second)
            throw ValidationError("duplicate site id " + std::to_string(s.id));
    seen.clear();
    for (int id : fixed_sites) {
        site_index(id);  // throws on unknown id
        if (!seen.insert(id).second)
            throw ValidationError("duplicate fixed site id " + std::to_string(id));
    }
    if (!distances) throw ValidationError("instance has no distance matrix");
    if (distances->n_customers != customers.size() || distances->n_sites != sites.size())
        throw ValidationError("distance matrix shape does not match instance");
    for (double v : distances->values)
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("distance matrix has a negative or non-finite entry");
    if (weight_model.weights.size() != customers.size())
        throw ValidationError("weight vector length does not match customer count");
    for (std::size_t i = 0; i < weight_model.weights.size(); ++i) {
        double w = weight_model.weights[i];
        if (!std::isfinite(w) || w < 0.0)
            throw ValidationError("weight " + std::to_string(i) + " is negative or non-finite");
        if (weight_model.kind == WeightKind::Uniform && w != 1.0)
            throw ValidationError("uniform weight model has a non-unit weight");
        if (weight_model.kind == WeightKind::Citizens &&
            w != static_cast<double>(customers[i].population))
            throw ValidationError("citizens weight does not equal population");
    }
}

double station_activity(const StationActivityLog& log, int station_id) {
    double occupied_sum = 0.0, slots_sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : log.rows) {
        if (r.station_id != station_id) continue;
        if (r.slots <= 0)
            throw ValidationError("activity row with non-positive slots for station " +
                                  std::to_string(station_id));
        if (r.occupied < 0 || r.occupied > r.slots)
            throw ValidationError("activity row with occupied outside [0, slots] for station " +
                                  std::to_string(station_id));
        occupied_sum += static_cast<double>(r.occupied);
        slots_sum += static_cast<double>(r.slots);
        ++count;
    }
    if (count == 0)
        throw ValidationError("no activity rows for station " + std::to_string(station_id));
    const double n = static_cast<double>(count);
    return (occupied_sum / n) / (slots_sum / n);
}

WeightModel derive_demand_weights(const std::vector<Customer>& customers,
                                  const StationActivityLog& log) {
    if (log.rows.empty() || log.stations.empty())
        throw ValidationError("empty station activity log");

    std::map<int, double> activity;  // ordered: deterministic iteration
    for (const auto& st : log.stations) activity[st.id] = station_activity(log, st.id);

    // Project once for the nearest-station lookups.
    std::vector<CandidateSite> station_pts;
    station_pts.reserve(log.stations.size());
    for (const auto& st : log.stations) station_pts.push_back({st.id, st.lat, st.lon, {}});
    const LocalProjection proj = instance_projection(customers, station_pts);

    WeightModel wm;
    wm.kind = WeightKind::Demand;
    wm.weights.reserve(customers.size());
    for (const auto& c : customers) {
        int best_id = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& st : log.stations) {
            double d = proj.distance_m(GeoPoint{c.lat, c.lon}, GeoPoint{st.lat, st.lon});
            if (d < best_d || (d == best_d && st.id < best_id)) {
                best_d = d;
                best_id = st.id;
            }
        }
        wm.weights.push_back(static_cast<double>(c.population) * activity.at(best_id));
    }
    return wm;
}

WeightModel make_weights(WeightKind kind, const std::vector<Customer>& customers,
                         const StationActivityLog* activity) {
    WeightModel wm;
    wm.kind = kind;
    switch (kind) {
        case WeightKind::Uniform:
            wm.weights.assign(customers.size(), 1.0);
            break;
        case WeightKind::Citizens:
            wm.weights.reserve(customers.size());
            for (const auto& c : customers)
                wm.weights.push_back(static_cast<double>(c.population));
            break;
        case WeightKind::Demand:
            if (!activity)
                throw ValidationError("demand weights require a station activity log");
            return derive_demand_weights(customers, *activity);
    }
    return wm;
}

namespace {

std::optional<int> parse_opt_node(const std::string& s) {
    const std::string t = detail::trim(s);
    if (t.empty() || t == "-") return std::nullopt;
    return static_cast<int>(detail::parse_int(t, "graph_node"));
}

std::vector<Customer> load_customers(const std::string& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty() || detail::trim(lines[0]) != "id,lat,lon,population,graph_node")
        throw ParseError(path + ": expected header 'id,lat,lon,population,graph_node'");
    std::vector<Customer> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (detail::trim(lines[i]).empty()) continue;
        const auto f = detail::split(lines[i], ',');
        if (f.size() != 5)
            throw ParseError(path + ":" + std::to_string(i + 1) + ": expected 5 fields");
        Customer c;
        c.id = static_cast<int>(detail::parse_int(f[0], "customer id"));
        c.lat = detail::parse_double(f[1], "lat");
        c.lon = detail::parse_double(f[2], "lon");
        c.population = detail::parse_int(f[3], "population");
        c.graph_node = parse_opt_node(f[4]);
        out.push_back(c);
    }
    return out;
}

std::vector<CandidateSite> load_sites(const std::string& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty() || detail::trim(lines[0]) != "id,lat,lon,graph_node")
        throw ParseError(path + ": expected header 'id,lat,lon,graph_node'");
    std::vector<CandidateSite> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (detail::trim(lines[i]).empty()) continue;
        const auto f = detail::split(lines[i], ',');
        if (f.size() != 4)
            throw ParseError(path + ":" + std::to_string(i + 1) + ": expected 4 fields");
        CandidateSite s;
        s.id = static_cast<int>(detail::parse_int(f[0], "site id"));
        s.lat = detail::parse_double(f[1], "lat");
        s.lon = detail::parse_double(f[2], "lon");
        s.graph_node = parse_opt_node(f[3]);
        out.push_back(s);
    }
    return out;
}

StreetGraph load_graph(const std::string& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty() || detail::trim(lines[0]) != "u,v,length_m")
        throw ParseError(path + ": expected header 'u,v,length_m'");
    std::vector<GraphEdge> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (detail::trim(lines[i]).empty()) continue;
        const auto f = detail::split(lines[i], ',');
        if (f.size() != 3)
            throw ParseError(path + ":" + std::to_string(i + 1) + ": expected 3 fields");
        GraphEdge e;
        e.u = static_cast<int>(detail::parse_int(f[0], "u"));
        e.v = static_cast<int>(detail::parse_int(f[1], "v"));
        e.length_m = detail::parse_double(f[2], "length_m");
        edges.push_back(e);
    }
    return StreetGraph(std::move(edges));
}

StationActivityLog load_activity(const std::string& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty() ||
        detail::trim(lines[0]) != "station_id,lat,lon,timestamp,occupied,slots")
        throw ParseError(path + ": expected header 'station_id,lat,lon,timestamp,occupied,slots'");
    StationActivityLog log;
    std::map<int, StationActivityLog::Station> stations;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (detail::trim(lines[i]).empty()) continue;
        const auto f = detail::split(lines[i], ',');
        if (f.size() != 6)
            throw ParseError(path + ":" + std::to_string(i + 1) + ": expected 6 fields");
        StationActivityLog::Row r;
        r.station_id = static_cast<int>(detail::parse_int(f[0], "station_id"));
        r.timestamp = detail::parse_int(f[3], "timestamp");
        r.occupied = detail::parse_int(f[4], "occupied");
        r.slots = detail::parse_int(f[5], "slots");
        if (r.slots <= 0)
            throw ValidationError(path + ":" + std::to_string(i + 1) + ": slots must be positive");
        if (r.occupied < 0 || r.occupied > r.slots)
            throw ValidationError(path + ":" + std::to_string(i + 1) +
                                  ": occupied outside [0, slots]");
        log.rows.push_back(r);
        StationActivityLog::Station st;
        st.id = r.station_id;
        st.lat = detail::parse_double(f[1], "lat");
        st.lon = detail::parse_double(f[2], "lon");
        stations[st.id] = st;
    }
    for (const auto& [id, st] : stations) log.stations.push_back(st);
    return log;
}

}  // namespace

InstanceBundle load_bundle(const std::string& dir) {
    const fs::path base(dir);
    if (!fs::exists(base / "meta.json"))
        throw ParseError("instance directory " + dir + " has no meta.json");

    InstanceBundle b;
    b.customers = load_customers((base / "customers.csv").string());
    b.sites = load_sites((base / "sites.csv").string());

    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(detail::slurp((base / "meta.json").string()));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("meta.json: ") + e.what());
    }
    if (!meta.contains("p") || !meta["p"].is_number_integer())
        throw ParseError("meta.json: missing integer field 'p'");
    b.p = meta["p"].get<int>();
    b.meta_distance = distance_kind_from_string(meta.value("distance", "euclidean"));
    b.meta_weight = weight_kind_from_string(meta.value("weight", "uniform"));
    if (meta.contains("fixed_sites")) {
        if (!meta["fixed_sites"].is_array())
            throw ParseError("meta.json: fixed_sites must be an array");
        for (const auto& v : meta["fixed_sites"]) b.fixed_site_ids.push_back(v.get<int>());
    }

    if (fs::exists(base / "graph.csv")) b.graph = load_graph((base / "graph.csv").string());
    if (fs::exists(base / "activity.csv"))
        b.activity = load_activity((base / "activity.csv").string());
    if (fs::exists(base / "baseline.txt")) {
        for (const auto& line : detail::read_lines((base / "baseline.txt").string())) {
            const std::string t = detail::trim(line);
            if (t.empty()) continue;
            b.baseline_site_ids.push_back(static_cast<int>(detail::parse_int(t, "baseline id")));
        }
    }
    return b;
}

Instance make_instance(const InstanceBundle& bundle, DistanceKind distance, WeightKind weight,
                       std::shared_ptr<const DistanceMatrix> matrix) {
    Instance inst;
    inst.customers = bundle.customers;
    inst.sites = bundle.sites;
    inst.p = bundle.p;
    inst.distance_kind = distance;
    inst.fixed_sites = bundle.fixed_site_ids;
    inst.weight_model =
        make_weights(weight, bundle.customers, bundle.activity ? &*bundle.activity : nullptr);

    if (matrix) {
        if (matrix->kind != distance)
            throw ValidationError("supplied matrix kind does not match requested scenario");
        inst.distances = std::move(matrix);
    } else if (distance == DistanceKind::Euclidean) {
        inst.distances =
            std::make_shared<DistanceMatrix>(euclidean_matrix(bundle.customers, bundle.sites));
    } else {
        if (!bundle.graph)
            throw ValidationError("graph distances requested but the instance has no graph.csv");
        inst.distances = std::make_shared<DistanceMatrix>(
            graph_matrix(*bundle.graph, bundle.customers, bundle.sites));
    }
    inst.validate();
    return inst;
}

Instance load_instance(const std::string& dir) {
    const InstanceBundle b = load_bundle(dir);
    return make_instance(b, b.meta_distance, b.meta_weight);
}

}  // namespace pmedian
