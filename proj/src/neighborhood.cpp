#include "pmedian/neighborhood.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pmedian/distance.hpp"

namespace pmedian {

std::string to_string(DomainKind k) { return k == DomainKind::Near ? "NEAR" : "QUAD"; }

DomainKind domain_kind_from_string(const std::string& s) {
    if (s == "NEAR") return DomainKind::Near;
    if (s == "QUAD") return DomainKind::Quad;
    throw ValidationError("unknown domain model: '" + s + "'");
}

std::string to_string(ShakeMode m) {
    switch (m) {
        case ShakeMode::Close: return "CLOSE";
        case ShakeMode::Rand: return "RAND";
        case ShakeMode::None: return "NONE";
    }
    return "NONE";
}

ShakeMode shake_mode_from_string(const std::string& s) {
    if (s == "CLOSE") return ShakeMode::Close;
    if (s == "RAND") return ShakeMode::Rand;
    if (s == "NONE") return ShakeMode::None;
    throw ValidationError("unknown shake mode: '" + s + "'");
}

namespace {

struct SitePlane {
    std::vector<XY> xy;
    const std::vector<CandidateSite>* sites;

    explicit SitePlane(const std::vector<CandidateSite>& s) : sites(&s) {
        const LocalProjection proj = instance_projection({}, s);
        xy.reserve(s.size());
        for (const auto& site : s) xy.push_back(proj.to_xy(GeoPoint{site.lat, site.lon}));
    }

    double dist2(std::size_t a, std::size_t b) const {
        const double dx = xy[a].x - xy[b].x;
        const double dy = xy[a].y - xy[b].y;
        return dx * dx + dy * dy;
    }
};

// (squared distance, external id) ordering; lower id wins ties.
struct Ranked {
    double d2;
    int id;
    int index;
    bool operator<(const Ranked& o) const {
        return d2 != o.d2 ? d2 < o.d2 : id < o.id;
    }
};

std::vector<int> near_list_for(const SitePlane& plane, std::size_t owner, int d) {
    const auto& sites = *plane.sites;
    std::vector<Ranked> ranked;
    ranked.reserve(sites.size() - 1);
    for (std::size_t j = 0; j < sites.size(); ++j) {
        if (j == owner) continue;
        ranked.push_back({plane.dist2(owner, j), sites[j].id, static_cast<int>(j)});
    }
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(d), ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                      ranked.end());
    std::vector<int> out;
    out.reserve(k);
    for (std::size_t t = 0; t < k; ++t) out.push_back(ranked[t].index);
    return out;
}

// Quadrants in round-robin order NE, NW, SW, SE. Boundary rule: lat >=,
// lon > -> NE; lat >, lon <= -> NW; lat <=, lon < -> SW; lat <, lon >= -> SE;
// exact coincidence -> NE.
int quadrant_of(const CandidateSite& owner, const CandidateSite& other) {
    const double dlat = other.lat - owner.lat;
    const double dlon = other.lon - owner.lon;
    if (dlat == 0.0 && dlon == 0.0) return 0;
    if (dlat >= 0.0 && dlon > 0.0) return 0;   // NE
    if (dlat > 0.0 && dlon <= 0.0) return 1;   // NW
    if (dlat <= 0.0 && dlon < 0.0) return 2;   // SW
    return 3;                                  // SE
}

std::vector<int> quad_list_for(const SitePlane& plane, std::size_t owner, int d) {
    const auto& sites = *plane.sites;
    std::array<std::vector<Ranked>, 4> quads;
    for (std::size_t j = 0; j < sites.size(); ++j) {
        if (j == owner) continue;
        const int q = quadrant_of(sites[owner], sites[j]);
        quads[static_cast<std::size_t>(q)].push_back(
            {plane.dist2(owner, j), sites[j].id, static_cast<int>(j)});
    }
    for (auto& q : quads) std::sort(q.begin(), q.end());

    const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(d), sites.size() - 1);
    std::vector<int> out;
    out.reserve(want);
    std::array<std::size_t, 4> cursor{0, 0, 0, 0};
    while (out.size() < want) {
        bool any = false;
        for (std::size_t q = 0; q < 4 && out.size() < want; ++q) {
            if (cursor[q] < quads[q].size()) {
                out.push_back(quads[q][cursor[q]++].index);
                any = true;
            }
        }
        if (!any) break;  // all quadrants exhausted
    }
    return out;
}

template <typename PerSite>
DomainModel build_domain_with(DomainKind kind, const std::vector<CandidateSite>& sites, int d,
                              PerSite per_site, bool parallel) {
    if (d < 1) throw ValidationError("domain list size d must be >= 1");
    if (sites.size() < 2) throw ValidationError("domain model needs at least 2 sites");
    DomainModel model;
    model.kind = kind;
    model.d = d;
    model.lists.resize(sites.size());
    const std::int64_t n = static_cast<std::int64_t>(sites.size());
    const SitePlane plane(sites);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t i = 0; i < n; ++i)
            model.lists[static_cast<std::size_t>(i)] =
                per_site(plane, static_cast<std::size_t>(i), d);
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            model.lists[static_cast<std::size_t>(i)] =
                per_site(plane, static_cast<std::size_t>(i), d);
    }
    return model;
}

}  // namespace

DomainModel build_near(const std::vector<CandidateSite>& sites, int d) {
    return build_domain_with(DomainKind::Near, sites, d, near_list_for, true);
}

DomainModel build_near_serial(const std::vector<CandidateSite>& sites, int d) {
    return build_domain_with(DomainKind::Near, sites, d, near_list_for, false);
}

DomainModel build_quad(const std::vector<CandidateSite>& sites, int d) {
    return build_domain_with(DomainKind::Quad, sites, d, quad_list_for, true);
}

DomainModel build_quad_serial(const std::vector<CandidateSite>& sites, int d) {
    return build_domain_with(DomainKind::Quad, sites, d, quad_list_for, false);
}

DomainModel build_domain(DomainKind kind, const std::vector<CandidateSite>& sites, int d) {
    return kind == DomainKind::Near ? build_near(sites, d) : build_quad(sites, d);
}

Solution shake(const Instance& inst, const Solution& sol, int k, ShakeMode mode,
               const DomainModel* domain, Rng& rng, ShakeStats* stats) {
    if (k < 0) throw ValidationError("shake k must be >= 0");
    Solution out = sol;
    if (mode == ShakeMode::None || k == 0) return out;
    if (mode == ShakeMode::Close && domain == nullptr)
        throw ValidationError("CLOSE shake requires a domain model");

    const int p = out.p();
    const int movable = p - out.fixed_prefix;
    const int swaps = std::min(k, movable);
    if (swaps <= 0 || p >= static_cast<int>(inst.n_sites())) return out;  // no closed sites

    std::vector<std::uint8_t> open(inst.n_sites(), 0);
    for (int s : out.open) open[static_cast<std::size_t>(s)] = 1;

    // Uniformly choose `swaps` distinct movable positions (partial
    // Fisher-Yates over the position range).
    std::vector<int> positions;
    positions.reserve(static_cast<std::size_t>(movable));
    for (int q = out.fixed_prefix; q < p; ++q) positions.push_back(q);
    for (int t = 0; t < swaps; ++t)
        std::swap(positions[static_cast<std::size_t>(t)],
                  positions[static_cast<std::size_t>(rng.uniform_int(t, movable - 1))]);

    const int n_sites = static_cast<int>(inst.n_sites());
    auto draw_uniform_closed = [&]() {
        while (true) {
            int s = rng.uniform_int(0, n_sites - 1);
            if (!open[static_cast<std::size_t>(s)]) return s;
        }
    };

    for (int t = 0; t < swaps; ++t) {
        const int pos = positions[static_cast<std::size_t>(t)];
        const int out_site = out.open[static_cast<std::size_t>(pos)];
        int in_site = -1;
        if (mode == ShakeMode::Rand) {
            in_site = draw_uniform_closed();
        } else {
            std::vector<int> candidates;
            for (int c : domain->list_of(out_site))
                if (!open[static_cast<std::size_t>(c)]) candidates.push_back(c);
            if (candidates.empty()) {
                if (stats) ++stats->close_fallbacks;
                in_site = draw_uniform_closed();
            } else {
                in_site = candidates[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<int>(candidates.size()) - 1))];
            }
        }
        out.open[static_cast<std::size_t>(pos)] = in_site;
        open[static_cast<std::size_t>(out_site)] = 0;
        open[static_cast<std::size_t>(in_site)] = 1;
    }
    return out;
}

}  // namespace pmedian
