#include "pmedian/local_search.hpp"

#include <algorithm>
#include <cmath>

#include "pmedian/distance.hpp"

namespace pmedian {

std::string to_string(LocalSearchKind k) {
    switch (k) {
        case LocalSearchKind::None: return "NONE";
        case LocalSearchKind::Fi: return "FI";
        case LocalSearchKind::Ialt: return "IALT";
        case LocalSearchKind::Imp: return "IMP";
    }
    return "NONE";
}

LocalSearchKind local_search_kind_from_string(const std::string& s) {
    if (s == "NONE" || s == "-" || s == "---") return LocalSearchKind::None;
    if (s == "FI") return LocalSearchKind::Fi;
    if (s == "IALT") return LocalSearchKind::Ialt;
    if (s == "IMP") return LocalSearchKind::Imp;
    throw ValidationError("unknown local search: '" + s + "'");
}

void LocalSearchConfig::validate() const {
    if (kind == LocalSearchKind::Ialt && laux < 1)
        throw ValidationError("IALT requires laux >= 1");
    if (kind == LocalSearchKind::Imp && imp_param < 1)
        throw ValidationError("IMP requires imp_param >= 1");
}

namespace {

// Candidate ordering: better delta first, then lowest (in, out) site index.
bool better_choice(double delta, int in, int out, const SwapChoice& than) {
    if (than.in_site < 0) return true;
    if (delta != than.delta) return delta < than.delta;
    if (in != than.in_site) return in < than.in_site;
    return out < than.out_site;
}

// Whitaker-style scan for one incoming candidate: the gain that is
// independent of the removed site, plus per-removal loss terms, evaluated in
// one pass over the customers.
void consider_candidate(const AssignmentState& state, const std::vector<int>& pos_of_site,
                        int in_site, std::vector<double>& loss, SwapChoice& best) {
    const Instance& inst = state.instance();
    const Solution& sol = state.solution();
    const auto& w = inst.weight_model.weights;
    const auto& d1 = state.nearest_dist();
    const auto& d2 = state.second_dist();
    const auto& n1 = state.nearest_site();

    std::fill(loss.begin(), loss.end(), 0.0);
    double gain = 0.0;
    for (std::size_t i = 0; i < inst.n_customers(); ++i) {
        const double din = inst.dist(i, static_cast<std::size_t>(in_site));
        if (din < d1[i]) {
            gain += w[i] * (din - d1[i]);
        } else {
            const int pos = pos_of_site[static_cast<std::size_t>(n1[i])];
            loss[static_cast<std::size_t>(pos)] += w[i] * (std::min(din, d2[i]) - d1[i]);
        }
    }
    for (int q = sol.fixed_prefix; q < sol.p(); ++q) {
        const double delta = gain + loss[static_cast<std::size_t>(q)];
        const int out_site = sol.open[static_cast<std::size_t>(q)];
        if (better_choice(delta, in_site, out_site, best))
            best = SwapChoice{delta, in_site, out_site};
    }
}

std::vector<int> position_of_site(const AssignmentState& state) {
    std::vector<int> pos(state.instance().n_sites(), -1);
    const auto& open = state.solution().open;
    for (std::size_t q = 0; q < open.size(); ++q)
        pos[static_cast<std::size_t>(open[q])] = static_cast<int>(q);
    return pos;
}

}  // namespace

SwapChoice fi_best_swap_serial(const AssignmentState& state) {
    const Instance& inst = state.instance();
    const std::vector<int> pos_of_site = position_of_site(state);
    std::vector<double> loss(state.solution().open.size());
    SwapChoice best;
    for (int f = 0; f < static_cast<int>(inst.n_sites()); ++f) {
        if (state.is_open(f)) continue;
        consider_candidate(state, pos_of_site, f, loss, best);
    }
    return best;
}

SwapChoice fi_best_swap(const AssignmentState& state) {
    const Instance& inst = state.instance();
    const std::vector<int> pos_of_site = position_of_site(state);
    const int n_sites = static_cast<int>(inst.n_sites());
    SwapChoice best;
#pragma omp parallel
    {
        std::vector<double> loss(state.solution().open.size());
        SwapChoice local;
#pragma omp for schedule(dynamic, 512) nowait
        for (int f = 0; f < n_sites; ++f) {
            if (state.is_open(f)) continue;
            consider_candidate(state, pos_of_site, f, loss, local);
        }
#pragma omp critical
        {
            if (local.in_site >= 0 &&
                better_choice(local.delta, local.in_site, local.out_site, best))
                best = local;
        }
    }
    return best;
}

namespace {

template <typename BestSwap>
Solution fi_impl(const Instance& inst, const Solution& sol, BestSwap best_swap) {
    AssignmentState state(inst, sol);
    while (true) {
        const SwapChoice c = best_swap(state);
        // Strict improvement only; a delta too small to move the cached
        // fitness would not terminate.
        if (c.in_site < 0 || !(c.delta < 0.0) || !(state.fitness() + c.delta < state.fitness()))
            break;
        state.apply_swap(c.out_site, c.in_site);
    }
    return state.solution();
}

}  // namespace

Solution fi(const Instance& inst, const Solution& sol) {
    return fi_impl(inst, sol, [](const AssignmentState& s) { return fi_best_swap(s); });
}

Solution fi_serial(const Instance& inst, const Solution& sol) {
    return fi_impl(inst, sol, [](const AssignmentState& s) { return fi_best_swap_serial(s); });
}

Solution ialt(const Instance& inst, const Solution& sol, int laux) {
    if (laux < 1) throw ValidationError("IALT requires laux >= 1");
    AssignmentState state(inst, sol);
    const auto& customers = inst.customers;
    const auto& sites = inst.sites;
    const auto& w = inst.weight_model.weights;

    // Planar coordinates for centroid geometry.
    const LocalProjection proj = instance_projection(customers, sites);
    std::vector<XY> cust_xy(customers.size()), site_xy(sites.size());
    for (std::size_t i = 0; i < customers.size(); ++i)
        cust_xy[i] = proj.to_xy(GeoPoint{customers[i].lat, customers[i].lon});
    for (std::size_t j = 0; j < sites.size(); ++j)
        site_xy[j] = proj.to_xy(GeoPoint{sites[j].lat, sites[j].lon});

    struct Ranked {
        double d2;
        int id;
        int index;
        bool operator<(const Ranked& o) const { return d2 != o.d2 ? d2 < o.d2 : id < o.id; }
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int q = state.solution().fixed_prefix; q < state.solution().p(); ++q) {
            const int owner = state.solution().open[static_cast<std::size_t>(q)];
            const std::vector<int> cluster = state.cluster_of(owner);
            if (cluster.empty()) continue;

            double sw = 0.0, sx = 0.0, sy = 0.0;
            for (int i : cluster) {
                const double wi = w[static_cast<std::size_t>(i)];
                sw += wi;
                sx += wi * cust_xy[static_cast<std::size_t>(i)].x;
                sy += wi * cust_xy[static_cast<std::size_t>(i)].y;
            }
            XY centroid;
            if (sw > 0.0) {
                centroid = {sx / sw, sy / sw};
            } else {  // all-zero weights in the cluster: plain mean
                for (int i : cluster) {
                    centroid.x += cust_xy[static_cast<std::size_t>(i)].x;
                    centroid.y += cust_xy[static_cast<std::size_t>(i)].y;
                }
                centroid.x /= static_cast<double>(cluster.size());
                centroid.y /= static_cast<double>(cluster.size());
            }

            // laux candidate sites nearest to the centroid.
            std::vector<Ranked> ranked;
            ranked.reserve(sites.size());
            for (std::size_t j = 0; j < sites.size(); ++j) {
                const double dx = site_xy[j].x - centroid.x;
                const double dy = site_xy[j].y - centroid.y;
                ranked.push_back({dx * dx + dy * dy, sites[j].id, static_cast<int>(j)});
            }
            const std::size_t k =
                std::min<std::size_t>(static_cast<std::size_t>(laux), ranked.size());
            std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                              ranked.end());

            auto cluster_cost = [&](int site) {
                double c = 0.0;
                for (int i : cluster)
                    c += w[static_cast<std::size_t>(i)] *
                         inst.dist(static_cast<std::size_t>(i), static_cast<std::size_t>(site));
                return c;
            };

            const double cost_owner = cluster_cost(owner);
            double best_cost = cost_owner;
            int best_site = owner;
            for (std::size_t t = 0; t < k; ++t) {
                const int c = ranked[t].index;
                if (c == owner || state.is_open(c)) continue;
                const double cost = cluster_cost(c);
                if (cost < best_cost ||
                    (cost == best_cost && best_site != owner &&
                     sites[static_cast<std::size_t>(c)].id <
                         sites[static_cast<std::size_t>(best_site)].id)) {
                    best_cost = cost;
                    best_site = c;
                }
            }
            if (best_site == owner) continue;

            const double delta = state.swap_delta(owner, best_site);
            if (delta < 0.0 && state.fitness() + delta < state.fitness()) {
                state.apply_swap(owner, best_site);
                changed = true;
            }
        }
    }
    return state.solution();
}

Solution imp(const Instance& inst, const Solution& sol, int imp_param, const DomainModel& domain) {
    if (imp_param < 1) throw ValidationError("IMP requires imp_param >= 1");
    if (domain.lists.size() != inst.n_sites())
        throw ValidationError("domain model does not match instance site count");
    AssignmentState state(inst, sol);
    for (int round = 0; round < imp_param; ++round) {
        for (int q = state.solution().fixed_prefix; q < state.solution().p(); ++q) {
            const int site = state.solution().open[static_cast<std::size_t>(q)];
            double best_delta = 0.0;
            int best_in = -1;
            for (int c : domain.list_of(site)) {
                if (state.is_open(c)) continue;
                const double delta = state.swap_delta(site, c);
                if (delta < 0.0 &&
                    (best_in < 0 || delta < best_delta || (delta == best_delta && c < best_in))) {
                    best_delta = delta;
                    best_in = c;
                }
            }
            if (best_in >= 0 && state.fitness() + best_delta < state.fitness())
                state.apply_swap(site, best_in);
        }
    }
    return state.solution();
}

Solution apply_local_search(const Instance& inst, const Solution& sol,
                            const LocalSearchConfig& cfg, const DomainModel* domain) {
    switch (cfg.kind) {
        case LocalSearchKind::None: return sol;
        case LocalSearchKind::Fi: return fi(inst, sol);
        case LocalSearchKind::Ialt: return ialt(inst, sol, cfg.laux);
        case LocalSearchKind::Imp:
            if (!domain) throw ValidationError("IMP local search requires a domain model");
            return imp(inst, sol, cfg.imp_param, *domain);
    }
    return sol;
}

}  // namespace pmedian
