#include "pmedian/evaluation.hpp"

#include <algorithm>
#include <cmath>

namespace pmedian {

void validate_solution(const Instance& inst, const Solution& sol) {
    const int p = inst.p;
    const int f = static_cast<int>(inst.n_sites());
    if (sol.p() != p)
        throw ValidationError("solution has " + std::to_string(sol.p()) + " sites, expected " +
                              std::to_string(p));
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(f), 0);
    for (int s : sol.open) {
        if (s < 0 || s >= f)
            throw ValidationError("site index " + std::to_string(s) + " out of range");
        if (seen[static_cast<std::size_t>(s)]++)
            throw ValidationError("duplicate site index " + std::to_string(s) + " in solution");
    }
    if (sol.fixed_prefix != static_cast<int>(inst.fixed_sites.size()))
        throw ValidationError("solution fixed_prefix does not match instance fixed sites");
    for (int i = 0; i < sol.fixed_prefix; ++i)
        if (inst.sites[static_cast<std::size_t>(sol.open[static_cast<std::size_t>(i)])].id !=
            inst.fixed_sites[static_cast<std::size_t>(i)])
            throw ValidationError("solution fixed prefix differs from instance fixed sites");
}

bool is_valid_solution(const Instance& inst, const Solution& sol) {
    try {
        validate_solution(inst, sol);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

AssignmentState::AssignmentState(const Instance& inst, const Solution& sol) : inst_(&inst) {
    validate_solution(inst, sol);
    solution_ = sol;
    const std::size_t n = inst.n_customers();
    near1_.assign(n, -1);
    near2_.assign(n, -1);
    dist1_.assign(n, 0.0);
    dist2_.assign(n, kNoSecond);
    open_flag_.assign(inst.n_sites(), 0);
    for (int s : sol.open) open_flag_[static_cast<std::size_t>(s)] = 1;

    fitness_ = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        rescan_customer(i);
        fitness_ += inst.weight_model.weights[i] * dist1_[i];
    }
}

// Rebuild (near1, near2) for customer i from the open list. Equal distances
// resolve to the lower site index.
void AssignmentState::rescan_customer(std::size_t i) {
    int best = -1, second = -1;
    double bd = std::numeric_limits<double>::infinity(), sd = kNoSecond;
    for (int s : solution_.open) {
        const double d = inst_->dist(i, static_cast<std::size_t>(s));
        if (d < bd || (d == bd && s < best)) {
            second = best;
            sd = bd;
            best = s;
            bd = d;
        } else if (d < sd || (d == sd && s < second)) {
            second = s;
            sd = d;
        }
    }
    near1_[i] = best;
    dist1_[i] = bd;
    near2_[i] = second;
    dist2_[i] = second >= 0 ? sd : kNoSecond;
}

double AssignmentState::swap_delta(int out_site, int in_site) const {
    if (out_site == in_site) throw ValidationError("swap of a site with itself");
    if (!is_open(out_site))
        throw ValidationError("swap_delta: out site " + std::to_string(out_site) + " not open");
    if (is_open(in_site))
        throw ValidationError("swap_delta: in site " + std::to_string(in_site) + " already open");
    const std::size_t n = inst_->n_customers();
    const auto& w = inst_->weight_model.weights;
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double din = inst_->dist(i, static_cast<std::size_t>(in_site));
        const double nd = near1_[i] == out_site ? std::min(dist2_[i], din)
                                                : std::min(dist1_[i], din);
        delta += w[i] * (nd - dist1_[i]);
    }
    return delta;
}

void AssignmentState::apply_swap(int out_site, int in_site) {
    if (out_site == in_site) throw ValidationError("swap of a site with itself");
    if (!is_open(out_site))
        throw ValidationError("apply_swap: out site " + std::to_string(out_site) + " not open");
    if (is_open(in_site))
        throw ValidationError("apply_swap: in site " + std::to_string(in_site) + " already open");

    auto pos = std::find(solution_.open.begin(), solution_.open.end(), out_site);
    if (static_cast<int>(pos - solution_.open.begin()) < solution_.fixed_prefix)
        throw ValidationError("apply_swap would move a fixed site");
    *pos = in_site;
    open_flag_[static_cast<std::size_t>(out_site)] = 0;
    open_flag_[static_cast<std::size_t>(in_site)] = 1;

    const std::size_t n = inst_->n_customers();
    const auto& w = inst_->weight_model.weights;
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double old_d1 = dist1_[i];
        if (near1_[i] == out_site || near2_[i] == out_site) {
            rescan_customer(i);
        } else {
            const double din = inst_->dist(i, static_cast<std::size_t>(in_site));
            if (din < dist1_[i] || (din == dist1_[i] && in_site < near1_[i])) {
                near2_[i] = near1_[i];
                dist2_[i] = dist1_[i];
                near1_[i] = in_site;
                dist1_[i] = din;
            } else if (near2_[i] >= 0 &&
                       (din < dist2_[i] || (din == dist2_[i] && in_site < near2_[i]))) {
                near2_[i] = in_site;
                dist2_[i] = din;
            }
        }
        delta += w[i] * (dist1_[i] - old_d1);
    }
    fitness_ += delta;
}

std::vector<int> AssignmentState::cluster_of(int site) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < near1_.size(); ++i)
        if (near1_[i] == site) out.push_back(static_cast<int>(i));
    return out;
}

double evaluate(const Instance& inst, const Solution& sol) {
    return AssignmentState(inst, sol).fitness();
}

double mean_walk_distance(const Instance& inst, const Solution& sol,
                          const WeightModel& report_weights) {
    validate_solution(inst, sol);
    if (report_weights.weights.size() != inst.n_customers())
        throw ValidationError("report weight vector length does not match customer count");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < inst.n_customers(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int s : sol.open) nearest = std::min(nearest, inst.dist(i, static_cast<std::size_t>(s)));
        num += report_weights.weights[i] * nearest;
        den += report_weights.weights[i];
    }
    if (den <= 0.0) throw ValidationError("all report weights are zero");
    return num / den;
}

}  // namespace pmedian
