/// @file evaluation.hpp
/// @brief Objective evaluation with nearest/second-nearest bookkeeping for
/// O(1)-amortized swap deltas (fast-interchange support).
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "pmedian/instance.hpp"

namespace pmedian {

// Exactly p distinct site indices; the first fixed_prefix entries are the
// instance's immovable sites and are never touched by operators.
struct Solution {
    std::vector<int> open;  // site indices in [0, |F|)
    int fixed_prefix = 0;

    int p() const { return static_cast<int>(open.size()); }
    bool operator==(const Solution& other) const = default;
};

// Throws ValidationError on duplicates, out-of-range indices, wrong size, or
// a fixed prefix that does not match the instance.
void validate_solution(const Instance& inst, const Solution& sol);
bool is_valid_solution(const Instance& inst, const Solution& sol);

inline constexpr double kNoSecond = std::numeric_limits<double>::infinity();

// Per-customer nearest and second-nearest open facility. Equidistant sites
// resolve to the lower index, so the state is a pure function of the open set.
class AssignmentState {
  public:
    AssignmentState(const Instance& inst, const Solution& sol);

    double fitness() const { return fitness_; }
    const Instance& instance() const { return *inst_; }
    const Solution& solution() const { return solution_; }
    const std::vector<int>& nearest_site() const { return near1_; }
    const std::vector<double>& nearest_dist() const { return dist1_; }
    const std::vector<int>& second_site() const { return near2_; }   // -1 if p == 1
    const std::vector<double>& second_dist() const { return dist2_; }
    bool is_open(int site) const { return open_flag_[static_cast<std::size_t>(site)] != 0; }

    // fitness(L - out + in) - fitness(L) without touching the state.
    double swap_delta(int out_site, int in_site) const;

    // Replace out_site by in_site (same position in the open list), repairing
    // only affected customers. Cached fitness moves by exactly swap_delta.
    void apply_swap(int out_site, int in_site);

    // Customers whose nearest site is `site`, in id order.
    std::vector<int> cluster_of(int site) const;

  private:
    const Instance* inst_;
    Solution solution_;
    std::vector<int> near1_, near2_;
    std::vector<double> dist1_, dist2_;
    std::vector<std::uint8_t> open_flag_;
    double fitness_ = 0.0;

    void rescan_customer(std::size_t i);
};

// Eq.-style objective: sum over customers of weight * distance to the nearest
// open site. Customers accumulate in id order.
double evaluate(const Instance& inst, const Solution& sol);

// Weighted mean nearest distance under report weights that are independent of
// the optimization weights. Throws on an all-zero report weighting.
double mean_walk_distance(const Instance& inst, const Solution& sol,
                          const WeightModel& report_weights);

// Evaluation-only variants for arbitrary site sets (any count >= 1, distinct,
// in range) such as incumbent baselines; p is not enforced.
double fitness_of_sites(const Instance& inst, const std::vector<int>& site_indices);
double mean_walk_of_sites(const Instance& inst, const std::vector<int>& site_indices,
                          const WeightModel& report_weights);

}  // namespace pmedian
