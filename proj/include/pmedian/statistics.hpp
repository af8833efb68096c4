/// @file statistics.hpp
/// @brief Run-set summaries, baseline improvement, ECDF, and the Wilcoxon
/// rank-sum test used for pairwise algorithm comparison.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmedian/solvers.hpp"

namespace pmedian {

struct RunRecord {
    std::string distance;   // scenario distance kind
    std::string weight;     // scenario weight kind
    std::string algorithm;
    std::uint64_t seed = 0;
    double final_fitness = 0.0;
    double mean_walk_m = 0.0;
    std::uint64_t iterations = 0;
    std::uint64_t evals = 0;
    double wall_time_s = 0.0;  // measured; kept out of deterministic files
    Trace trace;
};

// 100 * (baseline - run) / baseline; positive means the run beat the baseline.
double percent_improvement(double baseline_fitness, double run_fitness);

struct EcdfPoint {
    double value = 0.0;
    double fraction = 0.0;
};

// Step function over the sorted distinct values; final fraction is 1.
std::vector<EcdfPoint> ecdf(std::vector<double> values);

struct WilcoxonResult {
    double statistic = 0.0;  // rank sum of the first sample (midranks)
    double p_value = 1.0;
    bool exact = false;
};

// Two-sided Mann-Whitney / Wilcoxon rank-sum with midrank ties. Exact
// enumeration when |a|+|b| <= 12, otherwise normal approximation with tie
// correction and 0.5 continuity correction.
WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a,
                                 const std::vector<double>& b);

// One-sided p-value for "a tends smaller than b" (lower rank sum).
double wilcoxon_one_sided_less(const std::vector<double>& a,
                               const std::vector<double>& b);

struct GroupSummary {
    std::string distance;
    std::string weight;
    std::string algorithm;
    std::size_t runs = 0;
    double fitness_min = 0, fitness_max = 0, fitness_mean = 0, fitness_median = 0;
    double walk_min = 0, walk_max = 0, walk_mean = 0, walk_median = 0;
};

// Per (scenario, algorithm) min/max/mean/median of final_fitness and
// mean_walk_m, ordered by (distance, weight, algorithm).
std::vector<GroupSummary> summarize(const std::vector<RunRecord>& records);

double median(std::vector<double> values);

}  // namespace pmedian
