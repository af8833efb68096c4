#include "pmedian/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "pmedian/errors.hpp"

namespace pmedian {

double percent_improvement(double baseline_fitness, double run_fitness) {
    if (!(baseline_fitness > 0.0))
        throw ValidationError("percent_improvement needs a positive baseline fitness");
    return 100.0 * (baseline_fitness - run_fitness) / baseline_fitness;
}

std::vector<EcdfPoint> ecdf(std::vector<double> values) {
    if (values.empty()) throw ValidationError("ecdf of an empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    std::vector<EcdfPoint> out;
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        out.push_back(EcdfPoint{values[i], static_cast<double>(j) / n});
        i = j;
    }
    return out;
}

namespace {

// Midranks of the pooled sample; first n entries belong to a.
std::vector<double> midranks(const std::vector<double>& a, const std::vector<double>& b) {
    struct Tagged {
        double value;
        std::size_t origin;  // position in the pooled vector
    };
    std::vector<Tagged> pooled;
    pooled.reserve(a.size() + b.size());
    for (double v : a) pooled.push_back({v, pooled.size()});
    for (double v : b) pooled.push_back({v, pooled.size()});
    std::stable_sort(pooled.begin(), pooled.end(),
                     [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

    std::vector<double> ranks(pooled.size());
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[pooled[t].origin] = mid;
        i = j;
    }
    return ranks;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Two-sided exact p by enumerating every n-subset of the pooled ranks.
double exact_two_sided_p(const std::vector<double>& ranks, std::size_t n, double observed_w) {
    const std::size_t total = ranks.size();
    const double mean_w =
        static_cast<double>(n) * static_cast<double>(total + 1) / 2.0;
    const double threshold = std::abs(observed_w - mean_w) - 1e-9;

    std::uint64_t count = 0, extreme = 0;
    std::vector<std::size_t> pick(n);
    for (std::size_t t = 0; t < n; ++t) pick[t] = t;
    while (true) {
        double w = 0.0;
        for (std::size_t t : pick) w += ranks[t];
        ++count;
        if (std::abs(w - mean_w) >= threshold) ++extreme;

        // next combination
        std::size_t t = n;
        while (t > 0) {
            --t;
            if (pick[t] != t + total - n) {
                ++pick[t];
                for (std::size_t u = t + 1; u < n; ++u) pick[u] = pick[u - 1] + 1;
                break;
            }
            if (t == 0) return static_cast<double>(extreme) / static_cast<double>(count);
        }
    }
}

}  // namespace

WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw ValidationError("wilcoxon_rank_sum needs non-empty samples");
    const std::size_t n = a.size(), m = b.size();
    const std::vector<double> ranks = midranks(a, b);
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) w += ranks[i];

    WilcoxonResult res;
    res.statistic = w;
    if (n + m <= 12) {
        res.exact = true;
        res.p_value = exact_two_sided_p(ranks, n, w);
        return res;
    }

    // Normal approximation with tie-corrected variance and 0.5 continuity
    // correction on the U statistic.
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    const double total = nn + mm;
    const double u = w - nn * (nn + 1.0) / 2.0;
    const double mean_u = nn * mm / 2.0;

    std::map<double, std::size_t> tie_counts;
    for (double r : ranks) ++tie_counts[r];
    double tie_term = 0.0;
    for (const auto& [rank, count] : tie_counts) {
        const double t = static_cast<double>(count);
        tie_term += t * t * t - t;
    }
    const double var_u =
        nn * mm / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if (var_u <= 0.0) {  // fully tied pooled sample
        res.p_value = 1.0;
        return res;
    }
    const double diff = u - mean_u;
    const double cc = diff > 0 ? -0.5 : (diff < 0 ? 0.5 : 0.0);
    const double z = (diff + cc) / std::sqrt(var_u);
    res.p_value = std::clamp(2.0 * (1.0 - normal_cdf(std::abs(z))), 0.0, 1.0);
    return res;
}

double wilcoxon_one_sided_less(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw ValidationError("wilcoxon needs non-empty samples");
    const std::size_t n = a.size(), m = b.size();
    const std::vector<double> ranks = midranks(a, b);
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) w += ranks[i];

    if (n + m <= 12) {
        // P(W' <= w) over all subsets.
        const std::size_t total = ranks.size();
        std::uint64_t count = 0, at_most = 0;
        std::vector<std::size_t> pick(n);
        for (std::size_t t = 0; t < n; ++t) pick[t] = t;
        bool done = false;
        while (!done) {
            double wp = 0.0;
            for (std::size_t t : pick) wp += ranks[t];
            ++count;
            if (wp <= w + 1e-9) ++at_most;
            std::size_t t = n;
            done = true;
            while (t > 0) {
                --t;
                if (pick[t] != t + total - n) {
                    ++pick[t];
                    for (std::size_t u = t + 1; u < n; ++u) pick[u] = pick[u - 1] + 1;
                    done = false;
                    break;
                }
            }
        }
        return static_cast<double>(at_most) / static_cast<double>(count);
    }

    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    const double total = nn + mm;
    const double u = w - nn * (nn + 1.0) / 2.0;
    const double mean_u = nn * mm / 2.0;
    std::map<double, std::size_t> tie_counts;
    for (double r : ranks) ++tie_counts[r];
    double tie_term = 0.0;
    for (const auto& [rank, count] : tie_counts) {
        const double t = static_cast<double>(count);
        tie_term += t * t * t - t;
    }
    const double var_u =
        nn * mm / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if (var_u <= 0.0) return 1.0;
    const double z = (u - mean_u + 0.5) / std::sqrt(var_u);
    return std::clamp(normal_cdf(z), 0.0, 1.0);
}

double median(std::vector<double> values) {
    if (values.empty()) throw ValidationError("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::vector<GroupSummary> summarize(const std::vector<RunRecord>& records) {
    if (records.empty()) throw ValidationError("summarize needs at least one record");
    std::map<std::tuple<std::string, std::string, std::string>,
             std::pair<std::vector<double>, std::vector<double>>>
        groups;
    for (const auto& r : records) {
        auto& [fit, walk] = groups[{r.distance, r.weight, r.algorithm}];
        fit.push_back(r.final_fitness);
        walk.push_back(r.mean_walk_m);
    }
    std::vector<GroupSummary> out;
    for (const auto& [key, data] : groups) {
        const auto& [fit, walk] = data;
        GroupSummary g;
        g.distance = std::get<0>(key);
        g.weight = std::get<1>(key);
        g.algorithm = std::get<2>(key);
        g.runs = fit.size();
        g.fitness_min = *std::min_element(fit.begin(), fit.end());
        g.fitness_max = *std::max_element(fit.begin(), fit.end());
        g.fitness_mean = std::accumulate(fit.begin(), fit.end(), 0.0) /
                         static_cast<double>(fit.size());
        g.fitness_median = median(fit);
        g.walk_min = *std::min_element(walk.begin(), walk.end());
        g.walk_max = *std::max_element(walk.begin(), walk.end());
        g.walk_mean = std::accumulate(walk.begin(), walk.end(), 0.0) /
                      static_cast<double>(walk.size());
        g.walk_median = median(walk);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace pmedian
