/// @file experiment.hpp
/// @brief Experiment orchestration: scenario matrix x algorithms x seeds over
/// a worker pool, baseline comparison, and the station-expansion study.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmedian/config.hpp"
#include "pmedian/instance.hpp"
#include "pmedian/statistics.hpp"

namespace pmedian {

struct Scenario {
    DistanceKind distance = DistanceKind::Euclidean;
    WeightKind weight = WeightKind::Uniform;
};

struct ExperimentPlan {
    std::string instance_dir;
    std::vector<Scenario> scenarios;                       // non-empty
    std::vector<std::pair<std::string, AlgorithmConfig>> algorithms;  // (name, config)
    int runs = 30;
    double time_budget_s = 60.0;
    std::uint64_t base_seed = 1;
    std::string out_dir;
    int workers = 1;
    std::optional<std::string> baseline_file;  // default: instance baseline.txt
    bool write_run_dirs = true;                // per-run solution/trace files

    void validate() const;
};

struct ExperimentResult {
    std::vector<RunRecord> records;   // ordered by (scenario, algorithm, seed)
    std::vector<GroupSummary> summary;
    int failed_cells = 0;
};

// Runs every (scenario, algorithm, seed) cell, writes runs.csv, summary.csv,
// per-run artifacts, improvement.csv + ecdf.csv when a baseline exists, and
// pairwise Wilcoxon tables (tests.csv). Failed cells are recorded and
// skipped. Returns the in-memory records for callers that keep going.
ExperimentResult run_experiment(const ExperimentPlan& plan);

struct ExpansionPlan {
    std::string instance_dir;
    std::string baseline_file;         // empty: instance baseline.txt
    std::vector<int> targets;          // each > |baseline|
    AlgorithmConfig config;
    int seeds = 10;
    std::uint64_t base_seed = 1;
    double time_budget_s = 60.0;
    std::string out_dir;

    void validate() const;
};

struct ExpansionRow {
    int target = 0;                 // total stations (baseline row: |baseline|)
    double best_fitness = 0.0;
    double mean_walk_m = 0.0;
    double walk_reduction_pct = 0.0;  // vs the baseline-only evaluation
};

// Optimizes each target with fixed_prefix = baseline, warm-starting every
// target from the best solution of the previous one plus random fill. The
// first row is the baseline-only evaluation.
std::vector<ExpansionRow> run_expansion(const ExpansionPlan& plan);

}  // namespace pmedian
