/// @file solvers.hpp
/// @brief The five metaheuristic runners and the shared run machinery
/// (initial-solution generation, budgets, traces).
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pmedian/config.hpp"
#include "pmedian/evaluation.hpp"
#include "pmedian/local_search.hpp"

namespace pmedian {

struct TracePoint {
    std::uint64_t iter = 0;
    std::uint64_t evals = 0;
    double best_fitness = 0.0;
};

using Trace = std::vector<TracePoint>;

struct RunResult {
    Solution best;
    double best_fitness = 0.0;
    Trace trace;             // best-so-far improvements, non-increasing
    std::uint64_t iterations = 0;
    std::uint64_t evals = 0;
    double wall_time_s = 0.0;  // measured; excluded from deterministic outputs
    std::uint64_t shake_close_fallbacks = 0;
};

// Test instrumentation; both hooks may be empty. on_candidate sees every
// fully evaluated candidate solution, on_improve every new incumbent.
struct SolverHooks {
    std::function<void(const Solution&, double)> on_candidate;
    std::function<void(const Solution&, double)> on_improve;
};

// RAND: uniform p-subset of non-fixed sites after the fixed prefix.
// 100RAND: best of 100 such subsets. START: deterministic greedy add.
Solution generate_initial(const Instance& inst, GenerationKind strategy, Rng& rng);

// The START constructive as a standalone (used by generate_initial).
Solution greedy_constructive(const Instance& inst);
Solution greedy_constructive_serial(const Instance& inst);

RunResult run_ga(const Instance& inst, const AlgorithmConfig& cfg,
                 const SolverHooks& hooks = {});
RunResult run_ils(const Instance& inst, const AlgorithmConfig& cfg,
                  const SolverHooks& hooks = {});
RunResult run_pso(const Instance& inst, const AlgorithmConfig& cfg,
                  const SolverHooks& hooks = {});
RunResult run_sa(const Instance& inst, const AlgorithmConfig& cfg,
                 const SolverHooks& hooks = {});
RunResult run_vns(const Instance& inst, const AlgorithmConfig& cfg,
                  const SolverHooks& hooks = {});

// Dispatch on cfg.algorithm. warm_start, when given, replaces the generated
// initial solution (population algorithms seed their first individual with
// it). shared_domain skips the per-run domain build when the caller caches
// one per (kind, d).
RunResult run_algorithm(const Instance& inst, const AlgorithmConfig& cfg,
                        const SolverHooks& hooks = {},
                        const Solution* warm_start = nullptr,
                        const DomainModel* shared_domain = nullptr);

}  // namespace pmedian
