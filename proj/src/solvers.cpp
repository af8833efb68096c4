#include "pmedian/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace pmedian {

namespace {

using Clock = std::chrono::steady_clock;

// Objective without state construction or validation; operators keep
// solutions valid by construction and tests check them via hooks.
double fitness_of(const Instance& inst, const Solution& sol) {
    const auto& w = inst.weight_model.weights;
    double total = 0.0;
    for (std::size_t i = 0; i < inst.n_customers(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int s : sol.open) {
            const double d = inst.dist(i, static_cast<std::size_t>(s));
            if (d < nearest) nearest = d;
        }
        total += w[i] * nearest;
    }
    return total;
}

std::vector<int> fixed_site_indices(const Instance& inst) {
    std::vector<int> out;
    out.reserve(inst.fixed_sites.size());
    for (int id : inst.fixed_sites) out.push_back(inst.site_index(id));
    return out;
}

Solution random_solution(const Instance& inst, Rng& rng) {
    Solution sol;
    sol.open = fixed_site_indices(inst);
    sol.fixed_prefix = static_cast<int>(sol.open.size());
    std::vector<std::uint8_t> fixed_flag(inst.n_sites(), 0);
    for (int s : sol.open) fixed_flag[static_cast<std::size_t>(s)] = 1;

    std::vector<int> pool;
    pool.reserve(inst.n_sites());
    for (int s = 0; s < static_cast<int>(inst.n_sites()); ++s)
        if (!fixed_flag[static_cast<std::size_t>(s)]) pool.push_back(s);

    const int need = inst.p - sol.fixed_prefix;
    for (int t = 0; t < need; ++t) {
        const int j = rng.uniform_int(t, static_cast<int>(pool.size()) - 1);
        std::swap(pool[static_cast<std::size_t>(t)], pool[static_cast<std::size_t>(j)]);
        sol.open.push_back(pool[static_cast<std::size_t>(t)]);
    }
    return sol;
}

// Scores every closed candidate as the fitness after adding it on top of
// curdist; identical arithmetic in the serial and parallel paths.
void score_additions(const Instance& inst, const std::vector<double>& curdist,
                     const std::vector<std::uint8_t>& open, std::vector<double>& scores,
                     bool parallel) {
    const std::int64_t f = static_cast<std::int64_t>(inst.n_sites());
    const auto& w = inst.weight_model.weights;
    auto score_one = [&](std::int64_t c) {
        if (open[static_cast<std::size_t>(c)]) {
            scores[static_cast<std::size_t>(c)] = std::numeric_limits<double>::infinity();
            return;
        }
        double total = 0.0;
        for (std::size_t i = 0; i < inst.n_customers(); ++i)
            total += w[i] * std::min(curdist[i], inst.dist(i, static_cast<std::size_t>(c)));
        scores[static_cast<std::size_t>(c)] = total;
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < f; ++c) score_one(c);
    } else {
        for (std::int64_t c = 0; c < f; ++c) score_one(c);
    }
}

Solution greedy_constructive_impl(const Instance& inst, bool parallel) {
    Solution sol;
    sol.open = fixed_site_indices(inst);
    sol.fixed_prefix = static_cast<int>(sol.open.size());

    std::vector<double> curdist(inst.n_customers(), std::numeric_limits<double>::infinity());
    std::vector<std::uint8_t> open(inst.n_sites(), 0);
    for (int s : sol.open) {
        open[static_cast<std::size_t>(s)] = 1;
        for (std::size_t i = 0; i < inst.n_customers(); ++i)
            curdist[i] = std::min(curdist[i], inst.dist(i, static_cast<std::size_t>(s)));
    }

    std::vector<double> scores(inst.n_sites());
    while (sol.p() < inst.p) {
        score_additions(inst, curdist, open, scores, parallel);
        int best = -1;
        for (int c = 0; c < static_cast<int>(inst.n_sites()); ++c)
            if (best < 0 || scores[static_cast<std::size_t>(c)] < scores[static_cast<std::size_t>(best)])
                best = c;
        sol.open.push_back(best);
        open[static_cast<std::size_t>(best)] = 1;
        for (std::size_t i = 0; i < inst.n_customers(); ++i)
            curdist[i] = std::min(curdist[i], inst.dist(i, static_cast<std::size_t>(best)));
    }
    return sol;
}

}  // namespace

Solution greedy_constructive(const Instance& inst) { return greedy_constructive_impl(inst, true); }

Solution greedy_constructive_serial(const Instance& inst) {
    return greedy_constructive_impl(inst, false);
}

Solution generate_initial(const Instance& inst, GenerationKind strategy, Rng& rng) {
    switch (strategy) {
        case GenerationKind::Rand: return random_solution(inst, rng);
        case GenerationKind::Rand100: {
            Solution best;
            double best_fit = std::numeric_limits<double>::infinity();
            for (int t = 0; t < 100; ++t) {
                Solution s = random_solution(inst, rng);
                const double f = fitness_of(inst, s);
                if (f < best_fit) {
                    best_fit = f;
                    best = std::move(s);
                }
            }
            return best;
        }
        case GenerationKind::Start: return greedy_constructive(inst);
    }
    throw ValidationError("unknown generation strategy");
}

namespace {

// Shared run bookkeeping: budgets, evaluation counting, incumbent + trace.
struct Runner {
    const Instance& inst;
    const AlgorithmConfig& cfg;
    const SolverHooks& hooks;
    const DomainModel* domain;
    Rng rng;
    Clock::time_point start = Clock::now();
    std::uint64_t iter_budget = 0;
    std::uint64_t iterations = 0;
    std::uint64_t evals = 0;
    Trace trace;
    Solution best;
    double best_fitness = std::numeric_limits<double>::infinity();
    ShakeStats shake_stats;

    Runner(const Instance& i, const AlgorithmConfig& c, const SolverHooks& h,
           const DomainModel* dom)
        : inst(i), cfg(c), hooks(h), domain(dom), rng(c.seed) {
        iter_budget = iteration_budget(c.iter_budget, i.n_customers(),
                                       static_cast<std::uint64_t>(i.p));
    }

    double elapsed_s() const {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }
    bool expired() const { return elapsed_s() >= cfg.time_budget_s; }

    double eval(const Solution& sol) {
        ++evals;
        const double f = fitness_of(inst, sol);
        if (hooks.on_candidate) hooks.on_candidate(sol, f);
        return f;
    }

    void offer(const Solution& sol, double fit, std::uint64_t iter) {
        if (fit < best_fitness) {
            best = sol;
            best_fitness = fit;
            trace.push_back(TracePoint{iter, evals, fit});
            if (hooks.on_improve) hooks.on_improve(sol, fit);
        }
    }

    Solution local_search(const Solution& sol, const LocalSearchConfig& ls) {
        return apply_local_search(inst, sol, ls, domain);
    }

    Solution do_shake(const Solution& sol, int k) {
        return shake(inst, sol, k, cfg.shake_mode, domain, rng, &shake_stats);
    }

    RunResult finish() {
        RunResult r;
        r.best = best;
        r.best_fitness = best_fitness;
        r.trace = std::move(trace);
        r.iterations = iterations;
        r.evals = evals;
        r.wall_time_s = elapsed_s();
        r.shake_close_fallbacks = shake_stats.close_fallbacks;
        return r;
    }
};

// --- GA operators ---------------------------------------------------------

struct Individual {
    Solution sol;
    double fitness = 0.0;
};

std::vector<std::size_t> by_fitness(const std::vector<Individual>& pop) {
    std::vector<std::size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return pop[a].fitness != pop[b].fitness ? pop[a].fitness < pop[b].fitness : a < b;
    });
    return idx;
}

std::pair<std::size_t, std::size_t> select_parents(const std::vector<Individual>& pop,
                                                   SelectionKind kind, Rng& rng) {
    const std::size_t n = pop.size();
    switch (kind) {
        case SelectionKind::Rand: {
            const int a = rng.uniform_int(0, static_cast<int>(n) - 1);
            int b = rng.uniform_int(0, static_cast<int>(n) - 2);
            if (b >= a) ++b;
            return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
        }
        case SelectionKind::Better: {
            const auto idx = by_fitness(pop);
            return {idx[0], idx[1]};
        }
        case SelectionKind::Worse: {
            const auto idx = by_fitness(pop);
            return {idx[n - 1], idx[n - 2]};
        }
    }
    return {0, 1};
}

// Replace duplicate entries (keeping first occurrences) with uniform unused
// sites.
void repair_duplicates(const Instance& inst, Solution& sol, Rng& rng) {
    std::vector<std::uint8_t> used(inst.n_sites(), 0);
    std::vector<std::size_t> broken;
    for (std::size_t t = 0; t < sol.open.size(); ++t) {
        const int s = sol.open[t];
        if (used[static_cast<std::size_t>(s)])
            broken.push_back(t);
        else
            used[static_cast<std::size_t>(s)] = 1;
    }
    const int n_sites = static_cast<int>(inst.n_sites());
    for (std::size_t t : broken) {
        int s;
        do {
            s = rng.uniform_int(0, n_sites - 1);
        } while (used[static_cast<std::size_t>(s)]);
        used[static_cast<std::size_t>(s)] = 1;
        sol.open[t] = s;
    }
}

Solution crossover_one_point(const Instance& inst, const Solution& a, const Solution& b,
                             Rng& rng) {
    const int p = a.p();
    const int cut = rng.uniform_int(0, p);
    Solution child;
    child.fixed_prefix = a.fixed_prefix;
    child.open.assign(a.open.begin(), a.open.begin() + cut);
    child.open.insert(child.open.end(), b.open.begin() + cut, b.open.end());
    repair_duplicates(inst, child, rng);
    return child;
}

// Nearest/second distances for an arbitrary-size site set; used by the
// merge-and-trim crossover where the working set exceeds p.
struct SetAssignment {
    std::vector<int> near1;
    std::vector<double> d1, d2;

    SetAssignment(const Instance& inst, const std::vector<int>& open) {
        const std::size_t n = inst.n_customers();
        near1.assign(n, -1);
        d1.assign(n, std::numeric_limits<double>::infinity());
        d2.assign(n, std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) {
            for (int s : open) {
                const double d = inst.dist(i, static_cast<std::size_t>(s));
                if (d < d1[i] || (d == d1[i] && s < near1[i])) {
                    d2[i] = d1[i];
                    d1[i] = d;
                    near1[i] = s;
                } else if (d < d2[i]) {
                    d2[i] = d;
                }
            }
        }
    }
};

Solution crossover_merging(const Instance& inst, const Solution& a, const Solution& b) {
    const int p = a.p();
    Solution work;
    work.fixed_prefix = a.fixed_prefix;
    work.open.assign(a.open.begin(), a.open.begin() + a.fixed_prefix);
    std::vector<int> rest;
    for (int q = a.fixed_prefix; q < p; ++q) rest.push_back(a.open[static_cast<std::size_t>(q)]);
    for (int q = b.fixed_prefix; q < p; ++q) rest.push_back(b.open[static_cast<std::size_t>(q)]);
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    work.open.insert(work.open.end(), rest.begin(), rest.end());

    const auto& w = inst.weight_model.weights;
    while (work.p() > p) {
        const SetAssignment asg(inst, work.open);
        // Removal cost per movable site: sum of w * (d2 - d1) over its
        // customers; drop the cheapest, ties to the lowest index.
        int drop_pos = -1;
        double drop_cost = 0.0;
        for (int q = work.fixed_prefix; q < work.p(); ++q) {
            const int site = work.open[static_cast<std::size_t>(q)];
            double cost = 0.0;
            for (std::size_t i = 0; i < inst.n_customers(); ++i)
                if (asg.near1[i] == site) cost += w[i] * (asg.d2[i] - asg.d1[i]);
            if (drop_pos < 0 || cost < drop_cost ||
                (cost == drop_cost && site < work.open[static_cast<std::size_t>(drop_pos)])) {
                drop_pos = q;
                drop_cost = cost;
            }
        }
        work.open.erase(work.open.begin() + drop_pos);
    }
    return work;
}

Solution crossover_cupcap(const Instance& inst, const Solution& a, const Solution& b) {
    const int p = a.p();
    Solution child;
    child.fixed_prefix = a.fixed_prefix;
    child.open.assign(a.open.begin(), a.open.begin() + a.fixed_prefix);

    std::vector<int> a_rest(a.open.begin() + a.fixed_prefix, a.open.end());
    std::vector<int> b_rest(b.open.begin() + b.fixed_prefix, b.open.end());
    std::sort(a_rest.begin(), a_rest.end());
    std::sort(b_rest.begin(), b_rest.end());
    std::vector<int> common, sym_diff;
    std::set_intersection(a_rest.begin(), a_rest.end(), b_rest.begin(), b_rest.end(),
                          std::back_inserter(common));
    std::set_symmetric_difference(a_rest.begin(), a_rest.end(), b_rest.begin(), b_rest.end(),
                                  std::back_inserter(sym_diff));
    child.open.insert(child.open.end(), common.begin(), common.end());

    std::vector<double> curdist(inst.n_customers(), std::numeric_limits<double>::infinity());
    for (int s : child.open)
        for (std::size_t i = 0; i < inst.n_customers(); ++i)
            curdist[i] = std::min(curdist[i], inst.dist(i, static_cast<std::size_t>(s)));

    const auto& w = inst.weight_model.weights;
    std::vector<std::uint8_t> taken(sym_diff.size(), 0);
    while (child.p() < p) {
        int best_t = -1;
        double best_score = 0.0;
        for (std::size_t t = 0; t < sym_diff.size(); ++t) {
            if (taken[t]) continue;
            double score = 0.0;
            for (std::size_t i = 0; i < inst.n_customers(); ++i)
                score += w[i] *
                         std::min(curdist[i],
                                  inst.dist(i, static_cast<std::size_t>(sym_diff[t])));
            if (best_t < 0 || score < best_score) {  // sym_diff ascending: ties keep lower
                best_t = static_cast<int>(t);
                best_score = score;
            }
        }
        const int site = sym_diff[static_cast<std::size_t>(best_t)];
        taken[static_cast<std::size_t>(best_t)] = 1;
        child.open.push_back(site);
        for (std::size_t i = 0; i < inst.n_customers(); ++i)
            curdist[i] = std::min(curdist[i], inst.dist(i, static_cast<std::size_t>(site)));
    }
    return child;
}

Solution crossover(const Instance& inst, CrossoverKind kind, const Solution& a,
                   const Solution& b, Rng& rng) {
    switch (kind) {
        case CrossoverKind::OnePoint: return crossover_one_point(inst, a, b, rng);
        case CrossoverKind::RandParent: return rng.uniform_int(0, 1) == 0 ? a : b;
        case CrossoverKind::Merging: return crossover_merging(inst, a, b);
        case CrossoverKind::CupCap: return crossover_cupcap(inst, a, b);
    }
    return a;
}

void replace_population(std::vector<Individual>& pop, std::vector<Individual>&& offspring,
                        ReplacementKind kind) {
    if (kind == ReplacementKind::Comma) {
        // Offspring overwrite the lambda worst incumbents.
        const auto idx = by_fitness(pop);
        const std::size_t lambda = offspring.size();
        for (std::size_t t = 0; t < lambda; ++t)
            pop[idx[pop.size() - 1 - t]] = std::move(offspring[t]);
    } else {
        const std::size_t mu = pop.size();
        for (auto& child : offspring) pop.push_back(std::move(child));
        const auto idx = by_fitness(pop);
        std::vector<Individual> next;
        next.reserve(mu);
        for (std::size_t t = 0; t < mu; ++t) next.push_back(std::move(pop[idx[t]]));
        pop = std::move(next);
    }
}

// --- next(i) strategies ----------------------------------------------------

// Shake sizes cycle in [1, cap]; DVNS draws from a truncated geometric
// (success 0.5) instead of the sequential pattern.
int next_shake_size(NextKind kind, std::uint64_t i, int cap, Rng& rng) {
    if (cap < 1) cap = 1;
    if (kind == NextKind::Seq) return static_cast<int>((i - 1) % static_cast<std::uint64_t>(cap)) + 1;
    const double u = rng.uniform01();
    double mass = 0.0;
    double norm = 1.0 - std::pow(0.5, cap);
    for (int k = 1; k <= cap; ++k) {
        mass += std::pow(0.5, k) / norm;
        if (u < mass) return k;
    }
    return cap;
}

constexpr int kSaShakeCap = 20;

}  // namespace

namespace {

void require_algorithm(const AlgorithmConfig& cfg, Algorithm expected) {
    if (cfg.algorithm != expected)
        throw ValidationError("config algorithm is " + to_string(cfg.algorithm) +
                              ", expected " + to_string(expected));
}

}  // namespace

RunResult run_ga(const Instance& inst, const AlgorithmConfig& cfg, const SolverHooks& hooks) {
    require_algorithm(cfg, Algorithm::Ga);
    return run_algorithm(inst, cfg, hooks);
}

RunResult run_ils(const Instance& inst, const AlgorithmConfig& cfg, const SolverHooks& hooks) {
    require_algorithm(cfg, Algorithm::Ils);
    return run_algorithm(inst, cfg, hooks);
}

RunResult run_pso(const Instance& inst, const AlgorithmConfig& cfg, const SolverHooks& hooks) {
    require_algorithm(cfg, Algorithm::Pso);
    return run_algorithm(inst, cfg, hooks);
}

RunResult run_sa(const Instance& inst, const AlgorithmConfig& cfg, const SolverHooks& hooks) {
    require_algorithm(cfg, Algorithm::Sa);
    return run_algorithm(inst, cfg, hooks);
}

RunResult run_vns(const Instance& inst, const AlgorithmConfig& cfg, const SolverHooks& hooks) {
    require_algorithm(cfg, Algorithm::Vns);
    return run_algorithm(inst, cfg, hooks);
}

namespace {

RunResult ga_loop(Runner& run, const Solution* warm_start) {
    const auto& cfg = run.cfg;
    const Instance& inst = run.inst;
    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(cfg.ga.population));
    for (int t = 0; t < cfg.ga.population; ++t) {
        Individual ind;
        ind.sol = (warm_start && t == 0) ? *warm_start
                                         : generate_initial(inst, cfg.generation, run.rng);
        ind.fitness = run.eval(ind.sol);
        run.offer(ind.sol, ind.fitness, 0);
        pop.push_back(std::move(ind));
    }

    for (std::uint64_t i = 1; i <= run.iter_budget && !run.expired(); ++i) {
        run.iterations = i;
        std::vector<Individual> offspring;
        offspring.reserve(static_cast<std::size_t>(cfg.ga.lambda));
        for (int l = 0; l < cfg.ga.lambda; ++l) {
            const auto [pa, pb] = select_parents(pop, cfg.ga.selection, run.rng);
            Individual child;
            child.sol = crossover(inst, cfg.ga.crossover, pop[pa].sol, pop[pb].sol, run.rng);
            if (run.rng.uniform01() < cfg.ga.mutation_prob)
                child.sol = shake(inst, child.sol, 1, cfg.ga.mutation_mode, run.domain, run.rng,
                                  &run.shake_stats);
            child.fitness = run.eval(child.sol);
            run.offer(child.sol, child.fitness, i);
            offspring.push_back(std::move(child));
        }
        replace_population(pop, std::move(offspring), cfg.ga.replacement);
    }
    return run.finish();
}

RunResult ils_loop(Runner& run, const Solution* warm_start) {
    const auto& cfg = run.cfg;
    Solution x = warm_start ? *warm_start : generate_initial(run.inst, cfg.generation, run.rng);
    x = run.local_search(x, cfg.localsearch);
    double fx = run.eval(x);
    run.offer(x, fx, 0);

    for (std::uint64_t i = 1; i <= run.iter_budget && !run.expired(); ++i) {
        run.iterations = i;
        Solution xp = run.do_shake(x, cfg.ils.npert);
        xp = run.local_search(xp, cfg.localsearch);
        const double fxp = run.eval(xp);
        if (fxp < fx) {  // always elitist
            x = std::move(xp);
            fx = fxp;
            run.offer(x, fx, i);
        }
    }
    return run.finish();
}

RunResult sa_loop(Runner& run, const Solution* warm_start) {
    const auto& cfg = run.cfg;
    Solution x = warm_start ? *warm_start : generate_initial(run.inst, cfg.generation, run.rng);
    x = run.local_search(x, cfg.localsearch);
    double fx = run.eval(x);
    run.offer(x, fx, 0);

    const double iter_total = static_cast<double>(run.iter_budget);
    for (std::uint64_t i = 1; i <= run.iter_budget && !run.expired(); ++i) {
        run.iterations = i;
        double t = 0.0;
        switch (cfg.sa.cooling) {
            case CoolingKind::Lin:
                t = cfg.sa.t0 * (1.0 - static_cast<double>(i) / iter_total);
                break;
            case CoolingKind::Exp:
                t = cfg.sa.t0 * std::pow(cfg.sa.cooling_opt, static_cast<double>(i));
                break;
            case CoolingKind::None:
                t = static_cast<double>(i);
                break;
        }
        const int k = next_shake_size(cfg.sa.next, i, kSaShakeCap, run.rng);
        Solution xp = run.do_shake(x, k);
        const double fxp = run.eval(xp);
        bool accept = fxp < fx;
        if (!accept) {
            const double kt = static_cast<double>(k) * t;
            const double de = fxp - fx;
            if (kt > 0.0 && run.rng.uniform01() < std::exp(-de / kt)) accept = true;
        }
        if (accept) {
            x = std::move(xp);
            fx = fxp;
            run.offer(x, fx, i);  // best-ever tracking
        }
    }
    return run.finish();
}

RunResult pso_loop(Runner& run, const Solution* warm_start) {
    const auto& cfg = run.cfg;
    const Instance& inst = run.inst;
    const int p = inst.p;
    const int fixed = static_cast<int>(inst.fixed_sites.size());
    const int n_sites = static_cast<int>(inst.n_sites());
    const double range = static_cast<double>(n_sites - 1);

    struct Particle {
        std::vector<double> pos, vel, pbest_pos;
        Solution sol, pbest_sol;
        double fitness = 0.0, pbest_fitness = 0.0;
    };

    std::vector<Particle> swarm(static_cast<std::size_t>(cfg.pso.population));
    for (std::size_t t = 0; t < swarm.size(); ++t) {
        Particle& q = swarm[t];
        q.sol = (warm_start && t == 0) ? *warm_start
                                       : generate_initial(inst, cfg.generation, run.rng);
        q.pos.assign(q.sol.open.begin(), q.sol.open.end());
        q.fitness = run.eval(q.sol);
        q.pbest_pos = q.pos;
        q.pbest_sol = q.sol;
        q.pbest_fitness = q.fitness;
        run.offer(q.sol, q.fitness, 0);
    }
    std::vector<double> gbest_pos;
    double gbest_fitness = std::numeric_limits<double>::infinity();
    for (const auto& q : swarm)
        if (q.pbest_fitness < gbest_fitness) {
            gbest_fitness = q.pbest_fitness;
            gbest_pos = q.pbest_pos;
        }
    // Velocities after the whole population exists, one particle at a time.
    for (auto& q : swarm) {
        q.vel.assign(static_cast<std::size_t>(p), 0.0);
        for (int f = fixed; f < p; ++f)
            q.vel[static_cast<std::size_t>(f)] = run.rng.uniform(-range, range);
    }

    std::vector<std::uint8_t> used(static_cast<std::size_t>(n_sites), 0);
    for (std::uint64_t i = 1; i <= run.iter_budget && !run.expired(); ++i) {
        run.iterations = i;
        for (auto& q : swarm) {
            for (int f = fixed; f < p; ++f) {
                const double rp = run.rng.uniform01();
                const double rg = run.rng.uniform01();
                const std::size_t fi = static_cast<std::size_t>(f);
                q.vel[fi] = cfg.pso.omega * q.vel[fi] +
                            cfg.pso.phi_p * rp * (q.pbest_pos[fi] - q.pos[fi]) +
                            cfg.pso.phi_g * rg * (gbest_pos[fi] - q.pos[fi]);
                q.pos[fi] += q.vel[fi];
            }
            // Decode: round, clamp, repair duplicates with uniform unused
            // sites; the position itself takes the repaired values.
            std::fill(used.begin(), used.end(), 0);
            for (int f = 0; f < p; ++f) {
                const std::size_t fi = static_cast<std::size_t>(f);
                int v;
                if (f < fixed) {
                    v = q.sol.open[fi];  // pinned
                } else {
                    v = static_cast<int>(std::llround(q.pos[fi]));
                    v = std::clamp(v, 0, n_sites - 1);
                    if (used[static_cast<std::size_t>(v)]) {
                        do {
                            v = run.rng.uniform_int(0, n_sites - 1);
                        } while (used[static_cast<std::size_t>(v)]);
                    }
                }
                used[static_cast<std::size_t>(v)] = 1;
                q.pos[fi] = static_cast<double>(v);
                q.sol.open[fi] = v;
            }
            q.fitness = run.eval(q.sol);
            if (q.fitness < q.pbest_fitness) {
                q.pbest_fitness = q.fitness;
                q.pbest_pos = q.pos;
                q.pbest_sol = q.sol;
                if (q.pbest_fitness < gbest_fitness) {
                    gbest_fitness = q.pbest_fitness;
                    gbest_pos = q.pbest_pos;
                    run.offer(q.pbest_sol, q.pbest_fitness, i);
                }
            }
        }
    }
    return run.finish();
}

RunResult vns_loop(Runner& run, const Solution* warm_start) {
    const auto& cfg = run.cfg;
    Solution x = warm_start ? *warm_start : generate_initial(run.inst, cfg.generation, run.rng);
    x = run.local_search(x, cfg.localsearch);
    double fx = run.eval(x);
    run.offer(x, fx, 0);

    std::uint64_t iter = 0;
    bool restart = true;
    while (restart && iter < run.iter_budget && !run.expired()) {
        restart = false;
        for (int j = 1; j <= cfg.vns.k_big && !restart; ++j) {
            for (int i = 1; i <= cfg.vns.k_max && !restart; ++i) {
                if (iter >= run.iter_budget || run.expired()) return run.finish();
                ++iter;
                run.iterations = iter;
                const int k =
                    next_shake_size(cfg.vns.next, static_cast<std::uint64_t>(i), cfg.vns.k_max,
                                    run.rng);
                Solution xp = run.do_shake(x, k);
                xp = run.local_search(xp, cfg.localsearch2);
                const double fxp = run.eval(xp);
                bool accept = false;
                switch (cfg.vns.accept) {
                    case AcceptKind::Elitist: accept = fxp < fx; break;
                    case AcceptKind::Walk: accept = true; break;
                    case AcceptKind::Prob:
                        accept = fxp < fx || run.rng.uniform01() < cfg.vns.accept_prob;
                        break;
                }
                if (accept) {
                    x = std::move(xp);
                    fx = fxp;
                    run.offer(x, fx, iter);
                    restart = true;  // accepted: restart the neighbourhood sweep
                }
            }
        }
    }
    return run.finish();
}

}  // namespace

RunResult run_algorithm(const Instance& inst, const AlgorithmConfig& cfg,
                        const SolverHooks& hooks, const Solution* warm_start,
                        const DomainModel* shared_domain) {
    cfg.validate();
    inst.validate();
    if (warm_start) validate_solution(inst, *warm_start);

    std::optional<DomainModel> local_domain;
    const DomainModel* domain = shared_domain;
    if (!domain && cfg.domain_kind) {
        local_domain = build_domain(*cfg.domain_kind, inst.sites, cfg.domain_d);
        domain = &*local_domain;
    }

    Runner run(inst, cfg, hooks, domain);
    switch (cfg.algorithm) {
        case Algorithm::Ga: return ga_loop(run, warm_start);
        case Algorithm::Ils: return ils_loop(run, warm_start);
        case Algorithm::Pso: return pso_loop(run, warm_start);
        case Algorithm::Sa: return sa_loop(run, warm_start);
        case Algorithm::Vns: return vns_loop(run, warm_start);
    }
    throw ValidationError("unknown algorithm");
}

}  // namespace pmedian
