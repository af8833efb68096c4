/// @file config.hpp
/// @brief Full per-algorithm parameter record, the flat key=value config file
/// format, and the tuned presets.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pmedian/local_search.hpp"
#include "pmedian/neighborhood.hpp"

namespace pmedian {

enum class Algorithm : std::uint8_t { Ga = 0, Ils = 1, Pso = 2, Sa = 3, Vns = 4 };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

enum class IterBudgetKind : std::uint8_t { Np5 = 0, P100 = 1, N2_100 = 2, M1 = 3 };

std::string to_string(IterBudgetKind k);
IterBudgetKind iter_budget_from_string(const std::string& s);

// Np/5 -> floor(N*p/5); 100p -> 100*p; 2N100 -> max(2N, 100); 1M -> 10^6.
std::uint64_t iteration_budget(IterBudgetKind kind, std::uint64_t n_customers, std::uint64_t p);

enum class GenerationKind : std::uint8_t { Rand = 0, Rand100 = 1, Start = 2 };

std::string to_string(GenerationKind k);
GenerationKind generation_from_string(const std::string& s);

enum class SelectionKind : std::uint8_t { Rand = 0, Better = 1, Worse = 2 };
enum class CrossoverKind : std::uint8_t { Merging = 0, OnePoint = 1, CupCap = 2, RandParent = 3 };
enum class ReplacementKind : std::uint8_t { Comma = 0, Plus = 1 };
enum class NextKind : std::uint8_t { Seq = 0, Dvns = 1 };
enum class CoolingKind : std::uint8_t { Lin = 0, Exp = 1, None = 2 };
enum class AcceptKind : std::uint8_t { Elitist = 0, Walk = 1, Prob = 2 };

std::string to_string(SelectionKind k);
std::string to_string(CrossoverKind k);
std::string to_string(ReplacementKind k);
std::string to_string(NextKind k);
std::string to_string(CoolingKind k);
std::string to_string(AcceptKind k);

struct GaConfig {
    int population = 14;
    int lambda = 10;
    SelectionKind selection = SelectionKind::Better;
    CrossoverKind crossover = CrossoverKind::CupCap;
    ShakeMode mutation_mode = ShakeMode::Rand;
    double mutation_prob = 0.91;
    ReplacementKind replacement = ReplacementKind::Comma;
};

struct IlsConfig {
    int npert = 6;  // [1, 20]
};

struct SaConfig {
    NextKind next = NextKind::Seq;
    double t0 = 4.45;  // [1, 100]
    CoolingKind cooling = CoolingKind::Exp;
    double cooling_opt = 0.39;
};

struct PsoConfig {
    int population = 29;
    double omega = 0.0001;  // [0, 1]
    double phi_p = 0.53;
    double phi_g = 0.69;
};

struct VnsConfig {
    NextKind next = NextKind::Seq;
    int k_max = 5;  // [1, 50]
    int k_big = 57; // consecutive non-improvements allowed, [1, 100]
    AcceptKind accept = AcceptKind::Elitist;
    double accept_prob = 0.1;  // [0, 1], PROB acceptance only
};

struct AlgorithmConfig {
    Algorithm algorithm = Algorithm::Ga;
    IterBudgetKind iter_budget = IterBudgetKind::Np5;
    double time_budget_s = 60.0;
    GenerationKind generation = GenerationKind::Rand;
    std::optional<DomainKind> domain_kind;
    int domain_d = 20;
    LocalSearchConfig localsearch;   // applied to the initial solution / ILS loop
    LocalSearchConfig localsearch2;  // VNS in-loop search
    ShakeMode shake_mode = ShakeMode::Rand;
    GaConfig ga;
    IlsConfig ils;
    SaConfig sa;
    PsoConfig pso;
    VnsConfig vns;
    std::uint64_t seed = 1;

    bool needs_domain() const;
    void validate() const;  // range checks per the parameter listing
};

// Flat key=value text (Table-style row names: algorithm, iter, localsearch,
// laux, impparam, domain, d, generation, shake, npert, next, t0, cooling,
// cooling_opt, localsearch2, laux2, k_max, K, accept, accept_prob,
// population, lambda, selection, crossover, mutation, mutation_prob,
// replacement, omega, phi_p, phi_g, seed, time_budget_s).
// Unknown keys raise ValidationError naming the key.
AlgorithmConfig parse_config_text(const std::string& text);
AlgorithmConfig load_config(const std::string& path);
std::string config_to_text(const AlgorithmConfig& cfg);

// Tuned configurations shipped as presets (one per algorithm).
AlgorithmConfig preset_config(Algorithm a);

}  // namespace pmedian
