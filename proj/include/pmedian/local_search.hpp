/// @file local_search.hpp
/// @brief The three improvement procedures: fast interchange (FI), alternate
/// location-allocation (IALT), and domain-restricted interchange rounds (IMP).
///
/// All three are deterministic descent procedures: fitness never increases,
/// the fixed prefix is never moved, and the output depends only on the input
/// solution and configuration.
#pragma once

#include <cstdint>
#include <string>

#include "pmedian/evaluation.hpp"
#include "pmedian/neighborhood.hpp"

namespace pmedian {

enum class LocalSearchKind : std::uint8_t { None = 0, Fi = 1, Ialt = 2, Imp = 3 };

std::string to_string(LocalSearchKind k);
LocalSearchKind local_search_kind_from_string(const std::string& s);

struct LocalSearchConfig {
    LocalSearchKind kind = LocalSearchKind::None;
    int laux = 9;       // IALT shortlist size
    int imp_param = 1;  // IMP rounds

    void validate() const;
};

// Best-improvement vertex substitution: every closed candidate is scored
// against its best paired removal; the globally best strictly-improving swap
// is applied until none exists. Ties break on the lowest (in, out) pair.
Solution fi(const Instance& inst, const Solution& sol);
Solution fi_serial(const Instance& inst, const Solution& sol);

// One FI scan step used by both variants and by the benchmark: returns the
// best (delta, in, out) over all closed candidates, delta >= 0 when no swap
// improves.
struct SwapChoice {
    double delta = 0.0;
    int in_site = -1;
    int out_site = -1;
};
SwapChoice fi_best_swap(const AssignmentState& state);
SwapChoice fi_best_swap_serial(const AssignmentState& state);

// Alternate location-allocation: per cluster, the laux candidate sites
// nearest to the cluster's weighted centroid are scored as replacement
// 1-medians; the pass repeats until nothing changes.
Solution ialt(const Instance& inst, const Solution& sol, int laux);

// imp_param rounds; per round every movable open site tries its domain list
// and applies its best improving swap before the next site is visited.
Solution imp(const Instance& inst, const Solution& sol, int imp_param,
             const DomainModel& domain);

// Dispatch on config.kind (None returns the input unchanged).
Solution apply_local_search(const Instance& inst, const Solution& sol,
                            const LocalSearchConfig& cfg, const DomainModel* domain);

}  // namespace pmedian
