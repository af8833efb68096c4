/// @file neighborhood.hpp
/// @brief Facility domain models (NEAR / QUAD) and the shake operators.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmedian/evaluation.hpp"
#include "pmedian/instance.hpp"
#include "pmedian/rng.hpp"

namespace pmedian {

enum class DomainKind : std::uint8_t { Near = 0, Quad = 1 };

std::string to_string(DomainKind k);
DomainKind domain_kind_from_string(const std::string& s);

// Per-site list of "close" sites; built once per (kind, d) and shared
// read-only.
struct DomainModel {
    DomainKind kind = DomainKind::Near;
    int d = 1;
    std::vector<std::vector<int>> lists;  // per site, min(d, |F|-1) entries

    const std::vector<int>& list_of(int site) const {
        return lists[static_cast<std::size_t>(site)];
    }
};

// d Euclidean-nearest other sites, ascending; ties by lower site id.
DomainModel build_near(const std::vector<CandidateSite>& sites, int d);
DomainModel build_near_serial(const std::vector<CandidateSite>& sites, int d);

// Round-robin over quadrants NE, NW, SW, SE taking each quadrant's nearest
// unselected site, skipping empty quadrants, until d sites are picked.
// Boundary rule: lat >=, lon > -> NE; lat >, lon <= -> NW; lat <=, lon < ->
// SW; lat <, lon >= -> SE; exact coordinate coincidence -> NE.
DomainModel build_quad(const std::vector<CandidateSite>& sites, int d);
DomainModel build_quad_serial(const std::vector<CandidateSite>& sites, int d);

DomainModel build_domain(DomainKind kind, const std::vector<CandidateSite>& sites, int d);

enum class ShakeMode : std::uint8_t { Close = 0, Rand = 1, None = 2 };

std::string to_string(ShakeMode m);
ShakeMode shake_mode_from_string(const std::string& s);

struct ShakeStats {
    std::uint64_t close_fallbacks = 0;  // CLOSE draws that fell back to RAND
};

// Replace min(k, p - fixed_prefix) uniformly chosen non-fixed open sites.
// CLOSE draws from the outgoing site's domain list (falling back to RAND when
// the whole list is already open); RAND draws a uniform closed site; NONE
// returns an identical copy. The domain model may be null unless mode==Close.
Solution shake(const Instance& inst, const Solution& sol, int k, ShakeMode mode,
               const DomainModel* domain, Rng& rng, ShakeStats* stats = nullptr);

}  // namespace pmedian
