#pragma once

// Description equivalence by partition refinement, canonical description
// fingerprints, and the description quotient of a finite type space.

#include "ftspace/typespace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ftspace::universal {

using types::TypeSpace;

/// Π_0, Π_1, ... up to the first fixpoint. Blocks of each partition are numbered
/// by their minimal state.
struct RefinementTower {
    std::vector<std::vector<std::size_t>> block_of;  ///< block_of[d][m]
    std::vector<std::size_t> block_count;
    std::size_t stable_depth = 0;                    ///< d*: Π_{d*+1} = Π_{d*}

    /// Π_d, saturating at d*.
    const std::vector<std::size_t>& partition(std::size_t d) const {
        return block_of[std::min(d, stable_depth)];
    }
    std::vector<Subset> blocks(std::size_t d) const;
};

/// Throws DomainError if the space does not validate.
RefinementTower refine(const TypeSpace& space);

/// Space-independent token for the depth-d description of every state, "d<d>:<hex>".
/// Equal tokens (across spaces on the same nature space and players) mean agreement
/// on every expression of depth at most d.
std::vector<std::string> fingerprints(const TypeSpace& space, std::size_t d);
std::string desc_fingerprint(const TypeSpace& space, std::size_t m, std::size_t d);

struct QuotientSpace {
    TypeSpace space;
    std::vector<std::size_t> q;  ///< state → block
    RefinementTower tower;
};

/// States "q0", "q1", ... are the Π_{d*} blocks in tower order; Σ* is the powerset;
/// T*_i(q(m)) is the pushforward of T_i(m) along q. Throws DomainError if the space
/// does not validate.
QuotientSpace quotient(const TypeSpace& space);

struct CheckReport {
    bool ok = true;
    std::string failure;
    std::optional<std::size_t> witness;
};

/// Fingerprints of m and f(m) agree at every depth up to max_depth. Throws
/// PreconditionError if f is not a type morphism.
CheckReport check_morphism_preserves_descriptions(const std::vector<std::size_t>& f, const TypeSpace& source,
                                                  const TypeSpace& target, std::size_t max_depth);

struct TerminalityReport {
    std::size_t morphisms_to_quotient = 0;
    bool unique_morphism_is_q = false;
    bool quotient_idempotent = false;        ///< quotient(Q) ≅ Q via its own quotient map
    bool quotient_fingerprints_injective = false;
    /// Morphism count per extra target (must be ≤ 1); empty for targets whose
    /// fingerprints are not injective, where no claim is made.
    std::vector<std::optional<std::size_t>> extra_target_counts;
    bool extra_targets_ok = true;

    bool ok() const {
        return morphisms_to_quotient == 1 && unique_morphism_is_q && quotient_idempotent &&
               quotient_fingerprints_injective && extra_targets_ok;
    }
};

/// Brute-force finite check of terminality of the quotient. Throws BudgetExceeded if
/// an enumeration would exceed max_maps.
TerminalityReport check_terminality(const TypeSpace& space, const std::vector<TypeSpace>& extra_targets = {},
                                    std::size_t max_maps = 1'000'000);

} // namespace ftspace::universal
