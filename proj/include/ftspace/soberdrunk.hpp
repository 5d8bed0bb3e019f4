#pragma once

// The sober-drunk spaces W^α: a nature coin plus one record per player. At finite
// levels n the states are enumerated and the players' beliefs are built level by
// level; at transfinite levels only the set-theoretic predicates are available.

#include "ftspace/lang.hpp"
#include "ftspace/ordinal.hpp"
#include "ftspace/typespace.hpp"
#include "ftspace/universal.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ftspace::sober {

using measure::FAMeasure;
using measure::SetField;

/// Player a is 0, player b is 1; the opponent of i is 1 - i.
inline constexpr std::size_t kPlayerA = 0;
inline constexpr std::size_t kPlayerB = 1;
inline std::size_t opponent(std::size_t i) { return 1 - i; }
std::string player_name(std::size_t i);

class WState {
public:
    WState() = default;
    /// Level 0: the records are empty. Throws DomainError if a record length differs
    /// from the level.
    WState(Ord level, bool heads, Record a, Record b);

    const Ord& level() const { return level_; }
    bool heads() const { return heads_; }
    const Record& record(std::size_t player) const { return player == kPlayerA ? a_ : b_; }
    bool bit(std::size_t player, const Ord& pos) const { return record(player).at(pos); }

    WState with_bit(std::size_t player, const Ord& pos, bool value) const;
    WState with_record(std::size_t player, Record r) const;
    WState with_heads(bool heads) const;

    friend bool operator==(const WState&, const WState&) = default;

private:
    Ord level_;
    bool heads_ = true;
    Record a_, b_;
};

/// w ↾ β. Throws DomainError if β exceeds the level.
WState restrict(const WState& w, const Ord& beta);

/// "(h, {0,3}, {w})" at any level.
std::string to_string(const WState& w);

// --- finite levels -------------------------------------------------------------

/// |W^n| = 2^{2n+1}.
std::size_t w_count(std::size_t n);

/// States of W^n in index order: lexicographic on (w0 with h first, the bits of r_a
/// from position 0, the bits of r_b). Throws BudgetExceeded above max_states.
std::vector<WState> enumerate_W(std::size_t n, std::size_t max_states = 1u << 13);
std::size_t index_of(const WState& w);
WState state_at(std::size_t n, std::size_t index);
/// "h.0110.1000" (level 0: "h" or "t").
std::string state_name(const WState& w);

// --- partitions and cylinders ----------------------------------------------------

/// v ∈ P_i(w). Throws DomainError at level 0 or if the levels differ.
bool partition_contains(std::size_t player, const WState& w, const WState& v);

/// Canonical key of P_i(w): equal keys exactly for states in the same block.
std::string partition_key(std::size_t player, const WState& w);

/// P_i(w) as a subset of W^n (finite levels).
Subset partition_block(std::size_t player, const WState& w);

/// Block number of every state of W^n for player i, numbered by minimal state.
std::vector<std::size_t> partition_labels(std::size_t n, std::size_t player);

/// [X_0 = w0], [X_i(β) = bit] and [λ-par(X_i) = parity] as subsets of W^n.
Subset cylinder_nature(std::size_t n, bool heads);
Subset cylinder_bit(std::size_t n, std::size_t player, std::size_t beta, bool bit);
Subset cylinder_parity(std::size_t n, std::size_t player, const Ord& lambda, Parity parity);

/// The same events as predicates at any level.
bool in_cylinder_nature(const WState& w, bool heads);
bool in_cylinder_bit(const WState& w, std::size_t player, const Ord& beta, bool bit);
bool in_cylinder_parity(const WState& w, std::size_t player, const Ord& lambda, Parity parity);

/// π_{m,n} as an index map W^n → W^m.
std::vector<std::size_t> projection(std::size_t m, std::size_t n);

// --- beliefs --------------------------------------------------------------------

/// T_i^α(w) for α = 1..n on the fields F(i, w), and the final types on Pow(W^n).
struct BeliefTower {
    std::size_t n = 0;
    /// level[α-1][i][w]
    std::vector<std::array<std::vector<FAMeasure>, 2>> level;
    /// final_types[i][w], on the powerset of W^n
    std::array<std::vector<FAMeasure>, 2> final_types;
};

/// Throws DomainError for n = 0, BudgetExceeded if |W^n| > max_states, and
/// std::logic_error if an outer or inner measure needed by an extension step is not
/// the required value.
BeliefTower build_beliefs(std::size_t n, std::size_t max_states = 512);

/// Players a, b and then `extra_players`, whose types are point masses.
types::TypeSpace soberdrunk_space(std::size_t n, const std::vector<std::string>& extra_players = {},
                                  std::size_t max_states = 512);
types::TypeSpace soberdrunk_space(const BeliefTower& tower, const std::vector<std::string>& extra_players = {});

/// One line per failed check; empty when everything holds.
struct CheckLog {
    std::size_t checks = 0;
    std::size_t failed = 0;
    std::vector<std::string> failures;  ///< the first few, described

    bool ok() const { return failed == 0; }
    template <class Describe>
    void expect(bool cond, Describe&& describe) {
        ++checks;
        if (cond) return;
        ++failed;
        if (failures.size() < 20) failures.push_back(describe());
    }
    void merge(const CheckLog& other);
};

/// Items (a), (b), (c), (d) and (f) of the main belief theorem on the final types:
/// constancy on blocks, block mass 1, nature mass, opponent-bit masses for β+1 < n,
/// and cylinder masses at base β depending only on w ↾ (β+1). Item (e) concerns
/// limit levels and is vacuous at finite n.
struct TheoremChecks {
    CheckLog a, b, c, d, f;
    bool ok() const { return a.ok() && b.ok() && c.ok() && d.ok() && f.ok(); }
};
TheoremChecks check_belief_theorem(const BeliefTower& tower);

/// Induction-hypothesis conditions 2 to 6 at every level of the tower.
CheckLog check_induction(const BeliefTower& tower);

/// [X_i(0)=1] = B̄_i^1([X_0=h]) ∪ B̄_i^1([X_0=t]) and, for β+1 < n,
/// [X_i(β+1)=1] = B̄_i^1([X_j(β)=1]) ∪ B̄_i^1([X_j(β)=0]).
CheckLog check_bit_identities(const types::TypeSpace& space, std::size_t n);

// --- expressions -------------------------------------------------------------------

/// φ_i^bit(β), defining [X_i(β) = bit] with depth β+1.
lang::Expr bit_expr(std::size_t player, std::size_t beta, bool bit);

/// nat(h), nat(t) and φ_i^b(β) for both players and bits, β + 1 <= max_depth.
std::vector<lang::Expr> bit_corpus(std::size_t max_depth);

struct SeparationReport {
    std::size_t n = 0, alpha = 0, player = 0;
    WState u, w;
    lang::Expr psi = lang::Expr::nat("h");
    std::size_t psi_depth = 0;
    bool restrictions_agree = false;        ///< u ↾ α = w ↾ α
    bool fingerprints_equal = false;        ///< at depth α
    bool fingerprints_differ_next = false;  ///< at depth α + 1
    bool corpus_agrees = false;             ///< every corpus expression of depth ≤ α
    std::size_t corpus_size = 0;
    bool psi_separates = false;             ///< u ∈ ψ, w ∉ ψ

    bool ok() const {
        return restrictions_agree && fingerprints_equal && fingerprints_differ_next && corpus_agrees &&
               psi_separates && psi_depth == alpha + 1;
    }
};

/// u, w at h with zero records except u_i(α) = 1. Throws DomainError unless α < n.
SeparationReport separation_demo(const types::TypeSpace& space, std::size_t n, std::size_t alpha,
                                 std::size_t player = kPlayerA);
SeparationReport separation_demo(std::size_t n, std::size_t alpha, std::size_t player = kPlayerA);

} // namespace ftspace::sober
