#pragma once

// Witness constructions for the combinatorial lemmas behind the belief
// construction, and exhaustive drivers at finite levels and at level ω+1.

#include "ftspace/soberdrunk.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ftspace::sober {

/// Given v ↾ (γ+1) ∈ P_i(w ↾ (γ+1)), a state u ∈ P_i(w) with u ↾ γ = v ↾ γ: v's coin,
/// w_i, v_j below γ and w_j from γ on, with one extra opponent bit inserted below
/// each limit λ > γ of supp(w_i) whose λ-parity would otherwise be wrong. Returns
/// nullopt if the result fails the membership predicates. Throws PreconditionError
/// if the hypothesis fails.
std::optional<WState> block_witness(std::size_t player, const WState& w, const WState& v, const Ord& gamma);

/// Which of the three regions v lies in relative to w and the cut level c (the
/// predecessor of the level): 0 for P_i(w), 1 for π_c⁻¹(P_i(w ↾ c)) ∖ P_i(w), 2 for
/// the rest.
int region(std::size_t player, const WState& w, const WState& v);

/// Level λ+1, w_i(λ) = 0, β < λ: v with one opponent bit set at the least ξ ≥
/// max{β, o^λ(v_i), o^λ(v_j)} for which ξ+1 has the opposite λ-parity. Returns
/// nullopt unless u stays in v's region, agrees with v below β and has the other
/// λ-parity. Throws PreconditionError if the hypotheses fail.
std::optional<WState> parity_witness(std::size_t player, const WState& w, const WState& v, const Ord& beta);

/// Level β+2, w_i(β+1) = 0: v with its opponent bit at β flipped. Returns nullopt
/// unless u stays in v's region. Throws PreconditionError if the hypotheses fail.
std::optional<WState> flip_witness(std::size_t player, const WState& w, const WState& v, const Ord& beta);

struct LemmaReport {
    std::string lemma;  ///< which check, e.g. "block witness"
    std::string scope;
    CheckLog log;
};

/// Finite levels α ≤ max_level, exhaustively:
/// - block witness: every w, v, γ < α meeting the hypothesis gets a verified
///   witness, and a brute-force search agrees that one exists;
/// - bit flip: every w, v and every E_β ⊆ W^β;
/// - cylinder superset: every E in the stated field containing P_i(w) contains
///   π_γ⁻¹(P_i(w ↾ γ));
/// - limit cylinder superset (finite analog, β+1 ≤ α): via the least cylinder
///   containing P_i(w), and over every E_β when |W^β| ≤ 8.
std::vector<LemmaReport> check_lemmas_finite(std::size_t max_level = 3);

/// Level ω+1 over every state whose record supports lie in {0..max_position} ∪ {ω}:
/// - block witness: every w, every γ ≤ max_position+1 and γ = ω, every class of
///   v ↾ (γ+1);
/// - parity witness: every v, β ≤ max_base, against every w with w_i(ω) = 0;
/// - limit cylinder superset at λ = ω over the restrictions of those states,
///   β ≤ max_base.
std::vector<LemmaReport> check_lemmas_omega(std::size_t max_position = 5, std::size_t max_base = 2);

} // namespace ftspace::sober
