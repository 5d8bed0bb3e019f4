#include "ftspace/lemmas.hpp"

#include "ftspace/error.hpp"

#include <map>
#include <set>
#include <unordered_map>

namespace ftspace::sober {

namespace {

Record with_support(const Ord& length, std::span<const Ord> support) {
    return Record(length, std::vector<Ord>(support.begin(), support.end()));
}

// v at a higher level, with no new bits.
WState pad(const WState& v, const Ord& level) {
    return WState(level, v.heads(), with_support(level, v.record(kPlayerA).support()),
                  with_support(level, v.record(kPlayerB).support()));
}

Ord max_ord(const Ord& x, const Ord& y) { return x < y ? y : x; }

// Least ξ ≥ m with ξ+1 of the given parity.
Ord parity_slot(const Ord& m, Parity wanted) { return m.succ().parity() == wanted ? m : m.succ(); }

Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

} // namespace

std::optional<WState> block_witness(std::size_t i, const WState& w, const WState& v, const Ord& gamma) {
    const Ord& alpha = w.level();
    if (!(v.level() == alpha)) throw DomainError("states live on different levels");
    if (!(gamma < alpha)) throw PreconditionError("gamma must lie below the level");
    const Ord next = gamma.succ();
    if (!partition_contains(i, restrict(w, next), restrict(v, next)))
        throw PreconditionError("v restricted to gamma+1 is not in the block of w restricted to gamma+1");
    const std::size_t j = opponent(i);

    std::vector<Ord> uj;
    for (const auto& p : v.record(j).support())
        if (p < gamma) uj.push_back(p);
    for (const auto& p : w.record(j).support())
        if (!(p < gamma)) uj.push_back(p);
    Record rj(alpha, uj);
    for (const auto& lambda : w.record(i).support()) {
        if (!lambda.is_limit() || !(gamma < lambda)) continue;
        const Parity target = lambda_parity(w.record(j), lambda);
        if (lambda_parity(rj, lambda) == target) continue;
        Ord m = max_ord(gamma, max_ord(o_lambda(rj, lambda), o_lambda(w.record(i), lambda)));
        rj = rj.with(parity_slot(m, target), true);
    }
    WState u = w.with_heads(v.heads()).with_record(j, std::move(rj));
    if (!partition_contains(i, w, u) || !(restrict(u, gamma) == restrict(v, gamma))) return std::nullopt;
    return u;
}

int region(std::size_t i, const WState& w, const WState& v) {
    if (!w.level().is_successor()) throw DomainError("regions are defined at successor levels");
    if (partition_contains(i, w, v)) return 0;
    const Ord cut = w.level().predecessor();
    if (!cut.is_zero() && partition_contains(i, restrict(w, cut), restrict(v, cut))) return 1;
    return 2;
}

std::optional<WState> parity_witness(std::size_t i, const WState& w, const WState& v, const Ord& beta) {
    const Ord& alpha = w.level();
    if (!alpha.is_successor() || !alpha.predecessor().is_limit())
        throw PreconditionError("the level must be a limit plus one");
    const Ord lambda = alpha.predecessor();
    if (w.bit(i, lambda)) throw PreconditionError("w_i(lambda) must be 0");
    if (!(beta < lambda)) throw PreconditionError("beta must lie below lambda");
    const std::size_t j = opponent(i);
    const Parity old = lambda_parity(v.record(j), lambda);
    Ord m = max_ord(beta, max_ord(o_lambda(v.record(i), lambda), o_lambda(v.record(j), lambda)));
    WState u = v.with_bit(j, parity_slot(m, flip(old)), true);
    if (lambda_parity(u.record(j), lambda) == old) return std::nullopt;
    if (!(restrict(u, beta) == restrict(v, beta))) return std::nullopt;
    if (region(i, w, u) != region(i, w, v)) return std::nullopt;
    return u;
}

std::optional<WState> flip_witness(std::size_t i, const WState& w, const WState& v, const Ord& beta) {
    const Ord& alpha = w.level();
    if (!(alpha == beta.succ().succ())) throw PreconditionError("the level must be beta+2");
    if (w.bit(i, beta.succ())) throw PreconditionError("w_i(beta+1) must be 0");
    const std::size_t j = opponent(i);
    WState u = v.with_bit(j, beta, !v.bit(j, beta));
    if (!(restrict(u, beta) == restrict(v, beta))) return std::nullopt;
    if (region(i, w, u) != region(i, w, v)) return std::nullopt;
    return u;
}

// --- finite drivers ------------------------------------------------------------------

namespace {

// "levels lo..hi", or a note when the range is empty.
std::string levels(std::size_t lo, std::size_t hi) {
    if (hi < lo) return "no level in range (needs level " + std::to_string(lo) + ")";
    return "levels " + std::to_string(lo) + ".." + std::to_string(hi);
}

std::string describe(const std::string& what, std::size_t i, const WState& w, const WState& v) {
    return what + ": player " + player_name(i) + ", w = " + to_string(w) + ", v = " + to_string(v);
}

LemmaReport finite_block(std::size_t max_level) {
    LemmaReport rep{"block witness", levels(1, max_level) + ", exhaustive", {}};
    for (std::size_t alpha = 1; alpha <= max_level; ++alpha) {
        auto states = enumerate_W(alpha);
        for (std::size_t i : {kPlayerA, kPlayerB}) {
            auto labels = partition_labels(alpha, i);
            for (std::size_t gamma = 0; gamma < alpha; ++gamma) {
                auto down = projection(gamma, alpha);
                auto up = projection(gamma + 1, alpha);
                auto labels_next = partition_labels(gamma + 1, i);
                // Images of each block under π_γ, for the brute-force existence check.
                std::map<std::size_t, Subset> image;
                for (std::size_t k = 0; k < states.size(); ++k) {
                    auto& s = image.try_emplace(labels[k], Subset(w_count(gamma))).first->second;
                    s.set(down[k]);
                }
                for (std::size_t wk = 0; wk < states.size(); ++wk)
                    for (std::size_t vk = 0; vk < states.size(); ++vk) {
                        if (labels_next[up[wk]] != labels_next[up[vk]]) continue;
                        const auto& w = states[wk];
                        const auto& v = states[vk];
                        auto u = block_witness(i, w, v, Ord(gamma));
                        rep.log.expect(u.has_value(), [&] { return describe("no witness", i, w, v); });
                        rep.log.expect(image.at(labels[wk]).test(down[vk]),
                                       [&] { return describe("brute force finds no witness", i, w, v); });
                    }
            }
        }
    }
    return rep;
}

LemmaReport finite_flip(std::size_t max_level) {
    LemmaReport rep{"bit flip", levels(2, max_level) + ", exhaustive over w, v and E", {}};
    for (std::size_t beta = 0; beta + 2 <= max_level; ++beta) {
        const std::size_t alpha = beta + 2;
        auto states = enumerate_W(alpha);
        auto down = projection(beta, alpha);
        const std::size_t base = w_count(beta);
        const bool all_sets = base <= 8;
        for (std::size_t i : {kPlayerA, kPlayerB})
            for (const auto& w : states) {
                if (w.bit(i, Ord(beta + 1))) continue;
                for (std::size_t vk = 0; vk < states.size(); ++vk) {
                    const auto& v = states[vk];
                    auto u = flip_witness(i, w, v, Ord(beta));
                    rep.log.expect(u.has_value(), [&] { return describe("no witness", i, w, v); });
                    if (!u) continue;
                    const std::size_t uk = index_of(*u);
                    rep.log.expect(u->bit(opponent(i), Ord(beta)) != v.bit(opponent(i), Ord(beta)),
                                   [&] { return describe("opponent bit not flipped", i, w, v); });
                    if (all_sets) {
                        bool kept = true;
                        for (std::size_t mask = 0; mask < (std::size_t{1} << base); ++mask)
                            if (((mask >> down[vk]) & 1u) && !((mask >> down[uk]) & 1u)) kept = false;
                        rep.log.expect(kept, [&] { return describe("witness leaves some E", i, w, v); });
                    } else {
                        rep.log.expect(down[uk] == down[vk], [&] { return describe("witness leaves E", i, w, v); });
                    }
                }
            }
    }
    return rep;
}

LemmaReport finite_cylinder(std::size_t max_level) {
    LemmaReport rep{"cylinder superset", levels(2, max_level) + ", every E in the field", {}};
    for (std::size_t alpha = 2; alpha <= max_level; ++alpha) {
        const std::size_t gamma = alpha - 1;
        const std::size_t size = w_count(alpha);
        auto to_gamma = projection(gamma, alpha);
        auto to_below = projection(gamma - 1, alpha);
        for (std::size_t i : {kPlayerA, kPlayerB}) {
            auto labels = partition_labels(alpha, i);
            auto labels_gamma = partition_labels(gamma, i);
            std::set<std::size_t> done;
            for (std::size_t wk = 0; wk < size; ++wk) {
                if (!done.insert(labels[wk]).second) continue;
                Subset block(size), lifted(size);
                for (std::size_t k = 0; k < size; ++k) {
                    if (labels[k] == labels[wk]) block.set(k);
                    if (labels_gamma[to_gamma[k]] == labels_gamma[to_gamma[wk]]) lifted.set(k);
                }
                // Atoms: fibers of π_{γ-1,α} split by the lifted block.
                std::map<std::pair<std::size_t, bool>, Subset> pieces;
                for (std::size_t k = 0; k < size; ++k)
                    pieces.try_emplace({to_below[k], lifted.test(k)}, Subset(size)).first->second.set(k);
                std::size_t forced = 0, inside = 0;
                std::vector<std::size_t> free;
                std::size_t idx = 0;
                for (const auto& [key, atom] : pieces) {
                    const std::size_t bit = std::size_t{1} << idx;
                    if (key.second) inside |= bit;
                    if (atom.intersects(block))
                        forced |= bit;
                    else
                        free.push_back(bit);
                    ++idx;
                }
                if (free.size() > 20) {
                    rep.log.expect((inside & ~forced) == 0,
                                   [&] { return "superset fails for the least E at " + state_name(state_at(alpha, wk)); });
                    continue;
                }
                for (std::size_t mask = 0; mask < (std::size_t{1} << free.size()); ++mask) {
                    std::size_t e = forced;
                    for (std::size_t f = 0; f < free.size(); ++f)
                        if ((mask >> f) & 1u) e |= free[f];
                    rep.log.expect((inside & ~e) == 0, [&] {
                        return "E contains the block of " + state_name(state_at(alpha, wk)) +
                               " but not the lifted block, player " + player_name(i);
                    });
                }
            }
        }
    }
    return rep;
}

LemmaReport finite_limit_cylinder(std::size_t max_level) {
    LemmaReport rep{"limit cylinder superset", "finite analog, " + levels(1, max_level), {}};
    for (std::size_t alpha = 1; alpha <= max_level; ++alpha) {
        const std::size_t size = w_count(alpha);
        for (std::size_t beta = 0; beta + 1 <= alpha; ++beta) {
            auto down = projection(beta, alpha);
            auto up = projection(beta + 1, alpha);
            const std::size_t base = w_count(beta);
            for (std::size_t i : {kPlayerA, kPlayerB}) {
                auto labels = partition_labels(alpha, i);
                auto labels_next = partition_labels(beta + 1, i);
                std::set<std::size_t> done;
                for (std::size_t wk = 0; wk < size; ++wk) {
                    if (!done.insert(labels[wk]).second) continue;
                    Subset least(base);
                    for (std::size_t k = 0; k < size; ++k)
                        if (labels[k] == labels[wk]) least.set(down[k]);
                    Subset needed(base);
                    for (std::size_t vk = 0; vk < size; ++vk)
                        if (labels_next[up[vk]] == labels_next[up[wk]]) needed.set(down[vk]);
                    rep.log.expect(needed.is_subset_of(least), [&] {
                        return "least cylinder misses part of the lifted block at " + state_name(state_at(alpha, wk));
                    });
                    if (base > 8) continue;
                    for (std::size_t mask = 0; mask < (std::size_t{1} << base); ++mask) {
                        Subset e(base, mask);
                        if (!least.is_subset_of(e)) continue;
                        rep.log.expect(needed.is_subset_of(e), [&] {
                            return "some E fails at " + state_name(state_at(alpha, wk));
                        });
                    }
                }
            }
        }
    }
    return rep;
}

} // namespace

std::vector<LemmaReport> check_lemmas_finite(std::size_t max_level) {
    if (max_level == 0) throw DomainError("max_level must be at least 1");
    if (max_level > 4) throw BudgetExceeded("exhaustive lemma checks are limited to levels up to 4");
    return {finite_block(max_level), finite_flip(max_level), finite_cylinder(max_level),
            finite_limit_cylinder(max_level)};
}

// --- level ω+1 -------------------------------------------------------------------------

namespace {

// Every state at `level` whose supports lie in `positions`.
std::vector<WState> universe(const Ord& level, const std::vector<Ord>& positions) {
    std::vector<WState> out;
    const std::size_t p = positions.size();
    for (bool heads : {true, false})
        for (std::size_t a = 0; a < (std::size_t{1} << p); ++a)
            for (std::size_t b = 0; b < (std::size_t{1} << p); ++b) {
                std::vector<Ord> sa, sb;
                for (std::size_t k = 0; k < p; ++k) {
                    if ((a >> k) & 1u) sa.push_back(positions[k]);
                    if ((b >> k) & 1u) sb.push_back(positions[k]);
                }
                out.emplace_back(level, heads, Record(level, sa), Record(level, sb));
            }
    return out;
}

// Distinct restrictions to `cut`, grouped by their P_i block key.
std::unordered_map<std::string, std::vector<WState>> classes_by_block(const std::vector<WState>& states,
                                                                      std::size_t i, const Ord& cut) {
    std::unordered_map<std::string, std::vector<WState>> out;
    std::set<std::string> seen;
    for (const auto& x : states) {
        WState r = restrict(x, cut);
        if (!seen.insert(to_string(r)).second) continue;
        out[partition_key(i, r)].push_back(std::move(r));
    }
    return out;
}

LemmaReport omega_block(const std::vector<WState>& states, std::size_t max_position) {
    const Ord omega = Ord::omega();
    const Ord level = omega.succ();
    LemmaReport rep{"block witness", "level w+1, supports in {0.." + std::to_string(max_position) + ",w}, gamma in {0.." +
                              std::to_string(max_position + 1) + ",w}",
                    {}};
    std::vector<Ord> gammas;
    for (std::size_t g = 0; g <= max_position + 1; ++g) gammas.emplace_back(g);
    gammas.push_back(omega);
    for (std::size_t i : {kPlayerA, kPlayerB})
        for (const auto& gamma : gammas) {
            const Ord cut = gamma.succ();
            auto classes = classes_by_block(states, i, cut);
            for (const auto& w : states) {
                auto it = classes.find(partition_key(i, restrict(w, cut)));
                if (it == classes.end()) {
                    rep.log.expect(false, [&] { return "own restriction class missing for " + to_string(w); });
                    continue;
                }
                for (const auto& vr : it->second) {
                    WState v = pad(vr, level);
                    auto u = block_witness(i, w, v, gamma);
                    rep.log.expect(u.has_value(), [&] {
                        return describe("no witness at gamma " + gamma.to_string(), i, w, v);
                    });
                }
            }
        }
    return rep;
}

LemmaReport omega_parity(const std::vector<WState>& states, std::size_t max_position, std::size_t max_base) {
    const Ord omega = Ord::omega();
    LemmaReport rep{"parity witness", "level w+1, supports in {0.." + std::to_string(max_position) + ",w}, beta <= " +
                              std::to_string(max_base) + ", all w with w_i(w) = 0",
                    {}};
    for (std::size_t i : {kPlayerA, kPlayerB}) {
        // Region of x relative to w depends on the block keys of x and x ↾ ω only.
        std::map<std::string, std::set<std::string>> w_keys;
        for (const auto& w : states)
            if (!w.bit(i, omega)) w_keys[partition_key(i, restrict(w, omega))].insert(partition_key(i, w));
        auto region_of = [&](const std::string& full, const std::string& cut, const std::string& wf,
                             const std::string& wc) { return full == wf ? 0 : cut == wc ? 1 : 2; };
        // One representative w per key pair, to hand the witness function a concrete state.
        std::map<std::pair<std::string, std::string>, const WState*> w_rep;
        for (const auto& w : states)
            if (!w.bit(i, omega))
                w_rep.try_emplace({partition_key(i, restrict(w, omega)), partition_key(i, w)}, &w);

        for (const auto& v : states)
            for (std::size_t beta = 0; beta <= max_base; ++beta) {
                const std::string vf = partition_key(i, v), vc = partition_key(i, restrict(v, omega));
                // Any w works for building u; the witness does not depend on w.
                const WState& some_w = *w_rep.begin()->second;
                auto u = parity_witness(i, some_w, v, Ord(beta));
                rep.log.expect(u.has_value(), [&] { return describe("no witness", i, some_w, v); });
                if (!u) continue;
                const std::string uf = partition_key(i, *u), uc = partition_key(i, restrict(*u, omega));
                // Only w whose cut key matches u's or v's can tell the regions apart.
                for (const auto* key : {&uc, &vc}) {
                    auto it = w_keys.find(*key);
                    if (it == w_keys.end()) continue;
                    for (const auto& wf : it->second) {
                        bool same = region_of(uf, uc, wf, *key) == region_of(vf, vc, wf, *key);
                        rep.log.expect(same, [&] {
                            return describe("witness changes region", i, *w_rep.at({*key, wf}), v);
                        });
                    }
                }
            }
    }
    return rep;
}

LemmaReport omega_limit_cylinder(const std::vector<WState>& states, std::size_t max_position, std::size_t max_base) {
    const Ord omega = Ord::omega();
    LemmaReport rep{"limit cylinder superset", "lambda = w, supports in {0.." + std::to_string(max_position) + "}, beta <= " +
                              std::to_string(max_base),
                    {}};
    std::vector<WState> at_omega;
    std::set<std::string> seen;
    for (const auto& x : states) {
        WState r = restrict(x, omega);
        if (seen.insert(to_string(r)).second) at_omega.push_back(std::move(r));
    }
    for (std::size_t i : {kPlayerA, kPlayerB})
        for (std::size_t beta = 0; beta <= max_base; ++beta) {
            const Ord next(beta + 1);
            // All of W^{β+1}, grouped by block: the classes of v ↾ (β+1).
            std::unordered_map<std::string, std::vector<WState>> classes;
            for (const auto& s : enumerate_W(beta + 1)) classes[partition_key(i, s)].push_back(s);
            for (const auto& w : at_omega)
                for (const auto& vr : classes.at(partition_key(i, restrict(w, next)))) {
                    // v ↾ (β+1) is in the lifted block; the witness puts v ↾ β in π_β(P_i(w)).
                    WState v = pad(vr, omega);
                    auto u = block_witness(i, w, v, Ord(beta));
                    rep.log.expect(u.has_value(), [&] { return describe("v restricted to beta is not covered", i, w, v); });
                }
        }
    return rep;
}

} // namespace

std::vector<LemmaReport> check_lemmas_omega(std::size_t max_position, std::size_t max_base) {
    if (max_position > 8) throw BudgetExceeded("level w+1 checks are limited to supports in {0..8, w}");
    if (max_base > max_position) throw DomainError("max_base must not exceed max_position");
    const Ord omega = Ord::omega();
    std::vector<Ord> positions;
    for (std::size_t p = 0; p <= max_position; ++p) positions.emplace_back(p);
    positions.push_back(omega);
    auto states = universe(omega.succ(), positions);
    return {omega_block(states, max_position), omega_parity(states, max_position, max_base),
            omega_limit_cylinder(states, max_position, max_base)};
}

} // namespace ftspace::sober
