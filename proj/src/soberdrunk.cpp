#include "ftspace/soberdrunk.hpp"

#include "ftspace/error.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace ftspace::sober {

std::string player_name(std::size_t i) { return i == kPlayerA ? "a" : "b"; }

WState::WState(Ord level, bool heads, Record a, Record b)
    : level_(std::move(level)), heads_(heads), a_(std::move(a)), b_(std::move(b)) {
    if (!(a_.length() == level_) || !(b_.length() == level_))
        throw DomainError("record lengths must equal the level " + level_.to_string());
}

WState WState::with_bit(std::size_t player, const Ord& pos, bool value) const {
    return with_record(player, record(player).with(pos, value));
}

WState WState::with_record(std::size_t player, Record r) const {
    WState out = *this;
    if (!(r.length() == level_)) throw DomainError("record length must equal the level");
    (player == kPlayerA ? out.a_ : out.b_) = std::move(r);
    return out;
}

WState WState::with_heads(bool heads) const {
    WState out = *this;
    out.heads_ = heads;
    return out;
}

WState restrict(const WState& w, const Ord& beta) {
    if (w.level() < beta)
        throw DomainError("cannot restrict a level " + w.level().to_string() + " state to " + beta.to_string());
    return WState(beta, w.heads(), w.record(kPlayerA).restrict(beta), w.record(kPlayerB).restrict(beta));
}

namespace {

std::string support_text(const Record& r) {
    std::string out = "{";
    bool first = true;
    for (const auto& p : r.support()) {
        if (!first) out += ",";
        out += p.to_string();
        first = false;
    }
    return out + "}";
}

} // namespace

std::string to_string(const WState& w) {
    return std::string("(") + (w.heads() ? "h" : "t") + ", " + support_text(w.record(kPlayerA)) + ", " +
           support_text(w.record(kPlayerB)) + ")";
}

// --- finite levels -------------------------------------------------------------

std::size_t w_count(std::size_t n) {
    if (n > 30) throw BudgetExceeded("level " + std::to_string(n) + " is too large to enumerate");
    return std::size_t{1} << (2 * n + 1);
}

namespace {

// Finite-level index layout: bit 2n is the coin (1 = t); bits [n, 2n) hold r_a and
// bits [0, n) hold r_b, with position 0 in the most significant bit of each block.
bool index_bit(std::size_t n, std::size_t index, std::size_t player, std::size_t pos) {
    std::size_t shift = (player == kPlayerA ? n : 0) + (n - 1 - pos);
    return (index >> shift) & 1u;
}

bool index_heads(std::size_t n, std::size_t index) { return ((index >> (2 * n)) & 1u) == 0; }

std::size_t restrict_index(std::size_t n, std::size_t m, std::size_t index) {
    std::size_t mask_n = (std::size_t{1} << n) - 1;
    std::size_t a = (index >> n) & mask_n;
    std::size_t b = index & mask_n;
    std::size_t coin = index >> (2 * n);
    return (coin << (2 * m)) | ((a >> (n - m)) << m) | (b >> (n - m));
}

} // namespace

std::size_t index_of(const WState& w) {
    std::size_t n = w.level().to_finite();
    std::size_t out = w.heads() ? 0 : 1;
    for (std::size_t i : {kPlayerA, kPlayerB}) {
        std::size_t bits = 0;
        for (std::size_t p = 0; p < n; ++p) bits = (bits << 1) | (w.bit(i, Ord(p)) ? 1u : 0u);
        out = (out << n) | bits;
    }
    return out;
}

WState state_at(std::size_t n, std::size_t index) {
    if (index >= w_count(n)) throw DomainError("state index out of range");
    std::vector<Ord> a, b;
    for (std::size_t p = 0; p < n; ++p) {
        if (index_bit(n, index, kPlayerA, p)) a.emplace_back(p);
        if (index_bit(n, index, kPlayerB, p)) b.emplace_back(p);
    }
    return WState(Ord(n), index_heads(n, index), Record(Ord(n), std::move(a)), Record(Ord(n), std::move(b)));
}

std::vector<WState> enumerate_W(std::size_t n, std::size_t max_states) {
    std::size_t count = w_count(n);
    if (count > max_states)
        throw BudgetExceeded("|W^" + std::to_string(n) + "| = " + std::to_string(count) + " exceeds the budget of " +
                             std::to_string(max_states) + " states");
    std::vector<WState> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(state_at(n, k));
    return out;
}

std::string state_name(const WState& w) {
    std::size_t n = w.level().to_finite();
    std::string out = w.heads() ? "h" : "t";
    if (n == 0) return out;
    for (std::size_t i : {kPlayerA, kPlayerB}) {
        out += ".";
        for (std::size_t p = 0; p < n; ++p) out += w.bit(i, Ord(p)) ? '1' : '0';
    }
    return out;
}

// --- partitions and cylinders ----------------------------------------------------

bool partition_contains(std::size_t i, const WState& w, const WState& v) {
    if (w.level().is_zero()) throw DomainError("partitions are defined at levels above 0");
    if (!(w.level() == v.level())) throw DomainError("states live on different levels");
    const std::size_t j = opponent(i);
    const Record& wi = w.record(i);
    if (!(v.record(i) == wi)) return false;
    for (const auto& s : wi.support()) {
        if (s.is_zero()) {
            if (v.heads() != w.heads()) return false;
        } else if (s.is_successor()) {
            Ord beta = s.predecessor();
            if (v.bit(j, beta) != w.bit(j, beta)) return false;
        } else if (lambda_parity(v.record(j), s) != lambda_parity(w.record(j), s)) {
            return false;
        }
    }
    return true;
}

std::string partition_key(std::size_t i, const WState& w) {
    if (w.level().is_zero()) throw DomainError("partitions are defined at levels above 0");
    const std::size_t j = opponent(i);
    std::string key = w.level().to_string() + "|";
    for (const auto& s : w.record(i).support()) {
        key += s.to_string();
        if (s.is_zero())
            key += w.heads() ? ":h" : ":t";
        else if (s.is_successor())
            key += w.bit(j, s.predecessor()) ? ":1" : ":0";
        else
            key += lambda_parity(w.record(j), s) == Parity::Even ? ":e" : ":o";
        key += ",";
    }
    return key;
}

Subset partition_block(std::size_t player, const WState& w) {
    std::size_t n = w.level().to_finite();
    Subset out(w_count(n));
    for (std::size_t k = 0; k < out.size(); ++k)
        if (partition_contains(player, w, state_at(n, k))) out.set(k);
    return out;
}

std::vector<std::size_t> partition_labels(std::size_t n, std::size_t player) {
    if (n == 0) throw DomainError("partitions are defined at levels above 0");
    std::map<std::string, std::size_t> ids;
    std::vector<std::size_t> out(w_count(n));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = ids.emplace(partition_key(player, state_at(n, k)), ids.size()).first->second;
    return out;
}

Subset cylinder_nature(std::size_t n, bool heads) {
    Subset out(w_count(n));
    for (std::size_t k = 0; k < out.size(); ++k)
        if (index_heads(n, k) == heads) out.set(k);
    return out;
}

Subset cylinder_bit(std::size_t n, std::size_t player, std::size_t beta, bool bit) {
    if (beta >= n) throw DomainError("position " + std::to_string(beta) + " is not below the level");
    if (player > kPlayerB) throw DomainError("player index out of range");
    Subset out(w_count(n));
    for (std::size_t k = 0; k < out.size(); ++k)
        if (index_bit(n, k, player, beta) == bit) out.set(k);
    return out;
}

Subset cylinder_parity(std::size_t n, std::size_t player, const Ord& lambda, Parity parity) {
    (void)player;
    (void)parity;
    if (!lambda.is_limit() || Ord(n) < lambda)
        throw DomainError("no limit ordinal " + lambda.to_string() + " at or below level " + std::to_string(n));
    return Subset(w_count(n));  // unreachable: finite levels have no limits below them
}

bool in_cylinder_nature(const WState& w, bool heads) { return w.heads() == heads; }

bool in_cylinder_bit(const WState& w, std::size_t player, const Ord& beta, bool bit) {
    return w.bit(player, beta) == bit;
}

bool in_cylinder_parity(const WState& w, std::size_t player, const Ord& lambda, Parity parity) {
    return lambda_parity(w.record(player), lambda) == parity;
}

std::vector<std::size_t> projection(std::size_t m, std::size_t n) {
    if (m > n) throw DomainError("cannot project level " + std::to_string(n) + " to " + std::to_string(m));
    std::vector<std::size_t> out(w_count(n));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = restrict_index(n, m, k);
    return out;
}

// --- beliefs --------------------------------------------------------------------

namespace {

SetField fiber_field(std::size_t n) {
    auto pi = projection(n - 1, n);
    std::vector<Subset> atoms(w_count(n - 1), Subset(w_count(n)));
    for (std::size_t k = 0; k < pi.size(); ++k) atoms[pi[k]].set(k);
    return SetField::from_atoms(w_count(n), std::move(atoms));
}

const Rational kHalf(1, 2);

} // namespace

BeliefTower build_beliefs(std::size_t n, std::size_t max_states) {
    if (n == 0) throw DomainError("beliefs are built for levels n >= 1");
    if (w_count(n) > max_states)
        throw BudgetExceeded("|W^" + std::to_string(n) + "| = " + std::to_string(w_count(n)) +
                             " exceeds the budget of " + std::to_string(max_states) + " states");
    BeliefTower tower;
    tower.n = n;
    for (std::size_t alpha = 1; alpha <= n; ++alpha) {
        const std::size_t size = w_count(alpha);
        const SetField fibers = fiber_field(alpha);
        const auto down = projection(alpha - 1, alpha);
        std::array<std::vector<FAMeasure>, 2> level;
        for (std::size_t i : {kPlayerA, kPlayerB}) {
            const std::size_t j = opponent(i);
            auto labels = partition_labels(alpha, i);
            std::vector<std::size_t> rep;
            for (std::size_t k = 0; k < size; ++k)
                if (labels[k] == rep.size()) rep.push_back(k);
            std::vector<Subset> blocks(rep.size(), Subset(size));
            for (std::size_t k = 0; k < size; ++k) blocks[labels[k]].set(k);

            std::vector<FAMeasure> per_block;
            for (std::size_t b = 0; b < rep.size(); ++b) {
                const std::size_t r = rep[b];
                const Subset& block = blocks[b];
                const auto step_error = [&](const std::string& what) {
                    return std::logic_error(what + " for player " + player_name(i) + " at " +
                                            state_name(state_at(alpha, r)));
                };
                // The measure inherited from the level below, on the pulled-back field.
                std::optional<FAMeasure> base;
                if (alpha == 1) {
                    // Fibers of π_{0,1} are [X_0 = h] (atom 0) and [X_0 = t] (atom 1).
                    std::vector<Rational> w(2, kHalf);
                    if (index_bit(1, r, i, 0)) {
                        w[0] = index_heads(1, r) ? 1 : 0;
                        w[1] = 1 - w[0];
                    }
                    base = FAMeasure(fibers, std::move(w));
                } else {
                    base = measure::pullback(tower.level[alpha - 2][i][down[r]], down);
                }
                if (measure::outer_measure(*base, block) != 1) throw step_error("outer measure of the block is not 1");
                FAMeasure tilde = measure::los_marczewski_extend(*base, block, Rational(1));
                SetField target = measure::field_extend_by_set(fibers, block);
                FAMeasure t = tilde;
                if (alpha == 1) {
                    t = tilde;
                } else {
                    const std::size_t beta = alpha - 2;
                    if (index_bit(alpha, r, i, beta + 1)) {
                        t = measure::horn_tarski_extend(tilde, target);
                    } else {
                        Subset c = cylinder_bit(alpha, j, beta, index_bit(alpha, r, j, beta));
                        if (measure::inner_measure(tilde, c) != 0 || measure::outer_measure(tilde, c) != 1)
                            throw step_error("opponent-bit cylinder does not have inner 0 and outer 1");
                        FAMeasure hat = measure::los_marczewski_extend(tilde, c, kHalf);
                        t = measure::horn_tarski_extend(hat, target);
                    }
                }
                per_block.push_back(std::move(t));
            }
            level[i].reserve(size);
            for (std::size_t k = 0; k < size; ++k) level[i].push_back(per_block[labels[k]]);
        }
        tower.level.push_back(std::move(level));
    }

    const SetField top = SetField::powerset(w_count(n));
    for (std::size_t i : {kPlayerA, kPlayerB}) {
        const auto& last = tower.level.back()[i];
        std::vector<std::optional<FAMeasure>> done;
        std::vector<const FAMeasure*> seen;
        auto& out = tower.final_types[i];
        out.reserve(last.size());
        for (const auto& mu : last) {
            std::size_t k = 0;
            while (k < seen.size() && !seen[k]->same_object(mu)) ++k;
            if (k == seen.size()) {
                seen.push_back(&mu);
                done.push_back(measure::horn_tarski_extend(mu, top));
            }
            out.push_back(*done[k]);
        }
    }
    return tower;
}

types::TypeSpace soberdrunk_space(const BeliefTower& tower, const std::vector<std::string>& extra_players) {
    const std::size_t size = w_count(tower.n);
    std::vector<std::string> names;
    std::vector<std::size_t> theta;
    for (std::size_t k = 0; k < size; ++k) {
        names.push_back(state_name(state_at(tower.n, k)));
        theta.push_back(index_heads(tower.n, k) ? 0 : 1);
    }
    std::vector<std::string> players{"a", "b"};
    players.insert(players.end(), extra_players.begin(), extra_players.end());
    std::vector<std::vector<FAMeasure>> types{tower.final_types[0], tower.final_types[1]};
    if (!extra_players.empty()) {
        const SetField& field = tower.final_types[0].front().field();
        std::vector<FAMeasure> delta;
        for (std::size_t k = 0; k < size; ++k) delta.push_back(measure::point_mass(k, field));
        for (std::size_t e = 0; e < extra_players.size(); ++e) types.push_back(delta);
    }
    return types::TypeSpace(types::coin_nature(), std::move(players), std::move(names),
                            tower.final_types[0].front().field(), std::move(theta), std::move(types));
}

types::TypeSpace soberdrunk_space(std::size_t n, const std::vector<std::string>& extra_players,
                                  std::size_t max_states) {
    return soberdrunk_space(build_beliefs(n, max_states), extra_players);
}

// --- checks ------------------------------------------------------------------------

void CheckLog::merge(const CheckLog& other) {
    checks += other.checks;
    failed += other.failed;
    for (const auto& f : other.failures)
        if (failures.size() < 20) failures.push_back(f);
}

namespace {

std::string at_state(std::size_t i, std::size_t n, std::size_t k) {
    return "player " + player_name(i) + " at " + state_name(state_at(n, k));
}

Rational expected(bool pinned) { return pinned ? Rational(1) : kHalf; }

} // namespace

TheoremChecks check_belief_theorem(const BeliefTower& tower) {
    TheoremChecks out;
    const std::size_t n = tower.n;
    const std::size_t size = w_count(n);
    for (std::size_t i : {kPlayerA, kPlayerB}) {
        const std::size_t j = opponent(i);
        const auto& t = tower.final_types[i];
        auto labels = partition_labels(n, i);
        std::vector<std::size_t> rep;
        for (std::size_t k = 0; k < size; ++k)
            if (labels[k] == rep.size()) rep.push_back(k);
        std::vector<Subset> blocks(rep.size(), Subset(size));
        for (std::size_t k = 0; k < size; ++k) blocks[labels[k]].set(k);

        std::vector<Subset> nature{cylinder_nature(n, true), cylinder_nature(n, false)};
        std::vector<std::array<Subset, 2>> opp;
        for (std::size_t beta = 0; beta < n; ++beta)
            opp.push_back({cylinder_bit(n, j, beta, false), cylinder_bit(n, j, beta, true)});

        for (std::size_t k = 0; k < size; ++k) {
            const auto& mu = t[k];
            out.a.expect(mu == t[rep[labels[k]]], [&] { return "type not constant on the block of " + at_state(i, n, k); });
            out.b.expect(measure::measure_of(mu, blocks[labels[k]]) == 1,
                         [&] { return "block mass is not 1 for " + at_state(i, n, k); });
            const bool heads = index_heads(n, k);
            out.c.expect(measure::measure_of(mu, nature[heads ? 0 : 1]) == expected(index_bit(n, k, i, 0)),
                         [&] { return "nature mass is wrong for " + at_state(i, n, k); });
            for (std::size_t beta = 0; beta + 1 < n; ++beta) {
                const bool own = index_bit(n, k, j, beta);
                out.d.expect(measure::measure_of(mu, opp[beta][own ? 1 : 0]) == expected(index_bit(n, k, i, beta + 1)),
                             [&] {
                                 return "opponent bit " + std::to_string(beta) + " mass is wrong for " +
                                        at_state(i, n, k);
                             });
            }
        }
        // Cylinders at base β: pushforward along π_β is a function of w ↾ (β+1).
        for (std::size_t beta = 0; beta + 1 < n; ++beta) {
            const auto to_base = projection(beta, n);
            const auto to_next = projection(beta + 1, n);
            const SetField base_field = SetField::powerset(w_count(beta));
            std::map<std::size_t, FAMeasure> first;
            for (std::size_t k = 0; k < size; ++k) {
                FAMeasure marg = measure::pushforward(t[k], to_base, base_field);
                auto [it, fresh] = first.emplace(to_next[k], marg);
                if (!fresh)
                    out.f.expect(it->second == marg, [&] {
                        return "base-" + std::to_string(beta) + " cylinder masses differ within a restriction class, " +
                               at_state(i, n, k);
                    });
                else
                    ++out.f.checks;
            }
        }
    }
    return out;
}

CheckLog check_induction(const BeliefTower& tower) {
    CheckLog log;
    for (std::size_t alpha = 1; alpha <= tower.n; ++alpha) {
        const std::size_t size = w_count(alpha);
        for (std::size_t i : {kPlayerA, kPlayerB}) {
            const std::size_t j = opponent(i);
            const auto& t = tower.level[alpha - 1][i];
            auto labels = partition_labels(alpha, i);
            std::vector<std::size_t> rep;
            for (std::size_t k = 0; k < size; ++k)
                if (labels[k] == rep.size()) rep.push_back(k);
            std::vector<Subset> blocks(rep.size(), Subset(size));
            for (std::size_t k = 0; k < size; ++k) blocks[labels[k]].set(k);
            std::vector<Subset> nature{cylinder_nature(alpha, true), cylinder_nature(alpha, false)};
            std::vector<std::vector<std::size_t>> down;
            for (std::size_t beta = 0; beta < alpha; ++beta) down.push_back(projection(beta, alpha));

            for (std::size_t k = 0; k < size; ++k) {
                const auto& mu = t[k];
                const std::string where = " at level " + std::to_string(alpha);
                // 2: marginals on the fields of the levels below
                for (std::size_t beta = 1; beta < alpha; ++beta) {
                    const auto& lower = tower.level[beta - 1][i][down[beta][k]];
                    bool same = false;
                    try {
                        same = measure::pushforward(mu, down[beta], lower.field()) == lower;
                    } catch (const DomainError&) {
                        same = false;
                    }
                    log.expect(same, [&] {
                        return "marginal on level " + std::to_string(beta) + " differs for " +
                               at_state(i, alpha, k) + where;
                    });
                }
                // 3, 4, 5, 6
                log.expect(mu == t[rep[labels[k]]],
                           [&] { return "type not constant on the block of " + at_state(i, alpha, k) + where; });
                log.expect(measure::measure_of(mu, blocks[labels[k]]) == 1,
                           [&] { return "block mass is not 1 for " + at_state(i, alpha, k) + where; });
                log.expect(measure::measure_of(mu, nature[index_heads(alpha, k) ? 0 : 1]) ==
                               expected(index_bit(alpha, k, i, 0)),
                           [&] { return "nature mass is wrong for " + at_state(i, alpha, k) + where; });
                for (std::size_t beta = 0; beta + 1 < alpha; ++beta) {
                    Subset c = cylinder_bit(alpha, j, beta, index_bit(alpha, k, j, beta));
                    log.expect(measure::measure_of(mu, c) == expected(index_bit(alpha, k, i, beta + 1)), [&] {
                        return "opponent bit " + std::to_string(beta) + " mass is wrong for " +
                               at_state(i, alpha, k) + where;
                    });
                }
            }
        }
    }
    return log;
}

CheckLog check_bit_identities(const types::TypeSpace& space, std::size_t n) {
    CheckLog log;
    if (space.size() != w_count(n)) throw DomainError("space is not W^" + std::to_string(n));
    for (std::size_t i : {kPlayerA, kPlayerB}) {
        const std::size_t j = opponent(i);
        const Rational one(1);
        Subset rhs = types::belief_operator(space, i, one, cylinder_nature(n, true)) |
                     types::belief_operator(space, i, one, cylinder_nature(n, false));
        log.expect(rhs == cylinder_bit(n, i, 0, true),
                   [&] { return "nature identity fails for player " + player_name(i); });
        for (std::size_t beta = 0; beta + 1 < n; ++beta) {
            Subset r = types::belief_operator(space, i, one, cylinder_bit(n, j, beta, true)) |
                       types::belief_operator(space, i, one, cylinder_bit(n, j, beta, false));
            log.expect(r == cylinder_bit(n, i, beta + 1, true), [&] {
                return "bit identity at " + std::to_string(beta + 1) + " fails for player " + player_name(i);
            });
        }
    }
    return log;
}

// --- expressions -------------------------------------------------------------------

namespace {

class BitExprs {
public:
    const lang::Expr& get(std::size_t player, std::size_t beta, bool bit) {
        auto key = std::make_tuple(player, beta, bit);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        lang::Expr e = bit ? one(player, beta) : lang::Expr::neg(get(player, beta, true));
        return memo_.emplace(key, std::move(e)).first->second;
    }

private:
    lang::Expr one(std::size_t i, std::size_t beta) {
        const std::string p = player_name(i);
        if (beta == 0)
            return lang::Expr::disj({lang::Expr::bel(p, Rational(1), lang::Expr::nat("h")),
                                     lang::Expr::bel(p, Rational(1), lang::Expr::nat("t"))});
        const std::size_t j = opponent(i);
        lang::Expr zero = get(j, beta - 1, false);
        lang::Expr unit = get(j, beta - 1, true);
        return lang::Expr::disj({lang::Expr::bel(p, Rational(1), zero), lang::Expr::bel(p, Rational(1), unit)});
    }

    std::map<std::tuple<std::size_t, std::size_t, bool>, lang::Expr> memo_;
};

} // namespace

lang::Expr bit_expr(std::size_t player, std::size_t beta, bool bit) {
    if (player > kPlayerB) throw DomainError("player index out of range");
    BitExprs b;
    return b.get(player, beta, bit);
}

std::vector<lang::Expr> bit_corpus(std::size_t max_depth) {
    BitExprs b;
    std::vector<lang::Expr> out{lang::Expr::nat("h"), lang::Expr::nat("t")};
    for (std::size_t beta = 0; beta + 1 <= max_depth; ++beta)
        for (std::size_t i : {kPlayerA, kPlayerB})
            for (bool bit : {false, true}) out.push_back(b.get(i, beta, bit));
    return out;
}

SeparationReport separation_demo(const types::TypeSpace& space, std::size_t n, std::size_t alpha,
                                 std::size_t player) {
    if (alpha >= n) throw DomainError("separation needs alpha < n");
    if (player > kPlayerB) throw DomainError("player index out of range");
    if (space.size() != w_count(n)) throw DomainError("space is not W^" + std::to_string(n));
    SeparationReport rep;
    rep.n = n;
    rep.alpha = alpha;
    rep.player = player;
    const Ord level(n);
    rep.w = WState(level, true, Record(level, {}), Record(level, {}));
    rep.u = rep.w.with_bit(player, Ord(alpha), true);
    rep.restrictions_agree = restrict(rep.u, Ord(alpha)) == restrict(rep.w, Ord(alpha));
    const std::size_t ui = index_of(rep.u);
    const std::size_t wi = index_of(rep.w);

    auto fp = universal::fingerprints(space, alpha);
    rep.fingerprints_equal = fp[ui] == fp[wi];
    auto fp_next = universal::fingerprints(space, alpha + 1);
    rep.fingerprints_differ_next = fp_next[ui] != fp_next[wi];

    lang::Evaluator ev(space);
    auto corpus = bit_corpus(alpha);
    rep.corpus_size = corpus.size();
    rep.corpus_agrees = true;
    for (const auto& e : corpus) {
        const Subset& s = ev(e);
        if (s.test(ui) != s.test(wi)) rep.corpus_agrees = false;
    }
    rep.psi = bit_expr(player, alpha, true);
    rep.psi_depth = lang::depth(rep.psi);
    const Subset& s = ev(rep.psi);
    rep.psi_separates = s.test(ui) && !s.test(wi);
    return rep;
}

SeparationReport separation_demo(std::size_t n, std::size_t alpha, std::size_t player) {
    auto space = soberdrunk_space(n);
    return separation_demo(space, n, alpha, player);
}

} // namespace ftspace::sober
