#include "ftspace/universal.hpp"

#include "ftspace/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ftspace::universal {

namespace {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[digest[k] >> 4];
        out += hex[digest[k] & 0xf];
    }
    return out;
}

void require_valid(const TypeSpace& space) {
    auto report = types::validate(space);
    if (!report.valid())
        throw DomainError("space is not a valid type space: " + types::to_string(report.violations.front().kind) +
                          " (" + report.violations.front().detail + ")");
}

// Mass of every class of `label` under mu. Classes must be members of mu's field.
std::vector<Rational> class_masses(const measure::FAMeasure& mu, const std::vector<std::size_t>& label,
                                   std::size_t classes) {
    std::vector<Rational> out(classes, Rational(0));
    const auto& field = mu.field();
    for (std::size_t k = 0; k < field.atom_count(); ++k) {
        const Subset& a = field.atom(k);
        std::size_t c = label[a.find_first()];
        for (auto e = a.find_next(a.find_first()); e != Subset::npos; e = a.find_next(e))
            if (label[e] != c) throw std::logic_error("partition block is not measurable");
        out[c] += mu.weight(k);
    }
    return out;
}

// Groups states by signature, numbering groups by first appearance.
std::vector<std::size_t> number_by_signature(const std::vector<std::string>& sig, std::size_t& count) {
    std::map<std::string, std::size_t> ids;
    std::vector<std::size_t> out(sig.size());
    for (std::size_t m = 0; m < sig.size(); ++m) out[m] = ids.emplace(sig[m], ids.size()).first->second;
    count = ids.size();
    return out;
}

// The per-player part of a refinement signature: masses of current classes.
std::string belief_signature(const TypeSpace& space, std::size_t m, const std::vector<std::size_t>& label,
                             std::size_t classes, const std::vector<std::string>* class_names,
                             std::vector<std::pair<const measure::FAMeasure*, std::string>>& cache_for,
                             std::size_t player) {
    const auto& mu = space.type(player, m);
    for (const auto& [seen, s] : cache_for)
        if (seen->same_object(mu)) return s;
    auto masses = class_masses(mu, label, classes);
    std::vector<std::pair<std::string, std::string>> parts;
    for (std::size_t c = 0; c < classes; ++c)
        if (masses[c] > 0)
            parts.emplace_back(class_names ? (*class_names)[c] : std::to_string(c), format_rational(masses[c]));
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (const auto& [name, mass] : parts) s += name + "=" + mass + ";";
    if (cache_for.size() < 256) cache_for.emplace_back(&mu, s);
    return s;
}

// Tokens at depths 0..d for every state.
std::vector<std::vector<std::string>> token_levels(const TypeSpace& space, std::size_t d) {
    require_valid(space);
    const std::size_t n = space.size();
    std::vector<std::size_t> order(space.players().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return space.players()[x] < space.players()[y]; });

    std::vector<std::vector<std::string>> levels;
    std::vector<std::string> tok(n);
    for (std::size_t m = 0; m < n; ++m) tok[m] = sha256_hex("nature|" + space.nature().points()[space.theta(m)]);
    levels.push_back(tok);
    for (std::size_t k = 0; k < d; ++k) {
        // Classes of equal tokens; their names are the tokens themselves.
        std::size_t classes = 0;
        auto label = number_by_signature(tok, classes);
        std::vector<std::string> names(classes);
        for (std::size_t m = 0; m < n; ++m) names[label[m]] = tok[m];
        std::vector<std::string> next(n);
        for (auto i : order) {
            std::vector<std::pair<const measure::FAMeasure*, std::string>> cache;
            for (std::size_t m = 0; m < n; ++m)
                next[m] += "|" + space.players()[i] + "{" +
                           belief_signature(space, m, label, classes, &names, cache, i) + "}";
        }
        for (std::size_t m = 0; m < n; ++m) next[m] = sha256_hex(tok[m] + next[m]);
        tok = std::move(next);
        levels.push_back(tok);
    }
    return levels;
}

std::string format_token(std::size_t d, const std::string& hex) { return "d" + std::to_string(d) + ":" + hex; }

} // namespace

std::vector<Subset> RefinementTower::blocks(std::size_t d) const {
    const auto& p = partition(d);
    std::vector<Subset> out(block_count[std::min(d, stable_depth)], Subset(p.size()));
    for (std::size_t m = 0; m < p.size(); ++m) out[p[m]].set(m);
    return out;
}

RefinementTower refine(const TypeSpace& space) {
    require_valid(space);
    const std::size_t n = space.size();
    RefinementTower tower;
    std::vector<std::string> sig(n);
    for (std::size_t m = 0; m < n; ++m) sig[m] = std::to_string(space.theta(m));
    std::size_t count = 0;
    tower.block_of.push_back(number_by_signature(sig, count));
    tower.block_count.push_back(count);
    while (true) {
        const auto& cur = tower.block_of.back();
        const std::size_t classes = tower.block_count.back();
        for (std::size_t m = 0; m < n; ++m) sig[m] = std::to_string(cur[m]);
        for (std::size_t i = 0; i < space.players().size(); ++i) {
            std::vector<std::pair<const measure::FAMeasure*, std::string>> cache;
            for (std::size_t m = 0; m < n; ++m)
                sig[m] += "|" + belief_signature(space, m, cur, classes, nullptr, cache, i);
        }
        std::size_t next_count = 0;
        auto next = number_by_signature(sig, next_count);
        if (next_count == classes) break;
        tower.block_of.push_back(std::move(next));
        tower.block_count.push_back(next_count);
    }
    tower.stable_depth = tower.block_of.size() - 1;
    return tower;
}

std::vector<std::string> fingerprints(const TypeSpace& space, std::size_t d) {
    auto levels = token_levels(space, d);
    std::vector<std::string> out;
    for (const auto& t : levels.back()) out.push_back(format_token(d, t));
    return out;
}

std::string desc_fingerprint(const TypeSpace& space, std::size_t m, std::size_t d) {
    if (m >= space.size()) throw DomainError("state index out of range");
    return fingerprints(space, d)[m];
}

QuotientSpace quotient(const TypeSpace& space) {
    RefinementTower tower = refine(space);
    const auto& q = tower.partition(tower.stable_depth);
    const std::size_t k = tower.block_count[tower.stable_depth];
    auto field = measure::SetField::powerset(k);

    std::vector<std::string> names(k);
    std::vector<std::size_t> theta(k);
    std::vector<std::size_t> rep(k, space.size());
    for (std::size_t m = 0; m < space.size(); ++m)
        if (rep[q[m]] == space.size()) rep[q[m]] = m;
    for (std::size_t b = 0; b < k; ++b) {
        names[b] = "q" + std::to_string(b);
        theta[b] = space.theta(rep[b]);
    }
    std::vector<std::vector<measure::FAMeasure>> types;
    for (std::size_t i = 0; i < space.players().size(); ++i) {
        std::vector<measure::FAMeasure> t;
        for (std::size_t b = 0; b < k; ++b) t.push_back(measure::pushforward(space.type(i, rep[b]), q, field));
        for (std::size_t m = 0; m < space.size(); ++m)
            if (!(measure::pushforward(space.type(i, m), q, field) == t[q[m]]))
                throw std::logic_error("induced type depends on the block representative");
        types.push_back(std::move(t));
    }
    TypeSpace qs(space.nature(), space.players(), std::move(names), field, std::move(theta), std::move(types));
    return QuotientSpace{std::move(qs), q, std::move(tower)};
}

CheckReport check_morphism_preserves_descriptions(const std::vector<std::size_t>& f, const TypeSpace& source,
                                                  const TypeSpace& target, std::size_t max_depth) {
    auto morph = types::is_type_morphism(source, target, f);
    if (!morph.ok) throw PreconditionError("not a type morphism: " + morph.failure);
    auto src = token_levels(source, max_depth);
    auto dst = token_levels(target, max_depth);
    for (std::size_t d = 0; d <= max_depth; ++d)
        for (std::size_t m = 0; m < source.size(); ++m)
            if (src[d][m] != dst[d][f[m]])
                return {false,
                        "fingerprints of " + source.states()[m] + " and its image " + target.states()[f[m]] +
                            " differ at depth " + std::to_string(d),
                        m};
    return {};
}

namespace {

bool injective_fingerprints(const TypeSpace& space) {
    auto tower = refine(space);
    auto fp = fingerprints(space, tower.stable_depth);
    return std::set<std::string>(fp.begin(), fp.end()).size() == fp.size();
}

} // namespace

TerminalityReport check_terminality(const TypeSpace& space, const std::vector<TypeSpace>& extra_targets,
                                    std::size_t max_maps) {
    TerminalityReport report;
    QuotientSpace qs = quotient(space);
    auto maps = types::enumerate_morphisms(space, qs.space, max_maps);
    report.morphisms_to_quotient = maps.size();
    report.unique_morphism_is_q = maps.size() == 1 && maps.front() == qs.q;

    QuotientSpace again = quotient(qs.space);
    report.quotient_idempotent = types::is_type_isomorphism(qs.space, again.space, again.q).ok;
    report.quotient_fingerprints_injective = injective_fingerprints(qs.space);

    for (const auto& target : extra_targets) {
        if (!injective_fingerprints(target)) {
            report.extra_target_counts.push_back(std::nullopt);
            continue;
        }
        auto found = types::enumerate_morphisms(space, target, max_maps);
        report.extra_target_counts.push_back(found.size());
        if (found.size() > 1) report.extra_targets_ok = false;
    }
    return report;
}

} // namespace ftspace::universal
