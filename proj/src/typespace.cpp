#include "ftspace/typespace.hpp"

#include "ftspace/error.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace ftspace::types {

using ftspace::to_string;

NatureSpace::NatureSpace(std::vector<std::string> points, std::map<std::string, std::vector<std::string>> extra_events)
    : points_(std::move(points)) {
    if (points_.empty()) throw DomainError("nature space needs at least one point");
    std::set<std::string> seen;
    for (const auto& p : points_)
        if (!seen.insert(p).second) throw DomainError("duplicate nature point '" + p + "'");
    for (std::size_t k = 0; k < points_.size(); ++k) events_[points_[k]] = make_subset(points_.size(), {k});
    for (auto& [name, members] : extra_events) {
        Subset s(points_.size());
        for (const auto& p : members) s.set(index_of(p));
        auto [it, fresh] = events_.emplace(name, s);
        if (!fresh && it->second != s)
            throw DomainError("event '" + name + "' clashes with the point of the same name");
    }
}

std::size_t NatureSpace::index_of(const std::string& point) const {
    auto it = std::find(points_.begin(), points_.end(), point);
    if (it == points_.end()) throw DomainError("unknown nature point '" + point + "'");
    return static_cast<std::size_t>(it - points_.begin());
}

bool NatureSpace::has_point(const std::string& point) const {
    return std::find(points_.begin(), points_.end(), point) != points_.end();
}

const Subset& NatureSpace::event(const std::string& name) const {
    auto it = events_.find(name);
    if (it == events_.end()) throw DomainError("unknown nature event '" + name + "'");
    return it->second;
}

NatureSpace coin_nature() { return NatureSpace({"h", "t"}); }

// ---------------------------------------------------------------------------

TypeSpace::TypeSpace(NatureSpace nature, std::vector<std::string> players, std::vector<std::string> states,
                     SetField field, std::vector<std::size_t> theta, std::vector<std::vector<FAMeasure>> types)
    : nature_(std::move(nature)),
      players_(std::move(players)),
      states_(std::move(states)),
      field_(std::move(field)),
      theta_(std::move(theta)),
      types_(std::move(types)) {
    if (states_.empty()) throw DomainError("type space needs at least one state");
    if (players_.empty()) throw DomainError("type space needs at least one player");
    if (field_.universe_size() != states_.size()) throw DomainError("field universe does not match the states");
    if (theta_.size() != states_.size()) throw DomainError("theta must be defined on every state");
    for (auto s : theta_)
        if (s >= nature_.size()) throw DomainError("theta leaves the nature space");
    if (types_.size() != players_.size()) throw DomainError("need one type map per player");
    for (const auto& t : types_)
        if (t.size() != states_.size()) throw DomainError("type map must be defined on every state");
    std::set<std::string> seen;
    for (const auto& p : players_)
        if (!seen.insert(p).second) throw DomainError("duplicate player '" + p + "'");
    for (std::size_t k = 0; k < states_.size(); ++k)
        if (!state_index_.emplace(states_[k], k).second) throw DomainError("duplicate state '" + states_[k] + "'");
}

std::size_t TypeSpace::player_index(const std::string& name) const {
    auto it = std::find(players_.begin(), players_.end(), name);
    if (it == players_.end()) throw DomainError("unknown player '" + name + "'");
    return static_cast<std::size_t>(it - players_.begin());
}

std::size_t TypeSpace::state_index(const std::string& name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end()) throw DomainError("unknown state '" + name + "'");
    return it->second;
}

std::optional<std::size_t> TypeSpace::find_state(const std::string& name) const {
    auto it = state_index_.find(name);
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

Subset TypeSpace::type_class(std::size_t player, std::size_t m) const {
    Subset out(size());
    const auto& t = types_[player];
    for (std::size_t k = 0; k < size(); ++k)
        if (t[k] == t[m]) out.set(k);
    return out;
}

std::string to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::MeasureMalformed: return "measure_malformed";
    case ViolationKind::ThetaNotMeasurable: return "theta_not_measurable";
    case ViolationKind::TypeNotMeasurable: return "type_not_measurable";
    case ViolationKind::Introspection: return "introspection";
    }
    return "unknown";
}

ValidationReport validate(const TypeSpace& space) {
    ValidationReport report;
    const auto& field = space.field();
    const std::size_t players = space.players().size();

    std::vector<std::vector<bool>> usable(players, std::vector<bool>(space.size(), true));
    for (std::size_t i = 0; i < players; ++i)
        for (std::size_t m = 0; m < space.size(); ++m) {
            const auto& mu = space.type(i, m);
            std::optional<std::string> problem;
            if (!(mu.field() == field))
                problem = "type is not defined on the space's field";
            else
                problem = mu.defect();
            if (problem) {
                usable[i][m] = false;
                report.violations.push_back({ViolationKind::MeasureMalformed, i, m, *problem});
            }
        }

    // With Σ_S the powerset, θ is measurable iff it is constant on every atom of Σ.
    for (const auto& a : field.atoms()) {
        auto first = a.find_first();
        for (auto m = a.find_next(first); m != Subset::npos; m = a.find_next(m))
            if (space.theta(m) != space.theta(first)) {
                report.violations.push_back({ViolationKind::ThetaNotMeasurable, std::nullopt, m,
                                             "theta separates " + space.states()[first] + " and " +
                                                 space.states()[m] + " inside one atom"});
                break;
            }
    }

    // T_i is measurable iff it is constant on every atom: two distinct types differ on
    // some atom A, and then some B̄_i^p(A) splits the atom.
    for (std::size_t i = 0; i < players; ++i)
        for (const auto& a : field.atoms()) {
            auto first = a.find_first();
            for (auto m = a.find_next(first); m != Subset::npos; m = a.find_next(m)) {
                if (!usable[i][m] || !usable[i][first]) continue;
                const auto& x = space.type(i, first);
                const auto& y = space.type(i, m);
                if (x == y) continue;
                std::size_t k = 0;
                while (x.weight(k) == y.weight(k)) ++k;
                const Rational p = std::max(x.weight(k), y.weight(k));
                report.violations.push_back(
                    {ViolationKind::TypeNotMeasurable, i, m,
                     "B[" + space.players()[i] + "," + format_rational(p) + "] of " + to_string(field.atom(k)) +
                         " separates " + space.states()[first] + " and " + space.states()[m] +
                         " inside one atom"});
                break;
            }
        }

    for (std::size_t i = 0; i < players; ++i) {
        std::unordered_map<const void*, bool> seen;
        for (std::size_t m = 0; m < space.size(); ++m) {
            if (!usable[i][m]) continue;
            const auto& mu = space.type(i, m);
            Subset cls = space.type_class(i, m);
            // Every measurable A ⊇ [T_i(m)] has mass 1  ⇔  outer measure of [T_i(m)] is 1.
            Rational outer = outer_measure(mu, cls);
            if (outer != 1)
                report.violations.push_back({ViolationKind::Introspection, i, m,
                                             "outer measure of the type class is " + format_rational(outer)});
            if (!field.contains(cls) || measure_of(mu, cls) != 1)
                report.strong_introspection_failures.emplace_back(i, m);
        }
    }
    return report;
}

Subset belief_operator(const TypeSpace& space, std::size_t player, const Rational& p, const Subset& e) {
    if (p < 0 || p > 1) throw DomainError("threshold " + format_rational(p) + " is not in [0,1]");
    if (player >= space.players().size()) throw DomainError("player index out of range");
    if (!space.field().contains(e)) throw DomainError("event " + to_string(e) + " is not in the field");
    Subset out(space.size());
    std::vector<std::pair<const FAMeasure*, bool>> cache;
    for (std::size_t m = 0; m < space.size(); ++m) {
        const auto& mu = space.type(player, m);
        std::optional<bool> hit;
        for (const auto& [seen, value] : cache)
            if (seen->same_object(mu)) {
                hit = value;
                break;
            }
        if (!hit) {
            hit = measure_of(mu, e) >= p;
            if (cache.size() < 64) cache.emplace_back(&mu, *hit);
        }
        if (*hit) out.set(m);
    }
    return out;
}

namespace {

std::vector<std::size_t> player_map(const TypeSpace& source, const TypeSpace& target) {
    const auto& sp = source.players();
    const auto& tp = target.players();
    if (std::set<std::string>(sp.begin(), sp.end()) != std::set<std::string>(tp.begin(), tp.end()))
        throw DomainError("spaces have different player sets");
    std::vector<std::size_t> out;
    for (const auto& p : sp) out.push_back(target.player_index(p));
    return out;
}

std::vector<std::size_t> nature_map(const TypeSpace& source, const TypeSpace& target) {
    const auto& sn = source.nature().points();
    const auto& tn = target.nature().points();
    if (std::set<std::string>(sn.begin(), sn.end()) != std::set<std::string>(tn.begin(), tn.end()))
        throw DomainError("spaces have different nature spaces");
    std::vector<std::size_t> out;
    for (const auto& s : sn) out.push_back(target.nature().index_of(s));
    return out;
}

} // namespace

MorphismReport is_type_morphism(const TypeSpace& source, const TypeSpace& target, const std::vector<std::size_t>& f) {
    auto pmap = player_map(source, target);
    auto nmap = nature_map(source, target);
    if (f.size() != source.size()) throw DomainError("map is not total on the source states");
    for (auto y : f)
        if (y >= target.size()) throw DomainError("map leaves the target states");

    std::vector<Subset> pre;
    for (const auto& a : target.field().atoms()) {
        pre.push_back(preimage(f, a));
        if (!source.field().contains(pre.back()))
            return {false, "preimage of target atom " + to_string(a) + " is not measurable", std::nullopt};
    }
    for (std::size_t m = 0; m < source.size(); ++m)
        if (nmap[source.theta(m)] != target.theta(f[m]))
            return {false, "theta does not commute at " + source.states()[m], m};
    for (std::size_t i = 0; i < pmap.size(); ++i)
        for (std::size_t m = 0; m < source.size(); ++m) {
            const auto& here = source.type(i, m);
            const auto& there = target.type(pmap[i], f[m]);
            for (std::size_t k = 0; k < pre.size(); ++k)
                if (there.weight(k) != measure_of(here, pre[k]))
                    return {false,
                            "belief of " + source.players()[i] + " at " + source.states()[m] + " on atom " +
                                to_string(target.field().atom(k)) + " is " + format_rational(there.weight(k)) +
                                " in the target but " + format_rational(measure_of(here, pre[k])) +
                                " on its preimage",
                            m};
        }
    return {};
}

MorphismReport is_type_isomorphism(const TypeSpace& source, const TypeSpace& target,
                                   const std::vector<std::size_t>& f) {
    auto forward = is_type_morphism(source, target, f);
    if (!forward.ok) return forward;
    if (source.size() != target.size()) return {false, "map is not bijective", std::nullopt};
    std::vector<std::size_t> inverse(target.size(), target.size());
    for (std::size_t m = 0; m < f.size(); ++m) {
        if (inverse[f[m]] != target.size()) return {false, "map is not injective", m};
        inverse[f[m]] = m;
    }
    auto backward = is_type_morphism(target, source, inverse);
    if (!backward.ok) return {false, "inverse is not a type morphism: " + backward.failure, std::nullopt};
    return {};
}

TypeSpace singleton_space(const NatureSpace& nature, const std::string& s, const std::vector<std::string>& players) {
    std::size_t point = nature.index_of(s);
    SetField field = SetField::powerset(1);
    FAMeasure delta = measure::point_mass(0, field);
    std::vector<std::vector<FAMeasure>> types(players.size(), std::vector<FAMeasure>{delta});
    return TypeSpace(nature, players, {"m"}, field, {point}, std::move(types));
}

std::vector<std::vector<std::size_t>> enumerate_morphisms(const TypeSpace& source, const TypeSpace& target,
                                                          std::size_t max_maps) {
    auto nmap = nature_map(source, target);
    auto pmap = player_map(source, target);
    const auto& sf = source.field();
    const auto& tf = target.field();
    const std::size_t players = source.players().size();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> f(source.size(), 0);
    // Target atom of each source atom, fixed by its first assigned element.
    std::vector<std::size_t> image(sf.atom_count(), kNone);
    std::size_t visited = 0;

    // For every assigned m and player, the mass T_i(m) already sends into each target
    // atom B cannot exceed T'_i(f(m))(B), and what is still unassigned must cover the gap.
    auto feasible = [&](std::size_t assigned) {
        for (std::size_t m = 0; m < assigned; ++m)
            for (std::size_t i = 0; i < players; ++i) {
                const auto& mu = source.type(i, m);
                const auto& nu = target.type(pmap[i], f[m]);
                std::vector<Rational> low(tf.atom_count());
                Rational free = 0;
                for (std::size_t a = 0; a < sf.atom_count(); ++a) {
                    if (image[a] == kNone)
                        free += mu.weight(a);
                    else
                        low[image[a]] += mu.weight(a);
                }
                for (std::size_t b = 0; b < tf.atom_count(); ++b)
                    if (low[b] > nu.weight(b) || low[b] + free < nu.weight(b)) return false;
            }
        return true;
    };

    // Depth-first in lexicographic order of the image vector.
    auto recurse = [&](auto&& self, std::size_t pos) -> void {
        if (++visited > max_maps)
            throw BudgetExceeded("morphism search examined more than " + std::to_string(max_maps) +
                                 " partial maps");
        if (pos == f.size()) {
            if (is_type_morphism(source, target, f).ok) out.push_back(f);
            return;
        }
        const std::size_t atom = sf.atom_of(pos);
        const bool first = image[atom] == kNone;
        for (std::size_t y = 0; y < target.size(); ++y) {
            if (target.theta(y) != nmap[source.theta(pos)]) continue;
            if (!first && tf.atom_of(y) != image[atom]) continue;
            f[pos] = y;
            if (first) image[atom] = tf.atom_of(y);
            if (feasible(pos + 1)) self(self, pos + 1);
            if (first) image[atom] = kNone;
        }
    };
    recurse(recurse, 0);
    return out;
}

std::vector<std::size_t> compose(const std::vector<std::size_t>& g, const std::vector<std::size_t>& f) {
    std::vector<std::size_t> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = g.at(f[k]);
    return out;
}

} // namespace ftspace::types
