#pragma once

// Finite type spaces: states of the world, a field on them, a nature map θ into a
// finite set of states of nature, and one type map T_i per player.

#include "ftspace/measure.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ftspace::types {

using measure::FAMeasure;
using measure::SetField;

/// States of nature S with the powerset field. `events` names members of Σ_S for the
/// expression language; every point is also an event under its own name.
class NatureSpace {
public:
    explicit NatureSpace(std::vector<std::string> points,
                         std::map<std::string, std::vector<std::string>> extra_events = {});

    const std::vector<std::string>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    std::size_t index_of(const std::string& point) const;
    bool has_point(const std::string& point) const;

    /// Named members of Σ_S, as subsets of the point indices.
    const std::map<std::string, Subset>& events() const { return events_; }
    /// Throws DomainError for unknown names.
    const Subset& event(const std::string& name) const;
    bool has_event(const std::string& name) const { return events_.count(name) != 0; }

    friend bool operator==(const NatureSpace& a, const NatureSpace& b) {
        return a.points_ == b.points_ && a.events_ == b.events_;
    }

private:
    std::vector<std::string> points_;
    std::map<std::string, Subset> events_;
};

NatureSpace coin_nature();  ///< S = {h, t}

class TypeSpace {
public:
    /// `types[i][m]` is player i's type at state m. Shape mismatches (sizes, θ out of
    /// range, duplicate names) throw DomainError; semantic defects are left for
    /// validate().
    TypeSpace(NatureSpace nature, std::vector<std::string> players, std::vector<std::string> states,
              SetField field, std::vector<std::size_t> theta, std::vector<std::vector<FAMeasure>> types);

    const NatureSpace& nature() const { return nature_; }
    const std::vector<std::string>& players() const { return players_; }
    const std::vector<std::string>& states() const { return states_; }
    const SetField& field() const { return field_; }
    std::size_t size() const { return states_.size(); }
    std::size_t theta(std::size_t m) const { return theta_[m]; }
    const std::vector<std::size_t>& theta_map() const { return theta_; }
    const FAMeasure& type(std::size_t player, std::size_t m) const { return types_[player][m]; }
    const std::vector<FAMeasure>& types_of(std::size_t player) const { return types_[player]; }

    std::size_t player_index(const std::string& name) const;
    std::size_t state_index(const std::string& name) const;
    std::optional<std::size_t> find_state(const std::string& name) const;

    /// [T_i(m)] = {m' : T_i(m') = T_i(m)}
    Subset type_class(std::size_t player, std::size_t m) const;

private:
    NatureSpace nature_;
    std::vector<std::string> players_;
    std::vector<std::string> states_;
    SetField field_;
    std::vector<std::size_t> theta_;
    std::vector<std::vector<FAMeasure>> types_;
    std::map<std::string, std::size_t> state_index_;
};

enum class ViolationKind {
    MeasureMalformed,
    ThetaNotMeasurable,
    TypeNotMeasurable,
    Introspection,
};

std::string to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::optional<std::size_t> player;
    std::size_t state = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    /// (player, state) pairs where T_i(m)([T_i(m)]) = 1 fails or [T_i(m)] is not
    /// measurable. Informational: validity uses the superset formulation.
    std::vector<std::pair<std::size_t, std::size_t>> strong_introspection_failures;

    bool valid() const { return violations.empty(); }
};

/// Checks every type-space axiom and lists each defect with a witness.
ValidationReport validate(const TypeSpace& space);

/// {m : T_i(m)(E) ≥ p}. Throws DomainError if E is not in Σ or p is outside [0,1].
Subset belief_operator(const TypeSpace& space, std::size_t player, const Rational& p, const Subset& e);

struct MorphismReport {
    bool ok = true;
    std::string failure;                 ///< empty when ok
    std::optional<std::size_t> witness;  ///< source state of the first counterexample
};

/// Checks measurability, θ-commutation and the belief condition for f : source → target.
/// Throws DomainError if the spaces have different player sets or nature spaces, or
/// if f is not a total map into the target states.
MorphismReport is_type_morphism(const TypeSpace& source, const TypeSpace& target,
                                const std::vector<std::size_t>& f);

/// Bijective type morphism whose inverse is a type morphism.
MorphismReport is_type_isomorphism(const TypeSpace& source, const TypeSpace& target,
                                   const std::vector<std::size_t>& f);

/// One state m with θ(m) = s and T_i(m) = δ_m for every player.
TypeSpace singleton_space(const NatureSpace& nature, const std::string& s,
                          const std::vector<std::string>& players = {"a", "b"});

/// Every type morphism source → target in lexicographic order of the image vector,
/// by depth-first search pruned with θ, atom consistency and belief mass bounds.
/// Throws BudgetExceeded once the search has examined more than max_maps partial maps.
std::vector<std::vector<std::size_t>> enumerate_morphisms(const TypeSpace& source, const TypeSpace& target,
                                                          std::size_t max_maps = 1'000'000);

/// g ∘ f
std::vector<std::size_t> compose(const std::vector<std::size_t>& g, const std::vector<std::size_t>& f);

} // namespace ftspace::types
