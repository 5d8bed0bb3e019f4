#pragma once

// Finite fields of sets and finitely additive probability measures on them.
//
// A field on the universe {0, ..., n-1} is stored by its atom partition: a set is
// a member iff it is a union of atoms. Atoms are kept sorted by their minimal
// element, so every construction below is deterministic. A measure is a weight per
// atom. All values are immutable and cheap to copy (shared representation).

#include "ftspace/rational.hpp"
#include "ftspace/subset.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ftspace::measure {

class SetField {
public:
    /// Builds a field from an explicit atom partition. Throws DomainError unless the
    /// atoms are nonempty, pairwise disjoint and cover {0, ..., n-1}.
    static SetField from_atoms(std::size_t n, std::vector<Subset> atoms);
    static SetField powerset(std::size_t n);
    /// {∅, M}
    static SetField trivial(std::size_t n);

    std::size_t universe_size() const { return data_->n; }
    std::size_t atom_count() const { return data_->atoms.size(); }
    const Subset& atom(std::size_t k) const { return data_->atoms[k]; }
    std::span<const Subset> atoms() const { return data_->atoms; }
    /// Index of the atom containing element e.
    std::size_t atom_of(std::size_t e) const { return data_->atom_of[e]; }

    bool is_powerset() const { return atom_count() == universe_size(); }

    /// Membership: s is a union of atoms.
    bool contains(const Subset& s) const;
    /// Indices of the atoms inside a member. Throws DomainError if s is not a member.
    std::vector<std::size_t> atoms_in(const Subset& s) const;
    /// Every atom of `coarser` is a union of atoms of *this (same universe).
    bool refines(const SetField& coarser) const;

    friend bool operator==(const SetField& a, const SetField& b);

private:
    struct Data {
        std::size_t n = 0;
        std::vector<Subset> atoms;
        std::vector<std::size_t> atom_of;
    };
    explicit SetField(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;
};

/// Coarsest field on {0..n-1} containing every generator.
SetField field_generate(std::size_t n, std::span<const Subset> generators);

/// [F, E]: each atom A is split into A∩E and A∖E; empty pieces are dropped.
SetField field_extend_by_set(const SetField& field, const Subset& e);

class FAMeasure {
public:
    /// Throws DomainError unless weights are one per atom, nonnegative, summing to 1.
    FAMeasure(SetField field, std::vector<Rational> weights);

    /// Skips the probability checks (weights still one per atom). Used when loading
    /// external data so that a validator can report the defect instead of throwing.
    static FAMeasure unchecked(SetField field, std::vector<Rational> weights);

    const SetField& field() const { return data_->field; }
    std::span<const Rational> weights() const { return data_->weights; }
    const Rational& weight(std::size_t atom) const { return data_->weights[atom]; }

    /// Empty when the measure is a probability measure; otherwise what is wrong.
    std::optional<std::string> defect() const;

    /// Same object (shared representation); a fast path for equality.
    bool same_object(const FAMeasure& other) const { return data_ == other.data_; }

    friend bool operator==(const FAMeasure& a, const FAMeasure& b);

private:
    struct Data {
        SetField field;
        std::vector<Rational> weights;
    };
    explicit FAMeasure(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;
};

/// μ(A) for a member A of μ's field. Throws DomainError if A is not a member.
Rational measure_of(const FAMeasure& mu, const Subset& a);

/// inf{μ(F) : F ⊇ E}: total weight of the atoms meeting E.
Rational outer_measure(const FAMeasure& mu, const Subset& e);
/// sup{μ(F) : F ⊆ E}: total weight of the atoms inside E.
Rational inner_measure(const FAMeasure& mu, const Subset& e);

/// Extension of μ to [F, E] with ν(E) = p. Atoms inside E keep their mass on the E
/// side, atoms disjoint from E keep none, and a straddling atom gives the fraction
/// t = (p - inner)/(outer - inner) of its mass to A∩E (t = 0 when outer = inner).
/// Throws PreconditionError if p lies outside [inner(E), outer(E)] and DomainError
/// if p lies outside [0, 1].
FAMeasure los_marczewski_extend(const FAMeasure& mu, const Subset& e, const Rational& p);

/// Extension of μ to a refining field: each atom's mass is split equally among the
/// atoms of `target` it contains. Throws DomainError if `target` does not refine
/// μ's field or lives on another universe.
FAMeasure horn_tarski_extend(const FAMeasure& mu, const SetField& target);

/// E ↦ μ'(f⁻¹(E)) on `target`. f maps {0..|M'|-1} into {0..|target|-1}. Throws
/// DomainError if some preimage of a target atom is outside μ''s field.
FAMeasure pushforward(const FAMeasure& mu, const std::vector<std::size_t>& f,
                      const SetField& target);

/// The measure induced on f⁻¹(F) by μ on F, for an onto f : M' → M.
FAMeasure pullback(const FAMeasure& mu, const std::vector<std::size_t>& f);

/// δ_m: mass 1 on the atom containing m.
FAMeasure point_mass(std::size_t m, const SetField& field);

/// Projection maps f_{ξ,ζ} : M^ζ → M^ξ for 0 ≤ ξ < ζ ≤ top of a finite chain.
class ProjectionFamily {
public:
    /// Every pair is composed from the consecutive maps step[k] : M^{k+1} → M^k.
    static ProjectionFamily from_consecutive(const std::vector<std::vector<std::size_t>>& step);

    void set(std::size_t xi, std::size_t zeta, std::vector<std::size_t> map);
    const std::vector<std::size_t>& get(std::size_t xi, std::size_t zeta) const;
    bool has(std::size_t xi, std::size_t zeta) const;

private:
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> maps_;
};

/// Gluing along a finite chain. levels[k] is a measure on the k-th space of the chain; the
/// glued measure lives on the space indexed levels.size() (M^α) and satisfies
/// μ^{<α}(f_{k,α}⁻¹(E)) = μ^k(E). Throws PreconditionError if a projection is not
/// onto, projections do not commute, a projection is not measurable, or marginals
/// are inconsistent.
FAMeasure glue_chain(std::span<const FAMeasure> levels, const ProjectionFamily& proj,
                     std::size_t top_size);

} // namespace ftspace::measure
