#include "ftspace/measure.hpp"

#include "ftspace/error.hpp"

#include <algorithm>
#include <numeric>

namespace ftspace::measure {

namespace {

std::vector<std::size_t> atom_index(std::size_t n, const std::vector<Subset>& atoms) {
    std::vector<std::size_t> out(n, static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < atoms.size(); ++k)
        for (auto e = atoms[k].find_first(); e != Subset::npos; e = atoms[k].find_next(e)) out[e] = k;
    return out;
}

void sort_atoms(std::vector<Subset>& atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Subset& a, const Subset& b) { return a.find_first() < b.find_first(); });
}

} // namespace

SetField SetField::from_atoms(std::size_t n, std::vector<Subset> atoms) {
    if (n == 0) throw DomainError("field universe must be nonempty");
    Subset seen(n);
    for (const auto& a : atoms) {
        if (a.size() != n) throw DomainError("atom lives on a different universe");
        if (a.none()) throw DomainError("empty atom");
        if (seen.intersects(a)) throw DomainError("atoms overlap at " + to_string(seen & a));
        seen |= a;
    }
    if (!seen.all()) throw DomainError("atoms do not cover the universe");
    sort_atoms(atoms);
    auto d = std::make_shared<Data>();
    d->n = n;
    d->atom_of = atom_index(n, atoms);
    d->atoms = std::move(atoms);
    return SetField(std::move(d));
}

SetField SetField::powerset(std::size_t n) {
    std::vector<Subset> atoms;
    atoms.reserve(n);
    for (std::size_t k = 0; k < n; ++k) atoms.push_back(make_subset(n, {k}));
    return from_atoms(n, std::move(atoms));
}

SetField SetField::trivial(std::size_t n) { return from_atoms(n, {full_subset(n)}); }

bool SetField::contains(const Subset& s) const {
    if (s.size() != universe_size()) return false;
    for (const auto& a : data_->atoms)
        if (a.intersects(s) && !a.is_subset_of(s)) return false;
    return true;
}

std::vector<std::size_t> SetField::atoms_in(const Subset& s) const {
    if (s.size() != universe_size()) throw DomainError("subset lives on a different universe");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < atom_count(); ++k) {
        const auto& a = data_->atoms[k];
        if (!a.intersects(s)) continue;
        if (!a.is_subset_of(s)) throw DomainError("set " + to_string(s) + " is not a member of the field");
        out.push_back(k);
    }
    return out;
}

bool SetField::refines(const SetField& coarser) const {
    if (universe_size() != coarser.universe_size()) return false;
    for (const auto& a : data_->atoms)
        if (!a.is_subset_of(coarser.atom(coarser.atom_of(a.find_first())))) return false;
    return true;
}

bool operator==(const SetField& a, const SetField& b) {
    return a.data_ == b.data_ || (a.universe_size() == b.universe_size() && a.data_->atoms == b.data_->atoms);
}

SetField field_extend_by_set(const SetField& field, const Subset& e) {
    if (e.size() != field.universe_size()) throw DomainError("set is not a subset of the field's universe");
    std::vector<Subset> atoms;
    atoms.reserve(field.atom_count() * 2);
    bool split = false;
    for (const auto& a : field.atoms()) {
        Subset in = a & e;
        Subset out = a - e;
        if (in.any() && out.any()) split = true;
        if (in.any()) atoms.push_back(std::move(in));
        if (out.any()) atoms.push_back(std::move(out));
    }
    if (!split) return field;
    return SetField::from_atoms(field.universe_size(), std::move(atoms));
}

SetField field_generate(std::size_t n, std::span<const Subset> generators) {
    SetField f = SetField::trivial(n);
    for (const auto& g : generators) {
        if (g.size() != n) throw DomainError("generator is not a subset of the universe");
        f = field_extend_by_set(f, g);
    }
    return f;
}

// ---------------------------------------------------------------------------

FAMeasure::FAMeasure(SetField field, std::vector<Rational> weights)
    : FAMeasure(unchecked(std::move(field), std::move(weights))) {
    if (auto d = defect()) throw DomainError(*d);
}

FAMeasure FAMeasure::unchecked(SetField field, std::vector<Rational> weights) {
    if (weights.size() != field.atom_count()) throw DomainError("need exactly one weight per atom");
    return FAMeasure(std::make_shared<Data>(Data{std::move(field), std::move(weights)}));
}

std::optional<std::string> FAMeasure::defect() const {
    Rational total = 0;
    for (std::size_t k = 0; k < data_->weights.size(); ++k) {
        if (data_->weights[k] < 0)
            return "negative weight " + format_rational(data_->weights[k]) + " on atom " +
                   to_string(field().atom(k));
        total += data_->weights[k];
    }
    if (total != 1) return "total mass is " + format_rational(total) + ", not 1";
    return std::nullopt;
}

bool operator==(const FAMeasure& a, const FAMeasure& b) {
    return a.same_object(b) || (a.field() == b.field() && a.data_->weights == b.data_->weights);
}

Rational measure_of(const FAMeasure& mu, const Subset& a) {
    Rational total = 0;
    for (auto k : mu.field().atoms_in(a)) total += mu.weight(k);
    return total;
}

Rational outer_measure(const FAMeasure& mu, const Subset& e) {
    if (e.size() != mu.field().universe_size()) throw DomainError("set is not a subset of the universe");
    Rational total = 0;
    const auto& f = mu.field();
    for (std::size_t k = 0; k < f.atom_count(); ++k)
        if (f.atom(k).intersects(e)) total += mu.weight(k);
    return total;
}

Rational inner_measure(const FAMeasure& mu, const Subset& e) {
    if (e.size() != mu.field().universe_size()) throw DomainError("set is not a subset of the universe");
    Rational total = 0;
    const auto& f = mu.field();
    for (std::size_t k = 0; k < f.atom_count(); ++k)
        if (f.atom(k).is_subset_of(e)) total += mu.weight(k);
    return total;
}

FAMeasure los_marczewski_extend(const FAMeasure& mu, const Subset& e, const Rational& p) {
    if (p < 0 || p > 1) throw DomainError("target value " + format_rational(p) + " is not in [0,1]");
    const Rational inner = inner_measure(mu, e);
    const Rational outer = outer_measure(mu, e);
    if (p < inner || p > outer)
        throw PreconditionError("target value " + format_rational(p) + " outside [inner, outer] = [" +
                                format_rational(inner) + ", " + format_rational(outer) + "]");
    const Rational t = outer == inner ? Rational(0) : Rational((p - inner) / (outer - inner));

    const SetField& old = mu.field();
    SetField next = field_extend_by_set(old, e);
    std::vector<Rational> w(next.atom_count(), Rational(0));
    for (std::size_t k = 0; k < old.atom_count(); ++k) {
        const Subset& a = old.atom(k);
        auto in = (a & e).find_first();
        auto out = (a - e).find_first();
        if (out == Subset::npos) {
            w[next.atom_of(in)] = mu.weight(k);
        } else if (in == Subset::npos) {
            w[next.atom_of(out)] = mu.weight(k);
        } else {
            w[next.atom_of(in)] = t * mu.weight(k);
            w[next.atom_of(out)] = mu.weight(k) - w[next.atom_of(in)];
        }
    }
    return FAMeasure(std::move(next), std::move(w));
}

FAMeasure horn_tarski_extend(const FAMeasure& mu, const SetField& target) {
    const SetField& old = mu.field();
    if (target.universe_size() != old.universe_size())
        throw DomainError("target field lives on a different universe");
    if (!target.refines(old)) throw DomainError("target field does not refine the measure's field");
    if (target == old) return mu;

    std::vector<std::size_t> pieces(old.atom_count(), 0);
    for (const auto& a : target.atoms()) ++pieces[old.atom_of(a.find_first())];
    std::vector<Rational> w;
    w.reserve(target.atom_count());
    for (const auto& a : target.atoms()) {
        auto k = old.atom_of(a.find_first());
        w.emplace_back(mu.weight(k) / Rational(static_cast<unsigned long>(pieces[k])));
    }
    return FAMeasure(target, std::move(w));
}

FAMeasure pushforward(const FAMeasure& mu, const std::vector<std::size_t>& f, const SetField& target) {
    if (f.size() != mu.field().universe_size()) throw DomainError("map is not total on the source universe");
    for (auto y : f)
        if (y >= target.universe_size()) throw DomainError("map leaves the target universe");
    std::vector<Rational> w;
    w.reserve(target.atom_count());
    for (const auto& a : target.atoms()) {
        Subset pre = preimage(f, a);
        if (!mu.field().contains(pre))
            throw DomainError("preimage " + to_string(pre) + " of atom " + to_string(a) +
                              " is not in the source field");
        w.push_back(measure_of(mu, pre));
    }
    return FAMeasure(target, std::move(w));
}

FAMeasure pullback(const FAMeasure& mu, const std::vector<std::size_t>& f) {
    const SetField& base = mu.field();
    Subset hit(base.universe_size());
    for (auto y : f) {
        if (y >= base.universe_size()) throw DomainError("map leaves the base universe");
        hit.set(y);
    }
    if (!hit.all()) throw PreconditionError("projection is not onto");
    std::vector<Subset> atoms;
    atoms.reserve(base.atom_count());
    for (const auto& a : base.atoms()) atoms.push_back(preimage(f, a));
    SetField lifted = SetField::from_atoms(f.size(), std::move(atoms));
    std::vector<Rational> w(lifted.atom_count());
    for (std::size_t k = 0; k < base.atom_count(); ++k)
        w[lifted.atom_of(preimage(f, base.atom(k)).find_first())] = mu.weight(k);
    return FAMeasure(std::move(lifted), std::move(w));
}

FAMeasure point_mass(std::size_t m, const SetField& field) {
    if (m >= field.universe_size()) throw DomainError("point is not in the universe");
    std::vector<Rational> w(field.atom_count(), Rational(0));
    w[field.atom_of(m)] = 1;
    return FAMeasure(field, std::move(w));
}

// ---------------------------------------------------------------------------

ProjectionFamily ProjectionFamily::from_consecutive(const std::vector<std::vector<std::size_t>>& step) {
    ProjectionFamily fam;
    const std::size_t top = step.size();
    for (std::size_t zeta = 1; zeta <= top; ++zeta) {
        std::vector<std::size_t> map = step[zeta - 1];
        fam.set(zeta - 1, zeta, map);
        for (std::size_t xi = zeta - 1; xi-- > 0;) {
            for (auto& y : map) y = step[xi][y];
            fam.set(xi, zeta, map);
        }
    }
    return fam;
}

void ProjectionFamily::set(std::size_t xi, std::size_t zeta, std::vector<std::size_t> map) {
    if (xi >= zeta) throw DomainError("projection indices must satisfy xi < zeta");
    maps_[{xi, zeta}] = std::move(map);
}

const std::vector<std::size_t>& ProjectionFamily::get(std::size_t xi, std::size_t zeta) const {
    auto it = maps_.find({xi, zeta});
    if (it == maps_.end())
        throw DomainError("missing projection f_{" + std::to_string(xi) + "," + std::to_string(zeta) + "}");
    return it->second;
}

bool ProjectionFamily::has(std::size_t xi, std::size_t zeta) const { return maps_.count({xi, zeta}) != 0; }

FAMeasure glue_chain(std::span<const FAMeasure> levels, const ProjectionFamily& proj, std::size_t top_size) {
    const std::size_t top = levels.size();
    if (top == 0) throw DomainError("chain has no levels");
    auto size_of = [&](std::size_t k) { return k == top ? top_size : levels[k].field().universe_size(); };

    for (std::size_t zeta = 1; zeta <= top; ++zeta) {
        for (std::size_t xi = 0; xi < zeta; ++xi) {
            const auto& f = proj.get(xi, zeta);
            if (f.size() != size_of(zeta)) throw DomainError("projection has the wrong domain size");
            Subset hit(size_of(xi));
            for (auto y : f) {
                if (y >= size_of(xi)) throw DomainError("projection leaves its codomain");
                hit.set(y);
            }
            if (!hit.all())
                throw PreconditionError("projection f_{" + std::to_string(xi) + "," + std::to_string(zeta) +
                                        "} is not onto");
            if (zeta < top) {
                for (const auto& a : levels[xi].field().atoms())
                    if (!levels[zeta].field().contains(preimage(f, a)))
                        throw PreconditionError("projection f_{" + std::to_string(xi) + "," +
                                                std::to_string(zeta) + "} is not measurable");
            }
            for (std::size_t beta = xi + 1; beta < zeta; ++beta) {
                const auto& outer = proj.get(xi, beta);
                const auto& inner = proj.get(beta, zeta);
                for (std::size_t x = 0; x < f.size(); ++x)
                    if (outer[inner[x]] != f[x]) throw PreconditionError("projections do not commute");
            }
        }
    }
    for (std::size_t beta = 1; beta < top; ++beta)
        for (std::size_t xi = 0; xi < beta; ++xi) {
            const auto& f = proj.get(xi, beta);
            const auto& lower = levels[xi];
            for (std::size_t k = 0; k < lower.field().atom_count(); ++k)
                if (measure_of(levels[beta], preimage(f, lower.field().atom(k))) != lower.weight(k))
                    throw PreconditionError("inconsistent marginals between levels " + std::to_string(xi) +
                                            " and " + std::to_string(beta));
        }

    // The pulled-back fields increase along the chain, so the union field is the
    // preimage of the last level's field.
    return pullback(levels[top - 1], proj.get(top - 1, top));
}

} // namespace ftspace::measure
