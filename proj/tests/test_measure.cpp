#include "support.hpp"

#include "ftspace/error.hpp"

#include <doctest.h>

using namespace testing;
using namespace ftspace::measure;

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::vector<Subset> members(const SetField& f) {
    std::vector<Subset> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << f.atom_count()); ++mask) {
        Subset s(f.universe_size());
        for (std::size_t k = 0; k < f.atom_count(); ++k)
            if ((mask >> k) & 1u) s |= f.atom(k);
        out.push_back(s);
    }
    return out;
}

// Atoms of the generated field by brute force: elements are equivalent iff every
// generator contains both or neither.
std::vector<Subset> brute_atoms(std::size_t n, const std::vector<Subset>& gens) {
    std::vector<Subset> atoms;
    Subset covered(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (covered.test(x)) continue;
        Subset a(n);
        for (std::size_t y = 0; y < n; ++y) {
            bool same = true;
            for (const auto& g : gens) same = same && g.test(x) == g.test(y);
            if (same) a.set(y);
        }
        covered |= a;
        atoms.push_back(a);
    }
    return atoms;
}

Rational brute_outer(const FAMeasure& mu, const Subset& e) {
    Rational best = 1;
    for (const auto& s : members(mu.field()))
        if (e.is_subset_of(s)) best = std::min(best, measure_of(mu, s));
    return best;
}

Rational brute_inner(const FAMeasure& mu, const Subset& e) {
    Rational best = 0;
    for (const auto& s : members(mu.field()))
        if (s.is_subset_of(e)) best = std::max(best, measure_of(mu, s));
    return best;
}

} // namespace

TEST_CASE("field_generate") {
    CHECK(field_generate(2, std::vector<Subset>{}).atom_count() == 1);
    std::vector<Subset> one{make_subset(4, {0, 1})};
    auto f1 = field_generate(4, one);
    REQUIRE(f1.atom_count() == 2);
    CHECK(f1.atom(0) == make_subset(4, {0, 1}));
    CHECK(f1.atom(1) == make_subset(4, {2, 3}));
    std::vector<Subset> two{make_subset(4, {0, 1}), make_subset(4, {1, 2})};
    CHECK(field_generate(4, two) == SetField::powerset(4));
    std::vector<Subset> bad{Subset(3)};
    CHECK_THROWS_AS(field_generate(4, bad), DomainError);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 8;
        std::vector<Subset> gens;
        for (std::size_t g = 0; g < rng() % 4; ++g) gens.push_back(random_subset(rng, n));
        auto f = field_generate(n, gens);
        auto expected = brute_atoms(n, gens);
        REQUIRE(f.atom_count() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k) CHECK(f.atom(k) == expected[k]);
        for (const auto& g : gens) CHECK(f.contains(g));
    }
}

TEST_CASE("field algebra closure") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto f = random_field(rng, 1 + rng() % 6);
        auto all = members(f);
        std::size_t n = f.universe_size();
        CHECK(f.contains(Subset(n)));
        CHECK(f.contains(full_subset(n)));
        for (const auto& a : all) {
            CHECK(f.contains(~a));
            for (const auto& b : all) CHECK(f.contains(a & b));
        }
    }
}

TEST_CASE("field_extend_by_set") {
    auto f = field_extend_by_set(SetField::trivial(2), make_subset(2, {0}));
    CHECK(f == SetField::powerset(2));
    auto coarse = SetField::from_atoms(4, {make_subset(4, {0, 1}), make_subset(4, {2, 3})});
    CHECK(field_extend_by_set(coarse, make_subset(4, {0, 1})) == coarse);
    CHECK(field_extend_by_set(coarse, make_subset(4, {0, 2})) == SetField::powerset(4));
    CHECK_THROWS_AS(field_extend_by_set(coarse, Subset(3)), DomainError);

    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng() % 7;
        auto base = random_field(rng, n);
        auto e = random_subset(rng, n);
        auto ext = field_extend_by_set(base, e);
        CHECK(ext.refines(base));
        CHECK(ext.contains(e));
        // Every member is (L ∩ E) ∪ (N ∖ E) for members L, N of the base field.
        for (const auto& s : members(ext)) {
            bool found = false;
            for (const auto& l : members(base))
                for (const auto& m : members(base)) found = found || s == ((l & e) | (m - e));
            CHECK(found);
        }
    }
}

TEST_CASE("measure_of, outer and inner") {
    auto f = SetField::from_atoms(4, {make_subset(4, {0, 1}), make_subset(4, {2, 3})});
    FAMeasure mu(f, {q("3/5"), q("2/5")});
    CHECK(measure_of(mu, Subset(4)) == 0);
    CHECK(measure_of(mu, full_subset(4)) == 1);
    CHECK(measure_of(mu, make_subset(4, {2, 3})) == q("2/5"));
    CHECK_THROWS_AS(measure_of(mu, make_subset(4, {0})), DomainError);
    auto e = make_subset(4, {0, 2});
    CHECK(inner_measure(mu, e) == 0);
    CHECK(outer_measure(mu, e) == 1);
    CHECK(inner_measure(mu, e) == 1 - outer_measure(mu, ~e));

    CHECK_THROWS_AS(FAMeasure(f, {q("1/2"), q("1/3")}), DomainError);
    CHECK_THROWS_AS(FAMeasure(f, {q("3/2"), q("-1/2")}), DomainError);
    CHECK_THROWS_AS(FAMeasure(f, {q("1")}), DomainError);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 7;
        auto mu2 = random_measure(rng, random_field(rng, n));
        auto all = members(mu2.field());
        for (const auto& a : all)
            for (const auto& b : all)
                if (!a.intersects(b)) CHECK(measure_of(mu2, a | b) == measure_of(mu2, a) + measure_of(mu2, b));
        auto s = random_subset(rng, n);
        CHECK(outer_measure(mu2, s) == brute_outer(mu2, s));
        CHECK(inner_measure(mu2, s) == brute_inner(mu2, s));
        CHECK(inner_measure(mu2, s) <= outer_measure(mu2, s));
        CHECK(inner_measure(mu2, s) == 1 - outer_measure(mu2, ~s));
    }
}

TEST_CASE("los_marczewski_extend") {
    auto triv = FAMeasure(SetField::trivial(3), {Rational(1)});
    auto nu = los_marczewski_extend(triv, make_subset(3, {0}), q("1/2"));
    CHECK(measure_of(nu, make_subset(3, {0})) == q("1/2"));
    CHECK(measure_of(nu, make_subset(3, {1, 2})) == q("1/2"));

    auto f = SetField::from_atoms(4, {make_subset(4, {0, 1}), make_subset(4, {2, 3})});
    FAMeasure mu(f, {q("3/5"), q("2/5")});
    auto same = los_marczewski_extend(mu, make_subset(4, {0, 1}), q("3/5"));
    CHECK(same == mu);
    auto ext = los_marczewski_extend(mu, make_subset(4, {0, 2}), q("1/2"));
    REQUIRE(ext.field() == SetField::powerset(4));
    CHECK(ext.weight(0) == q("3/10"));
    CHECK(ext.weight(1) == q("3/10"));
    CHECK(ext.weight(2) == q("1/5"));
    CHECK(ext.weight(3) == q("1/5"));

    auto inside = FAMeasure(f, {q("1/2"), q("1/2")});
    CHECK_THROWS_AS(los_marczewski_extend(inside, make_subset(4, {0, 1}), q("1/3")), PreconditionError);
    CHECK_THROWS_AS(los_marczewski_extend(mu, make_subset(4, {0, 2}), q("3/2")), DomainError);
}

TEST_CASE("horn_tarski_extend") {
    auto f = SetField::from_atoms(3, {make_subset(3, {0, 1}), make_subset(3, {2})});
    FAMeasure mu(f, {q("1/2"), q("1/2")});
    CHECK(horn_tarski_extend(mu, f) == mu);
    auto ext = horn_tarski_extend(mu, SetField::powerset(3));
    CHECK(ext.weight(0) == q("1/4"));
    CHECK(ext.weight(1) == q("1/4"));
    CHECK(ext.weight(2) == q("1/2"));
    auto third = horn_tarski_extend(FAMeasure(SetField::trivial(3), {Rational(1)}), SetField::powerset(3));
    for (std::size_t k = 0; k < 3; ++k) CHECK(third.weight(k) == q("1/3"));
    CHECK_THROWS_AS(horn_tarski_extend(ext, f), DomainError);
    CHECK_THROWS_AS(horn_tarski_extend(mu, SetField::powerset(4)), DomainError);

    std::mt19937 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng() % 7;
        auto base = random_field(rng, n);
        auto m = random_measure(rng, base);
        auto finer = field_extend_by_set(field_extend_by_set(base, random_subset(rng, n)), random_subset(rng, n));
        auto e = horn_tarski_extend(m, finer);
        CHECK(!e.defect());
        for (const auto& s : members(base)) CHECK(measure_of(e, s) == measure_of(m, s));
    }
}

TEST_CASE("pushforward, pullback and point_mass") {
    auto uniform4 = FAMeasure(SetField::powerset(4), {q("1/4"), q("1/4"), q("1/4"), q("1/4")});
    CHECK(pushforward(uniform4, {0, 1, 2, 3}, SetField::powerset(4)) == uniform4);
    auto collapsed = pushforward(uniform4, {0, 0, 1, 1}, SetField::powerset(2));
    CHECK(collapsed.weight(0) == q("1/2"));
    CHECK(collapsed.weight(1) == q("1/2"));
    auto constant = pushforward(uniform4, {1, 1, 1, 1}, SetField::powerset(3));
    CHECK(constant == point_mass(1, SetField::powerset(3)));
    auto coarse = FAMeasure(SetField::trivial(2), {Rational(1)});
    CHECK_THROWS_AS(pushforward(coarse, {0, 1}, SetField::powerset(2)), DomainError);

    auto pm = point_mass(0, SetField::powerset(2));
    CHECK(pm.weight(0) == 1);
    CHECK(pm.weight(1) == 0);
    CHECK(point_mass(1, SetField::trivial(2)).weight(0) == 1);
    CHECK_THROWS_AS(point_mass(2, SetField::powerset(2)), DomainError);

    // Pushforward along a bijection relabels weights.
    auto w = FAMeasure(SetField::powerset(3), {q("1/2"), q("1/3"), q("1/6")});
    auto moved = pushforward(w, {2, 0, 1}, SetField::powerset(3));
    CHECK(moved.weight(2) == q("1/2"));
    CHECK(moved.weight(0) == q("1/3"));
    CHECK(moved.weight(1) == q("1/6"));

    auto back = pullback(collapsed, {0, 0, 1, 1});
    CHECK(measure_of(back, make_subset(4, {0, 1})) == q("1/2"));
    CHECK(back.field().atom_count() == 2);
}

TEST_CASE("glue_chain") {
    // Level 0: {0,1}, level 1: {0..3} projecting by k/2, top: {0..7} projecting by k/2.
    std::vector<std::vector<std::size_t>> step{{0, 0, 1, 1}, {0, 0, 1, 1, 2, 2, 3, 3}};
    auto proj = ProjectionFamily::from_consecutive(step);
    FAMeasure mu0(SetField::powerset(2), {q("1/3"), q("2/3")});
    FAMeasure mu1(SetField::powerset(4), {q("1/6"), q("1/6"), q("1/3"), q("1/3")});
    std::vector<FAMeasure> just0{mu0};
    auto g0 = glue_chain(just0, ProjectionFamily::from_consecutive({{0, 0, 0, 0, 1, 1, 1, 1}}), 8);
    CHECK(measure_of(g0, make_subset(8, {0, 1, 2, 3})) == q("1/3"));

    std::vector<FAMeasure> both{mu0, mu1};
    auto g = glue_chain(both, proj, 8);
    CHECK(measure_of(g, make_subset(8, {0, 1, 2, 3})) == q("1/3"));
    CHECK(measure_of(g, make_subset(8, {0, 1})) == q("1/6"));
    CHECK(measure_of(g, make_subset(8, {4, 5})) == q("1/3"));

    FAMeasure bad(SetField::powerset(4), {q("1/2"), q("1/2"), 0, 0});
    std::vector<FAMeasure> inconsistent{mu0, bad};
    CHECK_THROWS_AS(glue_chain(inconsistent, proj, 8), PreconditionError);
    std::vector<std::vector<std::size_t>> not_onto{{0, 0, 0, 0}, {0, 0, 1, 1, 2, 2, 3, 3}};
    CHECK_THROWS_AS(glue_chain(both, ProjectionFamily::from_consecutive(not_onto), 8), PreconditionError);
}
