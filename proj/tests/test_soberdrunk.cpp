#include "support.hpp"

#include "ftspace/error.hpp"
#include "ftspace/soberdrunk.hpp"

#include <doctest.h>

using namespace testing;
using namespace ftspace::sober;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Record bits(std::size_t n, std::initializer_list<std::size_t> set) {
    std::vector<Ord> s;
    for (auto k : set) s.emplace_back(k);
    return Record(Ord(n), s);
}

} // namespace

TEST_CASE("enumerate W^n") {
    CHECK(w_count(0) == 2);
    CHECK(w_count(1) == 8);
    CHECK(w_count(2) == 32);
    for (std::size_t n = 0; n <= 3; ++n) {
        auto states = enumerate_W(n);
        REQUIRE(states.size() == w_count(n));
        std::set<std::string> names;
        for (std::size_t k = 0; k < states.size(); ++k) {
            CHECK(index_of(states[k]) == k);
            CHECK(state_at(n, k) == states[k]);
            names.insert(state_name(states[k]));
        }
        CHECK(names.size() == states.size());
    }
    CHECK(state_name(enumerate_W(0)[0]) == "h");
    CHECK(state_name(enumerate_W(0)[1]) == "t");
    WState w(Ord(4), true, bits(4, {1, 2}), bits(4, {0}));
    CHECK(state_name(w) == "h.0110.1000");
    CHECK(to_string(w) == "(h, {1,2}, {0})");
    CHECK(to_string(restrict(w, Ord(1))) == "(h, {}, {0})");
    CHECK_THROWS_AS(enumerate_W(7, 100), BudgetExceeded);
    CHECK_THROWS_AS(WState(Ord(2), true, bits(2, {}), bits(3, {})), DomainError);
}

TEST_CASE("restriction") {
    for (std::size_t n = 0; n <= 3; ++n) {
        auto states = enumerate_W(n);
        for (std::size_t m = 0; m <= n; ++m) {
            auto pi = projection(m, n);
            std::set<std::size_t> image(pi.begin(), pi.end());
            CHECK(image.size() == w_count(m));
            for (std::size_t k = 0; k < states.size(); ++k) {
                CHECK(index_of(restrict(states[k], Ord(m))) == pi[k]);
                for (std::size_t l = 0; l <= m; ++l)
                    CHECK(restrict(restrict(states[k], Ord(m)), Ord(l)) == restrict(states[k], Ord(l)));
            }
        }
        CHECK(restrict(states.back(), Ord(n)) == states.back());
        CHECK_THROWS_AS(restrict(states[0], Ord(n + 1)), DomainError);
    }
}

TEST_CASE("partition blocks") {
    WState w(Ord(1), true, bits(1, {0}), bits(1, {}));
    CHECK(partition_block(kPlayerA, w).count() == 2);
    WState v(Ord(1), true, bits(1, {}), bits(1, {0}));
    CHECK(partition_block(kPlayerA, v).count() == 4);

    for (std::size_t n = 1; n <= 3; ++n) {
        auto states = enumerate_W(n);
        for (std::size_t i : {kPlayerA, kPlayerB}) {
            auto labels = partition_labels(n, i);
            for (std::size_t x = 0; x < states.size(); ++x) {
                auto block = partition_block(i, states[x]);
                CHECK(block.test(x));
                for (std::size_t y = 0; y < states.size(); ++y) {
                    bool same = labels[x] == labels[y];
                    CHECK(block.test(y) == same);
                    CHECK(partition_contains(i, states[x], states[y]) == same);
                    CHECK((partition_key(i, states[x]) == partition_key(i, states[y])) == same);
                    // A block never mixes the player's own records.
                    if (same) CHECK(states[x].record(i) == states[y].record(i));
                }
            }
        }
    }
    auto w0 = enumerate_W(0)[0];
    CHECK_THROWS_AS(partition_contains(kPlayerA, w0, w0), DomainError);
    CHECK_THROWS_AS(partition_contains(kPlayerA, w, enumerate_W(2)[0]), DomainError);
}

TEST_CASE("blocks refine under restriction") {
    // v ∈ P_i(w) implies v ↾ m ∈ P_i(w ↾ m) for 1 ≤ m ≤ n.
    for (std::size_t n = 2; n <= 3; ++n) {
        auto states = enumerate_W(n);
        for (std::size_t i : {kPlayerA, kPlayerB})
            for (const auto& x : states)
                for (const auto& y : states)
                    if (partition_contains(i, x, y))
                        for (std::size_t m = 1; m <= n; ++m)
                            CHECK(partition_contains(i, restrict(x, Ord(m)), restrict(y, Ord(m))));
    }
}

TEST_CASE("cylinders") {
    CHECK(cylinder_nature(1, true).count() == 4);
    CHECK(cylinder_bit(1, kPlayerB, 0, true).count() == 4);
    CHECK((cylinder_nature(2, true) | cylinder_nature(2, false)) == full_subset(32));
    for (std::size_t n = 1; n <= 3; ++n) {
        auto states = enumerate_W(n);
        for (std::size_t k = 0; k < states.size(); ++k) {
            CHECK(cylinder_nature(n, true).test(k) == in_cylinder_nature(states[k], true));
            for (std::size_t i : {kPlayerA, kPlayerB})
                for (std::size_t b = 0; b < n; ++b) {
                    CHECK(cylinder_bit(n, i, b, true).test(k) == in_cylinder_bit(states[k], i, Ord(b), true));
                    CHECK(cylinder_bit(n, i, b, true).test(k) != cylinder_bit(n, i, b, false).test(k));
                }
        }
        // Lifting a cylinder from a lower level is its preimage.
        for (std::size_t m = 1; m < n; ++m) {
            auto pi = projection(m, n);
            auto lower = cylinder_bit(m, kPlayerA, m - 1, true);
            auto upper = cylinder_bit(n, kPlayerA, m - 1, true);
            for (std::size_t k = 0; k < states.size(); ++k) CHECK(upper.test(k) == lower.test(pi[k]));
        }
    }
    CHECK_THROWS_AS(cylinder_bit(2, kPlayerA, 2, true), DomainError);
}

TEST_CASE("beliefs at small levels") {
    auto t1 = build_beliefs(1);
    auto s1 = enumerate_W(1);
    auto heads = cylinder_nature(1, true);
    for (std::size_t k = 0; k < s1.size(); ++k) {
        for (std::size_t i : {kPlayerA, kPlayerB}) {
            auto v = measure::measure_of(t1.final_types[i][k], heads);
            // A set own bit at 0 pins nature; otherwise the coin is fair.
            CHECK(v == (s1[k].bit(i, Ord(0)) ? (s1[k].heads() ? q("1") : q("0")) : q("1/2")));
        }
    }
    auto t2 = build_beliefs(2);
    auto s2 = enumerate_W(2);
    for (std::size_t k = 0; k < s2.size(); ++k)
        for (std::size_t i : {kPlayerA, kPlayerB}) {
            auto j = opponent(i);
            auto mass = measure::measure_of(t2.final_types[i][k], cylinder_bit(2, j, 0, s2[k].bit(j, Ord(0))));
            CHECK(mass == (s2[k].bit(i, Ord(1)) ? q("1") : q("1/2")));
        }
    CHECK_THROWS_AS(build_beliefs(0), DomainError);
    CHECK_THROWS_AS(build_beliefs(5, 512), BudgetExceeded);
}

TEST_CASE("belief theorem and induction") {
    for (std::size_t n = 1; n <= 3; ++n) {
        CAPTURE(n);
        auto tower = build_beliefs(n);
        CHECK(check_belief_theorem(tower).ok());
        CHECK(check_induction(tower).ok());
        auto space = soberdrunk_space(tower);
        CHECK(types::validate(space).valid());
        CHECK(check_bit_identities(space, n).ok());
    }
}

TEST_CASE("bit expressions") {
    CHECK(lang::to_string(bit_expr(kPlayerA, 0, true)) == "or(B[a,1](nat(h)), B[a,1](nat(t)))");
    auto space = soberdrunk_space(3);
    for (std::size_t i : {kPlayerA, kPlayerB})
        for (std::size_t b = 0; b < 3; ++b)
            for (bool bit : {true, false}) {
                auto e = bit_expr(i, b, bit);
                CHECK(lang::depth(e) == b + 1);
                CHECK(lang::eval(space, e) == cylinder_bit(3, i, b, bit));
            }
    CHECK(bit_corpus(1).size() == 6);
    for (const auto& e : bit_corpus(3)) CHECK(lang::depth(e) <= 3);
}

TEST_CASE("separation") {
    auto one = separation_demo(1, 0);
    CHECK(one.ok());
    CHECK(one.psi_depth == 1);
    auto two = separation_demo(2, 1, kPlayerB);
    CHECK(two.ok());
    CHECK(two.u.bit(kPlayerB, Ord(1)));
    CHECK(!two.w.bit(kPlayerB, Ord(1)));
    CHECK_THROWS_AS(separation_demo(2, 2), DomainError);
}

TEST_CASE("equal restrictions give equal fingerprints") {
    auto space = soberdrunk_space(3);
    auto states = enumerate_W(3);
    for (std::size_t d = 0; d <= 3; ++d) {
        auto fp = universal::fingerprints(space, d);
        for (std::size_t x = 0; x < states.size(); ++x)
            for (std::size_t y = 0; y < states.size(); ++y)
                CHECK((fp[x] == fp[y]) == (restrict(states[x], Ord(d)) == restrict(states[y], Ord(d))));
    }
}

TEST_CASE("extra players") {
    auto space = soberdrunk_space(2, {"c"});
    CHECK(space.players() == std::vector<std::string>{"a", "b", "c"});
    CHECK(types::validate(space).valid());
    for (std::size_t m = 0; m < space.size(); ++m) CHECK(space.type(2, m) == measure::point_mass(m, space.field()));
}
