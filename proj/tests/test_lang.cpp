#include "support.hpp"

#include "ftspace/error.hpp"
#include "ftspace/lang.hpp"

#include <doctest.h>

using namespace testing;
using namespace ftspace::lang;

namespace {

Rational q(const char* s) { return parse_rational(s); }

// θ(x) = h, θ(y) = t, both players uniform.
TypeSpace uniform_coin() {
    auto f = SetField::powerset(2);
    FAMeasure u(f, {q("1/2"), q("1/2")});
    return TypeSpace(types::coin_nature(), {"a", "b"}, {"x", "y"}, f, {0, 1}, {{u, u}, {u, u}});
}

Expr random_expr(std::mt19937& rng, int budget) {
    static const char* thresholds[] = {"0", "1/4", "1/3", "1/2", "2/3", "1"};
    int pick = budget <= 0 ? 0 : static_cast<int>(rng() % 5);
    switch (pick) {
    case 0: return Expr::nat(rng() % 2 ? "h" : "t");
    case 1: return Expr::neg(random_expr(rng, budget - 1));
    case 2: return Expr::conj({random_expr(rng, budget - 1), random_expr(rng, budget - 2)});
    case 3: return Expr::disj({random_expr(rng, budget - 1), random_expr(rng, budget - 2)});
    default: return Expr::bel(rng() % 2 ? "a" : "b", q(thresholds[rng() % 6]), random_expr(rng, budget - 1));
    }
}

} // namespace

TEST_CASE("parse") {
    auto n = parse("nat(h)");
    CHECK(n.kind() == Kind::Nat);
    CHECK(n.name() == "h");

    auto b = parse("B[a,1/2](not nat(h))");
    REQUIRE(b.kind() == Kind::Bel);
    CHECK(b.name() == "a");
    CHECK(b.threshold() == q("1/2"));
    CHECK(b.child().kind() == Kind::Not);
    CHECK(b.child().child().name() == "h");

    auto c = parse("and(nat(h), B[b,1](nat(t)))");
    REQUIRE(c.kind() == Kind::And);
    REQUIRE(c.children().size() == 2);
    CHECK(c.children()[1].kind() == Kind::Bel);
    CHECK(c.children()[1].child().name() == "t");

    CHECK(to_string(parse("  and( nat(h) ,\n not  nat(t))")) == "and(nat(h), not nat(t))");
    CHECK(to_string(parse("B[a, 2/4](nat(h))")) == "B[a,1/2](nat(h))");
    CHECK(to_string(parse("or(nat(h), nat(t), nat(h))")) == "or(nat(h), nat(t), nat(h))");
    CHECK_THROWS_AS(parse("notnat(h)"), ParseError);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse("nat(h"), ParseError);
    CHECK_THROWS_AS(parse("and()"), ParseError);
    CHECK_THROWS_AS(parse("B[a,3/2](nat(h))"), ParseError);
    CHECK_THROWS_AS(parse("B[a,1/0](nat(h))"), ParseError);
    CHECK_THROWS_AS(parse("nat(h) extra"), ParseError);
    auto nature = types::coin_nature();
    CHECK_THROWS_AS(parse("nat(rain)", &nature), ParseError);
    CHECK_NOTHROW(parse("nat(rain)"));
    try {
        parse("and(nat(h), foo)");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 12);
    }
}

TEST_CASE("round trip on random expressions") {
    std::mt19937 rng(17);
    for (int k = 0; k < 300; ++k) {
        auto e = random_expr(rng, 6);
        auto text = to_string(e);
        CHECK(to_string(parse(text)) == text);
    }
}

TEST_CASE("depth") {
    CHECK(depth(parse("nat(h)")) == 0);
    CHECK(depth(parse("B[a,1](nat(h))")) == 1);
    CHECK(depth(parse("and(B[a,1](nat(h)), B[b,1](B[a,1](nat(t))))")) == 2);
    CHECK(depth(parse("not B[a,1](nat(h))")) == 1);
    auto parts = std::vector<Expr>{parse("B[a,1](nat(h))"), parse("B[b,1](B[a,1](nat(t)))")};
    CHECK(depth(Expr::disj(parts)) == depth(Expr::conj(parts)));
    CHECK_THROWS_AS(Expr::conj({}), DomainError);
    CHECK_THROWS_AS(Expr::bel("a", q("-1"), parse("nat(h)")), DomainError);
}

TEST_CASE("eval") {
    auto single = types::singleton_space(types::coin_nature(), "h");
    CHECK(eval(single, parse("nat(h)")) == make_subset(1, {0}));
    CHECK(eval(single, parse("nat(t)")).none());
    CHECK(desc_contains(single, 0, parse("nat(h)")));
    CHECK(desc_contains(single, 0, parse("B[a,1](nat(h))")));
    CHECK(!desc_contains(single, 0, parse("nat(t)")));

    auto coin = uniform_coin();
    CHECK(eval(coin, parse("B[a,1/2](nat(h))")) == full_subset(2));
    CHECK(eval(coin, parse("B[a,3/4](nat(h))")).none());
    CHECK(believed_value(coin, 0, 0, parse("nat(h)")) == q("1/2"));
    CHECK(believed_value(coin, 0, 0, parse("or(nat(h), nat(t))")) == 1);
    CHECK(believed_value(coin, 0, 0, parse("and(nat(h), nat(t))")) == 0);

    auto events = load_fixture("three_events.json");
    CHECK(eval(events, parse("nat(wet)")) == make_subset(3, {0, 2}));
    CHECK(eval(events, parse("nat(cold)")) == make_subset(3, {2}));
    CHECK_THROWS_AS(eval(events, parse("nat(h)")), DomainError);
    CHECK_THROWS_AS(eval(events, parse("B[zed,1](nat(wet))")), DomainError);
}

TEST_CASE("eval laws on random spaces") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        auto space = random_space(rng, 1 + rng() % 5);
        Evaluator ev(space);
        for (int k = 0; k < 20; ++k) {
            auto e = random_expr(rng, 5);
            auto f = random_expr(rng, 3);
            auto se = ev(e);
            CHECK(eval(space, e) == se);
            CHECK(ev(Expr::neg(e)) == ~se);
            CHECK(ev(Expr::conj({e, f})) == (se & ev(f)));
            CHECK(ev(Expr::disj({e, f})) == (se | ev(f)));
            CHECK(ev(desugar(Expr::disj({e, f}))) == (se | ev(f)));
            CHECK(space.field().contains(se));
            for (std::size_t m = 0; m < space.size(); ++m) {
                CHECK(desc_contains(space, m, e) != desc_contains(space, m, Expr::neg(e)));
                for (std::size_t i = 0; i < 2; ++i) {
                    auto v = believed_value(space, i, m, e);
                    for (auto p : {q("0"), q("1/4"), q("1/2"), q("3/4"), q("1")})
                        CHECK((v >= p) == desc_contains(space, m, Expr::bel(space.players()[i], p, e)));
                }
            }
        }
    }
}
