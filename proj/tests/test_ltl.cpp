#include <doctest.h>

#include <random>

#include "pebble/errors.hpp"
#include "pebble/experiments.hpp"
#include "pebble/ltl.hpp"

using namespace pebble;
using namespace pebble::ltl;

namespace {

bool accepts(const PebbleAutomaton& a, const DataWord& w) { return leads_to_acceptance(a, w).accepted; }

}  // namespace

TEST_CASE("parse the reference formulas") {
    const auto f = parse("down (X ~up & ~(X X true))");
    CHECK(f == build_psi(1));
    CHECK(print(build_psi(1)) == "down (X ~up & ~(X X true))");
    CHECK(parse("true") == Formula::truth());
    CHECK(parse("false") == Formula::falsity());
    CHECK(parse("up") == Formula::up());
    CHECK(parse("  ( up )  ") == Formula::up());
}

TEST_CASE("precedence and associativity") {
    const auto t = Formula::truth(), u = Formula::up(), n = Formula::falsity();
    CHECK(parse("up | true & false") == Formula::disj(u, Formula::conj(t, n)));
    CHECK(parse("up & true | false") == Formula::disj(Formula::conj(u, t), n));
    CHECK(parse("up | true | false") == Formula::disj(Formula::disj(u, t), n));
    CHECK(parse("up U true U false") == Formula::until(u, Formula::until(t, n)));
    CHECK(parse("up | true U false") == Formula::until(Formula::disj(u, t), n));
    CHECK(parse("~up U X true") == Formula::until(Formula::negation(u), Formula::next(t)));
    CHECK(parse("down up & up") == Formula::conj(Formula::down(u), u));
    CHECK(parse("X X ~~up") == Formula::next(Formula::next(Formula::negation(Formula::negation(u)))));
    CHECK(print(parse("(up U true) U false")) == "(up U true) U false");
    CHECK(print(parse("up U (true U false)")) == "up U true U false");
    CHECK(print(parse("~(up & true)")) == "~(up & true)");
    CHECK(print(parse("(up | true) & false")) == "(up | true) & false");
}

TEST_CASE("syntax errors carry a position") {
    for (const char* bad : {"", "up &", "(up", "up)", "upp", "X", "true false", "down", "~", "U up", "up @ true"}) {
        CHECK_THROWS_AS(parse(bad), ParseError);
    }
    try {
        parse("up & (true | )");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 13);
    }
}

TEST_CASE("print and parse round trip") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto f = random_formula(rng, 1 + i % 15, 3, i % 2 == 0);
        const auto text = print(f);
        const auto g = parse(text);
        CHECK(g == f);
        CHECK(print(g) == text);
        CHECK(f.size() == static_cast<std::size_t>(1 + i % 15));
        CHECK(fqr(f) <= 3);
        if (i % 2 == 0) CHECK(is_sentence(f));
    }
}

TEST_CASE("freeze quantifier rank") {
    CHECK(fqr(build_psi(1)) == 1);
    for (std::size_t k = 2; k <= 5; ++k) CHECK(fqr(build_psi(k)) == k - 1);
    CHECK(fqr(build_phi(1)) == 0);
    for (std::size_t k = 1; k <= 5; ++k) CHECK(fqr(build_phi(k)) == k - 1);
    CHECK(fqr(Formula::up()) == 0);
    CHECK(fqr(parse("down down up | down up")) == 2);
}

TEST_CASE("sentences") {
    CHECK_FALSE(is_sentence(Formula::up()));
    CHECK(is_sentence(Formula::down(Formula::up())));
    CHECK_FALSE(is_sentence(parse("down up & up")));
    for (std::size_t k = 1; k <= 5; ++k) CHECK(is_sentence(build_psi(k)));
    CHECK(is_sentence(Formula::truth()));
}

TEST_CASE("evaluation") {
    const auto psi1 = build_psi(1);
    CHECK(sentence_holds(DataWord::parse("a b"), psi1));
    CHECK_FALSE(sentence_holds(DataWord::parse("a a"), psi1));
    CHECK_FALSE(sentence_holds(DataWord::parse("a b c"), psi1));
    CHECK_FALSE(sentence_holds(DataWord{}, Formula::truth()));
    CHECK(sentence_holds(DataWord::parse("a"), Formula::truth()));
    const DataWord w = DataWord::parse("a b a");
    const Symbol a = Symbol::named("a");
    for (std::size_t l = 1; l <= 3; ++l) CHECK_FALSE(evaluate(w, l, a, Formula::until(Formula::truth(), Formula::falsity())));
    CHECK(evaluate(w, 3, a, Formula::up()));
    CHECK_FALSE(evaluate(w, 2, a, Formula::up()));
    CHECK_FALSE(evaluate(w, 3, a, parse("X true")));
    CHECK(evaluate(w, 1, std::nullopt, parse("down X X up")));
    CHECK(evaluate(w, 1, std::nullopt, parse("down X (~up U up)")));
    CHECK_FALSE(evaluate(w, 2, std::nullopt, parse("down X (~up U up)")));
    CHECK_THROWS_AS(evaluate(w, 1, std::nullopt, Formula::up()), FreeRegisterRead);
    CHECK_THROWS_AS(evaluate(w, 0, a, Formula::truth()), InvalidPosition);
    CHECK_THROWS_AS(evaluate(w, 4, a, Formula::truth()), InvalidPosition);
    CHECK_THROWS_AS(sentence_holds(w, Formula::up()), NotASentence);
}

TEST_CASE("until unfolds one step") {
    std::mt19937_64 rng(2);
    const auto pool = symbol_pool(3);
    for (int i = 0; i < 500; ++i) {
        const auto f = random_formula(rng, 1 + i % 6, 2, false);
        const auto g = random_formula(rng, 1 + i % 5, 2, false);
        const auto w = experiments::random_word(rng, pool, 1 + rng() % 7);
        const std::size_t l = 1 + rng() % w.size();
        const Symbol reg = pool[rng() % pool.size()];
        const auto u = Formula::until(f, g);
        const bool rhs = evaluate(w, l, reg, g) ||
                         (evaluate(w, l, reg, f) && l < w.size() && evaluate(w, l + 1, reg, u));
        CHECK(evaluate(w, l, reg, u) == rhs);
    }
}

TEST_CASE("De Morgan") {
    std::mt19937_64 rng(3);
    const auto pool = symbol_pool(3);
    for (int i = 0; i < 500; ++i) {
        const auto f = random_formula(rng, 1 + i % 6, 2, true);
        const auto g = random_formula(rng, 1 + i % 5, 2, true);
        const auto w = experiments::random_word(rng, pool, 1 + rng() % 7);
        using F = Formula;
        CHECK(sentence_holds(w, F::negation(F::conj(f, g))) ==
              sentence_holds(w, F::disj(F::negation(f), F::negation(g))));
        CHECK(sentence_holds(w, F::negation(F::disj(f, g))) ==
              sentence_holds(w, F::conj(F::negation(f), F::negation(g))));
    }
}

TEST_CASE("psi_k defines R+_k on small words") {
    const auto pool = symbol_pool(3);
    for (std::size_t k = 1; k <= 3; ++k) {
        const auto psi = build_psi(k);
        for (std::size_t len = 0; len <= 8; ++len)
            for (std::size_t i = 0; i < experiments::word_count(3, len); ++i) {
                const auto w = experiments::word_at(pool, len, i);
                CHECK(sentence_holds(w, psi) == in_R_plus_m(w, k));
            }
    }
}

TEST_CASE("compiled automata: shape") {
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto a = compile_to_weak_pa(build_psi(k));
        CHECK(a.k() == static_cast<int>(fqr(build_psi(k))) + 1);
        CHECK(a.placement() == Placement::Weak);
        CHECK(a.direction() == Direction::OneWay);
    }
    CHECK(compile_to_weak_pa(build_psi(3)).k() == 3);
    CHECK(compile_to_weak_pa(Formula::truth()).k() == 1);
    CHECK_THROWS_AS(compile_to_weak_pa(Formula::up()), NotASentence);
}

TEST_CASE("compiled automata: small languages") {
    const auto all = compile_to_weak_pa(parse("down true"));
    const auto none = compile_to_weak_pa(parse("false"));
    const auto pool = symbol_pool(3);
    for (std::size_t len = 0; len <= 6; ++len)
        for (std::size_t i = 0; i < experiments::word_count(3, len); ++i) {
            const auto w = experiments::word_at(pool, len, i);
            CHECK(accepts(all, w) == (len > 0));
            CHECK_FALSE(accepts(none, w));
        }
}

TEST_CASE("compiled psi_1 matches the evaluator") {
    const auto psi = build_psi(1);
    const auto a = compile_to_weak_pa(psi);
    const auto pool = symbol_pool(3);
    for (std::size_t len = 0; len <= 8; ++len)
        for (std::size_t i = 0; i < experiments::word_count(3, len); ++i) {
            const auto w = experiments::word_at(pool, len, i);
            CHECK(accepts(a, w) == sentence_holds(w, psi));
        }
}

TEST_CASE("compiled psi_2 and psi_3 match the evaluator") {
    const auto pool = symbol_pool(3);
    for (std::size_t k = 2; k <= 3; ++k) {
        const auto psi = build_psi(k);
        const auto a = compile_to_weak_pa(psi);
        for (std::size_t len = 0; len <= 7; ++len)
            for (std::size_t i = 0; i < experiments::word_count(3, len); ++i) {
                const auto w = experiments::word_at(pool, len, i);
                CHECK(accepts(a, w) == sentence_holds(w, psi));
            }
    }
}

TEST_CASE("compiled random sentences match the evaluator") {
    std::mt19937_64 rng(4);
    const auto pool = symbol_pool(3);
    for (int i = 0; i < 150; ++i) {
        const auto f = random_formula(rng, 1 + i % 14, 2 + i % 2, true);
        const auto a = compile_to_weak_pa(f);
        CHECK(a.k() == static_cast<int>(fqr(f)) + 1);
        for (int j = 0; j < 20; ++j) {
            const auto w = experiments::random_word(rng, pool, rng() % 9);
            CHECK_MESSAGE(accepts(a, w) == sentence_holds(w, f), print(f), " on ", w.to_string());
        }
    }
}
