#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "pebble/constructions.hpp"
#include "pebble/errors.hpp"
#include "pebble/experiments.hpp"

using namespace pebble;

namespace {

bool accepts(const PebbleAutomaton& a, const DataWord& w) { return leads_to_acceptance(a, w).accepted; }

std::string golden(const std::string& name) {
    std::ifstream in(std::string(PEBBLE_GOLDEN_DIR) + "/" + name, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("savitch: parameters") {
    CHECK_THROWS_AS(build_savitch_pa(1), UnsupportedParameter);
    CHECK_THROWS_AS(build_savitch_pa(0), UnsupportedParameter);
    CHECK_THROWS_AS(build_savitch_pa(9), UnsupportedParameter);
    for (int k = 2; k <= 4; ++k) {
        const auto a = build_savitch_pa(k);
        CHECK(a.k() == k);
        CHECK(a.placement() == Placement::Strong);
        CHECK(a.direction() == Direction::OneWay);
        CHECK(functional_conflicts(a).empty());
        for (StateId q = 0; q < a.state_count(); ++q) CHECK_FALSE(a.is_universal(q));
    }
}

TEST_CASE("savitch: reference words") {
    const auto a = build_savitch_pa(2);
    CHECK(accepts(a, DataWord::parse("a b")));
    CHECK(accepts(a, DataWord::parse("a b  b c  c d")));
    CHECK_FALSE(accepts(a, DataWord::parse("a b  b c  c d  d e")));
    CHECK_FALSE(accepts(a, DataWord::parse("a b  c d")));
    CHECK_FALSE(accepts(a, DataWord::parse("a a")));
    CHECK_FALSE(accepts(a, DataWord::parse("a b c")));
    CHECK_FALSE(accepts(a, DataWord{}));
    const auto b = build_savitch_pa(3);
    CHECK(accepts(b, DataWord::parse("a b  b c  c d  d e  e f  f g  g h")));
    CHECK_FALSE(accepts(b, DataWord::parse("a b  b c  c d  d e  e f  f g  g h  h i")));
}

TEST_CASE("savitch k=2 matches the BFS oracle on small words") {
    const auto a = build_savitch_pa(2);
    const auto pool = symbol_pool(4);
    std::size_t members = 0;
    for (std::size_t len = 0; len <= 8; ++len)
        for (std::size_t i = 0; i < experiments::word_count(4, len); ++i) {
            const auto w = experiments::word_at(pool, len, i);
            const bool want = in_R_m(w, 3);
            CHECK(accepts(a, w) == want);
            CHECK(run_deterministic(a, w, false).accepted == want);
            members += want;
        }
    CHECK(members > 0);
}

TEST_CASE("savitch k=3 matches the BFS oracle on random words") {
    const auto a = build_savitch_pa(3);
    const auto pool = symbol_pool(6);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 300; ++i) {
        const auto w = experiments::random_convention_word(rng, pool, 2 * (1 + rng() % 8));
        CHECK(run_deterministic(a, w, false).accepted == in_R_m(w, 7));
    }
}

TEST_CASE("savitch rejects the witness words") {
    for (std::size_t k = 2; k <= 3; ++k) {
        const auto a = build_savitch_pa(static_cast<int>(k));
        for (std::size_t m = 1; m <= 3; ++m) {
            const WitnessParams p(k, m);
            CHECK_FALSE(run_deterministic(a, witness_word(p), false).accepted);
            CHECK_FALSE(run_deterministic(a, witness_word_bar(p), false).accepted);
        }
    }
}

TEST_CASE("savitch state tags") {
    const auto a = build_savitch_pa(3);
    const auto tags = savitch_state_tags(3);
    REQUIRE(tags.size() == a.state_count());
    std::set<int> levels;
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (a.is_final(q)) {
            CHECK_FALSE(tags[q].has_value());
            continue;
        }
        REQUIRE(tags[q].has_value());
        const auto& t = *tags[q];
        levels.insert(t.level);
        CHECK(t.level >= 1);
        CHECK(t.level <= 3);
        for (auto e : {t.source, t.target})
            if (!e.is_word_end()) {
                CHECK(e.pebble > t.level);
                CHECK(e.pebble <= 3);
            }
        if (t.level == 3) {
            CHECK(t.source.is_word_end());
            CHECK(t.target.is_word_end());
            CHECK(t.continuation.empty());
        }
    }
    CHECK(levels == std::set<int>{1, 2, 3});
    CHECK(SubautomatonId{1, {0}, {2}, ""}.to_string() == "A1^{*,2}");
    CHECK(SubautomatonId{2, {3}, {0}, "aF0"}.to_string() == "A2^{3,*} <- aF0");
}

TEST_CASE("weak R+ automata") {
    CHECK_THROWS_AS(build_weak_rplus_pa(0), UnsupportedParameter);
    const auto one = build_weak_rplus_pa(1);
    CHECK(one.k() == 1);
    CHECK(accepts(one, DataWord::parse("a b")));
    const auto pool = symbol_pool(3);
    for (std::size_t k = 2; k <= 4; ++k) {
        const auto a = build_weak_rplus_pa(static_cast<int>(k));
        CHECK(a.k() == static_cast<int>(k));
        CHECK(a.placement() == Placement::Weak);
        CHECK(a.direction() == Direction::OneWay);
        for (std::size_t len = 0; len <= 8; ++len)
            for (std::size_t i = 0; i < experiments::word_count(3, len); ++i) {
                const auto w = experiments::word_at(pool, len, i);
                CHECK(accepts(a, w) == in_R_plus_m(w, k));
            }
    }
    std::mt19937_64 rng(12);
    std::size_t fresh = 0;
    const auto three = build_weak_rplus_pa(3);
    for (int i = 0; i < 200; ++i) {
        const auto w = experiments::random_rplus_word(rng, 3, 3, fresh);
        CHECK(accepts(three, w));
    }
}

TEST_CASE("R+ machines agree across models") {
    const auto fma = build_rplus_fma();
    std::vector<PebbleAutomaton> pas;
    for (int k = 1; k <= 3; ++k) pas.push_back(build_weak_rplus_pa(k));
    const auto pool = symbol_pool(4);
    for (std::size_t len = 0; len <= 7; ++len)
        for (std::size_t i = 0; i < experiments::word_count(4, len); ++i) {
            const auto w = experiments::word_at(pool, len, i);
            const auto m = rplus_chain_length(w);
            if (m && *m <= 3) CHECK(run_ra(fma, w) == accepts(pas[*m - 1], w));
        }
}

TEST_CASE("witness configurations: compatibility") {
    const WitnessParams p(2, 2);
    const auto a = build_savitch_pa(2);
    const auto c = initial_configuration(a);
    CHECK(compatible(c, c, 0, p));
    auto other = c;
    other.state = c.state + 1;
    CHECK_FALSE(compatible(c, other, 0, p));
    // a pebble late in w pairs with the position 2m earlier in the barred word
    const std::size_t L = big_L(0 + path_length_parameter(2), p);
    Configuration late = c, late_bar = c;
    late.theta[2] = static_cast<int>(L);
    late_bar.theta[2] = static_cast<int>(L - 2 * p.m);
    CHECK(compatible(late, late_bar, 0, p));
    late_bar.theta[2] = static_cast<int>(L);
    CHECK_FALSE(compatible(late, late_bar, 0, p));
    Configuration early = c, early_bar = c;
    early.theta[2] = 0;
    early_bar.theta[2] = 1;
    CHECK_FALSE(compatible(early, early_bar, 0, p));
}

TEST_CASE("golden construction files") {
    CHECK(serialize(build_savitch_pa(2)) == golden("savitch_k2.json"));
    CHECK(serialize(build_savitch_pa(3)) == golden("savitch_k3.json"));
    for (int k = 1; k <= 3; ++k)
        CHECK(serialize(build_weak_rplus_pa(k)) == golden("weak_rplus_k" + std::to_string(k) + ".json"));
    CHECK(ra_to_json(build_rplus_fma()).dump(1) + "\n" == golden("rplus_fma.json"));
    CHECK(parse_automaton(golden("savitch_k2.json")).state_count() == build_savitch_pa(2).state_count());
}
