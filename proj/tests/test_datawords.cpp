#include <doctest.h>

#include <random>

#include "pebble/datawords.hpp"
#include "pebble/errors.hpp"
#include "pebble/experiments.hpp"

using namespace pebble;

namespace {

Symbol S(const char* n) { return Symbol::named(n); }

const DataWord kExample = DataWord::parse("a b  b c  b d  c d  c e  d e  e f  e g");

}  // namespace

TEST_CASE("symbols compare by identity") {
    CHECK(S("a") == S("a"));
    CHECK(S("a") != S("b"));
    CHECK(S("a").name() == "a");
    CHECK(Symbol::left_marker() != Symbol::right_marker());
    CHECK(Symbol::left_marker().is_marker());
    CHECK_FALSE(S("a").is_marker());
    CHECK_THROWS_AS(Symbol::named(""), InvalidSymbol);
    CHECK_THROWS_AS(Symbol::named("a b"), InvalidSymbol);
    CHECK_THROWS_AS(Symbol::named("#x"), InvalidSymbol);
    CHECK_THROWS_AS(Symbol::named(Symbol::left_marker().name()), InvalidSymbol);
}

TEST_CASE("words read the markers outside 1..n") {
    const DataWord w{"a", "b", "c"};
    CHECK(w.size() == 3);
    CHECK(w.at(0) == Symbol::left_marker());
    CHECK(w.at(1) == S("a"));
    CHECK(w.at(3) == S("c"));
    CHECK(w.at(4) == Symbol::right_marker());
    CHECK_THROWS_AS(w.at(5), InvalidIndex);
    CHECK(w.to_string() == "a b c");
    CHECK(DataWord::parse("  a   b\tc ") == w);
    CHECK(DataWord::parse("").empty());
}

TEST_CASE("word files skip comments and blank lines") {
    auto ws = parse_words("# header\na b\n\n  \nc d e\n# tail\n");
    REQUIRE(ws.size() == 2);
    CHECK(ws[0].to_string() == "a b");
    CHECK(ws[1].size() == 3);
}

TEST_CASE("symbol pools are distinct") {
    CHECK(symbol_pool(4)[0].name() == "a");
    CHECK(symbol_pool(4)[3].name() == "d");
    auto p = symbol_pool(30);
    CHECK(p[0].name() == "x0");
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) CHECK(p[i] != p[j]);
}

TEST_CASE("induced graph of the running example") {
    auto g = induce_graph(kExample);
    CHECK(g.edges.size() == 8);
    for (auto [x, y] : {std::pair{"a", "b"}, {"b", "c"}, {"b", "d"}, {"c", "d"}, {"c", "e"}, {"d", "e"}, {"e", "f"}, {"e", "g"}})
        CHECK(g.has_edge(S(x), S(y)));
    CHECK_FALSE(g.has_edge(S("b"), S("a")));
    CHECK(g.source == S("a"));
    CHECK(g.target == S("g"));
    CHECK(g.vertices.size() == 7);
    CHECK(g.to_json() ==
          R"({"vertices":["a","b","c","d","e","f","g"],"edges":[["a","b"],["b","c"],["b","d"],["c","d"],["c","e"],["d","e"],["e","f"],["e","g"]],"source":"a","target":"g"})");
}

TEST_CASE("induced graph edge cases") {
    auto g = induce_graph(DataWord::parse("a b"));
    CHECK(g.vertices.size() == 2);
    CHECK(g.edges.size() == 1);
    auto d = induce_graph(DataWord::parse("a b a b"));
    CHECK(d.vertices.size() == 2);
    CHECK(d.edges.size() == 1);
    CHECK(d.source == S("a"));
    CHECK(d.target == S("b"));
    CHECK_THROWS_AS(induce_graph(DataWord::parse("a b c")), InvalidWordShape);
    CHECK_THROWS_AS(induce_graph(DataWord{}), InvalidWordShape);
}

TEST_CASE("distance is directed BFS") {
    auto g = induce_graph(kExample);
    CHECK(distance(g, S("a"), S("g")) == 4u);
    CHECK(distance(g, S("a"), S("a")) == 0u);
    CHECK(distance(g, S("g"), S("a")) == std::nullopt);
    CHECK(distance(g, S("zz"), S("zz")) == std::nullopt);
    CHECK(distance(g, S("a"), S("zz")) == std::nullopt);
}

TEST_CASE("R_m membership") {
    CHECK(in_R_m(DataWord::parse("a b"), 1));
    CHECK_FALSE(in_R_m(DataWord::parse("a a"), 1));
    const auto w = DataWord::parse("a b  b c  c d");
    CHECK(in_R_m(w, 3));
    CHECK_FALSE(in_R_m(w, 2));
    CHECK(in_R(w));
    CHECK(endpoint_distance(w) == 3u);
    // the endpoint convention
    CHECK_FALSE(in_R_m(DataWord::parse("a b  b a  a c"), 8));
    CHECK_FALSE(in_R_m(DataWord::parse("a b  c b"), 8));
    CHECK_FALSE(in_R_m(DataWord::parse("a b c"), 8));
    CHECK_FALSE(in_R(DataWord::parse("a b  c d")));
    CHECK(respects_endpoint_convention(kExample));
    CHECK(in_R_m(kExample, 4));
    CHECK_FALSE(in_R_m(kExample, 3));
}

TEST_CASE("R_m agrees with BFS and is monotone on all small words") {
    const auto pool = symbol_pool(4);
    std::size_t members = 0;
    for (std::size_t len = 2; len <= 8; len += 2) {
        for (std::size_t i = 0; i < experiments::word_count(4, len); ++i) {
            const DataWord w = experiments::word_at(pool, len, i);
            std::optional<std::size_t> d;
            if (respects_endpoint_convention(w)) {
                auto g = induce_graph(w);
                d = distance(g, g.source, g.target);
            }
            for (std::size_t m = 1; m <= 8; ++m) {
                const bool in = in_R_m(w, m);
                CHECK(in == (d && *d <= m));
                if (in) CHECK(in_R_m(w, m + 1));
            }
            if (d) ++members;
        }
    }
    CHECK(members > 0);
}

TEST_CASE("R+ membership") {
    CHECK(in_R_plus_m(DataWord::parse("a b"), 1));
    CHECK_FALSE(in_R_plus_m(DataWord::parse("a a"), 1));
    CHECK(in_R_plus_m(DataWord::parse("a b  x y  b c"), 2));
    CHECK(rplus_chain_length(DataWord::parse("a b  x y  b c")) == 2u);
    CHECK_FALSE(in_R_plus(DataWord::parse("a b  a c")));
    CHECK_FALSE(in_R_plus(DataWord{}));
    CHECK_FALSE(in_R_plus(DataWord::parse("a")));
    // the chain must end exactly on the final pair
    CHECK_FALSE(in_R_plus(DataWord::parse("a b  b c  x")));
    // c_i may not appear in u_i, so the first occurrence is the one used
    CHECK(in_R_plus_m(DataWord::parse("a b  x b c"), 2));
    CHECK(in_R_plus_m(DataWord::parse("a b  b c  c d"), 3));
    CHECK_FALSE(in_R_plus_m(DataWord::parse("a b  b b"), 2));
}

TEST_CASE("R+ grammar round trip") {
    std::mt19937_64 rng(7);
    std::size_t fresh = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t m = 1 + i % 5;
        const DataWord w = experiments::random_rplus_word(rng, m, 4, fresh);
        CHECK(in_R_plus_m(w, m));
        CHECK(rplus_chain_length(w) == m);
        for (std::size_t other = 1; other <= 6; ++other)
            if (other != m) CHECK_FALSE(in_R_plus_m(w, other));
    }
}

TEST_CASE("path length parameter") {
    CHECK(path_length_parameter(1) == 2);
    CHECK(path_length_parameter(2) == 6);
    CHECK(path_length_parameter(3) == 14);
    CHECK(WitnessParams(3, 1).n_k() == 14);
    CHECK_THROWS_AS(WitnessParams(0, 1), InvalidIndex);
    CHECK_THROWS_AS(WitnessParams(1, 0), InvalidIndex);
}

TEST_CASE("witness words") {
    auto w = witness_word(WitnessParams(1, 2));
    CHECK(w.to_string() == "a0 a1 c1_1 c2_1 b0 b1 d1_1 d2_1 a1 a2");
    CHECK(witness_word(WitnessParams(1, 1)).to_string() == "a0 a1 b0 b1 a1 a2");
    for (std::size_t k = 1; k <= 3; ++k) {
        for (std::size_t m = 1; m <= 4; ++m) {
            const WitnessParams p(k, m);
            const auto wk = witness_word(p);
            const auto wb = witness_word_bar(p);
            CHECK(wk.size() == 4 * m * (p.n_k() - 1) + 2);
            CHECK(wk.size() == big_K(p.n_k(), m));
            CHECK(in_R_m(wk, p.n_k()));
            CHECK_FALSE(in_R_m(wk, p.n_k() - 1));
            CHECK(wb.size() == wk.size() - 2 * m);
            CHECK_FALSE(in_R(wb));
            auto g = induce_graph(wb);
            CHECK_FALSE(distance(g, g.source, g.target).has_value());
            // the barred word is a prefix
            for (std::size_t i = 1; i <= wb.size(); ++i) CHECK(wb.at(i) == wk.at(i));
        }
    }
}

TEST_CASE("K, L and beta") {
    CHECK(big_K(0, 5) == 0);
    CHECK(big_K(2, 2) == 10);
    CHECK(big_K(1, 3) == 2);
    const WitnessParams p(2, 2);
    CHECK(big_K(6, p) == 42);
    CHECK_THROWS_AS(big_K(7, p), InvalidIndex);
    CHECK(big_L(2, p) == big_K(3, p) - 2);
    CHECK_THROWS_AS(big_L(7, p), InvalidIndex);
    CHECK(beta(0, 5) == 1);
    CHECK(beta(1, 5) == 5);
    CHECK(beta(2, 2) == 4);
    CHECK(beta(2, 3) == 6 * 6);
    CHECK(beta(3, 2) == 2 * 24);
    CHECK_THROWS_AS(beta(1, 0), InvalidIndex);
}
