#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pebble {

// An opaque data value. Only equality is meaningful; the id is an interned
// handle and its numeric value carries no order.
class Symbol {
public:
    Symbol() = default;

    static Symbol named(std::string_view name);
    static Symbol left_marker() { return Symbol(0); }
    static Symbol right_marker() { return Symbol(1); }

    const std::string& name() const;
    std::uint32_t id() const { return id_; }
    bool is_marker() const { return id_ < 2; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }

private:
    explicit Symbol(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = 0;
};

struct SymbolHash {
    std::size_t operator()(Symbol s) const { return s.id(); }
};

// A finite word over the data alphabet. Positions are 1..n; position 0 reads
// the left marker and n+1 the right marker.
class DataWord {
public:
    DataWord() = default;
    explicit DataWord(std::vector<Symbol> symbols);
    DataWord(std::initializer_list<std::string_view> names);

    static DataWord parse(std::string_view line);

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    // 0 <= pos <= n+1
    Symbol at(std::size_t pos) const;
    const std::vector<Symbol>& symbols() const { return symbols_; }

    std::string to_string() const;

    friend bool operator==(const DataWord& a, const DataWord& b) {
        return a.symbols_ == b.symbols_;
    }

private:
    std::vector<Symbol> symbols_;
};

// One word per non-comment line; blank lines are skipped.
std::vector<DataWord> parse_words(std::string_view text);

// "a", "b", ... for small pools, "x<i>" beyond 26.
std::vector<Symbol> symbol_pool(std::size_t size);

struct DirectedGraph {
    std::vector<Symbol> vertices;  // first-occurrence order
    std::vector<std::pair<Symbol, Symbol>> edges;
    Symbol source;
    Symbol target;

    bool has_vertex(Symbol s) const;
    bool has_edge(Symbol a, Symbol b) const;
    std::string to_json() const;
};

DirectedGraph induce_graph(const DataWord& w);

// Shortest path length; nullopt stands for infinity.
std::optional<std::size_t> distance(const DirectedGraph& g, Symbol a, Symbol b);

// Even length >= 2 and both endpoints occur exactly once.
bool respects_endpoint_convention(const DataWord& w);

// d(s_w, t_w) for convention-respecting words, nullopt otherwise or if
// unreachable.
std::optional<std::size_t> endpoint_distance(const DataWord& w);

bool in_R_m(const DataWord& w, std::size_t m);
bool in_R(const DataWord& w);

// The unique m with w in R+_m, if any.
std::optional<std::size_t> rplus_chain_length(const DataWord& w);
bool in_R_plus_m(const DataWord& w, std::size_t m);
bool in_R_plus(const DataWord& w);

std::size_t path_length_parameter(std::size_t i);  // n_i = 2^(i+1) - 2

struct WitnessParams {
    std::size_t k;
    std::size_t m;

    WitnessParams(std::size_t k, std::size_t m);
    std::size_t n_k() const { return path_length_parameter(k); }
};

DataWord witness_word(const WitnessParams& p);
DataWord witness_word_bar(const WitnessParams& p);

std::size_t big_K(std::size_t l, std::size_t m);
std::size_t big_K(std::size_t l, const WitnessParams& p);
std::size_t big_L(std::size_t l, const WitnessParams& p);

using BigInt = boost::multiprecision::cpp_int;
BigInt beta(std::size_t i, std::size_t q);

}  // namespace pebble
