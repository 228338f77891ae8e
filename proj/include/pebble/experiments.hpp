#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "pebble/datawords.hpp"
#include "pebble/pa.hpp"

namespace pebble::experiments {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

const std::vector<std::string>& suite_names();

struct SuiteConfig {
    std::string suite;
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::size_t> pool;
    std::optional<std::size_t> max_len;
    std::optional<std::size_t> samples;
};

struct CaseTally {
    std::size_t total = 0;
    std::size_t agree = 0;
};

struct SuiteResult {
    std::vector<std::string> records;  // one JSON object per line
    nlohmann::ordered_json aggregate;
    std::map<std::string, CaseTally> cases;
    std::size_t total = 0;
    std::size_t agree = 0;
    double seconds = 0;  // not part of the report

    bool passed() const { return total == agree; }
    std::string report() const;
};

// Throws UnsupportedParameter for an unknown suite name.
SuiteResult run_suite(const SuiteConfig& config);

// Calls f(index) for 0 <= index < n on a pool of threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

// All words of exactly `length` symbols over the pool, in lexicographic
// order of pool indices.
std::size_t word_count(std::size_t pool, std::size_t length);
DataWord word_at(const std::vector<Symbol>& pool, std::size_t length, std::size_t index);

DataWord random_word(std::mt19937_64& rng, const std::vector<Symbol>& pool, std::size_t length);
// Even length, distinct first and last symbols that occur nowhere else.
DataWord random_convention_word(std::mt19937_64& rng, const std::vector<Symbol>& pool, std::size_t length);
// c0 c1 u1 c1 c2 ... with fresh, distinct symbols in the u parts.
DataWord random_rplus_word(std::mt19937_64& rng, std::size_t m, std::size_t max_gap, std::size_t& fresh_counter);

struct RandomAutomatonSpec {
    int k = 2;
    std::size_t states = 6;
    Placement placement = Placement::Strong;
    Direction direction = Direction::TwoWay;
    double universal_fraction = 0.0;
    double rule_density = 0.5;
    bool functional = false;          // at most one rule can fire anywhere
    bool monotone = false;            // targets never decrease; only right keeps the state
    bool place_only_at_left_end = false;
};

PebbleAutomaton random_automaton(std::mt19937_64& rng, const RandomAutomatonSpec& spec);

// Eventual periodicity of a state sequence under a state map: the orbit of
// `start` under f, as preperiod nu0 and period nu (nu = 0 if f stops).
struct Orbit {
    std::size_t nu0;
    std::size_t nu;
    std::vector<StateId> prefix;  // the first nu0 + nu states
};
Orbit orbit_of(StateId start, const std::function<std::optional<StateId>(StateId)>& f, std::size_t limit);

}  // namespace pebble::experiments
