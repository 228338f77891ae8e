#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pebble/pa.hpp"
#include "pebble/regauto.hpp"

namespace pebble {

// Endpoint of a reachability sub-check: a pebble index, or the word's
// first/last symbol.
struct Endpoint {
    int pebble = 0;  // 0 means the word endpoint
    bool is_word_end() const { return pebble == 0; }
    friend bool operator==(Endpoint a, Endpoint b) { return a.pebble == b.pebble; }
};

// Identifies the sub-check run by a level of the Savitch automaton.
struct SubautomatonId {
    int level;
    Endpoint source;
    Endpoint target;
    std::string continuation;  // caller's suspended-frame tag, empty at the top
    std::string to_string() const;
};

// Strong one-way deterministic k-PA accepting the words whose induced graph
// has a path of length <= 2^k - 1 from the first to the last symbol
// (exact on words where both endpoints occur once).
PebbleAutomaton build_savitch_pa(int k);

// Sub-check identity of every non-final state of build_savitch_pa(k),
// indexed by state id (nullopt for the accept state).
std::vector<std::optional<SubautomatonId>> savitch_state_tags(int k);

// Weak one-way nondeterministic k-PA for R+_k.
PebbleAutomaton build_weak_rplus_pa(int k);

// Deterministic two-register automaton for R+.
RegisterAutomaton build_rplus_fma();

}  // namespace pebble
