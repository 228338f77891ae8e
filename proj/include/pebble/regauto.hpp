#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "pebble/datawords.hpp"

namespace pebble {

// Bit r set iff register r (1-based) holds the symbol being read.
using EqualityProfile = std::uint32_t;

inline EqualityProfile profile_of(std::initializer_list<int> registers) {
    EqualityProfile p = 0;
    for (int r : registers) p |= 1u << r;
    return p;
}

struct RaTransition {
    std::uint32_t to = 0;
    std::optional<int> store;
};

// One-way deterministic register automaton. A missing transition rejects.
class RegisterAutomaton {
public:
    explicit RegisterAutomaton(int registers);

    std::uint32_t add_state(const std::string& name, bool final = false);
    void set_initial(std::uint32_t q);
    void add_transition(std::uint32_t from, EqualityProfile profile, std::uint32_t to, std::optional<int> store);

    int registers() const { return registers_; }
    std::size_t state_count() const { return names_.size(); }
    std::uint32_t initial() const { return initial_; }
    bool is_final(std::uint32_t q) const { return final_[q]; }
    const std::string& state_name(std::uint32_t q) const { return names_[q]; }
    const RaTransition* transition(std::uint32_t from, EqualityProfile profile) const;

    struct Entry {
        std::uint32_t from;
        EqualityProfile profile;
        RaTransition t;
    };
    const std::vector<Entry>& entries() const { return entries_; }

private:
    int registers_;
    std::uint32_t initial_ = 0;
    std::vector<std::string> names_;
    std::vector<bool> final_;
    std::vector<Entry> entries_;
    std::unordered_map<std::uint64_t, std::size_t> map_;
};

bool run_ra(const RegisterAutomaton& a, const DataWord& w);

nlohmann::ordered_json ra_to_json(const RegisterAutomaton& a);
RegisterAutomaton ra_from_json(const nlohmann::json& j);

}  // namespace pebble
