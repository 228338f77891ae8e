#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pebble/datawords.hpp"

namespace pebble {

inline constexpr int kMaxPebbles = 8;

enum class Action : std::uint8_t { Left, Right, Stay, Place, Lift };
enum class Placement : std::uint8_t { Strong, Weak };
enum class Direction : std::uint8_t { OneWay, TwoWay };

// What the head pebble must be reading for a rule to fire. `Any` is the
// classic rule form; the others let a rule test for an end marker.
enum class Reads : std::uint8_t { Any, LeftEnd, RightEnd, Symbol };

// Subset of pebble indices 1..kMaxPebbles.
class PebbleSet {
public:
    constexpr PebbleSet() = default;
    static constexpr PebbleSet from_bits(std::uint16_t b) { PebbleSet s; s.bits_ = b; return s; }
    static PebbleSet of(std::initializer_list<int> pebbles);
    static PebbleSet range(int lo, int hi);  // {lo..hi}, empty if lo > hi

    bool contains(int j) const { return (bits_ >> j) & 1u; }
    void insert(int j) { bits_ = static_cast<std::uint16_t>(bits_ | (1u << j)); }
    bool empty() const { return bits_ == 0; }
    bool subset_of(PebbleSet o) const { return (bits_ & ~o.bits_) == 0; }
    std::uint16_t bits() const { return bits_; }
    std::vector<int> members() const;

    friend bool operator==(PebbleSet a, PebbleSet b) { return a.bits_ == b.bits_; }
    friend bool operator!=(PebbleSet a, PebbleSet b) { return a.bits_ != b.bits_; }

private:
    std::uint16_t bits_ = 0;
};

// All subsets of s, in increasing bit order.
std::vector<PebbleSet> subsets(PebbleSet s);

using StateId = std::uint32_t;

struct TransitionRule {
    int head = 1;
    PebbleSet P;
    PebbleSet V;
    StateId from = 0;
    StateId to = 0;
    Action action = Action::Right;
    Reads reads = Reads::Any;
};

class PebbleAutomaton {
public:
    PebbleAutomaton(int k, Placement placement, Direction direction);

    StateId add_state(const std::string& name, bool final = false, bool universal = false);
    void set_initial(StateId q);
    void set_final(StateId q, bool final);
    void set_universal(StateId q, bool universal);
    std::size_t add_rule(const TransitionRule& r);

    int k() const { return k_; }
    Placement placement() const { return placement_; }
    Direction direction() const { return direction_; }
    std::size_t state_count() const { return names_.size(); }
    StateId initial() const { return initial_; }
    bool is_final(StateId q) const { return final_[q]; }
    bool is_universal(StateId q) const { return universal_[q]; }
    const std::string& state_name(StateId q) const { return names_[q]; }
    std::optional<StateId> find_state(const std::string& name) const;
    const std::vector<TransitionRule>& rules() const { return rules_; }

    // Indices of the rules with the given head and source state.
    const std::vector<std::uint32_t>& rules_from(int head, StateId q) const {
        return index_[static_cast<std::size_t>(q) * (k_ + 1) + head];
    }

private:
    int k_;
    Placement placement_;
    Direction direction_;
    StateId initial_ = 0;
    std::vector<std::string> names_;
    std::vector<bool> final_;
    std::vector<bool> universal_;
    std::vector<TransitionRule> rules_;
    std::vector<std::vector<std::uint32_t>> index_;
};

// [head, state, theta]. theta[j] is the position of pebble j for
// head <= j <= k and -1 otherwise.
struct Configuration {
    int head = 1;
    StateId state = 0;
    std::array<std::int32_t, kMaxPebbles + 1> theta{};

    Configuration() { theta.fill(-1); }

    int position(int j) const { return theta[j]; }
    int head_position() const { return theta[head]; }

    // Succ_i: the head pebble one step to the right, everything else kept.
    Configuration succ() const;

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.head == b.head && a.state == b.state && a.theta == b.theta;
    }
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const;
};

Configuration initial_configuration(const PebbleAutomaton& a);

struct PVSets {
    PebbleSet P;
    PebbleSet V;
};

PVSets compute_PV(const DataWord& w, const Configuration& c);

// Head index, state, P/V and reads-guard all match.
bool rule_matches(const TransitionRule& r, const DataWord& w, const Configuration& c);
bool rule_matches(const TransitionRule& r, const DataWord& w, const Configuration& c, const PVSets& pv);
// The action can be carried out without leaving 0..n+1 or the pebble range.
bool action_legal(const PebbleAutomaton& a, const DataWord& w, const Configuration& c, Action act);

Configuration step(const PebbleAutomaton& a, const DataWord& w, const Configuration& c, const TransitionRule& r);

struct RunStats {
    std::size_t configurations = 0;
    std::size_t edges = 0;
    std::size_t iterations = 0;
    std::size_t steps = 0;
    std::size_t theta_checks = 0;
};

struct RunVerdict {
    bool accepted = false;
    std::optional<std::vector<Configuration>> trace;
    RunStats stats;
};

RunVerdict leads_to_acceptance(const PebbleAutomaton& a, const DataWord& w);
RunVerdict run_deterministic(const PebbleAutomaton& a, const DataWord& w, bool record_trace = true);

// Totals over every run in this process; used to confirm the theta check
// fired on each step of a test suite.
struct EngineCounters {
    std::uint64_t steps = 0;
    std::uint64_t theta_checks = 0;
};
EngineCounters engine_counters();

struct Sweep {
    std::vector<StateId> states;
    std::vector<int> positions;
    std::vector<PVSets> shapes;  // what the head saw on arrival
};

// For a deterministic run: each time `pebble` becomes the head, the states
// it holds on arrival at each new position until it stops being the head.
std::vector<Sweep> head_state_sequence(const PebbleAutomaton& a, const DataWord& w, int pebble);

// Pairs of rules that can fire on the same configuration.
std::vector<std::pair<std::size_t, std::size_t>> functional_conflicts(const PebbleAutomaton& a);

// Every non-final state has a matching rule for every head and every
// realisable (P, V, marker) shape.
bool is_total(const PebbleAutomaton& a);
PebbleAutomaton totalize(const PebbleAutomaton& a);
PebbleAutomaton dualize(const PebbleAutomaton& a);
PebbleAutomaton unite(const PebbleAutomaton& a, const PebbleAutomaton& b);
PebbleAutomaton intersect(const PebbleAutomaton& a, const PebbleAutomaton& b);

// A realisable reading situation of the head pebble.
struct Shape {
    int head;
    PebbleSet P;
    PebbleSet V;
    Reads reads;  // LeftEnd, RightEnd or Symbol
};
std::vector<Shape> shapes_for_head(int k, int head);

// Compatibility of configurations on w(n_k,m) and its barred variant with
// respect to l (instrumentation for the witness-word argument).
bool compatible(const Configuration& c, const Configuration& c_bar, std::size_t l, const WitnessParams& p);

std::string to_string(Action a);
std::string to_string(Reads r);
std::string describe(const PebbleAutomaton& a, const Configuration& c);
std::string describe(const PebbleAutomaton& a, const TransitionRule& r);

nlohmann::ordered_json automaton_to_json(const PebbleAutomaton& a);
PebbleAutomaton automaton_from_json(const nlohmann::json& j);
std::string serialize(const PebbleAutomaton& a);
PebbleAutomaton parse_automaton(const std::string& text);

nlohmann::ordered_json verdict_to_json(const PebbleAutomaton& a, const RunVerdict& v);

}  // namespace pebble
