#include "pebble/pa.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pebble/errors.hpp"

namespace pebble {

PebbleSet PebbleSet::of(std::initializer_list<int> pebbles) {
    PebbleSet s;
    for (int j : pebbles) {
        if (j < 1 || j > kMaxPebbles) throw InvalidIndex("pebble index " + std::to_string(j));
        s.insert(j);
    }
    return s;
}

PebbleSet PebbleSet::range(int lo, int hi) {
    PebbleSet s;
    for (int j = std::max(lo, 1); j <= std::min(hi, kMaxPebbles); ++j) s.insert(j);
    return s;
}

std::vector<int> PebbleSet::members() const {
    std::vector<int> out;
    for (int j = 1; j <= kMaxPebbles; ++j)
        if (contains(j)) out.push_back(j);
    return out;
}

std::vector<PebbleSet> subsets(PebbleSet s) {
    std::vector<PebbleSet> out;
    std::uint16_t full = s.bits();
    std::uint16_t sub = 0;
    while (true) {
        out.push_back(PebbleSet::from_bits(sub));
        if (sub == full) break;
        sub = static_cast<std::uint16_t>((sub - full) & full);
    }
    return out;
}

PebbleAutomaton::PebbleAutomaton(int k, Placement placement, Direction direction)
    : k_(k), placement_(placement), direction_(direction) {
    if (k < 1 || k > kMaxPebbles)
        throw MalformedAutomaton("pebble count must be in 1.." + std::to_string(kMaxPebbles));
    if (placement == Placement::Weak && direction == Direction::TwoWay)
        throw MalformedAutomaton("weak automata are one-way");
}

StateId PebbleAutomaton::add_state(const std::string& name, bool final, bool universal) {
    if (final && universal) throw MalformedAutomaton("state '" + name + "' is both final and universal");
    auto id = static_cast<StateId>(names_.size());
    names_.push_back(name);
    final_.push_back(final);
    universal_.push_back(universal);
    index_.resize(index_.size() + k_ + 1);
    return id;
}

void PebbleAutomaton::set_initial(StateId q) {
    if (q >= names_.size()) throw MalformedAutomaton("initial state out of range");
    initial_ = q;
}

void PebbleAutomaton::set_final(StateId q, bool final) {
    if (final && universal_.at(q)) throw MalformedAutomaton("universal state cannot be final");
    final_.at(q) = final;
}

void PebbleAutomaton::set_universal(StateId q, bool universal) {
    if (universal && final_.at(q)) throw MalformedAutomaton("final state cannot be universal");
    universal_.at(q) = universal;
}

std::size_t PebbleAutomaton::add_rule(const TransitionRule& r) {
    if (r.head < 1 || r.head > k_) throw MalformedAutomaton("rule head " + std::to_string(r.head) + " outside 1..k");
    PebbleSet above = PebbleSet::range(r.head + 1, k_);
    if (!r.P.subset_of(above) || !r.V.subset_of(above))
        throw MalformedAutomaton("rule P/V must be subsets of {head+1..k}");
    if (r.from >= names_.size() || r.to >= names_.size()) throw MalformedAutomaton("rule state out of range");
    if (direction_ == Direction::OneWay && (r.action == Action::Left || r.action == Action::Stay))
        throw MalformedAutomaton("one-way automaton rule uses " + to_string(r.action));
    rules_.push_back(r);
    auto id = rules_.size() - 1;
    index_[static_cast<std::size_t>(r.from) * (k_ + 1) + r.head].push_back(static_cast<std::uint32_t>(id));
    return id;
}

std::optional<StateId> PebbleAutomaton::find_state(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<StateId>(i);
    return std::nullopt;
}

Configuration Configuration::succ() const {
    Configuration c = *this;
    c.theta[head] += 1;
    return c;
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (std::uint64_t(c.state) << 8) ^ std::uint64_t(c.head);
    for (int j = c.head; j <= kMaxPebbles; ++j) {
        h ^= std::uint64_t(std::uint32_t(c.theta[j])) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
}

Configuration initial_configuration(const PebbleAutomaton& a) {
    Configuration c;
    c.head = a.k();
    c.state = a.initial();
    c.theta[a.k()] = 0;
    return c;
}

namespace {

inline std::uint32_t symbol_at(const DataWord& w, int pos) {
    if (pos == 0) return 0;
    if (pos == static_cast<int>(w.size()) + 1) return 1;
    return w.symbols()[pos - 1].id();
}

inline Reads reading(const DataWord& w, int pos) {
    if (pos == 0) return Reads::LeftEnd;
    if (pos == static_cast<int>(w.size()) + 1) return Reads::RightEnd;
    return Reads::Symbol;
}

inline bool guard_ok(Reads guard, Reads actual) { return guard == Reads::Any || guard == actual; }

std::atomic<std::uint64_t> g_steps{0};
std::atomic<std::uint64_t> g_theta_checks{0};

void check_well_formed(const PebbleAutomaton& a, const DataWord& w, const Configuration& c) {
    if (c.head < 1 || c.head > a.k()) throw InvalidIndex("configuration head outside 1..k");
    for (int j = 1; j <= kMaxPebbles; ++j) {
        bool live = j >= c.head && j <= a.k();
        if (live && (c.theta[j] < 0 || c.theta[j] > static_cast<int>(w.size()) + 1))
            throw InvalidIndex("pebble " + std::to_string(j) + " position outside 0..n+1");
        if (!live && c.theta[j] != -1) throw InvalidIndex("theta defined outside {head..k}");
    }
}

// Applies a (legal) action without any checks.
inline Configuration apply(const PebbleAutomaton& a, const Configuration& c, const TransitionRule& r) {
    Configuration n = c;
    n.state = r.to;
    switch (r.action) {
        case Action::Left: n.theta[c.head] -= 1; break;
        case Action::Right: n.theta[c.head] += 1; break;
        case Action::Stay: break;
        case Action::Place:
            n.head = c.head - 1;
            n.theta[n.head] = a.placement() == Placement::Strong ? 0 : c.theta[c.head];
            break;
        case Action::Lift:
            n.theta[c.head] = -1;
            n.head = c.head + 1;
            break;
    }
    return n;
}

inline void check_theta(const Configuration& before, const Configuration& after, int k) {
    for (int j = before.head + 1; j <= k; ++j)
        if (before.theta[j] != after.theta[j])
            throw EngineInvariant("step changed the position of pebble " + std::to_string(j) + " above the head");
}

}  // namespace

PVSets compute_PV(const DataWord& w, const Configuration& c) {
    PVSets pv;
    const int hp = c.theta[c.head];
    const auto hs = symbol_at(w, hp);
    for (int j = c.head + 1; j <= kMaxPebbles && c.theta[j] >= 0; ++j) {
        if (c.theta[j] == hp) pv.P.insert(j);
        if (symbol_at(w, c.theta[j]) == hs) pv.V.insert(j);
    }
    return pv;
}

bool rule_matches(const TransitionRule& r, const DataWord& w, const Configuration& c, const PVSets& pv) {
    return r.head == c.head && r.from == c.state && r.P == pv.P && r.V == pv.V &&
           guard_ok(r.reads, reading(w, c.theta[c.head]));
}

bool rule_matches(const TransitionRule& r, const DataWord& w, const Configuration& c) {
    return rule_matches(r, w, c, compute_PV(w, c));
}

bool action_legal(const PebbleAutomaton& a, const DataWord& w, const Configuration& c, Action act) {
    const int pos = c.theta[c.head];
    switch (act) {
        case Action::Left: return a.direction() == Direction::TwoWay && pos > 0;
        case Action::Stay: return a.direction() == Direction::TwoWay;
        case Action::Right: return pos < static_cast<int>(w.size()) + 1;
        case Action::Place: return c.head > 1;
        case Action::Lift: return c.head < a.k();
    }
    return false;
}

Configuration step(const PebbleAutomaton& a, const DataWord& w, const Configuration& c, const TransitionRule& r) {
    check_well_formed(a, w, c);
    if (!rule_matches(r, w, c)) throw NotApplicable(describe(a, r) + " on " + describe(a, c));
    if (r.to >= a.state_count()) throw NotApplicable("target state out of range");
    const int pos = c.theta[c.head];
    switch (r.action) {
        case Action::Left:
            if (a.direction() == Direction::OneWay) throw IllegalAction("left move in a one-way automaton");
            if (pos == 0) throw OutOfBounds("left move at position 0");
            break;
        case Action::Stay:
            if (a.direction() == Direction::OneWay) throw IllegalAction("stay in a one-way automaton");
            break;
        case Action::Right:
            if (pos == static_cast<int>(w.size()) + 1) throw OutOfBounds("right move at position n+1");
            break;
        case Action::Place:
            if (c.head == 1) throw IllegalAction("place-pebble with head pebble 1");
            break;
        case Action::Lift:
            if (c.head == a.k()) throw IllegalAction("lift-pebble with head pebble k");
            break;
    }
    Configuration n = apply(a, c, r);
    check_theta(c, n, a.k());
    g_steps.fetch_add(1, std::memory_order_relaxed);
    g_theta_checks.fetch_add(1, std::memory_order_relaxed);
    return n;
}

EngineCounters engine_counters() {
    return {g_steps.load(std::memory_order_relaxed), g_theta_checks.load(std::memory_order_relaxed)};
}

namespace {

// Open-addressing index from configurations to their slot in `items`.
class ConfigTable {
public:
    void clear() {
        items.clear();
        if (slots_.size() > (1u << 12)) slots_.assign(1u << 10, 0);
        else std::fill(slots_.begin(), slots_.end(), 0);
        if (slots_.empty()) slots_.assign(1u << 10, 0);
    }

    // Returns (index, inserted).
    std::pair<std::uint32_t, bool> insert(const Configuration& c) {
        if ((items.size() + 1) * 2 > slots_.size()) grow();
        std::size_t mask = slots_.size() - 1;
        std::size_t s = ConfigurationHash{}(c) & mask;
        while (slots_[s] != 0) {
            auto idx = slots_[s] - 1;
            if (items[idx] == c) return {idx, false};
            s = (s + 1) & mask;
        }
        items.push_back(c);
        slots_[s] = static_cast<std::uint32_t>(items.size());
        return {static_cast<std::uint32_t>(items.size() - 1), true};
    }

    std::vector<Configuration> items;

private:
    void grow() {
        std::vector<std::uint32_t> bigger(std::max<std::size_t>(slots_.size() * 2, 1u << 10), 0);
        std::size_t mask = bigger.size() - 1;
        for (std::size_t i = 0; i < items.size(); ++i) {
            std::size_t s = ConfigurationHash{}(items[i]) & mask;
            while (bigger[s] != 0) s = (s + 1) & mask;
            bigger[s] = static_cast<std::uint32_t>(i + 1);
        }
        slots_.swap(bigger);
    }

    std::vector<std::uint32_t> slots_;
};

struct Workspace {
    ConfigTable table;
    std::vector<std::uint32_t> succ_begin;
    std::vector<std::uint32_t> succ;
    std::vector<std::uint32_t> pred_begin;
    std::vector<std::uint32_t> pred;
    std::vector<std::uint32_t> need;
    std::vector<std::uint8_t> value;
    std::vector<std::uint32_t> frontier;
    std::vector<std::uint32_t> next;
};

double configuration_bound(const PebbleAutomaton& a, const DataWord& w) {
    return double(a.state_count()) * a.k() * std::pow(double(w.size() + 2), a.k());
}

}  // namespace

RunVerdict leads_to_acceptance(const PebbleAutomaton& a, const DataWord& w) {
    thread_local Workspace ws;
    auto& table = ws.table;
    table.clear();
    ws.succ_begin.clear();
    ws.succ.clear();

    RunVerdict out;
    const double bound = configuration_bound(a, w);
    table.insert(initial_configuration(a));
    for (std::size_t i = 0; i < table.items.size(); ++i) {
        ws.succ_begin.push_back(static_cast<std::uint32_t>(ws.succ.size()));
        const Configuration c = table.items[i];
        if (a.is_final(c.state)) continue;
        const auto& candidates = a.rules_from(c.head, c.state);
        if (candidates.empty()) continue;
        const PVSets pv = compute_PV(w, c);
        for (auto ri : candidates) {
            const auto& r = a.rules()[ri];
            if (!rule_matches(r, w, c, pv) || !action_legal(a, w, c, r.action)) continue;
            Configuration n = apply(a, c, r);
            check_theta(c, n, a.k());
            ++out.stats.steps;
            auto [idx, _] = table.insert(n);
            ws.succ.push_back(idx);
        }
        if (double(table.items.size()) > bound)
            throw EngineInvariant("configuration count exceeds |Q|*k*(n+2)^k");
    }
    const std::size_t n = table.items.size();
    ws.succ_begin.push_back(static_cast<std::uint32_t>(ws.succ.size()));
    out.stats.configurations = n;
    out.stats.edges = ws.succ.size();
    out.stats.theta_checks = out.stats.steps;
    g_steps.fetch_add(out.stats.steps, std::memory_order_relaxed);
    g_theta_checks.fetch_add(out.stats.theta_checks, std::memory_order_relaxed);

    ws.pred_begin.assign(n + 1, 0);
    for (auto s : ws.succ) ws.pred_begin[s + 1]++;
    for (std::size_t i = 0; i < n; ++i) ws.pred_begin[i + 1] += ws.pred_begin[i];
    ws.pred.assign(ws.succ.size(), 0);
    {
        std::vector<std::uint32_t> fill(ws.pred_begin.begin(), ws.pred_begin.end() - 1);
        for (std::size_t u = 0; u < n; ++u)
            for (auto e = ws.succ_begin[u]; e < ws.succ_begin[u + 1]; ++e) ws.pred[fill[ws.succ[e]]++] = u;
    }

    ws.need.assign(n, 0);
    ws.value.assign(n, 0);
    ws.frontier.clear();
    for (std::size_t u = 0; u < n; ++u) {
        const auto& c = table.items[u];
        const auto deg = ws.succ_begin[u + 1] - ws.succ_begin[u];
        if (a.is_final(c.state) || (a.is_universal(c.state) && deg == 0)) {
            ws.value[u] = 1;
            ws.frontier.push_back(static_cast<std::uint32_t>(u));
        } else {
            ws.need[u] = a.is_universal(c.state) ? deg : 1;
        }
    }
    while (!ws.frontier.empty() && !ws.value[0]) {
        ++out.stats.iterations;
        ws.next.clear();
        for (auto u : ws.frontier)
            for (auto e = ws.pred_begin[u]; e < ws.pred_begin[u + 1]; ++e) {
                auto p = ws.pred[e];
                if (ws.value[p]) continue;
                if (--ws.need[p] == 0) {
                    ws.value[p] = 1;
                    ws.next.push_back(p);
                }
            }
        ws.frontier.swap(ws.next);
    }
    out.accepted = ws.value[0] != 0;
    return out;
}

RunVerdict run_deterministic(const PebbleAutomaton& a, const DataWord& w, bool record_trace) {
    thread_local ConfigTable visited;
    visited.clear();
    RunVerdict out;
    if (record_trace) out.trace.emplace();
    Configuration c = initial_configuration(a);
    visited.insert(c);
    while (true) {
        if (record_trace) out.trace->push_back(c);
        if (a.is_final(c.state)) {
            out.accepted = true;
            break;
        }
        const PVSets pv = compute_PV(w, c);
        const TransitionRule* chosen = nullptr;
        std::size_t chosen_idx = 0;
        for (auto ri : a.rules_from(c.head, c.state)) {
            const auto& r = a.rules()[ri];
            if (!rule_matches(r, w, c, pv) || !action_legal(a, w, c, r.action)) continue;
            if (chosen)
                throw NotDeterministic("rules #" + std::to_string(chosen_idx) + " " + describe(a, *chosen) + " and #" +
                                       std::to_string(ri) + " " + describe(a, r) + " both apply at " +
                                       describe(a, c));
            chosen = &r;
            chosen_idx = ri;
        }
        if (!chosen) break;
        Configuration n = apply(a, c, *chosen);
        check_theta(c, n, a.k());
        ++out.stats.steps;
        ++out.stats.theta_checks;
        if (!visited.insert(n).second) break;
        c = n;
    }
    out.stats.configurations = visited.items.size();
    out.stats.edges = out.stats.steps;
    g_steps.fetch_add(out.stats.steps, std::memory_order_relaxed);
    g_theta_checks.fetch_add(out.stats.theta_checks, std::memory_order_relaxed);
    return out;
}

std::vector<Sweep> head_state_sequence(const PebbleAutomaton& a, const DataWord& w, int pebble) {
    if (pebble < 1 || pebble > a.k()) throw InvalidIndex("pebble " + std::to_string(pebble) + " outside 1..k");
    auto v = run_deterministic(a, w, true);
    std::vector<Sweep> sweeps;
    const Configuration* prev = nullptr;
    for (const auto& c : *v.trace) {
        if (c.head == pebble) {
            bool fresh = prev == nullptr || prev->head == pebble + 1;
            if (fresh) sweeps.emplace_back();
            auto& s = sweeps.back();
            if (fresh || s.positions.back() != c.head_position()) {
                s.states.push_back(c.state);
                s.positions.push_back(c.head_position());
                s.shapes.push_back(compute_PV(w, c));
            }
        }
        prev = &c;
    }
    return sweeps;
}

std::string to_string(Action a) {
    switch (a) {
        case Action::Left: return "left";
        case Action::Right: return "right";
        case Action::Stay: return "stay";
        case Action::Place: return "place-pebble";
        case Action::Lift: return "lift-pebble";
    }
    return "?";
}

std::string to_string(Reads r) {
    switch (r) {
        case Reads::Any: return "any";
        case Reads::LeftEnd: return "left-end";
        case Reads::RightEnd: return "right-end";
        case Reads::Symbol: return "symbol";
    }
    return "?";
}

namespace {

std::string set_string(PebbleSet s) {
    std::string out = "{";
    bool first = true;
    for (int j : s.members()) {
        if (!first) out += ",";
        out += std::to_string(j);
        first = false;
    }
    return out + "}";
}

}  // namespace

std::string describe(const PebbleAutomaton& a, const Configuration& c) {
    std::ostringstream os;
    os << "[" << c.head << ", " << (c.state < a.state_count() ? a.state_name(c.state) : "?") << ", {";
    for (int j = c.head; j <= a.k(); ++j) os << (j > c.head ? ", " : "") << j << ":" << c.theta[j];
    os << "}]";
    return os.str();
}

std::string describe(const PebbleAutomaton& a, const TransitionRule& r) {
    std::ostringstream os;
    auto nm = [&](StateId q) { return q < a.state_count() ? a.state_name(q) : std::string("?"); };
    os << "(" << r.head << ", P=" << set_string(r.P) << ", V=" << set_string(r.V) << ", " << nm(r.from);
    if (r.reads != Reads::Any) os << ", reads " << to_string(r.reads);
    os << ") -> (" << nm(r.to) << ", " << to_string(r.action) << ")";
    return os.str();
}

namespace {

Action parse_action(const std::string& s) {
    if (s == "left") return Action::Left;
    if (s == "right") return Action::Right;
    if (s == "stay") return Action::Stay;
    if (s == "place-pebble") return Action::Place;
    if (s == "lift-pebble") return Action::Lift;
    throw MalformedAutomaton("unknown action '" + s + "'");
}

Reads parse_reads(const std::string& s) {
    if (s == "any") return Reads::Any;
    if (s == "left-end") return Reads::LeftEnd;
    if (s == "right-end") return Reads::RightEnd;
    if (s == "symbol") return Reads::Symbol;
    throw MalformedAutomaton("unknown reads guard '" + s + "'");
}

nlohmann::ordered_json set_json(PebbleSet s) {
    auto j = nlohmann::ordered_json::array();
    for (int x : s.members()) j.push_back(x);
    return j;
}

}  // namespace

nlohmann::ordered_json automaton_to_json(const PebbleAutomaton& a) {
    nlohmann::ordered_json j;
    j["k"] = a.k();
    j["placement"] = a.placement() == Placement::Strong ? "strong" : "weak";
    j["direction"] = a.direction() == Direction::OneWay ? "one-way" : "two-way";
    j["states"] = nlohmann::ordered_json::array();
    j["initial"] = a.state_name(a.initial());
    j["finals"] = nlohmann::ordered_json::array();
    j["universals"] = nlohmann::ordered_json::array();
    for (StateId q = 0; q < a.state_count(); ++q) {
        j["states"].push_back(a.state_name(q));
        if (a.is_final(q)) j["finals"].push_back(a.state_name(q));
        if (a.is_universal(q)) j["universals"].push_back(a.state_name(q));
    }
    j["transitions"] = nlohmann::ordered_json::array();
    for (const auto& r : a.rules()) {
        nlohmann::ordered_json t;
        t["head"] = r.head;
        t["P"] = set_json(r.P);
        t["V"] = set_json(r.V);
        t["from"] = a.state_name(r.from);
        t["to"] = a.state_name(r.to);
        t["action"] = to_string(r.action);
        if (r.reads != Reads::Any) t["reads"] = to_string(r.reads);
        j["transitions"].push_back(std::move(t));
    }
    return j;
}

PebbleAutomaton automaton_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw MalformedAutomaton("automaton must be a JSON object");
        int k = j.at("k").get<int>();
        auto placement_s = j.at("placement").get<std::string>();
        auto direction_s = j.at("direction").get<std::string>();
        Placement placement;
        if (placement_s == "strong") placement = Placement::Strong;
        else if (placement_s == "weak") placement = Placement::Weak;
        else throw MalformedAutomaton("placement must be strong or weak");
        Direction direction;
        if (direction_s == "one-way") direction = Direction::OneWay;
        else if (direction_s == "two-way") direction = Direction::TwoWay;
        else throw MalformedAutomaton("direction must be one-way or two-way");
        PebbleAutomaton a(k, placement, direction);
        std::unordered_map<std::string, StateId> ids;
        for (const auto& s : j.at("states")) {
            auto name = s.get<std::string>();
            if (ids.count(name)) throw MalformedAutomaton("duplicate state '" + name + "'");
            ids[name] = a.add_state(name);
        }
        auto lookup = [&](const std::string& name) {
            auto it = ids.find(name);
            if (it == ids.end()) throw MalformedAutomaton("unknown state '" + name + "'");
            return it->second;
        };
        a.set_initial(lookup(j.at("initial").get<std::string>()));
        for (const auto& s : j.at("finals")) a.set_final(lookup(s.get<std::string>()), true);
        for (const auto& s : j.at("universals")) a.set_universal(lookup(s.get<std::string>()), true);
        for (const auto& t : j.at("transitions")) {
            TransitionRule r;
            r.head = t.at("head").get<int>();
            for (const auto& x : t.at("P")) {
                int p = x.get<int>();
                if (p < 1 || p > kMaxPebbles) throw MalformedAutomaton("pebble index out of range in P");
                r.P.insert(p);
            }
            for (const auto& x : t.at("V")) {
                int p = x.get<int>();
                if (p < 1 || p > kMaxPebbles) throw MalformedAutomaton("pebble index out of range in V");
                r.V.insert(p);
            }
            r.from = lookup(t.at("from").get<std::string>());
            r.to = lookup(t.at("to").get<std::string>());
            r.action = parse_action(t.at("action").get<std::string>());
            if (t.contains("reads")) r.reads = parse_reads(t.at("reads").get<std::string>());
            a.add_rule(r);
        }
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedAutomaton(e.what());
    }
}

std::string serialize(const PebbleAutomaton& a) { return automaton_to_json(a).dump(1) + "\n"; }

PebbleAutomaton parse_automaton(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedAutomaton(e.what());
    }
    return automaton_from_json(j);
}

nlohmann::ordered_json verdict_to_json(const PebbleAutomaton& a, const RunVerdict& v) {
    nlohmann::ordered_json j;
    j["accepted"] = v.accepted;
    j["stats"] = {{"configurations", v.stats.configurations},
                  {"edges", v.stats.edges},
                  {"iterations", v.stats.iterations},
                  {"steps", v.stats.steps}};
    if (v.trace) {
        auto tr = nlohmann::ordered_json::array();
        for (const auto& c : *v.trace) {
            nlohmann::ordered_json theta;
            for (int p = c.head; p <= a.k(); ++p) theta[std::to_string(p)] = c.theta[p];
            tr.push_back({{"head", c.head}, {"state", a.state_name(c.state)}, {"theta", theta}});
        }
        j["trace"] = std::move(tr);
    }
    return j;
}

}  // namespace pebble
