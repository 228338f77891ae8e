#include "pebble/regauto.hpp"

#include <algorithm>

#include "pebble/errors.hpp"

namespace pebble {

RegisterAutomaton::RegisterAutomaton(int registers) : registers_(registers) {
    if (registers < 1 || registers > 30) throw MalformedAutomaton("register count must be in 1..30");
}

std::uint32_t RegisterAutomaton::add_state(const std::string& name, bool final) {
    names_.push_back(name);
    final_.push_back(final);
    return static_cast<std::uint32_t>(names_.size() - 1);
}

void RegisterAutomaton::set_initial(std::uint32_t q) {
    if (q >= names_.size()) throw MalformedAutomaton("initial state out of range");
    initial_ = q;
}

void RegisterAutomaton::add_transition(std::uint32_t from, EqualityProfile profile, std::uint32_t to,
                                       std::optional<int> store) {
    if (from >= names_.size() || to >= names_.size()) throw MalformedAutomaton("transition state out of range");
    if (profile & ~(((1u << (registers_ + 1)) - 1) & ~1u)) throw MalformedAutomaton("profile names unknown register");
    if (store && (*store < 1 || *store > registers_)) throw MalformedAutomaton("store target outside 1..r");
    auto key = (std::uint64_t(from) << 32) | profile;
    if (map_.count(key)) throw MalformedAutomaton("duplicate transition from '" + names_[from] + "'");
    map_[key] = entries_.size();
    entries_.push_back({from, profile, {to, store}});
}

const RaTransition* RegisterAutomaton::transition(std::uint32_t from, EqualityProfile profile) const {
    auto it = map_.find((std::uint64_t(from) << 32) | profile);
    return it == map_.end() ? nullptr : &entries_[it->second].t;
}

bool run_ra(const RegisterAutomaton& a, const DataWord& w) {
    constexpr std::uint32_t empty = 0xffffffffu;
    std::vector<std::uint32_t> reg(a.registers() + 1, empty);
    std::vector<std::uint32_t> seen;
    seen.reserve(w.size());
    std::uint32_t q = a.initial();
    for (Symbol s : w.symbols()) {
        seen.push_back(s.id());
        EqualityProfile profile = 0;
        for (int r = 1; r <= a.registers(); ++r)
            if (reg[r] == s.id()) profile |= 1u << r;
        const RaTransition* t = a.transition(q, profile);
        if (!t) return false;
        if (t->store) reg[*t->store] = s.id();
        for (int r = 1; r <= a.registers(); ++r)
            if (reg[r] != empty && std::find(seen.begin(), seen.end(), reg[r]) == seen.end())
                throw EngineInvariant("register holds a symbol that was never read");
        q = t->to;
    }
    return a.is_final(q);
}

nlohmann::ordered_json ra_to_json(const RegisterAutomaton& a) {
    nlohmann::ordered_json j;
    j["registers"] = a.registers();
    j["states"] = nlohmann::ordered_json::array();
    j["finals"] = nlohmann::ordered_json::array();
    for (std::uint32_t q = 0; q < a.state_count(); ++q) {
        j["states"].push_back(a.state_name(q));
        if (a.is_final(q)) j["finals"].push_back(a.state_name(q));
    }
    j["initial"] = a.state_name(a.initial());
    j["transitions"] = nlohmann::ordered_json::array();
    for (const auto& e : a.entries()) {
        nlohmann::ordered_json t;
        t["from"] = a.state_name(e.from);
        t["profile"] = nlohmann::ordered_json::array();
        for (int r = 1; r <= a.registers(); ++r)
            if (e.profile & (1u << r)) t["profile"].push_back(r);
        t["to"] = a.state_name(e.t.to);
        if (e.t.store) t["store"] = *e.t.store;
        j["transitions"].push_back(std::move(t));
    }
    return j;
}

RegisterAutomaton ra_from_json(const nlohmann::json& j) {
    try {
        RegisterAutomaton a(j.at("registers").get<int>());
        std::unordered_map<std::string, std::uint32_t> ids;
        for (const auto& s : j.at("states")) {
            auto name = s.get<std::string>();
            if (ids.count(name)) throw MalformedAutomaton("duplicate state '" + name + "'");
            ids[name] = a.add_state(name);
        }
        auto lookup = [&](const std::string& n) {
            auto it = ids.find(n);
            if (it == ids.end()) throw MalformedAutomaton("unknown state '" + n + "'");
            return it->second;
        };
        RegisterAutomaton b(a.registers());
        std::vector<bool> fin(a.state_count(), false);
        for (const auto& s : j.at("finals")) fin[lookup(s.get<std::string>())] = true;
        for (std::uint32_t q = 0; q < a.state_count(); ++q) b.add_state(a.state_name(q), fin[q]);
        b.set_initial(lookup(j.at("initial").get<std::string>()));
        for (const auto& t : j.at("transitions")) {
            EqualityProfile p = 0;
            for (const auto& r : t.at("profile")) {
                int x = r.get<int>();
                if (x < 1 || x > b.registers()) throw MalformedAutomaton("profile register out of range");
                p |= 1u << x;
            }
            std::optional<int> store;
            if (t.contains("store")) store = t.at("store").get<int>();
            b.add_transition(lookup(t.at("from").get<std::string>()), p, lookup(t.at("to").get<std::string>()), store);
        }
        return b;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedAutomaton(e.what());
    }
}

}  // namespace pebble
