#include "pebble/constructions.hpp"
#include "pebble/errors.hpp"

namespace pebble {

namespace {

// Shapes for `head` reading a data symbol, filtered on whether the pebble
// just above shares the symbol.
std::vector<Shape> data_shapes(int k, int head, std::optional<bool> above_equal) {
    std::vector<Shape> out;
    for (const auto& s : shapes_for_head(k, head)) {
        if (s.reads != Reads::Symbol) continue;
        if (above_equal && s.V.contains(head + 1) != *above_equal) continue;
        out.push_back(s);
    }
    return out;
}

PebbleAutomaton weak_rplus_one() {
    PebbleAutomaton a(1, Placement::Weak, Direction::OneWay);
    StateId start = a.add_state("start");
    StateId first = a.add_state("at-1");
    StateId second = a.add_state("at-2");
    StateId end = a.add_state("expect-end", false, true);
    StateId reject = a.add_state("reject");
    a.set_initial(start);
    a.add_rule({1, {}, {}, start, first, Action::Right, Reads::LeftEnd});
    a.add_rule({1, {}, {}, first, second, Action::Right, Reads::Symbol});
    a.add_rule({1, {}, {}, second, end, Action::Right, Reads::Symbol});
    a.add_rule({1, {}, {}, end, reject, Action::Right, Reads::Symbol});
    return a;
}

}  // namespace

PebbleAutomaton build_weak_rplus_pa(int k) {
    if (k < 1) throw UnsupportedParameter("R+_k needs k >= 1");
    if (k > kMaxPebbles) throw UnsupportedParameter("k exceeds the supported pebble count");
    if (k == 1) return weak_rplus_one();

    PebbleAutomaton a(k, Placement::Weak, Direction::OneWay);
    const StateId start = a.add_state("start");
    const StateId at1 = a.add_state("k-at-1");
    const StateId probe1 = a.add_state("probe-at-1");
    const StateId probe2 = a.add_state("probe-at-2");
    const StateId back = a.add_state("k-back-at-1");
    const StateId at2 = a.add_state("k-at-2");
    const StateId accept = a.add_state("accept", true);
    a.set_initial(start);

    std::vector<StateId> placed(k), seek_match(k), seek_other(k), after(k);
    for (int i = k - 1; i >= 1; --i) {
        const auto n = std::to_string(i);
        placed[i] = a.add_state("p" + n + "-placed");
        seek_other[i] = a.add_state("p" + n + "-skip");
        seek_match[i] = a.add_state("p" + n + "-match");
        after[i] = a.add_state("p" + n + "-after");
    }
    const StateId at_end = a.add_state("p1-end");

    auto rules = [&](int head, std::optional<bool> eq, StateId from, StateId to, Action act) {
        for (const auto& s : data_shapes(k, head, eq)) a.add_rule({head, s.P, s.V, from, to, act, Reads::Symbol});
    };

    // pebble k reads c0, pebble k-1 checks c1 differs, pebble k moves on to c1
    a.add_rule({k, {}, {}, start, at1, Action::Right, Reads::LeftEnd});
    rules(k, std::nullopt, at1, probe1, Action::Place);
    rules(k - 1, std::nullopt, probe1, probe2, Action::Right);
    rules(k - 1, false, probe2, back, Action::Lift);
    rules(k, std::nullopt, back, at2, Action::Right);
    rules(k, std::nullopt, at2, placed[k - 1], Action::Place);

    // pebble i guesses, move by move, where the symbol held by pebble i+1
    // occurs next
    for (int i = k - 1; i >= 1; --i) {
        rules(i, true, placed[i], seek_other[i], Action::Right);
        rules(i, true, placed[i], seek_match[i], Action::Right);
        rules(i, false, seek_other[i], seek_other[i], Action::Right);
        rules(i, false, seek_other[i], seek_match[i], Action::Right);
        rules(i, true, seek_match[i], after[i], Action::Right);
        if (i > 1) rules(i, false, after[i], placed[i - 1], Action::Place);
        else rules(i, false, after[i], at_end, Action::Right);
    }
    for (const auto& s : shapes_for_head(k, 1))
        if (s.reads == Reads::RightEnd) a.add_rule({1, s.P, s.V, at_end, accept, Action::Lift, Reads::RightEnd});
    return a;
}

RegisterAutomaton build_rplus_fma() {
    RegisterAutomaton a(2);
    const auto start = a.add_state("start");
    const auto second = a.add_state("need-second");
    const auto pair = a.add_state("pair-done", true);
    const auto seek = a.add_state("seek");
    const auto found = a.add_state("found");
    a.set_initial(start);
    const EqualityProfile r1 = profile_of({1}), r2 = profile_of({2}), none = 0;

    a.add_transition(start, none, second, 1);
    a.add_transition(second, none, pair, 1);
    for (EqualityProfile extra : {none, r2}) {
        a.add_transition(pair, r1 | extra, found, std::nullopt);
        a.add_transition(pair, extra, seek, 2);
        a.add_transition(seek, r1 | extra, found, std::nullopt);
        a.add_transition(seek, extra, seek, 2);
        a.add_transition(found, extra, pair, 1);
    }
    return a;
}

}  // namespace pebble
