#include <unordered_set>

#include "pebble/errors.hpp"
#include "pebble/pa.hpp"

namespace pebble {

std::vector<Shape> shapes_for_head(int k, int head) {
    std::vector<Shape> out;
    const PebbleSet above = PebbleSet::range(head + 1, k);
    for (PebbleSet v : subsets(above))
        for (PebbleSet p : subsets(v)) out.push_back({head, p, v, Reads::Symbol});
    for (Reads marker : {Reads::LeftEnd, Reads::RightEnd})
        for (PebbleSet s : subsets(above)) out.push_back({head, s, s, marker});
    return out;
}

namespace {

bool guards_overlap(Reads a, Reads b) { return a == Reads::Any || b == Reads::Any || a == b; }

bool covered(const PebbleAutomaton& a, StateId q, const Shape& s) {
    for (auto ri : a.rules_from(s.head, q)) {
        const auto& r = a.rules()[ri];
        if (r.P == s.P && r.V == s.V && (r.reads == Reads::Any || r.reads == s.reads)) return true;
    }
    return false;
}

std::string fresh_name(const PebbleAutomaton& a, std::string base) {
    while (a.find_state(base)) base += "'";
    return base;
}

void add_right_rules(PebbleAutomaton& a, StateId from, StateId to) {
    for (int h = 1; h <= a.k(); ++h)
        for (const auto& s : shapes_for_head(a.k(), h)) a.add_rule({h, s.P, s.V, from, to, Action::Right, s.reads});
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> functional_conflicts(const PebbleAutomaton& a) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (StateId q = 0; q < a.state_count(); ++q)
        for (int h = 1; h <= a.k(); ++h) {
            const auto& group = a.rules_from(h, q);
            for (std::size_t x = 0; x < group.size(); ++x)
                for (std::size_t y = x + 1; y < group.size(); ++y) {
                    const auto& r = a.rules()[group[x]];
                    const auto& s = a.rules()[group[y]];
                    if (r.P == s.P && r.V == s.V && guards_overlap(r.reads, s.reads))
                        out.emplace_back(group[x], group[y]);
                }
        }
    return out;
}

bool is_total(const PebbleAutomaton& a) {
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (a.is_final(q)) continue;
        for (int h = 1; h <= a.k(); ++h)
            for (const auto& s : shapes_for_head(a.k(), h))
                if (!covered(a, q, s)) return false;
    }
    return true;
}

PebbleAutomaton totalize(const PebbleAutomaton& a) {
    PebbleAutomaton t = a;
    const std::size_t original = a.state_count();
    std::optional<StateId> reject, accept;
    for (StateId q = 0; q < original; ++q) {
        if (a.is_final(q)) continue;
        const bool uni = a.is_universal(q);
        for (int h = 1; h <= a.k(); ++h)
            for (const auto& s : shapes_for_head(a.k(), h)) {
                if (covered(a, q, s)) continue;
                auto& sink = uni ? accept : reject;
                if (!sink) sink = t.add_state(fresh_name(t, uni ? "sink-accept" : "sink-reject"), uni, false);
                t.add_rule({h, s.P, s.V, q, *sink, Action::Right, s.reads});
            }
    }
    if (reject) add_right_rules(t, *reject, *reject);
    return t;
}

PebbleAutomaton dualize(const PebbleAutomaton& a) {
    if (!is_total(a)) throw NotTotal("dualize needs a total automaton; apply totalize first");
    PebbleAutomaton d(a.k(), a.placement(), a.direction());
    for (StateId q = 0; q < a.state_count(); ++q) {
        const bool to_universal = !a.is_final(q) && !a.is_universal(q);
        d.add_state(a.state_name(q), false, to_universal);
    }
    d.set_initial(a.initial());
    for (const auto& r : a.rules())
        if (!a.is_final(r.from)) d.add_rule(r);
    bool any_final = false;
    for (StateId q = 0; q < a.state_count(); ++q) any_final = any_final || a.is_final(q);
    if (any_final) {
        StateId sink = d.add_state(fresh_name(d, "sink-reject"));
        add_right_rules(d, sink, sink);
        for (StateId q = 0; q < a.state_count(); ++q)
            if (a.is_final(q)) add_right_rules(d, q, sink);
    }
    return d;
}

namespace {

enum class Polarity { Existential, Universal };

PebbleAutomaton combine(const PebbleAutomaton& a, const PebbleAutomaton& b, Polarity want) {
    if (a.k() != b.k() || a.placement() != b.placement() || a.direction() != b.direction())
        throw IncompatibleAutomata("operands differ in pebble count, placement or direction");
    const int k = a.k();
    PebbleAutomaton c(k, a.placement(), a.direction());
    const StateId init = c.add_state("init");
    c.set_initial(init);
    const PebbleAutomaton* parts[2] = {&a, &b};
    StateId offset[2];
    for (int p = 0; p < 2; ++p) {
        const auto& x = *parts[p];
        offset[p] = static_cast<StateId>(c.state_count());
        for (StateId q = 0; q < x.state_count(); ++q)
            c.add_state(std::to_string(p + 1) + ":" + x.state_name(q), x.is_final(q), x.is_universal(q));
        for (auto r : x.rules()) {
            r.from += offset[p];
            r.to += offset[p];
            c.add_rule(r);
        }
    }

    bool use[2] = {true, true};
    const bool fa = a.is_final(a.initial()), fb = b.is_final(b.initial());
    if (want == Polarity::Existential) {
        if (fa || fb) {
            c.set_final(init, true);
            return c;
        }
    } else {
        if (fa && fb) {
            c.set_final(init, true);
            return c;
        }
        if (fa || fb) {
            int other = fa ? 1 : 0;
            use[1 - other] = false;
            want = parts[other]->is_universal(parts[other]->initial()) ? Polarity::Universal : Polarity::Existential;
        }
    }
    c.set_universal(init, want == Polarity::Universal);

    for (int p = 0; p < 2; ++p) {
        if (!use[p]) continue;
        const auto& x = *parts[p];
        const StateId q0 = x.initial();
        const bool same = x.is_universal(q0) == (want == Polarity::Universal);
        if (same) {
            for (auto ri : x.rules_from(k, q0)) {
                auto r = x.rules()[ri];
                r.from = init;
                r.to += offset[p];
                c.add_rule(r);
            }
        } else if (c.direction() == Direction::TwoWay) {
            c.add_rule({k, {}, {}, init, q0 + offset[p], Action::Stay, Reads::Any});
        } else if (k >= 2) {
            const StateId helper = c.add_state("branch-" + std::to_string(p + 1));
            const PebbleSet top = PebbleSet::of({k});
            c.add_rule({k, {}, {}, init, helper, Action::Place, Reads::LeftEnd});
            c.add_rule({k - 1, top, top, helper, q0 + offset[p], Action::Lift, Reads::LeftEnd});
        } else {
            throw IncompatibleAutomata("one-way 1-pebble operands with mixed initial polarity cannot be combined");
        }
    }
    return c;
}

}  // namespace

PebbleAutomaton unite(const PebbleAutomaton& a, const PebbleAutomaton& b) {
    return combine(a, b, Polarity::Existential);
}

PebbleAutomaton intersect(const PebbleAutomaton& a, const PebbleAutomaton& b) {
    return combine(a, b, Polarity::Universal);
}

bool compatible(const Configuration& c, const Configuration& c_bar, std::size_t l, const WitnessParams& p) {
    if (c.head != c_bar.head || c.state != c_bar.state) return false;
    const std::size_t i = static_cast<std::size_t>(c.head);
    const std::size_t shifted = l + path_length_parameter(i);
    const long long K = static_cast<long long>(big_K(l, p));
    const long long L = static_cast<long long>(big_L(shifted, p));
    const long long shift = 2 * static_cast<long long>(p.m);
    for (int j = c.head; j <= kMaxPebbles; ++j) {
        const long long t = c.theta[j], tb = c_bar.theta[j];
        if ((t < 0) != (tb < 0)) return false;
        if (t < 0) break;
        if (!(t <= K || t >= L)) return false;
        if (!(tb <= K || tb >= L - shift)) return false;
        if (t <= K && !(tb <= K && t == tb)) return false;
        if (tb <= K && !(t <= K && t == tb)) return false;
        if (t >= L && !(tb >= L - shift && t == tb + shift)) return false;
        if (tb >= L - shift && !(t >= L && t == tb + shift)) return false;
    }
    return true;
}

}  // namespace pebble
