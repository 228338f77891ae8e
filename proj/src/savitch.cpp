#include <deque>
#include <map>
#include <optional>
#include <tuple>

#include "pebble/constructions.hpp"
#include "pebble/errors.hpp"

namespace pebble {

std::string SubautomatonId::to_string() const {
    auto ep = [](Endpoint e) { return e.is_word_end() ? std::string("*") : std::to_string(e.pebble); };
    std::string s = "A" + std::to_string(level) + "^{" + ep(source) + "," + ep(target) + "}";
    if (!continuation.empty()) s += " <- " + continuation;
    return s;
}

namespace {

// Parity class of the head pebble's position. First is position 1.
enum class Where { Start, First, Odd, Even };

char where_char(Where w) {
    switch (w) {
        case Where::Start: return 'S';
        case Where::First: return 'F';
        case Where::Odd: return 'O';
        case Where::Even: return 'E';
    }
    return '?';
}

Where after(Where w) {
    switch (w) {
        case Where::Start: return Where::First;
        case Where::First:
        case Where::Odd: return Where::Even;
        case Where::Even: return Where::Odd;
    }
    return Where::Odd;
}

// A level waiting for its child: which half of the pair it is testing,
// where it stands, and whether the word-end look-ahead fired here.
struct Frame {
    bool second = false;
    Where where = Where::First;
    bool hit = false;

    std::string tag() const {
        return std::string(second ? "b" : "a") + where_char(where) + (hit ? "1" : "0");
    }
    bool operator<(const Frame& o) const {
        return std::tie(second, where, hit) < std::tie(o.second, o.where, o.hit);
    }
};

struct Local {
    bool post = false;  // returning from a child
    // arrival fields
    Where where = Where::Start;
    bool found = false;
    bool pending = false;
    bool last_hit = false;
    bool checked = false;  // top level: endpoint uniqueness scan done here
    // return fields
    Frame frame;
    bool result = false;
};

// Pebble k-1 sweeping the word to see whether the symbol under pebble k
// occurs elsewhere and whether pebble k sits on the last position.
struct Check {
    Local saved;  // top-level arrival to resume
    bool dup = false;
    bool after = false;  // the previous position held pebble k
};

struct SState {
    std::vector<Frame> stack;  // suspended frames, top level first
    Local local;
    std::optional<Check> check;
    bool accept = false;
};

std::string arrival_tag(const Local& l) {
    return std::string("@") + where_char(l.where) + (l.found ? "f" : "") + (l.pending ? "p" : "") +
           (l.last_hit ? "h" : "") + (l.checked ? "c" : "");
}

std::string state_name(int k, const SState& s) {
    if (s.accept) return "accept";
    if (s.check)
        return std::to_string(k) + arrival_tag(s.check->saved) + "/" + std::to_string(k - 1) + "chk" +
               (s.check->dup ? "d" : "") + (s.check->after ? "a" : "");
    std::string n;
    int level = k;
    for (const auto& f : s.stack) n += std::to_string(level--) + f.tag() + "/";
    n += std::to_string(level);
    const Local& l = s.local;
    if (l.post) {
        n += "ret:" + l.frame.tag() + (l.result ? "+" : "-");
    } else {
        n += arrival_tag(l);
    }
    return n;
}

std::pair<Endpoint, Endpoint> endpoints(int k, const std::vector<Frame>& stack) {
    Endpoint x, y;
    int level = k;
    for (const auto& f : stack) {
        if (f.second) x = {level};
        else y = {level};
        --level;
    }
    return {x, y};
}

class SavitchBuilder {
public:
    explicit SavitchBuilder(int k) : k_(k), pa_(k, Placement::Strong, Direction::OneWay) {}

    PebbleAutomaton build() {
        SState init;
        init.local.where = Where::Start;
        pa_.set_initial(id(init));
        while (!work_.empty()) {
            auto [q, s] = work_.front();
            work_.pop_front();
            emit(q, s);
        }
        return std::move(pa_);
    }

    std::vector<std::optional<SubautomatonId>> tags;

private:
    StateId id(const SState& s) {
        auto name = state_name(k_, s);
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        StateId q = pa_.add_state(name, s.accept, false);
        ids_.emplace(name, q);
        if (s.accept) {
            tags.push_back(std::nullopt);
        } else if (s.check) {
            tags.push_back(SubautomatonId{k_ - 1, {k_}, {k_}, "endpoint-check"});
        } else {
            auto [x, y] = endpoints(k_, s.stack);
            std::string cont;
            for (const auto& f : s.stack) cont += (cont.empty() ? "" : "/") + f.tag();
            tags.push_back(SubautomatonId{level_of(s), x, y, cont});
        }
        work_.emplace_back(q, s);
        return q;
    }

    int level_of(const SState& s) const {
        return s.check ? k_ - 1 : k_ - static_cast<int>(s.stack.size());
    }

    void rule(int head, const Shape& sh, StateId from, const SState& to, Action act) {
        pa_.add_rule({head, sh.P, sh.V, from, id(to), act, sh.reads});
    }

    SState arrive(const std::vector<Frame>& stack, Where w, bool found, bool pending, bool hit) {
        SState s;
        s.stack = stack;
        s.local.where = w;
        s.local.found = found;
        s.local.pending = pending;
        s.local.last_hit = hit;
        return s;
    }

    SState call(const std::vector<Frame>& stack, Frame f) {
        SState s;
        s.stack = stack;
        s.stack.push_back(f);
        s.local.where = Where::Start;
        return s;
    }

    void emit_check(StateId q, const SState& s) {
        const Check& c = *s.check;
        for (const auto& sh : shapes_for_head(k_, k_ - 1)) {
            if (sh.reads == Reads::LeftEnd) {
                rule(k_ - 1, sh, q, s, Action::Right);
            } else if (sh.reads == Reads::Symbol) {
                SState n = s;
                n.check->after = sh.P.contains(k_);
                n.check->dup = c.dup || (sh.V.contains(k_) && !sh.P.contains(k_));
                rule(k_ - 1, sh, q, n, Action::Right);
            } else {
                const bool last = c.after;
                const bool bad = c.dup && (c.saved.where == Where::First || last);
                if (bad) continue;
                SState back;
                back.local = c.saved;
                back.local.checked = true;
                rule(k_ - 1, sh, q, back, Action::Lift);
            }
        }
    }

    void emit(StateId q, const SState& s) {
        if (s.accept) return;
        if (s.check) {
            emit_check(q, s);
            return;
        }
        const int i = level_of(s);
        const auto [x, y] = endpoints(k_, s.stack);
        const Local& l = s.local;
        for (const auto& sh : shapes_for_head(k_, i)) {
            if (l.post) {
                if (sh.reads != Reads::Symbol) continue;
                if (!l.frame.second)
                    rule(i, sh, q, arrive(s.stack, Where::Even, false, l.result, l.frame.hit), Action::Right);
                else
                    rule(i, sh, q, arrive(s.stack, Where::Odd, l.result, false, l.frame.hit), Action::Right);
                continue;
            }
            if (l.where == Where::Start) {
                if (sh.reads == Reads::LeftEnd)
                    rule(i, sh, q, arrive(s.stack, Where::First, false, false, false), Action::Right);
                continue;
            }
            if (sh.reads == Reads::RightEnd) {
                const bool res = l.found || l.last_hit;
                if (i == k_) {
                    const bool even_length = l.where == Where::Odd || l.where == Where::First;
                    if (res && even_length) {
                        SState acc;
                        acc.accept = true;
                        rule(i, sh, q, acc, Action::Place);
                    }
                } else {
                    SState ret;
                    ret.stack = s.stack;
                    ret.local.post = true;
                    ret.local.frame = ret.stack.back();
                    ret.stack.pop_back();
                    ret.local.result = res;
                    rule(i, sh, q, ret, Action::Lift);
                }
                continue;
            }
            if (sh.reads != Reads::Symbol) continue;
            if (i == k_ && !l.checked && (l.where == Where::First || l.where == Where::Even)) {
                SState c;
                c.check = Check{l, false, false};
                rule(i, sh, q, c, Action::Place);
                continue;
            }
            data_step(q, s, i, x, y, sh);
        }
    }

    void data_step(StateId q, const SState& s, int i, Endpoint x, Endpoint y, const Shape& sh) {
        const Local& l = s.local;
        auto inV = [&](Endpoint e) { return !e.is_word_end() && sh.V.contains(e.pebble); };
        bool found = l.found;
        bool hit = false;
        if (!x.is_word_end() && !y.is_word_end()) {
            if (inV(x) && inV(y)) found = true;
        } else if (x.is_word_end() && !y.is_word_end()) {
            if (l.where == Where::First && inV(y)) found = true;
        } else if (!x.is_word_end() && y.is_word_end()) {
            if (inV(x)) hit = true;
        }
        const Where next = after(l.where);
        if (found) {
            rule(i, sh, q, arrive(s.stack, next, true, false, hit), Action::Right);
            return;
        }
        if (l.where == Where::First || l.where == Where::Odd) {
            if (i == 1) {
                const bool pend = x.is_word_end() ? l.where == Where::First : inV(x);
                rule(i, sh, q, arrive(s.stack, next, false, pend, hit), Action::Right);
            } else {
                rule(i, sh, q, call(s.stack, Frame{false, l.where, hit}), Action::Place);
            }
            return;
        }
        // even position: second half of the pair, if the first half held
        if (!l.pending) {
            rule(i, sh, q, arrive(s.stack, next, false, false, hit), Action::Right);
        } else if (i == 1) {
            bool f = false;
            if (y.is_word_end()) hit = true;
            else f = inV(y);
            rule(i, sh, q, arrive(s.stack, next, f, false, hit), Action::Right);
        } else {
            rule(i, sh, q, call(s.stack, Frame{true, Where::Even, hit}), Action::Place);
        }
    }

    int k_;
    PebbleAutomaton pa_;
    std::map<std::string, StateId> ids_;
    std::deque<std::pair<StateId, SState>> work_;
};

}  // namespace

PebbleAutomaton build_savitch_pa(int k) {
    if (k < 2) throw UnsupportedParameter("the Savitch construction needs k >= 2");
    if (k > kMaxPebbles) throw UnsupportedParameter("k exceeds the supported pebble count");
    return SavitchBuilder(k).build();
}

std::vector<std::optional<SubautomatonId>> savitch_state_tags(int k) {
    if (k < 2) throw UnsupportedParameter("the Savitch construction needs k >= 2");
    SavitchBuilder b(k);
    b.build();
    return b.tags;
}

}  // namespace pebble
