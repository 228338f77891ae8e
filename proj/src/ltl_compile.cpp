#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "pebble/errors.hpp"
#include "pebble/ltl.hpp"

namespace pebble::ltl {

namespace {

// Negation normal form nodes. Release and weak-next only appear as
// negations of Until and Next.
enum class NK { End, T, F, Up, NotUp, And, Or, Next, WNext, Until, Release, Down };

struct NNode {
    NK kind;
    int a = -1;
    int b = -1;
    int depth = 0;
};

using Clause = std::vector<int>;
using Dnf = std::vector<Clause>;

constexpr int kEnd = 0;

// Tagged literals inside a local expansion: obligations for the next
// position (R) or for a freshly placed pebble (P).
inline int lit_r(int x) { return 2 * x; }
inline int lit_p(int y) { return 2 * y + 1; }
inline bool is_p(int lit) { return lit & 1; }
inline int atom_of(int lit) { return lit >> 1; }

void simplify(Dnf& d) {
    for (auto& c : d) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    Dnf kept;
    for (std::size_t i = 0; i < d.size(); ++i) {
        bool absorbed = false;
        for (std::size_t j = 0; j < d.size() && !absorbed; ++j)
            if (j != i && d[j].size() < d[i].size() && std::includes(d[i].begin(), d[i].end(), d[j].begin(), d[j].end()))
                absorbed = true;
        if (!absorbed) kept.push_back(d[i]);
    }
    d.swap(kept);
}

// A conjunction asking for the end marker and for a data obligation at the
// same place can never hold.
bool end_conflict(const Clause& c, bool tagged) {
    bool end = false, other = false;
    for (int x : c) {
        if (tagged && is_p(x)) continue;
        int atom = tagged ? atom_of(x) : x;
        if (atom == kEnd) end = true;
        else other = true;
    }
    return end && other;
}

Dnf dnf_or(Dnf a, const Dnf& b) {
    a.insert(a.end(), b.begin(), b.end());
    simplify(a);
    return a;
}

Dnf dnf_and(const Dnf& a, const Dnf& b, bool tagged) {
    Dnf out;
    for (const auto& x : a)
        for (const auto& y : b) {
            Clause c = x;
            c.insert(c.end(), y.begin(), y.end());
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            if (!end_conflict(c, tagged)) out.push_back(std::move(c));
        }
    simplify(out);
    return out;
}

// Conjunctive normal form of a DNF: its minimal transversals.
Dnf to_cnf(const Dnf& d) {
    Dnf cnf{{}};
    for (const auto& clause : d) {
        Dnf next;
        for (const auto& partial : cnf)
            for (int lit : clause) {
                Clause c = partial;
                c.push_back(lit);
                next.push_back(std::move(c));
            }
        simplify(next);
        cnf.swap(next);
    }
    return cnf;
}

enum class Kind { Init, Accept, Reject, Normal, AndHelper, OrHelper, RightTo, PlaceTo };

struct Key {
    Kind kind;
    int head;
    Dnf a;
    Dnf b;
    bool operator<(const Key& o) const { return std::tie(kind, head, a, b) < std::tie(o.kind, o.head, o.a, o.b); }
};

class Compiler {
public:
    explicit Compiler(const Formula& f)
        : k_(static_cast<int>(fqr(f)) + 1), pa_(k_, Placement::Weak, Direction::OneWay) {
        if (k_ > kMaxPebbles) throw UnsupportedParameter("freeze-quantifier rank too large");
        nodes_.push_back({NK::End});
        root_ = nnf(f, false, 0);
    }

    PebbleAutomaton run() {
        StateId init = state({Kind::Init, k_, {}, {}});
        pa_.set_initial(init);
        while (!work_.empty()) {
            auto [id, key] = work_.front();
            work_.pop_front();
            emit(id, key);
        }
        return std::move(pa_);
    }

private:
    int mk(NK kind, int a, int b, int depth) {
        auto key = std::make_tuple(int(kind), a, b, depth);
        auto it = intern_.find(key);
        if (it != intern_.end()) return it->second;
        nodes_.push_back({kind, a, b, depth});
        int id = static_cast<int>(nodes_.size() - 1);
        intern_[key] = id;
        return id;
    }

    int nnf(const Formula& f, bool neg, int d) {
        switch (f.op()) {
            case Op::True: return mk(neg ? NK::F : NK::T, -1, -1, d);
            case Op::False: return mk(neg ? NK::T : NK::F, -1, -1, d);
            case Op::Up: return mk(neg ? NK::NotUp : NK::Up, -1, -1, d);
            case Op::Not: return nnf(f.left(), !neg, d);
            case Op::Or: return mk(neg ? NK::And : NK::Or, nnf(f.left(), neg, d), nnf(f.right(), neg, d), d);
            case Op::And: return mk(neg ? NK::Or : NK::And, nnf(f.left(), neg, d), nnf(f.right(), neg, d), d);
            case Op::Next: return mk(neg ? NK::WNext : NK::Next, nnf(f.left(), neg, d), -1, d);
            case Op::Until:
                return mk(neg ? NK::Release : NK::Until, nnf(f.left(), neg, d), nnf(f.right(), neg, d), d);
            case Op::Down: return mk(NK::Down, nnf(f.left(), neg, d + 1), -1, d);
        }
        return -1;
    }

    // Obligations at the current data position, given whether it holds the
    // register symbol.
    const Dnf& expand(int x, bool up) {
        auto key = std::make_pair(x, up);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const NNode n = nodes_[x];
        Dnf r;
        switch (n.kind) {
            case NK::End: r = {}; break;
            case NK::T: r = {{}}; break;
            case NK::F: r = {}; break;
            case NK::Up: r = up ? Dnf{{}} : Dnf{}; break;
            case NK::NotUp: r = up ? Dnf{} : Dnf{{}}; break;
            case NK::And: r = dnf_and(expand(n.a, up), expand(n.b, up), true); break;
            case NK::Or: r = dnf_or(expand(n.a, up), expand(n.b, up)); break;
            case NK::Next: r = {{lit_r(n.a)}}; break;
            case NK::WNext: r = {{lit_r(kEnd)}, {lit_r(n.a)}}; break;
            case NK::Until: r = dnf_or(expand(n.b, up), dnf_and(expand(n.a, up), {{lit_r(x)}}, true)); break;
            case NK::Release:
                r = dnf_and(expand(n.b, up), dnf_or(expand(n.a, up), {{lit_r(kEnd)}, {lit_r(x)}}), true);
                break;
            case NK::Down: r = {{lit_p(n.a)}}; break;
        }
        return memo_.emplace(key, std::move(r)).first->second;
    }

    Dnf expression(const Dnf& beta, bool up) {
        Dnf e;
        for (const auto& clause : beta) {
            if (std::find(clause.begin(), clause.end(), kEnd) != clause.end()) continue;
            Dnf c{{}};
            for (int x : clause) c = dnf_and(c, expand(x, up), true);
            e.insert(e.end(), c.begin(), c.end());
        }
        simplify(e);
        return e;
    }

    // Value of an obligation on the right end marker.
    static bool holds_at_end(const Dnf& beta) {
        for (const auto& c : beta)
            if (c.empty() || (c.size() == 1 && c[0] == kEnd)) return true;
        return false;
    }

    std::string atom_name(int x) const {
        const NNode& n = nodes_[x];
        switch (n.kind) {
            case NK::End: return "END";
            case NK::T: return "true";
            case NK::F: return "false";
            case NK::Up: return "up";
            case NK::NotUp: return "~up";
            case NK::And: return "(" + atom_name(n.a) + " & " + atom_name(n.b) + ")";
            case NK::Or: return "(" + atom_name(n.a) + " | " + atom_name(n.b) + ")";
            case NK::Next: return "X " + atom_name(n.a);
            case NK::WNext: return "Xw " + atom_name(n.a);
            case NK::Until: return "(" + atom_name(n.a) + " U " + atom_name(n.b) + ")";
            case NK::Release: return "(" + atom_name(n.a) + " R " + atom_name(n.b) + ")";
            case NK::Down: return "down " + atom_name(n.a);
        }
        return "?";
    }

    std::string dnf_name(const Dnf& d) const {
        if (d.empty()) return "false";
        std::string s;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i) s += " | ";
            s += "[";
            for (std::size_t j = 0; j < d[i].size(); ++j) {
                if (j) s += " & ";
                s += atom_name(d[i][j]);
            }
            s += "]";
        }
        return s;
    }

    std::string name(const Key& key) const {
        const std::string h = "h" + std::to_string(key.head) + " ";
        switch (key.kind) {
            case Kind::Init: return "init";
            case Kind::Accept: return "accept";
            case Kind::Reject: return "reject";
            case Kind::Normal: return h + dnf_name(key.a);
            case Kind::AndHelper: return h + "and{next: " + dnf_name(key.a) + " ; placed: " + dnf_name(key.b) + "}";
            case Kind::OrHelper: return h + "or{next: " + dnf_name(key.a) + " ; placed: " + dnf_name(key.b) + "}";
            case Kind::RightTo: return h + "advance{" + dnf_name(key.a) + "}";
            case Kind::PlaceTo: return h + "bind{" + dnf_name(key.a) + "}";
        }
        return "?";
    }

    StateId state(const Key& key) {
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        bool final = key.kind == Kind::Accept;
        bool universal = key.kind == Kind::AndHelper || (key.kind == Kind::Normal && holds_at_end(key.a));
        StateId id = pa_.add_state(name(key), final, universal);
        ids_.emplace(key, id);
        work_.emplace_back(id, key);
        return id;
    }

    StateId normal(int head, Dnf d) {
        simplify(d);
        return state({Kind::Normal, head, std::move(d), {}});
    }

    void rule(int head, const Shape& s, StateId from, StateId to, Action act) {
        pa_.add_rule({head, s.P, s.V, from, to, act, Reads::Symbol});
    }

    std::vector<Shape> data_shapes(int head) const {
        std::vector<Shape> out;
        for (const auto& s : shapes_for_head(k_, head))
            if (s.reads == Reads::Symbol) out.push_back(s);
        return out;
    }

    // Realises one branch: obligations R for the next position and P for a
    // pebble placed here.
    void branch(int head, const Shape& s, StateId from, const Clause& lits, bool conjunctive) {
        Clause r, p;
        for (int lit : lits) (is_p(lit) ? p : r).push_back(atom_of(lit));
        auto target = [&](const Clause& atoms) {
            Dnf d;
            if (conjunctive) d.push_back(atoms);
            else
                for (int x : atoms) d.push_back({x});
            return d;
        };
        if (r.empty() && p.empty()) {
            rule(head, s, from, state({conjunctive ? Kind::Accept : Kind::Reject, k_, {}, {}}), Action::Right);
        } else if (p.empty()) {
            rule(head, s, from, normal(head, target(r)), Action::Right);
        } else if (r.empty()) {
            rule(head, s, from, normal(head - 1, target(p)), Action::Place);
        } else {
            Kind hk = conjunctive ? Kind::AndHelper : Kind::OrHelper;
            rule(head, s, from, state({hk, head - 1, target(r), target(p)}), Action::Place);
        }
    }

    void emit(StateId id, const Key& key) {
        switch (key.kind) {
            case Kind::Init:
                pa_.add_rule({k_, {}, {}, id, normal(k_, {{root_}}), Action::Right, Reads::LeftEnd});
                return;
            case Kind::Accept:
            case Kind::Reject: return;
            case Kind::Normal: {
                const bool universal = holds_at_end(key.a);
                Dnf e[2] = {expression(key.a, false), expression(key.a, true)};
                Dnf c[2];
                if (universal) {
                    c[0] = to_cnf(e[0]);
                    c[1] = to_cnf(e[1]);
                }
                for (const auto& s : data_shapes(key.head)) {
                    const bool up = key.head < k_ && s.V.contains(key.head + 1);
                    if (universal)
                        for (const auto& clause : c[up]) branch(key.head, s, id, clause, false);
                    else
                        for (const auto& clause : e[up]) branch(key.head, s, id, clause, true);
                }
                return;
            }
            case Kind::AndHelper:
            case Kind::OrHelper: {
                StateId adv = state({Kind::RightTo, key.head + 1, key.a, {}});
                StateId bind = state({Kind::PlaceTo, key.head + 1, key.b, {}});
                for (const auto& s : data_shapes(key.head)) {
                    rule(key.head, s, id, adv, Action::Lift);
                    rule(key.head, s, id, bind, Action::Lift);
                }
                return;
            }
            case Kind::RightTo: {
                StateId to = normal(key.head, key.a);
                for (const auto& s : data_shapes(key.head)) rule(key.head, s, id, to, Action::Right);
                return;
            }
            case Kind::PlaceTo: {
                StateId to = normal(key.head - 1, key.a);
                for (const auto& s : data_shapes(key.head)) rule(key.head, s, id, to, Action::Place);
                return;
            }
        }
    }

    int k_;
    PebbleAutomaton pa_;
    int root_ = 0;
    std::vector<NNode> nodes_;
    std::map<std::tuple<int, int, int, int>, int> intern_;
    std::map<std::pair<int, bool>, Dnf> memo_;
    std::map<Key, StateId> ids_;
    std::deque<std::pair<StateId, Key>> work_;
};

}  // namespace

PebbleAutomaton compile_to_weak_pa(const Formula& f) {
    if (!is_sentence(f)) throw NotASentence(print(f));
    return Compiler(f).run();
}

}  // namespace pebble::ltl
