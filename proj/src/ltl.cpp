#include "pebble/ltl.hpp"

#include <cctype>

#include "pebble/errors.hpp"

namespace pebble::ltl {

Formula Formula::make(Op op, std::optional<Formula> a, std::optional<Formula> b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    if (a) n->kids.push_back(std::move(*a));
    if (b) n->kids.push_back(std::move(*b));
    return Formula(std::move(n));
}

Formula Formula::truth() {
    static const Formula t = make(Op::True, std::nullopt, std::nullopt);
    return t;
}
Formula Formula::falsity() {
    static const Formula f = make(Op::False, std::nullopt, std::nullopt);
    return f;
}
Formula Formula::up() {
    static const Formula u = make(Op::Up, std::nullopt, std::nullopt);
    return u;
}
Formula Formula::negation(Formula f) { return make(Op::Not, std::move(f), std::nullopt); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, std::move(a), std::move(b)); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, std::move(a), std::move(b)); }
Formula Formula::next(Formula f) { return make(Op::Next, std::move(f), std::nullopt); }
Formula Formula::until(Formula a, Formula b) { return make(Op::Until, std::move(a), std::move(b)); }
Formula Formula::down(Formula f) { return make(Op::Down, std::move(f), std::nullopt); }

std::size_t Formula::size() const {
    std::size_t s = 1;
    for (const auto& k : node_->kids) s += k.size();
    return s;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op() || a.node_->kids.size() != b.node_->kids.size()) return false;
    for (std::size_t i = 0; i < a.node_->kids.size(); ++i)
        if (a.node_->kids[i] != b.node_->kids[i]) return false;
    return true;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Formula parse_all() {
        Formula f = until();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    // Peeks the next token without consuming it.
    std::string_view peek() {
        skip();
        if (pos_ >= s_.size()) return {};
        if (std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t j = pos_;
            while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
            return s_.substr(pos_, j - pos_);
        }
        return s_.substr(pos_, 1);
    }

    bool accept(std::string_view tok) {
        if (peek() != tok) return false;
        pos_ += tok.size();
        return true;
    }

    Formula until() {
        Formula lhs = binary();
        if (accept("U")) return Formula::until(lhs, until());
        return lhs;
    }

    Formula binary() {
        Formula lhs = conjunction();
        while (accept("|")) lhs = Formula::disj(lhs, conjunction());
        return lhs;
    }

    Formula conjunction() {
        Formula lhs = unary();
        while (accept("&")) lhs = Formula::conj(lhs, unary());
        return lhs;
    }

    Formula unary() {
        if (accept("~")) return Formula::negation(unary());
        if (accept("X")) return Formula::next(unary());
        if (accept("down")) return Formula::down(unary());
        return atom();
    }

    Formula atom() {
        auto tok = peek();
        if (tok.empty()) fail("unexpected end of input");
        if (accept("true")) return Formula::truth();
        if (accept("false")) return Formula::falsity();
        if (accept("up")) return Formula::up();
        if (accept("(")) {
            Formula f = until();
            if (!accept(")")) fail("expected ')'");
            return f;
        }
        fail("unexpected token '" + std::string(tok) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

int precedence(const Formula& f) {
    switch (f.op()) {
        case Op::Until: return 0;
        case Op::Or: return 1;
        case Op::And: return 2;
        default: return 3;
    }
}

void emit(const Formula& f, int min_prec, std::string& out);

void render(const Formula& f, std::string& out) {
    switch (f.op()) {
        case Op::True: out += "true"; break;
        case Op::False: out += "false"; break;
        case Op::Up: out += "up"; break;
        case Op::Not:
            out += "~";
            if (f.left().is_leaf() || f.left().op() == Op::Not) {
                render(f.left(), out);
            } else {
                out += "(";
                render(f.left(), out);
                out += ")";
            }
            break;
        case Op::Next:
            out += "X ";
            emit(f.left(), 3, out);
            break;
        case Op::Down:
            out += "down ";
            emit(f.left(), 3, out);
            break;
        case Op::Until:
            emit(f.left(), 1, out);
            out += " U ";
            emit(f.right(), 0, out);
            break;
        case Op::Or:
            emit(f.left(), 1, out);
            out += " | ";
            emit(f.right(), 2, out);
            break;
        case Op::And:
            emit(f.left(), 2, out);
            out += " & ";
            emit(f.right(), 3, out);
            break;
    }
}

void emit(const Formula& f, int min_prec, std::string& out) {
    if (precedence(f) < min_prec) {
        out += "(";
        render(f, out);
        out += ")";
    } else {
        render(f, out);
    }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Formula& f) {
    std::string out;
    render(f, out);
    return out;
}

std::size_t fqr(const Formula& f) {
    switch (f.op()) {
        case Op::True:
        case Op::False:
        case Op::Up: return 0;
        case Op::Down: return fqr(f.left()) + 1;
        case Op::Not:
        case Op::Next: return fqr(f.left());
        default: return std::max(fqr(f.left()), fqr(f.right()));
    }
}

namespace {

bool bound(const Formula& f, bool under_down) {
    switch (f.op()) {
        case Op::Up: return under_down;
        case Op::True:
        case Op::False: return true;
        case Op::Down: return bound(f.left(), true);
        case Op::Not:
        case Op::Next: return bound(f.left(), under_down);
        default: return bound(f.left(), under_down) && bound(f.right(), under_down);
    }
}

bool eval(const DataWord& w, std::size_t l, const std::optional<Symbol>& reg, const Formula& f) {
    const std::size_t n = w.size();
    switch (f.op()) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Up:
            if (!reg) throw FreeRegisterRead("up evaluated with an empty register at position " + std::to_string(l));
            return *reg == w.at(l);
        case Op::Not: return !eval(w, l, reg, f.left());
        case Op::Or: return eval(w, l, reg, f.left()) || eval(w, l, reg, f.right());
        case Op::And: return eval(w, l, reg, f.left()) && eval(w, l, reg, f.right());
        case Op::Next: return l < n && eval(w, l + 1, reg, f.left());
        case Op::Until:
            for (std::size_t j = l; j <= n; ++j) {
                if (eval(w, j, reg, f.right())) return true;
                if (!eval(w, j, reg, f.left())) return false;
            }
            return false;
        case Op::Down: return eval(w, l, w.at(l), f.left());
    }
    return false;
}

}  // namespace

bool is_sentence(const Formula& f) { return bound(f, false); }

bool evaluate(const DataWord& w, std::size_t l, std::optional<Symbol> reg, const Formula& f) {
    if (l < 1 || l > w.size())
        throw InvalidPosition("position " + std::to_string(l) + " outside 1.." + std::to_string(w.size()));
    return eval(w, l, reg, f);
}

bool sentence_holds(const DataWord& w, const Formula& f) {
    if (!is_sentence(f)) throw NotASentence(print(f));
    if (w.empty()) return false;
    return eval(w, 1, std::nullopt, f);
}

Formula build_phi(std::size_t k) {
    if (k < 1) throw UnsupportedParameter("phi_k needs k >= 1");
    using F = Formula;
    const F x_not_up = F::next(F::negation(F::up()));
    F phi = F::conj(x_not_up, F::negation(F::next(F::next(F::truth()))));
    for (std::size_t i = 1; i < k; ++i) {
        F seek = F::until(F::negation(F::up()), F::conj(F::up(), phi));
        phi = F::conj(x_not_up, F::next(F::down(F::next(seek))));
    }
    return phi;
}

Formula build_psi(std::size_t k) {
    if (k < 1) throw UnsupportedParameter("psi_k needs k >= 1");
    using F = Formula;
    if (k == 1) return F::down(build_phi(1));
    F seek = F::until(F::negation(F::up()), F::conj(F::up(), build_phi(k - 1)));
    return F::conj(F::down(F::next(F::negation(F::up()))), F::next(F::down(F::next(seek))));
}

namespace {

Formula random_rec(std::mt19937_64& rng, std::size_t size, std::size_t downs_left, bool bound_up) {
    using F = Formula;
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    if (size <= 1) {
        std::size_t choice = pick(bound_up ? 4 : 2);
        if (choice == 0) return F::truth();
        if (choice == 1) return F::falsity();
        return F::up();
    }
    // Unary when only one child fits or by coin flip.
    bool unary = size == 2 || pick(3) == 0;
    if (unary) {
        std::size_t choice = pick(downs_left > 0 ? 3 : 2);
        if (choice == 0) return F::negation(random_rec(rng, size - 1, downs_left, bound_up));
        if (choice == 1) return F::next(random_rec(rng, size - 1, downs_left, bound_up));
        return F::down(random_rec(rng, size - 1, downs_left - 1, true));
    }
    std::size_t left = 1 + pick(size - 2);
    auto a = random_rec(rng, left, downs_left, bound_up);
    auto b = random_rec(rng, size - 1 - left, downs_left, bound_up);
    switch (pick(3)) {
        case 0: return F::disj(a, b);
        case 1: return F::conj(a, b);
        default: return F::until(a, b);
    }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, std::size_t size, std::size_t max_fqr, bool sentence) {
    if (size < 1) throw UnsupportedParameter("formula size must be >= 1");
    return random_rec(rng, size, max_fqr, !sentence);
}

}  // namespace pebble::ltl
