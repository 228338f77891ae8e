#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pebble/datawords.hpp"
#include "pebble/pa.hpp"

namespace pebble::ltl {

enum class Op { True, False, Up, Not, Or, And, Next, Until, Down };

// Immutable formula tree with value semantics (subtrees are shared).
class Formula {
public:
    static Formula truth();
    static Formula falsity();
    static Formula up();
    static Formula negation(Formula f);
    static Formula disj(Formula a, Formula b);
    static Formula conj(Formula a, Formula b);
    static Formula next(Formula f);
    static Formula until(Formula a, Formula b);
    static Formula down(Formula f);

    Op op() const;
    // Operand of unary nodes and left operand of binary nodes.
    const Formula& left() const;
    const Formula& right() const;
    bool is_leaf() const { return op() == Op::True || op() == Op::False || op() == Op::Up; }
    bool is_binary() const { return op() == Op::Or || op() == Op::And || op() == Op::Until; }

    std::size_t size() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Op op, std::optional<Formula> a, std::optional<Formula> b);
    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Op op;
    std::vector<Formula> kids;
};

inline Op Formula::op() const { return node_->op; }
inline const Formula& Formula::left() const { return node_->kids.at(0); }
inline const Formula& Formula::right() const { return node_->kids.at(1); }

Formula parse(std::string_view text);
std::string print(const Formula& f);

std::size_t fqr(const Formula& f);
bool is_sentence(const Formula& f);

// Satisfaction at position l (1-based) with register contents reg.
bool evaluate(const DataWord& w, std::size_t l, std::optional<Symbol> reg, const Formula& f);
bool sentence_holds(const DataWord& w, const Formula& f);

Formula build_phi(std::size_t k);
Formula build_psi(std::size_t k);

// Random formula with exactly `size` nodes and at most `max_fqr` nested
// downs. With sentence = true every up is bound.
Formula random_formula(std::mt19937_64& rng, std::size_t size, std::size_t max_fqr, bool sentence);

// Weak, one-way, alternating pebble automaton with fqr(f)+1 pebbles that
// accepts exactly the nonempty words satisfying f.
PebbleAutomaton compile_to_weak_pa(const Formula& f);

}  // namespace pebble::ltl
