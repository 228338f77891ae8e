#include "pebble/datawords.hpp"

#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "pebble/errors.hpp"

namespace pebble {

namespace {

struct SymbolTable {
    std::mutex mu;
    std::deque<std::string> names{"◁", "▷"};
    std::unordered_map<std::string, std::uint32_t> ids{{"◁", 0}, {"▷", 1}};
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

}  // namespace

Symbol Symbol::named(std::string_view name) {
    if (name.empty()) throw InvalidSymbol("empty symbol name");
    for (char c : name)
        if (is_space(c)) throw InvalidSymbol("whitespace in symbol name '" + std::string(name) + "'");
    if (name.front() == '#') throw InvalidSymbol("symbol names may not start with '#'");
    auto& t = table();
    std::lock_guard lock(t.mu);
    auto key = std::string(name);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) {
        if (it->second < 2) throw InvalidSymbol("end markers are reserved");
        return Symbol(it->second);
    }
    auto id = static_cast<std::uint32_t>(t.names.size());
    t.names.push_back(key);
    t.ids.emplace(std::move(key), id);
    return Symbol(id);
}

const std::string& Symbol::name() const {
    auto& t = table();
    std::lock_guard lock(t.mu);
    return t.names[id_];
}

DataWord::DataWord(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (Symbol s : symbols_)
        if (s.is_marker()) throw InvalidSymbol("end marker inside a word");
}

DataWord::DataWord(std::initializer_list<std::string_view> names) {
    symbols_.reserve(names.size());
    for (auto n : names) symbols_.push_back(Symbol::named(n));
}

DataWord DataWord::parse(std::string_view line) {
    std::vector<Symbol> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        if (j > i) out.push_back(Symbol::named(line.substr(i, j - i)));
        i = j;
    }
    return DataWord(std::move(out));
}

Symbol DataWord::at(std::size_t pos) const {
    if (pos == 0) return Symbol::left_marker();
    if (pos == symbols_.size() + 1) return Symbol::right_marker();
    if (pos > symbols_.size() + 1)
        throw InvalidIndex("position " + std::to_string(pos) + " outside 0.." +
                           std::to_string(symbols_.size() + 1));
    return symbols_[pos - 1];
}

std::string DataWord::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (i) out += ' ';
        out += symbols_[i].name();
    }
    return out;
}

std::vector<DataWord> parse_words(std::string_view text) {
    std::vector<DataWord> words;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        std::size_t k = 0;
        while (k < line.size() && is_space(line[k])) ++k;
        if (k < line.size() && line[k] != '#') words.push_back(DataWord::parse(line));
        start = end + 1;
    }
    return words;
}

std::vector<Symbol> symbol_pool(std::size_t size) {
    std::vector<Symbol> pool;
    pool.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        if (size <= 26)
            pool.push_back(Symbol::named(std::string(1, static_cast<char>('a' + i))));
        else
            pool.push_back(Symbol::named("x" + std::to_string(i)));
    }
    return pool;
}

bool DirectedGraph::has_vertex(Symbol s) const {
    for (Symbol v : vertices)
        if (v == s) return true;
    return false;
}

bool DirectedGraph::has_edge(Symbol a, Symbol b) const {
    for (auto& [x, y] : edges)
        if (x == a && y == b) return true;
    return false;
}

std::string DirectedGraph::to_json() const {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (Symbol v : vertices) j["vertices"].push_back(v.name());
    j["edges"] = nlohmann::ordered_json::array();
    for (auto& [a, b] : edges) j["edges"].push_back({a.name(), b.name()});
    j["source"] = source.name();
    j["target"] = target.name();
    return j.dump();
}

DirectedGraph induce_graph(const DataWord& w) {
    if (w.empty() || w.size() % 2 != 0)
        throw InvalidWordShape("graph encoding needs even length >= 2, got " + std::to_string(w.size()));
    DirectedGraph g;
    std::unordered_set<std::uint32_t> seen;
    std::unordered_set<std::uint64_t> seen_edges;
    for (Symbol s : w.symbols())
        if (seen.insert(s.id()).second) g.vertices.push_back(s);
    for (std::size_t p = 1; p + 1 <= w.size(); p += 2) {
        Symbol a = w.at(p), b = w.at(p + 1);
        auto key = (std::uint64_t(a.id()) << 32) | b.id();
        if (seen_edges.insert(key).second) g.edges.emplace_back(a, b);
    }
    g.source = w.at(1);
    g.target = w.at(w.size());
    return g;
}

std::optional<std::size_t> distance(const DirectedGraph& g, Symbol a, Symbol b) {
    if (!g.has_vertex(a) || !g.has_vertex(b)) return std::nullopt;
    std::unordered_map<std::uint32_t, std::vector<Symbol>> adj;
    for (auto& [x, y] : g.edges) adj[x.id()].push_back(y);
    std::unordered_map<std::uint32_t, std::size_t> dist{{a.id(), 0}};
    std::deque<Symbol> queue{a};
    while (!queue.empty()) {
        Symbol u = queue.front();
        queue.pop_front();
        std::size_t du = dist[u.id()];
        if (u == b) return du;
        for (Symbol v : adj[u.id()])
            if (dist.emplace(v.id(), du + 1).second) queue.push_back(v);
    }
    return std::nullopt;
}

bool respects_endpoint_convention(const DataWord& w) {
    if (w.empty() || w.size() % 2 != 0) return false;
    Symbol s = w.at(1), t = w.at(w.size());
    std::size_t cs = 0, ct = 0;
    for (Symbol x : w.symbols()) {
        cs += x == s;
        ct += x == t;
    }
    return cs == 1 && ct == 1;
}

std::optional<std::size_t> endpoint_distance(const DataWord& w) {
    if (!respects_endpoint_convention(w)) return std::nullopt;
    auto g = induce_graph(w);
    return distance(g, g.source, g.target);
}

bool in_R_m(const DataWord& w, std::size_t m) {
    auto d = endpoint_distance(w);
    return d && *d <= m;
}

bool in_R(const DataWord& w) { return endpoint_distance(w).has_value(); }

std::optional<std::size_t> rplus_chain_length(const DataWord& w) {
    const std::size_t n = w.size();
    if (n < 2 || w.at(1) == w.at(2)) return std::nullopt;
    std::size_t p = 2, m = 1;
    Symbol held = w.at(2);
    while (p < n) {
        std::size_t l = p + 1;
        while (l <= n && w.at(l) != held) ++l;
        if (l + 1 > n) return std::nullopt;
        Symbol next = w.at(l + 1);
        if (next == held) return std::nullopt;
        held = next;
        p = l + 1;
        ++m;
    }
    return m;
}

bool in_R_plus_m(const DataWord& w, std::size_t m) {
    auto c = rplus_chain_length(w);
    return c && *c == m;
}

bool in_R_plus(const DataWord& w) { return rplus_chain_length(w).has_value(); }

std::size_t path_length_parameter(std::size_t i) {
    if (i >= 62) throw InvalidIndex("n_i overflows for i = " + std::to_string(i));
    return (std::size_t(1) << (i + 1)) - 2;
}

WitnessParams::WitnessParams(std::size_t k_, std::size_t m_) : k(k_), m(m_) {
    if (k < 1 || m < 1) throw InvalidIndex("witness parameters need k >= 1 and m >= 1");
    if (k > 20) throw InvalidIndex("witness k too large: " + std::to_string(k));
}

namespace {

std::string idx(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

std::string idx2(const char* prefix, std::size_t i, std::size_t j) {
    return prefix + std::to_string(i) + "_" + std::to_string(j);
}

// a0 a1 C1 b0 b1 D1 ... a_{n-2} a_{n-1} C_{n-1} b_{n-2} b_{n-1} [D_{n-1} a_{n-1} a_n]
std::vector<Symbol> witness_symbols(const WitnessParams& p, bool full) {
    const std::size_t n = p.n_k();
    std::vector<Symbol> out;
    out.reserve(big_K(n, p.m));
    auto segment = [&](const char* prefix, std::size_t i) {
        for (std::size_t j = 1; j < p.m; ++j) {
            out.push_back(Symbol::named(idx2(prefix, i, j)));
            out.push_back(Symbol::named(idx2(prefix, i + 1, j)));
        }
    };
    for (std::size_t i = 1; i <= n - 1; ++i) {
        out.push_back(Symbol::named(idx("a", i - 1)));
        out.push_back(Symbol::named(idx("a", i)));
        segment("c", i);
        out.push_back(Symbol::named(idx("b", i - 1)));
        out.push_back(Symbol::named(idx("b", i)));
        if (i == n - 1 && !full) break;
        segment("d", i);
    }
    if (full) {
        out.push_back(Symbol::named(idx("a", n - 1)));
        out.push_back(Symbol::named(idx("a", n)));
    }
    return out;
}

}  // namespace

DataWord witness_word(const WitnessParams& p) { return DataWord(witness_symbols(p, true)); }

DataWord witness_word_bar(const WitnessParams& p) { return DataWord(witness_symbols(p, false)); }

std::size_t big_K(std::size_t l, std::size_t m) { return l == 0 ? 0 : 4 * m * (l - 1) + 2; }

std::size_t big_K(std::size_t l, const WitnessParams& p) {
    if (l > p.n_k()) throw InvalidIndex("K(" + std::to_string(l) + ") needs l <= n_k = " + std::to_string(p.n_k()));
    return big_K(l, p.m);
}

std::size_t big_L(std::size_t l, const WitnessParams& p) {
    const std::size_t n = p.n_k();
    if (l > n) throw InvalidIndex("L(" + std::to_string(l) + ") needs l <= n_k = " + std::to_string(n));
    return l + 1 <= n ? big_K(l + 1, p.m) - 2 : big_K(n, p.m);
}

namespace {

BigInt factorial(const BigInt& x) {
    if (x > 1000000) throw InvalidIndex("factorial argument too large");
    BigInt r = 1;
    for (BigInt i = 2; i <= x; ++i) r *= i;
    return r;
}

}  // namespace

BigInt beta(std::size_t i, std::size_t q) {
    if (q < 1) throw InvalidIndex("beta needs |Q| >= 1");
    if (i == 0) return 1;
    BigInt b = q;
    const BigInt qf = factorial(BigInt(q));
    for (std::size_t j = 2; j <= i; ++j) b = qf * factorial(b);
    return b;
}

}  // namespace pebble
