#include "pebble/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "pebble/constructions.hpp"
#include "pebble/errors.hpp"
#include "pebble/ltl.hpp"
#include "pebble/regauto.hpp"

namespace pebble::experiments {

using nlohmann::ordered_json;

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"savitch",  "rplus-fma",   "rplus-weakpa",
                                                   "ltl-psi",  "ltl-compile", "periodicity"};
    return names;
}

std::string SuiteResult::report() const {
    std::string out;
    for (const auto& r : records) out += r + "\n";
    out += aggregate.dump() + "\n";
    return out;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    const std::size_t threads = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::size_t word_count(std::size_t pool, std::size_t length) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < length; ++i) n *= pool;
    return n;
}

DataWord word_at(const std::vector<Symbol>& pool, std::size_t length, std::size_t index) {
    std::vector<Symbol> s(length);
    for (std::size_t i = length; i-- > 0;) {
        s[i] = pool[index % pool.size()];
        index /= pool.size();
    }
    return DataWord(std::move(s));
}

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

}  // namespace

DataWord random_word(std::mt19937_64& rng, const std::vector<Symbol>& pool, std::size_t length) {
    std::vector<Symbol> s(length);
    for (auto& x : s) x = pool[uniform(rng, 0, pool.size() - 1)];
    return DataWord(std::move(s));
}

DataWord random_convention_word(std::mt19937_64& rng, const std::vector<Symbol>& pool, std::size_t length) {
    if (pool.size() < 3 || length < 2 || length % 2) throw InvalidWordShape("convention words need pool >= 3 and even length");
    const std::size_t si = uniform(rng, 0, pool.size() - 1);
    std::size_t ti = uniform(rng, 0, pool.size() - 2);
    if (ti >= si) ++ti;
    std::vector<Symbol> middle;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (i != si && i != ti) middle.push_back(pool[i]);
    std::vector<Symbol> s(length);
    s.front() = pool[si];
    s.back() = pool[ti];
    for (std::size_t i = 1; i + 1 < length; ++i) s[i] = middle[uniform(rng, 0, middle.size() - 1)];
    return DataWord(std::move(s));
}

DataWord random_rplus_word(std::mt19937_64& rng, std::size_t m, std::size_t max_gap, std::size_t& fresh) {
    auto next = [&] { return Symbol::named("g" + std::to_string(fresh++)); };
    std::vector<Symbol> c;
    for (std::size_t i = 0; i <= m; ++i) c.push_back(next());
    std::vector<Symbol> s = {c[0], c[1]};
    for (std::size_t i = 1; i < m; ++i) {
        const std::size_t gap = uniform(rng, 0, max_gap);
        for (std::size_t j = 0; j < gap; ++j) s.push_back(next());
        s.push_back(c[i]);
        s.push_back(c[i + 1]);
    }
    return DataWord(std::move(s));
}

PebbleAutomaton random_automaton(std::mt19937_64& rng, const RandomAutomatonSpec& spec) {
    PebbleAutomaton a(spec.k, spec.placement, spec.direction);
    const std::size_t n = std::max<std::size_t>(spec.states, 2);
    for (std::size_t q = 0; q < n; ++q) {
        const bool final = q > 0 && coin(rng, 0.25);
        const bool universal = !final && coin(rng, spec.universal_fraction);
        a.add_state("q" + std::to_string(q), final, universal);
    }
    a.set_initial(0);

    std::vector<Action> moves = {Action::Right, Action::Place, Action::Lift};
    if (spec.direction == Direction::TwoWay) {
        moves.push_back(Action::Left);
        moves.push_back(Action::Stay);
    }

    auto pick = [&](StateId from, Reads reads) -> std::optional<TransitionRule> {
        std::vector<Action> allowed;
        for (Action act : moves) {
            if (spec.place_only_at_left_end && act == Action::Place && reads != Reads::LeftEnd) continue;
            allowed.push_back(act);
        }
        const Action act = allowed[uniform(rng, 0, allowed.size() - 1)];
        StateId lo = 0;
        if (spec.monotone) lo = act == Action::Right ? from : from + 1;
        if (lo >= n) return std::nullopt;
        TransitionRule r;
        r.from = from;
        r.to = static_cast<StateId>(uniform(rng, lo, n - 1));
        r.action = act;
        r.reads = reads;
        return r;
    };

    const Reads guards[] = {Reads::LeftEnd, Reads::RightEnd, Reads::Symbol};
    for (StateId q = 0; q < n; ++q) {
        if (a.is_final(q)) continue;
        for (int head = 1; head <= spec.k; ++head) {
            const PebbleSet above = PebbleSet::range(head + 1, spec.k);
            for (PebbleSet V : subsets(above)) {
                for (PebbleSet P : subsets(V)) {
                    auto add = [&](std::optional<TransitionRule> r) {
                        if (!r) return;
                        r->head = head;
                        r->P = P;
                        r->V = V;
                        a.add_rule(*r);
                    };
                    if (spec.functional) {
                        if (!coin(rng, spec.rule_density)) continue;
                        if (!spec.place_only_at_left_end && coin(rng, 0.5)) {
                            add(pick(q, Reads::Any));
                        } else {
                            for (Reads g : guards)
                                if (coin(rng, 0.8)) add(pick(q, g));
                        }
                    } else {
                        const std::size_t count = uniform(rng, 0, 3);
                        for (std::size_t i = 0; i < count; ++i) {
                            if (!coin(rng, spec.rule_density)) continue;
                            const Reads g = coin(rng, 0.3) ? Reads::Any : guards[uniform(rng, 0, 2)];
                            if (spec.place_only_at_left_end && g == Reads::Any) add(pick(q, Reads::Symbol));
                            else add(pick(q, g));
                        }
                    }
                }
            }
        }
    }
    return a;
}

Orbit orbit_of(StateId start, const std::function<std::optional<StateId>(StateId)>& f, std::size_t limit) {
    Orbit o{0, 0, {}};
    std::map<StateId, std::size_t> seen;
    StateId q = start;
    for (std::size_t i = 0; i <= limit; ++i) {
        auto it = seen.find(q);
        if (it != seen.end()) {
            o.nu0 = it->second;
            o.nu = i - it->second;
            return o;
        }
        seen.emplace(q, i);
        o.prefix.push_back(q);
        auto nq = f(q);
        if (!nq) {
            o.nu0 = o.prefix.size();
            return o;  // the run stops; nu stays 0
        }
        q = *nq;
    }
    throw EngineInvariant("state map orbit did not close within the limit");
}

namespace {

struct Verdict {
    bool oracle;
    bool machine;
    bool agree() const { return oracle == machine; }
};

using Eval = std::function<void(const DataWord&, std::vector<std::optional<Verdict>>&)>;
using WordSource = std::function<DataWord(std::size_t length, std::size_t index)>;

class Report {
public:
    explicit Report(SuiteResult& r) : r_(r) {}

    void record(const ordered_json& j, const std::string& case_name, bool ok) {
        r_.records.push_back(j.dump());
        tally(case_name, 1, ok ? 1 : 0);
    }

    void word(const std::string& case_name, const DataWord& w, Verdict v, ordered_json extra = {}) {
        ordered_json j;
        j["case"] = case_name;
        j["word"] = w.to_string();
        j["oracle"] = v.oracle;
        j["machine"] = v.machine;
        j["agree"] = v.agree();
        if (extra.is_object())
            for (auto& [key, value] : extra.items()) j[key] = value;
        record(j, case_name, v.agree());
    }

    void bucket(const std::string& case_name, std::size_t length, std::size_t agreeing) {
        ordered_json j;
        j["case"] = case_name;
        j["length"] = length;
        j["agreeing_words"] = agreeing;
        r_.records.push_back(j.dump());
        tally(case_name, agreeing, agreeing);
    }

    void check(const std::string& case_name, const std::string& what, bool ok, ordered_json details = {}) {
        ordered_json j;
        j["case"] = case_name;
        j["check"] = what;
        if (details.is_object())
            for (auto& [key, value] : details.items()) j[key] = value;
        j["ok"] = ok;
        record(j, case_name, ok);
    }

private:
    void tally(const std::string& case_name, std::size_t total, std::size_t agree) {
        auto& t = r_.cases[case_name];
        t.total += total;
        t.agree += agree;
        r_.total += total;
        r_.agree += agree;
    }
    SuiteResult& r_;
};

// Every word of each length in [lo, hi] from `source`, evaluated for all
// cases at once. Agreeing words are counted per (case, length); each
// disagreement gets its own record.
void exhaustive(Report& report, const std::vector<std::string>& cases, std::size_t lo, std::size_t hi,
                const std::function<std::size_t(std::size_t)>& count, const WordSource& source, const Eval& eval) {
    constexpr std::size_t kChunk = 4096;
    struct Miss {
        std::size_t index;
        DataWord word;
        Verdict v;
    };
    struct Chunk {
        std::vector<std::size_t> agree;
        std::vector<std::vector<Miss>> misses;
    };
    for (std::size_t len = lo; len <= hi; ++len) {
        const std::size_t total = count(len);
        const std::size_t chunks = (total + kChunk - 1) / kChunk;
        std::vector<Chunk> results(chunks);
        parallel_for(chunks, [&](std::size_t c) {
            Chunk& ch = results[c];
            ch.agree.assign(cases.size(), 0);
            ch.misses.resize(cases.size());
            std::vector<std::optional<Verdict>> out(cases.size());
            const std::size_t end = std::min(total, (c + 1) * kChunk);
            for (std::size_t i = c * kChunk; i < end; ++i) {
                const DataWord w = source(len, i);
                std::fill(out.begin(), out.end(), std::nullopt);
                eval(w, out);
                for (std::size_t k = 0; k < cases.size(); ++k) {
                    if (!out[k]) continue;
                    if (out[k]->agree()) ++ch.agree[k];
                    else ch.misses[k].push_back({i, w, *out[k]});
                }
            }
        });
        for (std::size_t k = 0; k < cases.size(); ++k) {
            std::size_t agreeing = 0;
            for (const auto& ch : results) {
                agreeing += ch.agree[k];
                for (const auto& m : ch.misses[k]) report.word(cases[k], m.word, m.v);
            }
            report.bucket(cases[k], len, agreeing);
        }
    }
}

// Evaluates a prepared list of inputs in parallel; results keep input order.
template <class In, class Out>
std::vector<Out> map_inputs(const std::vector<In>& in, const std::function<Out(const In&)>& f) {
    std::vector<std::optional<Out>> tmp(in.size());
    parallel_for(in.size(), [&](std::size_t i) { tmp[i] = f(in[i]); });
    std::vector<Out> out;
    out.reserve(in.size());
    for (auto& x : tmp) out.push_back(std::move(*x));
    return out;
}

WordSource all_words(const std::vector<Symbol>& pool) {
    return [pool](std::size_t len, std::size_t i) { return word_at(pool, len, i); };
}

std::function<std::size_t(std::size_t)> all_counts(std::size_t pool) {
    return [pool](std::size_t len) { return word_count(pool, len); };
}

bool lta(const PebbleAutomaton& a, const DataWord& w) { return leads_to_acceptance(a, w).accepted; }

// ---- savitch -------------------------------------------------------------

void savitch_suite(Report& report, const SuiteConfig& cfg, std::mt19937_64& rng) {
    const std::size_t pool_size = cfg.pool.value_or(4);
    const std::size_t max_len = cfg.max_len.value_or(10);
    const std::size_t samples = cfg.samples.value_or(1000);
    if (pool_size < 3) throw UnsupportedParameter("the savitch suite needs --pool >= 3");
    const auto pool = symbol_pool(pool_size);

    // k = 2: s t and the middle over the remaining symbols
    const PebbleAutomaton pa2 = build_savitch_pa(2);
    const std::size_t pairs = pool_size * (pool_size - 1);
    const std::size_t inner = pool_size - 2;
    auto count = [&](std::size_t len) { return len % 2 ? 0 : pairs * word_count(inner, len - 2); };
    auto source = [&](std::size_t len, std::size_t i) {
        const std::size_t mids = word_count(inner, len - 2);
        const std::size_t pair = i / mids;
        std::size_t rest = i % mids;
        const std::size_t si = pair / (pool_size - 1);
        std::size_t ti = pair % (pool_size - 1);
        if (ti >= si) ++ti;
        std::vector<Symbol> middle;
        for (std::size_t j = 0; j < pool_size; ++j)
            if (j != si && j != ti) middle.push_back(pool[j]);
        std::vector<Symbol> s(len);
        s.front() = pool[si];
        s.back() = pool[ti];
        for (std::size_t j = len - 1; j-- > 1;) {
            s[j] = middle[rest % inner];
            rest /= inner;
        }
        return DataWord(std::move(s));
    };
    exhaustive(report, {"k2-exhaustive"}, 2, max_len, count, source,
               [&](const DataWord& w, std::vector<std::optional<Verdict>>& out) {
                   const bool alt = lta(pa2, w);
                   const bool det = run_deterministic(pa2, w, false).accepted;
                   const bool oracle = in_R_m(w, 3);
                   out[0] = Verdict{oracle, alt == det ? alt : !oracle};
               });

    // k = 3: seeded random words over a larger pool
    const PebbleAutomaton pa3 = build_savitch_pa(3);
    const auto pool3 = symbol_pool(pool_size + 2);
    const std::size_t max3 = (max_len + 6) / 2 * 2;
    std::vector<DataWord> words;
    for (std::size_t i = 0; i < samples; ++i) words.push_back(random_convention_word(rng, pool3, 2 * uniform(rng, 1, max3 / 2)));
    auto verdicts = map_inputs<DataWord, Verdict>(words, [&](const DataWord& w) {
        return Verdict{in_R_m(w, 7), run_deterministic(pa3, w, false).accepted};
    });
    for (std::size_t i = 0; i < words.size(); ++i) report.word("k3-random", words[i], verdicts[i]);
}

// ---- R+ ------------------------------------------------------------------

void rplus_fma_suite(Report& report, const SuiteConfig& cfg, std::mt19937_64& rng) {
    const std::size_t pool_size = cfg.pool.value_or(4);
    const std::size_t max_len = cfg.max_len.value_or(12);
    const std::size_t samples = cfg.samples.value_or(10000);
    const auto pool = symbol_pool(pool_size);
    const RegisterAutomaton fma = build_rplus_fma();

    exhaustive(report, {"exhaustive"}, 0, max_len, all_counts(pool_size), all_words(pool),
               [&](const DataWord& w, std::vector<std::optional<Verdict>>& out) {
                   out[0] = Verdict{in_R_plus(w), run_ra(fma, w)};
               });

    std::vector<DataWord> words;
    for (std::size_t i = 0; i < samples; ++i) words.push_back(random_word(rng, pool, uniform(rng, max_len + 1, 3 * max_len)));
    std::size_t fresh = 0;
    for (std::size_t i = 0; i < samples / 10; ++i) {
        DataWord w = random_rplus_word(rng, uniform(rng, 1, 6), 3, fresh);
        if (coin(rng, 0.5) && w.size() > 2) {
            auto s = w.symbols();
            s[uniform(rng, 0, s.size() - 1)] = s[uniform(rng, 0, s.size() - 1)];
            w = DataWord(std::move(s));
        }
        words.push_back(std::move(w));
    }
    auto verdicts = map_inputs<DataWord, Verdict>(words, [&](const DataWord& w) {
        return Verdict{in_R_plus(w), run_ra(fma, w)};
    });
    for (std::size_t i = 0; i < words.size(); ++i)
        report.word(i < samples ? "random-long" : "generated", words[i], verdicts[i]);
}

void rplus_weakpa_suite(Report& report, const SuiteConfig& cfg) {
    const std::size_t pool_size = cfg.pool.value_or(4);
    const std::size_t max_len = cfg.max_len.value_or(10);
    const auto pool = symbol_pool(pool_size);
    std::vector<PebbleAutomaton> pas;
    for (int k = 1; k <= 3; ++k) pas.push_back(build_weak_rplus_pa(k));
    const RegisterAutomaton fma = build_rplus_fma();

    exhaustive(report, {"k1", "k2", "k3", "cross-model"}, 0, max_len, all_counts(pool_size), all_words(pool),
               [&](const DataWord& w, std::vector<std::optional<Verdict>>& out) {
                   bool got[3];
                   for (std::size_t k = 1; k <= 3; ++k) {
                       got[k - 1] = lta(pas[k - 1], w);
                       out[k - 1] = Verdict{in_R_plus_m(w, k), got[k - 1]};
                   }
                   const auto m = rplus_chain_length(w);
                   if (m && *m >= 1 && *m <= 3) out[3] = Verdict{run_ra(fma, w), got[*m - 1]};
               });
}

// ---- LTL -----------------------------------------------------------------

void ltl_psi_suite(Report& report, const SuiteConfig& cfg) {
    const std::size_t pool_size = cfg.pool.value_or(4);
    const std::size_t max_len = cfg.max_len.value_or(10);
    const auto pool = symbol_pool(pool_size);

    for (std::size_t k = 1; k <= 5; ++k) {
        const std::size_t got = ltl::fqr(ltl::build_psi(k));
        const std::size_t want = k == 1 ? 1 : k - 1;
        report.check("fqr", "fqr(psi_" + std::to_string(k) + ")", got == want, ordered_json{{"fqr", got}, {"expected", want}});
    }
    std::vector<ltl::Formula> psi;
    for (std::size_t k = 1; k <= 3; ++k) psi.push_back(ltl::build_psi(k));
    exhaustive(report, {"psi1", "psi2", "psi3"}, 0, max_len, all_counts(pool_size), all_words(pool),
               [&](const DataWord& w, std::vector<std::optional<Verdict>>& out) {
                   for (std::size_t k = 1; k <= 3; ++k)
                       out[k - 1] = Verdict{in_R_plus_m(w, k), ltl::sentence_holds(w, psi[k - 1])};
               });
}

void ltl_compile_suite(Report& report, const SuiteConfig& cfg, std::mt19937_64& rng) {
    const std::size_t pool_size = cfg.pool.value_or(4);
    const std::size_t max_len = cfg.max_len.value_or(10);
    const std::size_t samples = cfg.samples.value_or(300);
    const auto pool = symbol_pool(pool_size);
    constexpr std::size_t kWordsPerSentence = 50;

    struct Item {
        ltl::Formula f;
        std::vector<DataWord> words;
    };
    std::vector<Item> items;
    for (std::size_t i = 0; i < samples; ++i) {
        Item it{ltl::random_formula(rng, uniform(rng, 1, 12), 2, true), {}};
        for (std::size_t j = 0; j < kWordsPerSentence; ++j) it.words.push_back(random_word(rng, pool, uniform(rng, 0, max_len)));
        items.push_back(std::move(it));
    }
    struct Outcome {
        int pebbles;
        std::size_t fqr;
        std::vector<Verdict> v;
    };
    auto outcomes = map_inputs<Item, Outcome>(items, [](const Item& it) {
        const PebbleAutomaton a = ltl::compile_to_weak_pa(it.f);
        Outcome o{a.k(), ltl::fqr(it.f), {}};
        for (const auto& w : it.words) o.v.push_back({ltl::sentence_holds(w, it.f), lta(a, w)});
        return o;
    });
    for (std::size_t i = 0; i < items.size(); ++i) {
        const std::string text = ltl::print(items[i].f);
        const auto& o = outcomes[i];
        report.check("pebbles", "pebble count", o.pebbles == static_cast<int>(o.fqr) + 1,
                     ordered_json{{"formula", text}, {"fqr", o.fqr}, {"pebbles", o.pebbles}});
        for (std::size_t j = 0; j < o.v.size(); ++j) report.word("random", items[i].words[j], o.v[j], ordered_json{{"formula", text}});
    }

    const ltl::Formula psi1 = ltl::build_psi(1);
    const PebbleAutomaton a1 = ltl::compile_to_weak_pa(psi1);
    exhaustive(report, {"psi1-exhaustive"}, 0, 8, all_counts(3), all_words(symbol_pool(3)),
               [&](const DataWord& w, std::vector<std::optional<Verdict>>& out) {
                   out[0] = Verdict{ltl::sentence_holds(w, psi1), lta(a1, w)};
               });
    for (std::size_t k = 2; k <= 3; ++k) {
        const PebbleAutomaton a = ltl::compile_to_weak_pa(ltl::build_psi(k));
        report.check("psi-pebbles", "pebbles of compiled psi_" + std::to_string(k), a.k() == static_cast<int>(k),
                     ordered_json{{"pebbles", a.k()}, {"weak", a.placement() == Placement::Weak}});
    }
}

// ---- periodicity ---------------------------------------------------------

void periodicity_suite(Report& report) {
    const PebbleAutomaton pa = build_savitch_pa(2);
    const std::size_t q = pa.state_count();
    // pebble 1 alone on a symbol no other pebble shares
    std::vector<std::optional<StateId>> fresh_step(q);
    for (const auto& r : pa.rules())
        if (r.head == 1 && r.P.empty() && r.V.empty() && r.reads == Reads::Symbol && r.action == Action::Right)
            fresh_step[r.from] = r.to;
    auto f = [&](StateId s) { return fresh_step[s]; };
    BigInt qf = 1;
    for (std::size_t i = 2; i <= q; ++i) qf *= i;

    for (std::size_t m = 2; m <= 4; ++m) {
        const WitnessParams p(2, m);
        const DataWord w = witness_word(p);
        std::vector<bool> fresh(w.size() + 2, false);
        for (std::size_t pos = 1; pos <= w.size(); ++pos) {
            const auto& name = w.at(pos).name();
            fresh[pos] = name[0] == 'c' || name[0] == 'd';
        }
        const auto sweeps = head_state_sequence(pa, w, 1);
        std::size_t windows = 0, mismatches = 0, max_nu = 0, max_nu0 = 0;
        bool bounded = true, divides = true;
        for (const auto& sw : sweeps) {
            for (std::size_t i = 0; i < sw.states.size();) {
                auto lone = [&](std::size_t j) {
                    return fresh[sw.positions[j]] && sw.shapes[j].V.empty();
                };
                if (!lone(i)) {
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j + 1 < sw.states.size() && lone(j + 1) && sw.positions[j + 1] == sw.positions[j] + 1) ++j;
                // window i..j: consecutive fresh positions
                const Orbit o = orbit_of(sw.states[i], f, q + 1);
                ++windows;
                max_nu = std::max(max_nu, o.nu);
                max_nu0 = std::max(max_nu0, o.nu0);
                if (o.nu == 0 || o.nu > q || o.nu0 > q) bounded = false;
                if (o.nu == 0 || qf % o.nu != 0) divides = false;
                // the observed states follow the orbit
                StateId s = sw.states[i];
                for (std::size_t t = i + 1; t <= j; ++t) {
                    auto nx = f(s);
                    if (!nx || *nx != sw.states[t]) {
                        ++mismatches;
                        break;
                    }
                    s = *nx;
                }
                i = j + 1;
            }
        }
        const bool ok = windows > 0 && mismatches == 0 && bounded && divides;
        report.check("savitch-k2", "m=" + std::to_string(m), ok,
                     ordered_json{{"states", q},
                                  {"sweeps", sweeps.size()},
                                  {"windows", windows},
                                  {"mismatches", mismatches},
                                  {"max_period", max_nu},
                                  {"max_preperiod", max_nu0},
                                  {"period_divides_beta2", divides}});
    }
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
        throw UnsupportedParameter("unknown suite '" + cfg.suite + "'");
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult result;
    Report report(result);
    std::mt19937_64 rng(cfg.seed);
    const auto before = engine_counters();

    if (cfg.suite == "savitch") savitch_suite(report, cfg, rng);
    else if (cfg.suite == "rplus-fma") rplus_fma_suite(report, cfg, rng);
    else if (cfg.suite == "rplus-weakpa") rplus_weakpa_suite(report, cfg);
    else if (cfg.suite == "ltl-psi") ltl_psi_suite(report, cfg);
    else if (cfg.suite == "ltl-compile") ltl_compile_suite(report, cfg, rng);
    else periodicity_suite(report);

    const auto after = engine_counters();
    const auto steps = after.steps - before.steps;
    const auto checks = after.theta_checks - before.theta_checks;
    report.check("engine", "theta checked on every step", steps == checks);

    ordered_json config;
    config["suite"] = cfg.suite;
    config["seed"] = cfg.seed;
    if (cfg.pool) config["pool"] = *cfg.pool;
    if (cfg.max_len) config["max_len"] = *cfg.max_len;
    if (cfg.samples) config["samples"] = *cfg.samples;
    ordered_json cases = ordered_json::object();
    for (const auto& [name, t] : result.cases) cases[name] = {{"total", t.total}, {"agree", t.agree}, {"disagree", t.total - t.agree}};
    ordered_json agg;
    agg["config"] = config;
    agg["cases"] = cases;
    agg["total"] = result.total;
    agg["agree"] = result.agree;
    agg["disagree"] = result.total - result.agree;
    agg["passed"] = result.passed();
    result.aggregate = {{"aggregate", agg}};
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace pebble::experiments
