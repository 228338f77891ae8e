#include <optional>
#include <unistd.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pebble/constructions.hpp"
#include "pebble/errors.hpp"
#include "pebble/experiments.hpp"
#include "pebble/ltl.hpp"

using namespace pebble;
using namespace pebble::experiments;

namespace {

// Tolerances.
constexpr std::size_t kMaxDisagreements = 0;
constexpr std::size_t kMaxViolations = 0;
constexpr double kSavitchMinutes = 15;  // 5 exhaustive + 10 random
constexpr double kRplusMinutes = 10;
constexpr double kCompileMinutes = 15;
constexpr std::size_t kEngineCases = 500;
constexpr std::size_t kDualizeCases = 200;
constexpr std::size_t kPlacementCases = 200;
constexpr std::size_t kWordsPerCase = 5;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string tally(const SuiteResult& r) {
    std::ostringstream s;
    bool first = true;
    for (const auto& [name, t] : r.cases) {
        s << (first ? "" : ", ") << name << " " << t.agree << "/" << t.total;
        first = false;
    }
    s << "; " << r.seconds << " s";
    return s.str();
}

SuiteResult suite(const std::string& name) {
    SuiteConfig cfg;
    cfg.suite = name;
    return run_suite(cfg);
}

Outcome criterion_1() {
    const auto r = suite("savitch");
    const bool ok = r.total - r.agree <= kMaxDisagreements && r.cases.at("k3-random").total >= 1000 &&
                    r.seconds < kSavitchMinutes * 60;
    return {ok, tally(r)};
}

Outcome criterion_2() {
    const auto fma = suite("rplus-fma");
    const auto weak = suite("rplus-weakpa");
    std::size_t bad = fma.total - fma.agree;
    for (const auto& name : {"k1", "k2", "k3"}) bad += weak.cases.at(name).total - weak.cases.at(name).agree;
    const bool ok = bad <= kMaxDisagreements && fma.seconds + weak.seconds < kRplusMinutes * 60;
    return {ok, "fma: " + tally(fma) + " | weak: " + tally(weak)};
}

Outcome criterion_3() {
    const auto r = suite("ltl-psi");
    return {r.total - r.agree <= kMaxDisagreements, tally(r)};
}

Outcome criterion_4() {
    const auto r = suite("ltl-compile");
    const bool ok = r.total - r.agree <= kMaxDisagreements && r.cases.at("random").total == 300 * 50 &&
                    r.cases.at("pebbles").total == 300 &&
                    r.seconds < kCompileMinutes * 60;
    return {ok, tally(r)};
}

Outcome criterion_5() {
    std::size_t checked = 0, bad = 0;
    std::ostringstream s;
    for (std::size_t k = 1; k <= 3; ++k) {
        std::optional<PebbleAutomaton> a;
        if (k >= 2) a = build_savitch_pa(static_cast<int>(k));
        for (std::size_t m = 1; m <= 4; ++m) {
            const WitnessParams p(k, m);
            const auto w = witness_word(p);
            const auto wb = witness_word_bar(p);
            const auto g = induce_graph(wb);
            std::vector<bool> facts = {in_R_m(w, p.n_k()), !distance(g, g.source, g.target).has_value(),
                                       w.size() == 4 * m * (p.n_k() - 1) + 2};
            if (a) {
                facts.push_back(!run_deterministic(*a, w, false).accepted);
                facts.push_back(!run_deterministic(*a, wb, false).accepted);
            }
            for (bool f : facts) {
                ++checked;
                if (!f) {
                    ++bad;
                    s << " k=" << k << ",m=" << m;
                }
            }
        }
    }
    return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " facts hold" + s.str()};
}

Outcome criterion_6() {
    const auto r = suite("periodicity");
    return {r.total - r.agree <= kMaxDisagreements && r.total > 0, tally(r)};
}

Outcome criterion_7() {
    const auto pool = symbol_pool(3);
    std::size_t violations = 0, cases = 0;
    auto accepts = [](const PebbleAutomaton& a, const DataWord& w) { return leads_to_acceptance(a, w).accepted; };

    std::mt19937_64 rng(kDefaultSeed);
    for (std::size_t i = 0; i < kEngineCases; ++i) {
        RandomAutomatonSpec spec;
        spec.k = 1 + static_cast<int>(i % 3);
        spec.functional = true;
        spec.rule_density = 0.7;
        spec.direction = i % 2 ? Direction::TwoWay : Direction::OneWay;
        const auto a = random_automaton(rng, spec);
        for (std::size_t j = 0; j < kWordsPerCase; ++j) {
            const auto w = random_word(rng, pool, rng() % 6);
            ++cases;
            violations += accepts(a, w) != run_deterministic(a, w, false).accepted;
        }
    }
    const std::size_t det_cases = cases;

    for (std::size_t i = 0; i < kPlacementCases; ++i) {
        RandomAutomatonSpec spec;
        spec.k = 2 + static_cast<int>(i % 2);
        spec.direction = Direction::OneWay;
        spec.universal_fraction = 0.3;
        spec.place_only_at_left_end = true;
        const auto strong = random_automaton(rng, spec);
        auto j = nlohmann::json::parse(automaton_to_json(strong).dump());
        j["placement"] = "weak";
        const auto weak = automaton_from_json(j);
        for (std::size_t n = 0; n < kWordsPerCase; ++n) {
            const auto w = random_word(rng, pool, rng() % 6);
            ++cases;
            violations += accepts(strong, w) != accepts(weak, w);
        }
    }
    const std::size_t placement_cases = cases - det_cases;

    for (std::size_t i = 0; i < kDualizeCases; ++i) {
        RandomAutomatonSpec spec;
        spec.k = 1 + static_cast<int>(i % 3);
        spec.states = 7;
        spec.universal_fraction = 0.4;
        spec.direction = Direction::OneWay;
        spec.placement = i % 2 ? Placement::Weak : Placement::Strong;
        spec.monotone = true;
        const auto a = random_automaton(rng, spec);
        const auto d = dualize(totalize(a));
        for (std::size_t n = 0; n < kWordsPerCase; ++n) {
            const auto w = random_word(rng, pool, rng() % 6);
            ++cases;
            violations += accepts(d, w) == accepts(a, w);
        }
    }
    const std::size_t dual_cases = cases - det_cases - placement_cases;

    std::size_t invariant_failures = 0;
    const auto before = engine_counters();
    for (const auto& name : suite_names()) {
        try {
            suite(name);
        } catch (const EngineInvariant& e) {
            ++invariant_failures;
            std::cerr << name << ": " << e.what() << "\n";
        }
    }
    const auto after = engine_counters();
    const auto steps = after.steps - before.steps;
    const auto checks = after.theta_checks - before.theta_checks;
    violations += invariant_failures + (steps != checks);

    std::ostringstream s;
    s << "det/alt " << det_cases << ", placement " << placement_cases << ", dualize " << dual_cases << " words; "
      << steps << " suite steps, " << checks << " theta checks; " << violations << " violations";
    return {violations <= kMaxViolations && steps > 0, s.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion_8() {
    const auto dir = std::filesystem::temp_directory_path() / ("pebble-acc-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    std::size_t identical = 0;
    std::ostringstream s;
    for (const auto& name : suite_names()) {
        std::string reports[2];
        for (int run = 0; run < 2; ++run) {
            const auto out = dir / (name + "-" + std::to_string(run) + ".jsonl");
            const std::string cmd = std::string("\"") + PEBBLE_CLI + "\" experiment --suite " + name + " --seed 7 --out \"" +
                                    out.string() + "\" 2>/dev/null";
            const int rc = std::system(cmd.c_str());
            reports[run] = rc == -1 ? std::string() : slurp(out);
        }
        if (!reports[0].empty() && reports[0] == reports[1])
            ++identical;
        else
            s << " " << name << " differs";
    }
    std::filesystem::remove_all(dir);
    const bool ok = identical == suite_names().size();
    return {ok, std::to_string(identical) + "/" + std::to_string(suite_names().size()) + " suites byte-identical" + s.str()};
}

const std::vector<std::function<Outcome()>> kCriteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                         criterion_5, criterion_6, criterion_7, criterion_8};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--only", only, "run one criterion (1-8)")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (int n = 1; n <= static_cast<int>(kCriteria.size()); ++n) {
        if (only && n != only) continue;
        Outcome o;
        try {
            o = kCriteria[n - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "CRITERION " << n << (o.pass ? " PASS: " : " FAIL: ") << o.detail << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
