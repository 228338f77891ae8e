#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pebble/constructions.hpp"
#include "pebble/errors.hpp"
#include "pebble/experiments.hpp"
#include "pebble/ltl.hpp"

namespace {

using namespace pebble;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

DataWord read_word(const std::string& path) {
    auto words = parse_words(read_file(path));
    if (words.size() > 1) throw InvalidWordShape(path + " holds more than one word");
    return words.empty() ? DataWord{} : words.front();
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PEBBLE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error("PEBBLE_SEED is not an unsigned integer");
        }
    }
    return experiments::kDefaultSeed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pebble automata, register automata and freeze LTL over data words"};
    app.require_subcommand(1);

    // gen-witness
    std::size_t wk = 0, wm = 0;
    bool bar = false;
    std::string wout;
    auto* gen = app.add_subcommand("gen-witness", "write the witness word w(n_k, m) or its barred variant");
    gen->add_option("--k", wk, "pebble count k >= 1")->required();
    gen->add_option("--m", wm, "block count m >= 1")->required();
    gen->add_flag("--bar", bar, "write the barred word instead");
    gen->add_option("--out", wout, "output file (default stdout)");

    // run-pa
    std::string pa_file, word_file, mode = "alt";
    bool trace = false;
    auto* run_pa = app.add_subcommand("run-pa", "run a pebble automaton on a word");
    run_pa->add_option("--automaton", pa_file, "automaton JSON")->required();
    run_pa->add_option("--word", word_file, "word file")->required();
    run_pa->add_flag("--trace", trace, "include the run trace (det mode)");
    run_pa->add_option("--mode", mode, "alt or det")->check(CLI::IsMember({"alt", "det"}));

    // run-ra
    std::string ra_file, ra_word;
    auto* run_ra_cmd = app.add_subcommand("run-ra", "run a register automaton on a word");
    run_ra_cmd->add_option("--automaton", ra_file, "register automaton JSON")->required();
    run_ra_cmd->add_option("--word", ra_word, "word file")->required();

    // build
    std::string construction, bout;
    int bk = 2;
    auto* build = app.add_subcommand("build", "write a built-in construction as JSON");
    build->add_option("--construction", construction, "savitch, weak-rplus or rplus-fma")
        ->required()
        ->check(CLI::IsMember({"savitch", "weak-rplus", "rplus-fma"}));
    build->add_option("--k", bk, "pebble count");
    build->add_option("--out", bout, "output file (default stdout)");

    // eval-ltl
    std::string formula, formula_file, eval_word;
    auto* eval = app.add_subcommand("eval-ltl", "evaluate a sentence on a word");
    auto* fopt = eval->add_option("--formula", formula, "formula text");
    auto* ffile = eval->add_option("--file", formula_file, "file holding the formula");
    fopt->excludes(ffile);
    eval->add_option("--word", eval_word, "word file")->required();

    // compile-ltl
    std::string cformula, cout_file;
    auto* compile = app.add_subcommand("compile-ltl", "compile a sentence to a weak pebble automaton");
    compile->add_option("--formula", cformula, "formula text")->required();
    compile->add_option("--out", cout_file, "output file (default stdout)");

    // experiment
    experiments::SuiteConfig cfg;
    std::string eout;
    std::size_t pool = 0, max_len = 0, samples = 0;
    auto* exp = app.add_subcommand("experiment", "run an oracle or property suite");
    exp->add_option("--suite", cfg.suite, "suite name")->required();
    auto* seed_opt = exp->add_option("--seed", cfg.seed, "random seed");
    auto* pool_opt = exp->add_option("--pool", pool, "symbol pool size");
    auto* len_opt = exp->add_option("--max-len", max_len, "maximal word length");
    auto* samples_opt = exp->add_option("--samples", samples, "random sample count");
    exp->add_option("--out", eout, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) {
            const WitnessParams p(wk, wm);
            const DataWord w = bar ? witness_word_bar(p) : witness_word(p);
            write_output(wout, w.to_string() + "\n");
            return 0;
        }
        if (*run_pa) {
            const PebbleAutomaton a = parse_automaton(read_file(pa_file));
            const DataWord w = read_word(word_file);
            RunVerdict v = mode == "det" ? run_deterministic(a, w, trace) : leads_to_acceptance(a, w);
            std::cout << verdict_to_json(a, v).dump() << "\n";
            return v.accepted ? 0 : 1;
        }
        if (*run_ra_cmd) {
            const RegisterAutomaton a = ra_from_json(nlohmann::json::parse(read_file(ra_file)));
            const bool ok = run_ra(a, read_word(ra_word));
            std::cout << nlohmann::ordered_json{{"accepted", ok}}.dump() << "\n";
            return ok ? 0 : 1;
        }
        if (*build) {
            std::string text;
            if (construction == "savitch") text = serialize(build_savitch_pa(bk));
            else if (construction == "weak-rplus") text = serialize(build_weak_rplus_pa(bk));
            else text = ra_to_json(build_rplus_fma()).dump(1) + "\n";
            write_output(bout, text);
            return 0;
        }
        if (*eval) {
            if (formula_file.empty() && formula.empty()) throw std::runtime_error("--formula or --file is required");
            const std::string text = formula_file.empty() ? formula : read_file(formula_file);
            const ltl::Formula f = ltl::parse(text);
            const bool holds = ltl::sentence_holds(read_word(eval_word), f);
            std::cout << nlohmann::ordered_json{{"formula", ltl::print(f)}, {"holds", holds}}.dump() << "\n";
            return holds ? 0 : 1;
        }
        if (*compile) {
            write_output(cout_file, serialize(ltl::compile_to_weak_pa(ltl::parse(cformula))));
            return 0;
        }
        if (*exp) {
            if (!*seed_opt) cfg.seed = default_seed();
            if (*pool_opt) cfg.pool = pool;
            if (*len_opt) cfg.max_len = max_len;
            if (*samples_opt) cfg.samples = samples;
            const auto result = experiments::run_suite(cfg);
            write_output(eout, result.report());
            std::cerr << cfg.suite << ": " << result.agree << "/" << result.total << " agree, " << result.seconds
                      << " s\n";
            return result.passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
