#include "walab/analysis.hpp"
#include "walab/automaton.hpp"
#include "walab/determinisability.hpp"
#include "walab/equivalence.hpp"
#include "walab/errors.hpp"
#include "walab/json_io.hpp"
#include "walab/lazy.hpp"
#include "walab/pumpability.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::ordered_json;
using namespace walab;

// FNV-1a over the raw file bytes; ties a verdict to its exact inputs.
std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    unsigned long long h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

ordered_json witness_json(const std::vector<std::string>& alphabet,
                          const PumpVerdict::Witness& w) {
    ordered_json j;
    j["u"] = word_to_string(alphabet, w.u);
    j["v"] = word_to_string(alphabet, w.v);
    j["w"] = word_to_string(alphabet, w.w);
    if (w.w2) j["w2"] = word_to_string(alphabet, *w.w2);
    return j;
}

ordered_json counterexample_json(const std::vector<std::string>& alphabet,
                                 const TwinVerdict::Counterexample& ce) {
    ordered_json j;
    j["u"] = word_to_string(alphabet, ce.u);
    j["v"] = word_to_string(alphabet, ce.v);
    j["p"] = ce.p;
    j["q"] = ce.q;
    j["weight_p"] = rational_to_string(ce.weight_p);
    j["weight_q"] = rational_to_string(ce.weight_q);
    return j;
}

bool exact_feasible(const WeightedAutomaton& t) {
    return t.size() <= 2 || (t.alphabet.size() <= 1 && t.size() <= 3);
}

PumpVerdict run_pumpability(const WeightedAutomaton& a, bool blind, const std::string& method,
                            long long budget, int max_u, int max_v, int max_w) {
    if (method == "exact")
        return blind ? is_blindly_pumpable(a, budget) : is_weakly_pumpable(a, budget);
    if (method == "falsify") return falsify_pumpability(a, max_u, max_v, max_w, blind);
    if (method != "auto") throw std::invalid_argument("unknown method '" + method + "'");
    if (exact_feasible(trim(a))) {
        try {
            return blind ? is_blindly_pumpable(a, budget) : is_weakly_pumpable(a, budget);
        } catch (const resource_error&) {
        }
    }
    return falsify_pumpability(a, max_u, max_v, max_w, blind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact analysis of rational-weighted finite automata"};
    app.require_subcommand(1);

    std::string file1, file2, word_text;
    std::string method = "auto";
    long long budget = kDefaultStateBudget;
    if (const char* env = std::getenv("WA_LAB_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) budget = v;
    }
    int max_u = 3, max_v = 3, max_w = 3;
    int max_len = 0, window = 0;
    unsigned seed = 0;
    bool nonneg = false, integerize = false;

    app.add_option("--seed", seed, "seed for randomized harnesses (unused by the commands here)");

    auto add_budget = [&](CLI::App* c) {
        c->add_option("--state-budget", budget,
                      "exploration budget (default from WA_LAB_BUDGET when set)");
    };
    auto add_method = [&](CLI::App* c) {
        c->add_option("--method", method, "exact, falsify, or auto")
            ->check(CLI::IsMember({"exact", "falsify", "auto"}));
        c->add_option("--max-u", max_u, "falsifier bound on |u|");
        c->add_option("--max-v", max_v, "falsifier bound on |v|");
        c->add_option("--max-w", max_w, "falsifier bound on |w|");
        add_budget(c);
    };

    CLI::App* c_eval = app.add_subcommand("eval", "evaluate the automaton on a word");
    c_eval->add_option("file", file1)->required();
    c_eval->add_option("word", word_text, "symbol string; empty for the empty word")->required();

    CLI::App* c_zero = app.add_subcommand("zero", "decide whether every value is zero");
    c_zero->add_option("file", file1)->required();
    add_budget(c_zero);

    CLI::App* c_equiv = app.add_subcommand("equiv", "decide equivalence of two automata");
    c_equiv->add_option("file1", file1)->required();
    c_equiv->add_option("file2", file2)->required();
    add_budget(c_equiv);

    CLI::App* c_classify = app.add_subcommand("classify", "ambiguity class of the automaton");
    c_classify->add_option("file", file1)->required();

    CLI::App* c_trim = app.add_subcommand("trim", "drop useless states");
    c_trim->add_option("file", file1)->required();

    CLI::App* c_norm = app.add_subcommand(
        "normalize", "rewrite with nonnegative and/or integer weights (both when no flag given)");
    c_norm->add_option("file", file1)->required();
    c_norm->add_flag("--nonneg", nonneg, "apply the signed-copy doubling only");
    c_norm->add_flag("--integerize", integerize, "apply denominator clearing only");

    CLI::App* c_tri = app.add_subcommand("triangular", "p-triangularity of M(word)");
    c_tri->add_option("file", file1)->required();
    c_tri->add_option("word", word_text)->required();

    CLI::App* c_twin = app.add_subcommand("twin", "twin property of an unambiguous automaton");
    c_twin->add_option("file", file1)->required();
    add_budget(c_twin);

    CLI::App* c_pump = app.add_subcommand("pumpable", "weak pumpability");
    c_pump->add_option("file", file1)->required();
    add_method(c_pump);

    CLI::App* c_bpump = app.add_subcommand("blind-pumpable", "blind pumpability");
    c_bpump->add_option("file", file1)->required();
    add_method(c_bpump);

    CLI::App* c_unamb = app.add_subcommand("decide-unamb", "is the function unambiguisable");
    c_unamb->add_option("file", file1)->required();
    add_method(c_unamb);

    CLI::App* c_det = app.add_subcommand("decide-det", "is the function determinisable");
    c_det->add_option("file", file1)->required();
    add_method(c_det);

    CLI::App* c_probe = app.add_subcommand("prime-probe", "prime divisors of short-word values");
    c_probe->add_option("file", file1)->required();
    c_probe->add_option("--max-len", max_len, "longest word length")->required();

    CLI::App* c_depump = app.add_subcommand("depump-eval", "streaming evaluation via blind cuts");
    c_depump->add_option("file", file1)->required();
    c_depump->add_option("word", word_text)->required();
    c_depump->add_option("--window", window, "buffer length triggering a cut")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    ordered_json r;
    r["command"] = sub->get_name();
    r["inputs"] = ordered_json::array();

    try {
        auto add_input = [&](const std::string& path) {
            r["inputs"].push_back({{"path", path}, {"digest", file_digest(path)}});
        };

        if (sub == c_eval) {
            add_input(file1);
            WeightedAutomaton a = load_automaton(file1);
            r["value"] = rational_to_string(evaluate(a, parse_word(a.alphabet, word_text)));
        } else if (sub == c_zero) {
            add_input(file1);
            WeightedAutomaton a = load_automaton(file1);
            ZeronessVerdict z = zeroness(lazy_wrap(a), budget);
            r["is_zero"] = z.is_zero;
            if (z.witness) {
                r["witness"] = {{"word", word_to_string(a.alphabet, z.witness->first)},
                                {"value", rational_to_string(z.witness->second)}};
            } else {
                r["witness"] = nullptr;
            }
            r["resources"] = {{"states_explored", z.states_explored}};
        } else if (sub == c_equiv) {
            add_input(file1);
            add_input(file2);
            WeightedAutomaton a1 = load_automaton(file1);
            WeightedAutomaton a2 = load_automaton(file2);
            ZeronessVerdict z = equivalent(a1, a2, budget);
            r["equivalent"] = z.is_zero;
            if (z.witness) {
                r["witness"] = {{"word", word_to_string(a1.alphabet, z.witness->first)},
                                {"value", rational_to_string(z.witness->second)}};
            } else {
                r["witness"] = nullptr;
            }
            r["resources"] = {{"states_explored", z.states_explored}};
        } else if (sub == c_classify) {
            add_input(file1);
            r["class"] = to_string(classify_ambiguity(load_automaton(file1)));
        } else if (sub == c_trim) {
            add_input(file1);
            r["automaton"] = automaton_to_json(trim(load_automaton(file1)));
        } else if (sub == c_norm) {
            add_input(file1);
            WeightedAutomaton a = load_automaton(file1);
            if (!nonneg && !integerize) nonneg = integerize = true;
            if (nonneg) a = make_nonnegative(a);
            if (integerize) {
                auto [scaled, x] = scale_to_integers(a);
                a = scaled;
                r["scale"] = x.str();
            }
            r["automaton"] = automaton_to_json(a);
        } else if (sub == c_tri) {
            add_input(file1);
            WeightedAutomaton a = load_automaton(file1);
            PTriangularResult res = is_p_triangular(word_matrix(a, parse_word(a.alphabet, word_text)));
            r["triangular"] = res.triangular;
            if (res.triangular) {
                ordered_json order = ordered_json::array();
                for (int i : res.order) order.push_back(a.states[i]);
                r["order"] = order;
                r["cycle"] = nullptr;
            } else {
                ordered_json cycle = ordered_json::array();
                for (int i : res.cycle) cycle.push_back(a.states[i]);
                r["order"] = nullptr;
                r["cycle"] = cycle;
            }
        } else if (sub == c_twin) {
            add_input(file1);
            WeightedAutomaton a = load_automaton(file1);
            TwinVerdict v = twin_property(a, budget);
            r["holds"] = v.holds;
            r["counterexample"] =
                v.counterexample ? counterexample_json(a.alphabet, *v.counterexample)
                                 : ordered_json(nullptr);
            r["resources"] = {{"states_explored", v.states_explored}};
        } else if (sub == c_pump || sub == c_bpump) {
            add_input(file1);
            WeightedAutomaton a = load_automaton(file1);
            PumpVerdict v =
                run_pumpability(a, sub == c_bpump, method, budget, max_u, max_v, max_w);
            r["pumpable"] = v.pumpable;
            r["method"] = v.method;
            r["witness"] =
                v.witness ? witness_json(a.alphabet, *v.witness) : ordered_json(nullptr);
            r["scale"] = v.scale.str();
            r["resources"] = {{"states_explored", v.states_explored}};
        } else if (sub == c_unamb || sub == c_det) {
            add_input(file1);
            WeightedAutomaton a = load_automaton(file1);
            DecideOptions opt;
            opt.method = method;
            opt.state_budget = budget;
            opt.max_u = max_u;
            opt.max_v = max_v;
            opt.max_w = max_w;
            DecisionVerdict v =
                sub == c_det ? decide_determinisable(a, opt) : decide_unambiguisable(a, opt);
            r["value"] = v.value;
            r["ambiguity"] = to_string(v.ambiguity);
            r["route"] = v.route;
            r["method"] = v.method;
            if (v.pump && v.pump->witness)
                r["witness"] = witness_json(a.alphabet, *v.pump->witness);
            else if (v.twin && v.twin->counterexample)
                r["witness"] = counterexample_json(a.alphabet, *v.twin->counterexample);
            else
                r["witness"] = nullptr;
            long long explored = 0;
            if (v.pump) explored += v.pump->states_explored;
            if (v.twin) explored += v.twin->states_explored;
            r["resources"] = {{"states_explored", explored}};
        } else if (sub == c_probe) {
            add_input(file1);
            PrimeProbe p = prime_divisor_probe(load_automaton(file1), max_len);
            ordered_json primes = ordered_json::array();
            for (const Int& q : p.primes) primes.push_back(q.str());
            r["primes"] = primes;
            ordered_json first = ordered_json::object();
            for (const auto& [q, len] : p.first_seen) first[q.str()] = len;
            r["first_seen"] = first;
            ordered_json opaque = ordered_json::array();
            for (const Int& q : p.opaque) opaque.push_back(q.str());
            r["opaque"] = opaque;
            r["growth"] = p.growth;
            r["scale"] = p.scale.str();
        } else if (sub == c_depump) {
            add_input(file1);
            WeightedAutomaton a = load_automaton(file1);
            r["value"] = rational_to_string(
                depump_evaluate(a, parse_word(a.alphabet, word_text), window));
            r["window"] = window;
        }
    } catch (const resource_error& e) {
        r["error"] = e.what();
        r["resources"] = {{"states_explored", e.reached()}};
        std::cout << r.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        r["error"] = e.what();
        std::cout << r.dump(2) << "\n";
        return 1;
    }

    std::cout << r.dump(2) << "\n";
    return 0;
}
