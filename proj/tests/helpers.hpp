#pragma once

#include "walab/automaton.hpp"
#include "walab/json_io.hpp"

#include <functional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace walab::test {

inline WeightedAutomaton make_automaton(
    std::vector<std::string> states, std::vector<std::string> alphabet,
    const std::vector<std::tuple<std::string, std::string, std::string, std::string>>& transitions,
    const std::vector<std::pair<std::string, std::string>>& initial,
    const std::vector<std::pair<std::string, std::string>>& final_weights) {
    WeightedAutomaton a;
    a.states = std::move(states);
    a.alphabet = std::move(alphabet);
    int n = a.size();
    for (std::size_t s = 0; s < a.alphabet.size(); ++s) a.trans.emplace_back(n, n);
    a.initial = RatVector(n);
    a.final = RatVector(n);
    for (const auto& [from, label, to, weight] : transitions)
        a.trans[a.symbol_index(label)].set(a.state_index(from), a.state_index(to),
                                           parse_rational(weight));
    for (const auto& [q, w] : initial) a.initial.set(a.state_index(q), parse_rational(w));
    for (const auto& [q, w] : final_weights) a.final.set(a.state_index(q), parse_rational(w));
    a.validate();
    return a;
}

inline WeightedAutomaton load_fixture(const std::string& name) {
    return load_automaton(std::string(WALAB_FIXTURE_DIR) + "/" + name);
}

// Independent value oracle: explicit run enumeration, no matrix products.
inline Rational brute_value(const WeightedAutomaton& a, const Word& w) {
    Rational total(0);
    std::function<void(int, std::size_t, const Rational&)> rec = [&](int q, std::size_t pos,
                                                                     const Rational& acc) {
        if (pos == w.size()) {
            total += acc * a.final.get(q);
            return;
        }
        for (const auto& [pq, wt] : a.trans[w[pos]].entries)
            if (pq.first == q) rec(pq.second, pos + 1, acc * wt);
    };
    for (const auto& [q, iw] : a.initial.entries) rec(q, 0, iw);
    return total;
}

// Accepting-run count on the support structure, same enumeration style.
inline Int brute_runs(const WeightedAutomaton& a, const Word& w) {
    Int total(0);
    std::function<void(int, std::size_t)> rec = [&](int q, std::size_t pos) {
        if (pos == w.size()) {
            if (a.final.get(q) != 0) ++total;
            return;
        }
        for (const auto& [pq, wt] : a.trans[w[pos]].entries)
            if (pq.first == q && wt != 0) rec(pq.second, pos + 1);
    };
    for (const auto& [q, iw] : a.initial.entries)
        if (iw != 0) rec(q, 0);
    return total;
}

// All words up to max_len over symbols 0..k-1, shortest first, then lex.
inline std::vector<Word> all_words(int k, int max_len) {
    std::vector<Word> out{{}};
    std::size_t begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (int s = 0; s < k; ++s) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

// u $ v $ w ... over the extended alphabet of the lazy block constructions,
// where the separator is the last symbol index.
inline Word blocks(int dollar, const std::vector<Word>& parts) {
    Word out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out.push_back(dollar);
        out.insert(out.end(), parts[i].begin(), parts[i].end());
    }
    return out;
}

using Rng = std::mt19937_64;

inline int rand_int(Rng& g, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline bool rand_bool(Rng& g, double p = 0.5) { return std::bernoulli_distribution(p)(g); }

// Nonzero rational with |numerator|, denominator <= mag.
inline Rational rand_weight(Rng& g, int mag = 3, bool allow_negative = true,
                            bool allow_fraction = true) {
    int n = rand_int(g, 1, mag);
    int d = allow_fraction ? rand_int(g, 1, mag) : 1;
    Rational r(n, d);
    if (allow_negative && rand_bool(g)) r = -r;
    return r;
}

struct RandomSpec {
    int max_states = 3;
    int letters = 2;
    double density = 0.5;
    bool negative = true;
    bool fractions = true;
    double io_density = 0.6;
};

inline WeightedAutomaton random_automaton(Rng& g, const RandomSpec& spec = {}) {
    WeightedAutomaton a;
    int m = rand_int(g, 1, spec.max_states);
    for (int i = 0; i < m; ++i) a.states.push_back("q" + std::to_string(i));
    for (int s = 0; s < spec.letters; ++s) a.alphabet.push_back(std::string(1, char('a' + s)));
    a.initial = RatVector(m);
    a.final = RatVector(m);
    for (int s = 0; s < spec.letters; ++s) {
        a.trans.emplace_back(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (rand_bool(g, spec.density))
                    a.trans[s].set(i, j, rand_weight(g, 3, spec.negative, spec.fractions));
    }
    for (int i = 0; i < m; ++i) {
        if (rand_bool(g, spec.io_density))
            a.initial.set(i, rand_weight(g, 3, spec.negative, spec.fractions));
        if (rand_bool(g, spec.io_density))
            a.final.set(i, rand_weight(g, 3, spec.negative, spec.fractions));
    }
    return a;
}

}  // namespace walab::test
