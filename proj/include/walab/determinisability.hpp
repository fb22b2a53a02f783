#pragma once

#include "walab/analysis.hpp"
#include "walab/automaton.hpp"
#include "walab/equivalence.hpp"
#include "walab/pumpability.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace walab {

// Twin property of a trimmed unambiguous automaton: any two states p, q
// reachable from initial states by the same word u must agree on |M(v)_pp|
// = |M(v)_qq| for every v looping at both. Checked as an equivalence of two
// auxiliary automata over an alphabet of transition pairs.
struct TwinVerdict {
    struct Counterexample {
        Word u, v;
        std::string p, q;  // state names in the trimmed automaton
        Rational weight_p, weight_q;  // |M(v)_pp| vs |M(v)_qq|
    };

    bool holds = false;
    std::optional<Counterexample> counterexample;
    long long states_explored = 0;
};

TwinVerdict twin_property(const WeightedAutomaton& a,
                          long long state_budget = kDefaultStateBudget);

// An unambiguous automaton is determinisable iff it has the twin property.
bool decide_determinisable_unambiguous(const WeightedAutomaton& a,
                                       long long state_budget = kDefaultStateBudget);

struct DecideOptions {
    std::string method = "auto";  // "exact", "falsify", or "auto"
    long long state_budget = kDefaultStateBudget;
    int max_u = 3, max_v = 3, max_w = 3;  // falsifier bounds
    int max_power = 1;
};

struct DecisionVerdict {
    bool value = false;
    AmbiguityClass ambiguity = AmbiguityClass::Deterministic;
    std::string route;   // "deterministic", "unambiguous", "unambiguous-twin",
                         // or "pumpability"
    std::string method;  // "classification", "twin-equivalence", "exact-zeroness",
                         // or "bounded-falsifier"
    std::optional<PumpVerdict> pump;
    std::optional<TwinVerdict> twin;
};

// Routing by ambiguity class: deterministic automata are trivially both;
// unambiguous ones are always unambiguisable and determinisable iff twin;
// finitely or polynomially ambiguous ones reduce to weak (unambiguisable)
// or blind (determinisable) pumpability. Exponential ambiguity is rejected.
// With method "auto" the exact decider runs only on small instances (at most
// 2 states, or 3 over a unary alphabet); otherwise, or when the exact run
// exhausts its budget, the bounded falsifier is used.
DecisionVerdict decide_unambiguisable(const WeightedAutomaton& a, const DecideOptions& opt = {});
DecisionVerdict decide_determinisable(const WeightedAutomaton& a, const DecideOptions& opt = {});

// Factors the values of all words up to max_len (after integer rescaling)
// and reports which primes divide some value, keyed by the first length at
// which each appears. Composite residues that resist factoring are reported
// opaque. growth is set when the last stratum still introduces new primes
// (or new opaque residues), a telltale of unbounded prime support.
struct PrimeProbe {
    std::vector<Int> primes;           // sorted, deduplicated
    std::map<Int, int> first_seen;     // prime -> shortest word length
    std::vector<Int> opaque;           // unfactored composite parts
    bool growth = false;
    Int scale{1};
};

PrimeProbe prime_divisor_probe(const WeightedAutomaton& a, int max_len);

// A cut of u splits it as u1 u2 u3 with u2 nonempty, the structure of u2
// idempotent, and a diagonal d of M(u2) that depumps: A(u v) = d * A(u1 u3 v).
// Candidates are enumerated by start position descending, then |u2|
// ascending, then d ascending.
struct CutResult {
    Word u1, u2, u3;
    Rational d;                       // blind mode: works for every suffix
    std::vector<Rational> suffix_ds;  // per-suffix d (non-blind mode)
};

// Validates candidate cuts against the given suffixes only.
std::optional<CutResult> cut_search(const WeightedAutomaton& a, const Word& u,
                                    const std::vector<Word>& suffixes, int window, bool blind);

// Validates candidate cuts against all suffixes at once by a zeroness check
// on the automaton with initial vector I^T (M(u) - d * M(u1 u3)).
std::optional<CutResult> cut_search_exact(const WeightedAutomaton& a, const Word& u, int window);

// Streaming evaluation with bounded memory: whenever the buffer reaches the
// window length, an exact blind cut shortens it and its d factors into the
// result. Raises depump_error when no cut exists.
Rational depump_evaluate(const WeightedAutomaton& a, const Word& w, int window);

// Unique-path pumping constants of a syntactically deterministic automaton:
// following u then blocks of v, m is the index of the first repeated block
// boundary, lambda the period, and d the weight of one period. A dying path
// reports the number of completed blocks, period 1, and d = 0.
struct PumpProfile {
    long long m = 0;
    long long lambda = 1;
    Rational d{0};
};

PumpProfile det_pump_constants(const WeightedAutomaton& a, const Word& u, const Word& v);

}  // namespace walab
