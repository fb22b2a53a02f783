#pragma once

#include "walab/linalg.hpp"
#include "walab/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace walab {

// A word is a sequence of indices into an alphabet.
using Word = std::vector<int>;

// Explicit (Q, Sigma, M, I, F). The automaton maps a word w to I^T M(w) F.
// Zero states is legal and denotes the constant-0 function.
struct WeightedAutomaton {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::vector<RatMatrix> trans;  // one |Q| x |Q| matrix per alphabet symbol
    RatVector initial;
    RatVector final;

    int size() const { return static_cast<int>(states.size()); }

    int symbol_index(const std::string& sym) const;
    int state_index(const std::string& name) const;

    // Throws std::invalid_argument when a structural invariant is broken
    // (dimension mismatches, duplicate names or symbols).
    void validate() const;

    bool operator==(const WeightedAutomaton& o) const = default;
};

struct AutomatonSize {
    int num_states = 0;
    Int norm;  // max absolute numerator/denominator over M, I, F
};

AutomatonSize automaton_size(const WeightedAutomaton& a);

// Word helpers. Symbols are single-character tokens, so a word is written
// as a plain string like "aab".
Word parse_word(const std::vector<std::string>& alphabet, const std::string& text);
std::string word_to_string(const std::vector<std::string>& alphabet, const Word& w);

RatMatrix word_matrix(const WeightedAutomaton& a, const Word& w);
RatVector forward_vector(const WeightedAutomaton& a, const Word& w);   // I^T M(w)
RatVector backward_vector(const WeightedAutomaton& a, const Word& w);  // M(w) F

Rational evaluate(const WeightedAutomaton& a, const Word& w);

// Number of accepting runs, counted over the naturals on the support
// structure of M, I, F.
Int count_runs(const WeightedAutomaton& a, const Word& w);

// Drops states unreachable from the initial support or not co-reachable to
// the final support in the structure graph. Value-preserving.
WeightedAutomaton trim(const WeightedAutomaton& a);

// Pointwise closure operations. Sizes are exact: |difference| = |A1| + |A2|
// (disjoint union), |hadamard| = |A1| * |A2| (pair product). No auto-trim, so
// those size equalities survive.
WeightedAutomaton negate(const WeightedAutomaton& a);
WeightedAutomaton sum(const WeightedAutomaton& a1, const WeightedAutomaton& a2);
WeightedAutomaton difference(const WeightedAutomaton& a1, const WeightedAutomaton& a2);
WeightedAutomaton hadamard(const WeightedAutomaton& a1, const WeightedAutomaton& a2);

// Signed-copy doubling: 2|A| states named q+ / q-, all transition weights
// nonnegative, negative weights pushed into the final vector, values
// preserved. Runs are in bijection with the original automaton's runs.
WeightedAutomaton make_nonnegative(const WeightedAutomaton& a);

// Multiplies every weight by x = lcm of all denominators, so
// A'(w) = x^(|w|+2) * A(w) with integer weights throughout.
std::pair<WeightedAutomaton, Int> scale_to_integers(const WeightedAutomaton& a);

}  // namespace walab
