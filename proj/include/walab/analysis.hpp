#pragma once

#include "walab/automaton.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace walab {

// Linearly ordered by inclusion as listed.
enum class AmbiguityClass {
    Deterministic,
    Unambiguous,
    FinitelyAmbiguous,
    PolynomiallyAmbiguous,
    ExponentiallyAmbiguous,
};

const char* to_string(AmbiguityClass c);

BoolMatrix letter_structure(const RatMatrix& m);

// Boolean product of letter structures over w. Faithful to the structure of
// M(w) only when transition weights are nonnegative (no cancellation); when A
// has a negative transition entry the optional flag is raised and the result
// is pattern-only.
BoolMatrix structure_of(const WeightedAutomaton& a, const Word& w,
                        bool* negative_warning = nullptr);

bool is_idempotent_structure(const BoolMatrix& b);

// At most one nonzero initial entry and at most one nonzero entry per row of
// every letter matrix.
bool is_syntactically_deterministic(const WeightedAutomaton& a);

// Pattern-based classification on the trimmed automaton: deterministic by the
// syntactic check, unambiguous when the trimmed self-product has no useful
// off-diagonal pair, exponentially ambiguous on a self-product cycle through
// (q,q) and an off-diagonal pair, else polynomial vs finite by the
// triple-product criterion (p cycles, p reaches q, q cycles on one word).
AmbiguityClass classify_ambiguity(const WeightedAutomaton& a);

// First window (1-based i <= j, ordered by width then start) whose
// concatenated factor has idempotent structure.
std::optional<std::pair<int, int>> find_idempotent_factor(const WeightedAutomaton& a,
                                                          const std::vector<Word>& factors);

struct RamseyBound {
    unsigned long L = 0;
    Int ell;  // (3 * 2^(4 m^2))^L
};

RamseyBound ramsey_bound(unsigned long m);

struct TowerBound {
    int r = 0;  // max exact rank over the letter matrices
    Int value;  // tower_r(2 * ell * |Sigma|)
};

// tower_0(x) = x, tower_{r+1}(x) = x * tower_r(x^x). Values beyond the
// internal bit budget raise resource_error; they are astronomically large by
// design and only the small cases are meant to be materialized.
TowerBound tower_bound(const WeightedAutomaton& a);

}  // namespace walab
