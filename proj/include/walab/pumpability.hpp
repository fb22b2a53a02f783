#pragma once

#include "walab/automaton.hpp"
#include "walab/equivalence.hpp"
#include "walab/lazy.hpp"

#include <optional>
#include <string>

namespace walab {

// Verdict of the pumpability deciders. With method "exact-zeroness" the
// verdict mirrors the zeroness of the lazy combined automaton; with
// "bounded-falsifier" a true verdict only means no violation within the
// search bounds. A false witness re-validates by direct evaluation: M(v) is
// p-triangular and no diagonal entry d satisfies
// A(u v^(m+1) w) = d * A(u v^m w) (for blind verdicts, no single d covers
// both suffixes).
struct PumpVerdict {
    struct Witness {
        Word u, v, w;
        std::optional<Word> w2;
    };

    bool pumpable = false;
    std::string method;  // "exact-zeroness" or "bounded-falsifier"
    std::optional<Witness> witness;
    long long states_explored = 0;
    Int scale{1};  // integerization factor; d values are in rescaled units
};

// Lazy constructions over the extended alphabet Sigma + "$". All of them
// require "$" to be fresh and assign meaning only to block-shaped inputs
// (u$v$w, or u$v$w$w' for the two-suffix family).

// T(u$v$w) = 1 iff the structure product of v is p-triangular; 0 elsewhere.
// At most 2^(m^2)+3 reachable states, all weights 1.
LazyAutomaton build_T(const WeightedAutomaton& a);

// B_n(u$v$w) = A(u v^n w): the middle component runs n copies of A over v,
// with guessed hand-off states verified at the closing separator.
LazyAutomaton build_B(const WeightedAutomaton& a, int n);

// C_i(u$v$w) = M(v)_(i,i) for a 0-based state index i.
LazyAutomaton build_C(const WeightedAutomaton& a, int i);

// P_A = T * prod over states i of (B_(m+1) - B_m * C_i).
// P_A is identically zero iff A is weakly pumpable.
LazyAutomaton build_P(const WeightedAutomaton& a);

// Two-suffix family over u$v$w$w': T' checks v as T does; B1_n yields
// A(u v^n w); B2_n yields A(u v^n w').
LazyAutomaton build_T2(const WeightedAutomaton& a);
LazyAutomaton build_B1(const WeightedAutomaton& a, int n);
LazyAutomaton build_B2(const WeightedAutomaton& a, int n);

// Q_A = T' * (B1_(m+1) * B2_m  -  B1_m * B2_(m+1)); identically zero (for a
// weakly pumpable A) iff the pumping factor can be chosen blind to the
// suffix.
LazyAutomaton build_Q(const WeightedAutomaton& a);

// Exact deciders. Preprocessing: trim, make_nonnegative, scale_to_integers
// (then trim again); the verdict's scale field records the integerization
// factor. Budget exhaustion raises resource_error.
PumpVerdict is_weakly_pumpable(const WeightedAutomaton& a,
                               long long state_budget = kDefaultStateBudget);
PumpVerdict is_blindly_pumpable(const WeightedAutomaton& a,
                                long long state_budget = kDefaultStateBudget);

// Bounded direct search for violations, on the automaton as given. Enumerates
// (u, v) by total length then lexicographically, suffixes w likewise; only
// p-triangular M(v) are eligible. max_power extends the check to
// A(u v^(m+n) w) = d^n * A(u v^m w) for n = 1..max_power with one d.
PumpVerdict falsify_pumpability(const WeightedAutomaton& a, int max_u, int max_v, int max_w,
                                bool blind, int max_power = 1);

}  // namespace walab
