#pragma once

#include "walab/automaton.hpp"
#include "walab/lazy.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace walab {

inline constexpr long long kDefaultStateBudget = 2'000'000;

// Forward reachability basis over the dynamically discovered state set.
// echelon holds fully reduced vectors (each pivot is the first nonzero under
// discovery order and is cleared in every other vector); raw holds the
// untouched I^T M(witness) vectors the echelon rows came from.
struct ReachBasis {
    std::vector<std::string> state_names;  // discovery order
    std::vector<std::map<int, Rational>> echelon;
    std::vector<std::map<int, Rational>> raw;
    std::vector<int> pivot;
    std::vector<Word> witnesses;
};

struct ZeronessVerdict {
    bool is_zero = true;
    std::optional<std::pair<Word, Rational>> witness;  // set iff not zero
    long long states_explored = 0;
};

// True iff value(w) = 0 for every word. Exploration is breadth-first by word
// length then by alphabet order, so a returned witness is the least nonzero
// word in that order. Exceeding the budget raises resource_error, never a
// wrong verdict.
ZeronessVerdict zeroness(const LazyAutomaton& l, long long state_budget = kDefaultStateBudget,
                         ReachBasis* basis_out = nullptr);

ZeronessVerdict equivalent(const WeightedAutomaton& a1, const WeightedAutomaton& a2,
                           long long state_budget = kDefaultStateBudget);

}  // namespace walab
