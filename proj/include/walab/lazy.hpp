#pragma once

#include "walab/automaton.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace walab {

// Implicitly-defined automaton: initial configurations, a successor function
// and a final-weight function over opaque (string) states. Lets exponential
// constructions be explored without materialization. Successor functions must
// be pure; listed weights are nonzero, duplicates add up.
struct LazyAutomaton {
    using Config = std::pair<std::string, Rational>;

    std::vector<std::string> alphabet;
    std::vector<Config> initial;
    std::function<std::vector<Config>(const std::string&, int)> next;
    std::function<Rational(const std::string&)> final_weight;
};

// Injective composition of opaque states (length-prefixed).
std::string pack2(const std::string& a, const std::string& b);
std::pair<std::string, std::string> unpack2(const std::string& s);

LazyAutomaton lazy_wrap(const WeightedAutomaton& a);
LazyAutomaton lazy_negate(const LazyAutomaton& l);
LazyAutomaton lazy_sum(const LazyAutomaton& l1, const LazyAutomaton& l2);
LazyAutomaton lazy_difference(const LazyAutomaton& l1, const LazyAutomaton& l2);
LazyAutomaton lazy_product(const LazyAutomaton& l1, const LazyAutomaton& l2);

Rational lazy_evaluate(const LazyAutomaton& l, const Word& w);

// Breadth-first discovery; discovery order fixes state numbering. Throws
// resource_error once more than `state_budget` states are reached.
WeightedAutomaton materialize(const LazyAutomaton& l, long long state_budget);

}  // namespace walab
