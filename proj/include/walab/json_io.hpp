#pragma once

#include "walab/automaton.hpp"

#include <json.hpp>

#include <string>

namespace walab {

// File format: {"states": [names], "alphabet": [single-char symbols],
// "initial"/"final": {state: "p" or "p/q"}, "transitions":
// [{"from", "label", "to", "weight"}]}. Omitted entries are zero; weights are
// exact rational strings, decimal notation is rejected.
WeightedAutomaton automaton_from_json(const nlohmann::json& j);
nlohmann::ordered_json automaton_to_json(const WeightedAutomaton& a);

WeightedAutomaton load_automaton(const std::string& path);
void save_automaton(const WeightedAutomaton& a, const std::string& path);

}  // namespace walab
