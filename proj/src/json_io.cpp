#include "walab/json_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace walab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("automaton file: " + msg);
}

int lookup(const WeightedAutomaton& a, const std::string& state, const char* where) {
    int i = a.state_index(state);
    if (i < 0) fail(std::string(where) + " references unknown state '" + state + "'");
    return i;
}

Rational weight_from(const json& j, const char* where) {
    if (!j.is_string()) fail(std::string(where) + ": weight must be a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(std::string(where) + ": " + e.what());
    }
}

}  // namespace

WeightedAutomaton automaton_from_json(const json& j) {
    if (!j.is_object()) fail("top level must be an object");
    WeightedAutomaton a;
    if (!j.contains("states") || !j["states"].is_array()) fail("missing \"states\" array");
    for (const auto& s : j["states"]) {
        if (!s.is_string()) fail("state names must be strings");
        a.states.push_back(s.get<std::string>());
    }
    if (!j.contains("alphabet") || !j["alphabet"].is_array()) fail("missing \"alphabet\" array");
    for (const auto& s : j["alphabet"]) {
        if (!s.is_string() || s.get<std::string>().size() != 1)
            fail("alphabet symbols must be single-character strings");
        a.alphabet.push_back(s.get<std::string>());
    }
    const int n = a.size();
    a.initial = RatVector(n);
    a.final = RatVector(n);
    for (const auto& m : a.alphabet) {
        (void)m;
        a.trans.emplace_back(n, n);
    }

    auto read_vec = [&](const char* field, RatVector& out) {
        if (!j.contains(field)) return;
        if (!j[field].is_object()) fail(std::string("\"") + field + "\" must be an object");
        for (const auto& [state, w] : j[field].items()) {
            Rational v = weight_from(w, field);
            if (v != 0) out.entries[lookup(a, state, field)] = v;
        }
    };
    read_vec("initial", a.initial);
    read_vec("final", a.final);

    if (j.contains("transitions")) {
        if (!j["transitions"].is_array()) fail("\"transitions\" must be an array");
        std::set<std::tuple<int, int, int>> seen;
        for (const auto& t : j["transitions"]) {
            if (!t.is_object() || !t.contains("from") || !t.contains("label") ||
                !t.contains("to") || !t.contains("weight"))
                fail("each transition needs from/label/to/weight");
            int from = lookup(a, t["from"].get<std::string>(), "transition");
            int to = lookup(a, t["to"].get<std::string>(), "transition");
            int sym = a.symbol_index(t["label"].get<std::string>());
            if (sym < 0) fail("transition label '" + t["label"].get<std::string>() +
                              "' not in alphabet");
            if (!seen.insert({sym, from, to}).second)
                fail("duplicate transition " + t["from"].get<std::string>() + " -" +
                     t["label"].get<std::string>() + "-> " + t["to"].get<std::string>());
            Rational w = weight_from(t["weight"], "transition");
            if (w != 0) a.trans[sym].entries[{from, to}] = w;
        }
    }
    a.validate();
    return a;
}

nlohmann::ordered_json automaton_to_json(const WeightedAutomaton& a) {
    nlohmann::ordered_json j;
    j["states"] = a.states;
    j["alphabet"] = a.alphabet;
    nlohmann::ordered_json init = nlohmann::ordered_json::object();
    for (const auto& [i, v] : a.initial.entries) init[a.states[i]] = rational_to_string(v);
    j["initial"] = init;
    nlohmann::ordered_json fin = nlohmann::ordered_json::object();
    for (const auto& [i, v] : a.final.entries) fin[a.states[i]] = rational_to_string(v);
    j["final"] = fin;
    nlohmann::ordered_json ts = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
        for (const auto& [ij, v] : a.trans[s].entries) {
            ts.push_back({{"from", a.states[ij.first]},
                          {"label", a.alphabet[s]},
                          {"to", a.states[ij.second]},
                          {"weight", rational_to_string(v)}});
        }
    }
    j["transitions"] = ts;
    return j;
}

WeightedAutomaton load_automaton(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open automaton file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("automaton file " + path + ": " + e.what());
    }
    return automaton_from_json(j);
}

void save_automaton(const WeightedAutomaton& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write automaton file: " + path);
    out << automaton_to_json(a).dump(2) << "\n";
}

}  // namespace walab
