#include "walab/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace walab {

namespace {

std::vector<std::vector<int>> structure_succ(const WeightedAutomaton& a) {
    std::vector<std::vector<int>> succ(a.size());
    for (const auto& m : a.trans)
        for (const auto& [ij, v] : m.entries) {
            (void)v;
            succ[ij.first].push_back(ij.second);
        }
    return succ;
}

std::vector<bool> reach_from(int n, const std::vector<std::vector<int>>& succ,
                             const std::vector<int>& seeds) {
    std::vector<bool> seen(n, false);
    std::deque<int> q;
    for (int s : seeds) {
        if (!seen[s]) {
            seen[s] = true;
            q.push_back(s);
        }
    }
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : succ[u])
            if (!seen[v]) {
                seen[v] = true;
                q.push_back(v);
            }
    }
    return seen;
}

Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

}  // namespace

int WeightedAutomaton::symbol_index(const std::string& sym) const {
    auto it = std::find(alphabet.begin(), alphabet.end(), sym);
    return it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin());
}

int WeightedAutomaton::state_index(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

void WeightedAutomaton::validate() const {
    const int n = size();
    if (trans.size() != alphabet.size())
        throw std::invalid_argument("automaton: one transition matrix per symbol required");
    for (const auto& m : trans)
        if (m.rows != n || m.cols != n)
            throw std::invalid_argument("automaton: transition matrix has wrong dimensions");
    if (initial.dim != n || final.dim != n)
        throw std::invalid_argument("automaton: initial/final vector has wrong dimension");
    std::set<std::string> seen(states.begin(), states.end());
    if (static_cast<int>(seen.size()) != n)
        throw std::invalid_argument("automaton: duplicate state names");
    std::set<std::string> syms(alphabet.begin(), alphabet.end());
    if (syms.size() != alphabet.size())
        throw std::invalid_argument("automaton: duplicate alphabet symbols");
}

AutomatonSize automaton_size(const WeightedAutomaton& a) {
    AutomatonSize s;
    s.num_states = a.size();
    s.norm = a.size() > 0 ? 1 : 0;
    auto bump = [&](const Rational& q) {
        s.norm = std::max(s.norm, int_abs(num(q)));
        s.norm = std::max(s.norm, den(q));
    };
    for (const auto& m : a.trans)
        for (const auto& [ij, v] : m.entries) {
            (void)ij;
            bump(v);
        }
    for (const auto& [i, v] : a.initial.entries) {
        (void)i;
        bump(v);
    }
    for (const auto& [i, v] : a.final.entries) {
        (void)i;
        bump(v);
    }
    return s;
}

Word parse_word(const std::vector<std::string>& alphabet, const std::string& text) {
    Word w;
    for (char c : text) {
        std::string sym(1, c);
        auto it = std::find(alphabet.begin(), alphabet.end(), sym);
        if (it == alphabet.end())
            throw std::invalid_argument("unknown symbol '" + sym + "' in word");
        w.push_back(static_cast<int>(it - alphabet.begin()));
    }
    return w;
}

std::string word_to_string(const std::vector<std::string>& alphabet, const Word& w) {
    std::string out;
    for (int s : w) out += alphabet.at(s);
    return out;
}

RatMatrix word_matrix(const WeightedAutomaton& a, const Word& w) {
    RatMatrix m = RatMatrix::identity(a.size());
    for (int s : w) m = mat_mul(m, a.trans.at(s));
    return m;
}

RatVector forward_vector(const WeightedAutomaton& a, const Word& w) {
    RatVector v = a.initial;
    for (int s : w) v = vec_mat_mul(v, a.trans.at(s));
    return v;
}

RatVector backward_vector(const WeightedAutomaton& a, const Word& w) {
    RatVector v = a.final;
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = mat_vec_mul(a.trans.at(*it), v);
    return v;
}

Rational evaluate(const WeightedAutomaton& a, const Word& w) {
    return vec_inner(forward_vector(a, w), a.final);
}

Int count_runs(const WeightedAutomaton& a, const Word& w) {
    const int n = a.size();
    std::vector<Int> v(n, Int(0));
    for (const auto& [i, x] : a.initial.entries) {
        (void)x;
        v[i] = 1;
    }
    for (int s : w) {
        std::vector<Int> next(n, Int(0));
        for (const auto& [ij, x] : a.trans.at(s).entries) {
            (void)x;
            next[ij.second] += v[ij.first];
        }
        v = std::move(next);
    }
    Int total(0);
    for (const auto& [i, x] : a.final.entries) {
        (void)x;
        total += v[i];
    }
    return total;
}

WeightedAutomaton trim(const WeightedAutomaton& a) {
    const int n = a.size();
    auto succ = structure_succ(a);
    std::vector<std::vector<int>> pred(n);
    for (int i = 0; i < n; ++i)
        for (int j : succ[i]) pred[j].push_back(i);
    std::vector<int> iseed, fseed;
    for (const auto& [i, v] : a.initial.entries) {
        (void)v;
        iseed.push_back(i);
    }
    for (const auto& [i, v] : a.final.entries) {
        (void)v;
        fseed.push_back(i);
    }
    auto fwd = reach_from(n, succ, iseed);
    auto bwd = reach_from(n, pred, fseed);

    std::vector<int> keep;
    std::vector<int> newidx(n, -1);
    for (int i = 0; i < n; ++i)
        if (fwd[i] && bwd[i]) {
            newidx[i] = static_cast<int>(keep.size());
            keep.push_back(i);
        }

    WeightedAutomaton out;
    out.alphabet = a.alphabet;
    for (int i : keep) out.states.push_back(a.states[i]);
    const int k = static_cast<int>(keep.size());
    out.initial = RatVector(k);
    out.final = RatVector(k);
    for (const auto& [i, v] : a.initial.entries)
        if (newidx[i] >= 0) out.initial.entries[newidx[i]] = v;
    for (const auto& [i, v] : a.final.entries)
        if (newidx[i] >= 0) out.final.entries[newidx[i]] = v;
    for (const auto& m : a.trans) {
        RatMatrix t(k, k);
        for (const auto& [ij, v] : m.entries)
            if (newidx[ij.first] >= 0 && newidx[ij.second] >= 0)
                t.entries[{newidx[ij.first], newidx[ij.second]}] = v;
        out.trans.push_back(std::move(t));
    }
    return out;
}

WeightedAutomaton negate(const WeightedAutomaton& a) {
    WeightedAutomaton out = a;
    out.initial = vec_scale(Rational(-1), a.initial);
    return out;
}

WeightedAutomaton sum(const WeightedAutomaton& a1, const WeightedAutomaton& a2) {
    if (a1.alphabet != a2.alphabet) throw std::invalid_argument("sum: alphabet mismatch");
    WeightedAutomaton out;
    out.alphabet = a1.alphabet;
    std::set<std::string> used(a1.states.begin(), a1.states.end());
    out.states = a1.states;
    for (const auto& s : a2.states) {
        std::string name = s;
        while (used.count(name)) name += '\'';
        used.insert(name);
        out.states.push_back(name);
    }
    const int n1 = a1.size(), n = n1 + a2.size();
    out.initial = RatVector(n);
    out.final = RatVector(n);
    for (const auto& [i, v] : a1.initial.entries) out.initial.entries[i] = v;
    for (const auto& [i, v] : a2.initial.entries) out.initial.entries[n1 + i] = v;
    for (const auto& [i, v] : a1.final.entries) out.final.entries[i] = v;
    for (const auto& [i, v] : a2.final.entries) out.final.entries[n1 + i] = v;
    for (std::size_t s = 0; s < out.alphabet.size(); ++s) {
        RatMatrix m(n, n);
        for (const auto& [ij, v] : a1.trans[s].entries) m.entries[ij] = v;
        for (const auto& [ij, v] : a2.trans[s].entries)
            m.entries[{n1 + ij.first, n1 + ij.second}] = v;
        out.trans.push_back(std::move(m));
    }
    return out;
}

WeightedAutomaton difference(const WeightedAutomaton& a1, const WeightedAutomaton& a2) {
    return sum(a1, negate(a2));
}

WeightedAutomaton hadamard(const WeightedAutomaton& a1, const WeightedAutomaton& a2) {
    if (a1.alphabet != a2.alphabet) throw std::invalid_argument("hadamard: alphabet mismatch");
    WeightedAutomaton out;
    out.alphabet = a1.alphabet;
    const int n1 = a1.size(), n2 = a2.size(), n = n1 * n2;
    for (const auto& p : a1.states)
        for (const auto& q : a2.states) out.states.push_back("(" + p + "," + q + ")");
    out.initial = RatVector(n);
    out.final = RatVector(n);
    for (const auto& [i, v] : a1.initial.entries)
        for (const auto& [j, w] : a2.initial.entries) out.initial.entries[i * n2 + j] = v * w;
    for (const auto& [i, v] : a1.final.entries)
        for (const auto& [j, w] : a2.final.entries) out.final.entries[i * n2 + j] = v * w;
    for (std::size_t s = 0; s < out.alphabet.size(); ++s) {
        RatMatrix m(n, n);
        for (const auto& [ij, v] : a1.trans[s].entries)
            for (const auto& [kl, w] : a2.trans[s].entries)
                m.entries[{ij.first * n2 + kl.first, ij.second * n2 + kl.second}] = v * w;
        out.trans.push_back(std::move(m));
    }
    return out;
}

WeightedAutomaton make_nonnegative(const WeightedAutomaton& a) {
    WeightedAutomaton out;
    out.alphabet = a.alphabet;
    const int n = a.size();
    for (const auto& q : a.states) {
        out.states.push_back(q + "+");
        out.states.push_back(q + "-");
    }
    // Index layout: q+ at 2q, q- at 2q+1. A negative weight crosses between
    // the signed copies; the sign of a run is recovered by the final vector.
    out.initial = RatVector(2 * n);
    out.final = RatVector(2 * n);
    for (const auto& [i, v] : a.initial.entries) {
        if (v > 0)
            out.initial.entries[2 * i] = v;
        else
            out.initial.entries[2 * i + 1] = -v;
    }
    for (const auto& [i, v] : a.final.entries) {
        out.final.entries[2 * i] = v;
        out.final.entries[2 * i + 1] = -v;
    }
    for (const auto& m : a.trans) {
        RatMatrix t(2 * n, 2 * n);
        for (const auto& [ij, v] : m.entries) {
            int q = ij.first, p = ij.second;
            if (v > 0) {
                t.entries[{2 * q, 2 * p}] = v;
                t.entries[{2 * q + 1, 2 * p + 1}] = v;
            } else {
                t.entries[{2 * q, 2 * p + 1}] = -v;
                t.entries[{2 * q + 1, 2 * p}] = -v;
            }
        }
        out.trans.push_back(std::move(t));
    }
    return out;
}

std::pair<WeightedAutomaton, Int> scale_to_integers(const WeightedAutomaton& a) {
    Int x(1);
    auto fold = [&](const Rational& q) { x = lcm_int(x, den(q)); };
    for (const auto& m : a.trans)
        for (const auto& [ij, v] : m.entries) {
            (void)ij;
            fold(v);
        }
    for (const auto& [i, v] : a.initial.entries) {
        (void)i;
        fold(v);
    }
    for (const auto& [i, v] : a.final.entries) {
        (void)i;
        fold(v);
    }
    WeightedAutomaton out = a;
    Rational scale{x};
    out.initial = vec_scale(scale, a.initial);
    out.final = vec_scale(scale, a.final);
    for (auto& m : out.trans) m = mat_scale(scale, m);
    return {out, x};
}

}  // namespace walab
