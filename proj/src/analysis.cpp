#include "walab/analysis.hpp"

#include "walab/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace walab {

namespace {

// Same-letter product moves for the self product: from (p,q) on any letter to
// (p',q'). Nodes are encoded p*n+q.
std::vector<std::vector<int>> pair_succ(const WeightedAutomaton& a) {
    const int n = a.size();
    std::vector<std::vector<int>> succ(n * n);
    for (const auto& m : a.trans) {
        for (const auto& [ij1, v1] : m.entries) {
            (void)v1;
            for (const auto& [ij2, v2] : m.entries) {
                (void)v2;
                succ[ij1.first * n + ij2.first].push_back(ij1.second * n + ij2.second);
            }
        }
    }
    return succ;
}

std::vector<bool> bfs(const std::vector<std::vector<int>>& succ, const std::vector<int>& seeds) {
    std::vector<bool> seen(succ.size(), false);
    std::deque<int> q;
    for (int s : seeds)
        if (!seen[s]) {
            seen[s] = true;
            q.push_back(s);
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

// Tarjan SCC, iterative; returns component id per node.
std::vector<int> scc_ids(const std::vector<std::vector<int>>& succ) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> comp(n, -1), low(n, 0), disc(n, -1), stk;
    std::vector<bool> on(n, false);
    int time = 0, ncomp = 0;
    struct Frame {
        int v;
        std::size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        while (!call.empty()) {
            auto& [v, child] = call.back();
            if (child == 0) {
                disc[v] = low[v] = time++;
                stk.push_back(v);
                on[v] = true;
            }
            if (child < succ[v].size()) {
                int w = succ[v][child++];
                if (disc[w] < 0)
                    call.push_back({w, 0});
                else if (on[w])
                    low[v] = std::min(low[v], disc[w]);
            } else {
                if (low[v] == disc[v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on[w] = false;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
                int parent_v = v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[parent_v]);
            }
        }
    }
    return comp;
}

bool has_negative_transition(const WeightedAutomaton& a) {
    for (const auto& m : a.trans)
        for (const auto& [ij, v] : m.entries) {
            (void)ij;
            if (v < 0) return true;
        }
    return false;
}

}  // namespace

const char* to_string(AmbiguityClass c) {
    switch (c) {
        case AmbiguityClass::Deterministic: return "Deterministic";
        case AmbiguityClass::Unambiguous: return "Unambiguous";
        case AmbiguityClass::FinitelyAmbiguous: return "FinitelyAmbiguous";
        case AmbiguityClass::PolynomiallyAmbiguous: return "PolynomiallyAmbiguous";
        case AmbiguityClass::ExponentiallyAmbiguous: return "ExponentiallyAmbiguous";
    }
    return "?";
}

BoolMatrix letter_structure(const RatMatrix& m) {
    BoolMatrix b(m.rows);
    for (const auto& [ij, v] : m.entries) {
        (void)v;
        b.ones.insert(ij);
    }
    return b;
}

BoolMatrix structure_of(const WeightedAutomaton& a, const Word& w, bool* negative_warning) {
    if (negative_warning) *negative_warning = has_negative_transition(a);
    BoolMatrix b = BoolMatrix::identity(a.size());
    for (int sym : w) b = bool_mul(b, letter_structure(a.trans.at(sym)));
    return b;
}

bool is_idempotent_structure(const BoolMatrix& b) { return bool_mul(b, b) == b; }

bool is_syntactically_deterministic(const WeightedAutomaton& a) {
    if (a.initial.entries.size() > 1) return false;
    for (const auto& m : a.trans) {
        int last_row = -1;
        for (const auto& [ij, v] : m.entries) {
            (void)v;
            if (ij.first == last_row) return false;  // second entry in this row
            last_row = ij.first;
        }
    }
    return true;
}

AmbiguityClass classify_ambiguity(const WeightedAutomaton& a) {
    WeightedAutomaton t = trim(a);
    const int n = t.size();
    if (n == 0) return AmbiguityClass::Deterministic;

    auto succ2 = pair_succ(t);
    std::vector<int> iseed, fpair;
    for (const auto& [i1, v1] : t.initial.entries) {
        (void)v1;
        for (const auto& [i2, v2] : t.initial.entries) {
            (void)v2;
            iseed.push_back(i1 * n + i2);
        }
    }
    std::vector<std::vector<int>> pred2(n * n);
    for (int u = 0; u < n * n; ++u)
        for (int v : succ2[u]) pred2[v].push_back(u);
    for (const auto& [f1, v1] : t.final.entries) {
        (void)v1;
        for (const auto& [f2, v2] : t.final.entries) {
            (void)v2;
            fpair.push_back(f1 * n + f2);
        }
    }
    auto reach = bfs(succ2, iseed);
    auto coreach = bfs(pred2, fpair);

    bool ambiguous = false;
    for (int p = 0; p < n && !ambiguous; ++p)
        for (int q = 0; q < n; ++q)
            if (p != q && reach[p * n + q] && coreach[p * n + q]) {
                ambiguous = true;
                break;
            }
    if (!ambiguous)
        return is_syntactically_deterministic(t) ? AmbiguityClass::Deterministic
                                                 : AmbiguityClass::Unambiguous;

    // EDA: a self-product component holding a diagonal node and an
    // off-diagonal node yields two distinct cycles at one state on one word.
    auto comp = scc_ids(succ2);
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<char> has_diag(ncomp, 0), has_off(ncomp, 0);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            (p == q ? has_diag : has_off)[comp[p * n + q]] = 1;
    for (int c = 0; c < ncomp; ++c)
        if (has_diag[c] && has_off[c]) return AmbiguityClass::ExponentiallyAmbiguous;

    // IDA: (p,p,q) reaching (p,q,q) for p != q means p and q both cycle on
    // some v that also moves p to q.
    std::vector<std::vector<int>> succ3(static_cast<std::size_t>(n) * n * n);
    for (const auto& m : t.trans) {
        std::vector<std::pair<int, int>> es;
        for (const auto& [ij, v] : m.entries) {
            (void)v;
            es.push_back(ij);
        }
        for (const auto& [a1, b1] : es)
            for (const auto& [a2, b2] : es)
                for (const auto& [a3, b3] : es)
                    succ3[(a1 * n + a2) * n + a3].push_back((b1 * n + b2) * n + b3);
    }
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            auto seen = bfs(succ3, {(p * n + p) * n + q});
            if (seen[(p * n + q) * n + q]) return AmbiguityClass::PolynomiallyAmbiguous;
        }
    }
    return AmbiguityClass::FinitelyAmbiguous;
}

std::optional<std::pair<int, int>> find_idempotent_factor(const WeightedAutomaton& a,
                                                          const std::vector<Word>& factors) {
    const int ell = static_cast<int>(factors.size());
    for (const auto& f : factors)
        if (f.empty()) throw std::invalid_argument("find_idempotent_factor: empty factor");
    std::vector<BoolMatrix> single;
    for (const auto& f : factors) single.push_back(structure_of(a, f));
    for (int width = 0; width < ell; ++width) {
        for (int i = 0; i + width < ell; ++i) {
            BoolMatrix b = single[i];
            for (int j = i + 1; j <= i + width; ++j) b = bool_mul(b, single[j]);
            if (is_idempotent_structure(b)) return std::make_pair(i + 1, i + width + 1);
        }
    }
    return std::nullopt;
}

RamseyBound ramsey_bound(unsigned long m) {
    if (m < 1) throw std::invalid_argument("ramsey_bound: m must be at least 1");
    RamseyBound rb;
    rb.L = (m * m + m + 2) / 2;
    // Bit-size guard: the result has about L * 4m^2 bits.
    double bits = static_cast<double>(rb.L) * (4.0 * m * m + 2.0);
    if (bits > 1e9)
        throw resource_error("ramsey_bound: value exceeds representable size",
                             static_cast<long long>(m));
    Int base = Int(3) * pow(Int(2), static_cast<unsigned>(4 * m * m));
    rb.ell = pow(base, static_cast<unsigned>(rb.L));
    return rb;
}

namespace {

constexpr unsigned long kTowerBitBudget = 1ull << 26;

Int tower(int r, const Int& x) {
    if (r == 0) return x;
    if (x <= 1) return x;  // 0 and 1 are fixed points of x * tower(x^x)
    unsigned long xbits = msb(x) + 1;
    // x^x carries about x * bits(x) bits; refuse anything past the budget.
    if (x > kTowerBitBudget || static_cast<unsigned long>(x) > kTowerBitBudget / xbits)
        throw resource_error("tower_bound: value exceeds the bit budget", r);
    Int xx = pow(x, static_cast<unsigned long>(x));
    return x * tower(r - 1, xx);
}

}  // namespace

TowerBound tower_bound(const WeightedAutomaton& a) {
    if (a.size() < 1) throw std::invalid_argument("tower_bound: automaton has no states");
    TowerBound tb;
    tb.r = 0;
    for (const auto& m : a.trans) tb.r = std::max(tb.r, mat_rank(m));
    RamseyBound rb = ramsey_bound(static_cast<unsigned long>(a.size()));
    Int x0 = Int(2) * rb.ell * static_cast<long>(a.alphabet.size());
    tb.value = tower(tb.r, x0);
    return tb;
}

}  // namespace walab
