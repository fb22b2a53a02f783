#include "walab/determinisability.hpp"

#include "walab/errors.hpp"
#include "walab/linalg.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace walab {

namespace {

struct Transition {
    int from, to;
    Rational weight;
};

// One auxiliary-automaton letter: a pair of same-symbol transitions applied
// in lockstep to two runs.
struct PairedLetter {
    int sym;
    Transition t1, t2;
};

std::vector<std::vector<Transition>> transitions_by_symbol(const WeightedAutomaton& a) {
    std::vector<std::vector<Transition>> out(a.alphabet.size());
    for (std::size_t s = 0; s < a.alphabet.size(); ++s)
        for (const auto& [pq, w] : a.trans[s].entries)
            out[s].push_back({pq.first, pq.second, w});
    return out;
}

}  // namespace

TwinVerdict twin_property(const WeightedAutomaton& a, long long state_budget) {
    WeightedAutomaton t = trim(a);
    AmbiguityClass cls = classify_ambiguity(t);
    if (cls != AmbiguityClass::Deterministic && cls != AmbiguityClass::Unambiguous)
        throw std::invalid_argument("twin_property requires an unambiguous automaton");

    TwinVerdict verdict;
    if (t.size() == 0) {
        verdict.holds = true;
        return verdict;
    }

    int m = t.size();
    auto by_sym = transitions_by_symbol(t);
    std::vector<PairedLetter> letters;
    for (std::size_t s = 0; s < by_sym.size(); ++s)
        for (const auto& t1 : by_sym[s])
            for (const auto& t2 : by_sym[s]) letters.push_back({static_cast<int>(s), t1, t2});

    // Phase 1 tracks a pair of runs; the separator freezes the pair as the
    // return target; phase 2 weighs one run's loop (run 1 in A1, run 2 in A2)
    // and accepts only when the pair returns to the frozen target.
    int n1 = m * m;
    int n = n1 + m * m * m * m;
    auto id1 = [m](int p, int q) { return p * m + q; };
    auto id2 = [m, n1](int p, int q, int tp, int tq) {
        return n1 + ((p * m + q) * m + tp) * m + tq;
    };

    WeightedAutomaton a1;
    a1.states.reserve(n);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            std::ostringstream os;
            os << "p:" << p << ',' << q;
            a1.states.push_back(os.str());
        }
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int tp = 0; tp < m; ++tp)
                for (int tq = 0; tq < m; ++tq) {
                    std::ostringstream os;
                    os << "t:" << p << ',' << q << ',' << tp << ',' << tq;
                    a1.states.push_back(os.str());
                }

    for (std::size_t li = 0; li < letters.size(); ++li) {
        std::ostringstream os;
        const auto& g = letters[li];
        os << t.alphabet[g.sym] << '|' << g.t1.from << '>' << g.t1.to << '|' << g.t2.from << '>'
           << g.t2.to;
        a1.alphabet.push_back(os.str());
    }
    a1.alphabet.push_back("$");

    a1.initial = RatVector(n);
    a1.final = RatVector(n);
    std::vector<int> init_support;
    for (const auto& [i, w] : t.initial.entries) init_support.push_back(i);
    for (int i1 : init_support)
        for (int i2 : init_support) a1.initial.set(id1(i1, i2), Rational(1));
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) a1.final.set(id2(p, q, p, q), Rational(1));

    WeightedAutomaton a2 = a1;  // differs only in phase-2 weights

    for (std::size_t li = 0; li < letters.size(); ++li) {
        const auto& g = letters[li];
        RatMatrix m1(n, n), m2(n, n);
        m1.set(id1(g.t1.from, g.t2.from), id1(g.t1.to, g.t2.to), Rational(1));
        m2.set(id1(g.t1.from, g.t2.from), id1(g.t1.to, g.t2.to), Rational(1));
        Rational w1 = rat_abs(g.t1.weight);
        Rational w2 = rat_abs(g.t2.weight);
        for (int tp = 0; tp < m; ++tp)
            for (int tq = 0; tq < m; ++tq) {
                m1.set(id2(g.t1.from, g.t2.from, tp, tq), id2(g.t1.to, g.t2.to, tp, tq), w1);
                m2.set(id2(g.t1.from, g.t2.from, tp, tq), id2(g.t1.to, g.t2.to, tp, tq), w2);
            }
        a1.trans.push_back(std::move(m1));
        a2.trans.push_back(std::move(m2));
    }
    RatMatrix freeze(n, n);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) freeze.set(id1(p, q), id2(p, q, p, q), Rational(1));
    a1.trans.push_back(freeze);
    a2.trans.push_back(std::move(freeze));

    ZeronessVerdict z = equivalent(a1, a2, state_budget);
    verdict.holds = z.is_zero;
    verdict.states_explored = z.states_explored;
    if (!z.is_zero) {
        int dollar = static_cast<int>(letters.size());
        const Word& word = z.witness->first;
        auto sep = std::find(word.begin(), word.end(), dollar);
        if (sep != word.end() && sep + 1 != word.end()) {
            TwinVerdict::Counterexample ce;
            for (auto it = word.begin(); it != sep; ++it) ce.u.push_back(letters[*it].sym);
            for (auto it = sep + 1; it != word.end(); ++it) ce.v.push_back(letters[*it].sym);
            const auto& first = letters[*(sep + 1)];
            int p = first.t1.from, q = first.t2.from;
            ce.p = t.states[p];
            ce.q = t.states[q];
            RatMatrix mv = word_matrix(t, ce.v);
            ce.weight_p = rat_abs(mv.get(p, p));
            ce.weight_q = rat_abs(mv.get(q, q));
            verdict.counterexample = std::move(ce);
        }
    }
    return verdict;
}

bool decide_determinisable_unambiguous(const WeightedAutomaton& a, long long state_budget) {
    return twin_property(a, state_budget).holds;
}

namespace {

bool exact_feasible(const WeightedAutomaton& t) {
    return t.size() <= 2 || (t.alphabet.size() <= 1 && t.size() <= 3);
}

DecisionVerdict decide_impl(const WeightedAutomaton& a, const DecideOptions& opt, bool blind) {
    if (opt.method != "exact" && opt.method != "falsify" && opt.method != "auto")
        throw std::invalid_argument("unknown method '" + opt.method + "'");
    WeightedAutomaton t = trim(a);
    DecisionVerdict v;
    v.ambiguity = classify_ambiguity(t);
    switch (v.ambiguity) {
        case AmbiguityClass::Deterministic:
            v.value = true;
            v.route = "deterministic";
            v.method = "classification";
            return v;
        case AmbiguityClass::Unambiguous:
            if (!blind) {
                v.value = true;
                v.route = "unambiguous";
                v.method = "classification";
                return v;
            }
            v.twin = twin_property(t, opt.state_budget);
            v.value = v.twin->holds;
            v.route = "unambiguous-twin";
            v.method = "twin-equivalence";
            return v;
        case AmbiguityClass::FinitelyAmbiguous:
        case AmbiguityClass::PolynomiallyAmbiguous:
            break;
        case AmbiguityClass::ExponentiallyAmbiguous:
            throw std::invalid_argument(
                "exponentially ambiguous automaton: outside the supported fragment");
    }

    v.route = "pumpability";
    if (opt.method == "exact" || (opt.method == "auto" && exact_feasible(t))) {
        try {
            PumpVerdict pv = blind ? is_blindly_pumpable(t, opt.state_budget)
                                   : is_weakly_pumpable(t, opt.state_budget);
            v.value = pv.pumpable;
            v.method = pv.method;
            v.pump = std::move(pv);
            return v;
        } catch (const resource_error&) {
            if (opt.method == "exact") throw;
        }
    }
    PumpVerdict pv = falsify_pumpability(t, opt.max_u, opt.max_v, opt.max_w, blind, opt.max_power);
    v.value = pv.pumpable;
    v.method = pv.method;
    v.pump = std::move(pv);
    return v;
}

}  // namespace

DecisionVerdict decide_unambiguisable(const WeightedAutomaton& a, const DecideOptions& opt) {
    return decide_impl(a, opt, false);
}

DecisionVerdict decide_determinisable(const WeightedAutomaton& a, const DecideOptions& opt) {
    return decide_impl(a, opt, true);
}

namespace {

const std::vector<int>& small_primes() {
    static const std::vector<int> primes = [] {
        const int limit = 1'000'000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<int> ps;
        for (int i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            ps.push_back(i);
            for (long long j = static_cast<long long>(i) * i; j <= limit; j += i)
                composite[static_cast<std::size_t>(j)] = true;
        }
        return ps;
    }();
    return primes;
}

bool probable_prime(const Int& n) { return boost::multiprecision::miller_rabin_test(n, 25); }

// Floyd rho with f(x) = x^2 + c. Returns a nontrivial factor or 0.
Int pollard_rho(const Int& n, int c, long long max_iter) {
    Int x(2), y(2);
    auto f = [&](const Int& v) { return (v * v + c) % n; };
    for (long long it = 0; it < max_iter; ++it) {
        x = f(x);
        y = f(f(y));
        if (x == y) return 0;
        Int d = gcd(int_abs(x - y), n);
        if (d != 1) return d == n ? Int(0) : d;
    }
    return 0;
}

// Splits n >= 2 into prime factors where possible; what resists factoring
// lands in opaque.
void factor_integer(Int n, std::set<Int>& primes, std::set<Int>& opaque) {
    for (int p : small_primes()) {
        if (Int(p) * p > n) break;
        while (n % p == 0) {
            primes.insert(Int(p));
            n /= p;
        }
    }
    if (n == 1) return;
    std::vector<Int> stack{n};
    while (!stack.empty()) {
        Int cur = stack.back();
        stack.pop_back();
        if (cur <= Int(1'000'000) * 1'000'000 || probable_prime(cur)) {
            // No factor below 1e6 survives the trial division above, so a
            // residue below 1e12 is prime outright.
            primes.insert(cur);
            continue;
        }
        Int factor(0);
        for (int c : {1, 3, 5, 7, 11}) {
            factor = pollard_rho(cur, c, 1 << 17);
            if (factor != 0) break;
        }
        if (factor == 0) {
            opaque.insert(cur);
        } else {
            stack.push_back(factor);
            stack.push_back(cur / factor);
        }
    }
}

}  // namespace

PrimeProbe prime_divisor_probe(const WeightedAutomaton& a, int max_len) {
    if (max_len < 0) throw std::invalid_argument("prime_divisor_probe: max_len must be >= 0");
    auto [ai, x] = scale_to_integers(a);
    PrimeProbe out;
    out.scale = x;

    std::set<Int> seen_values;
    std::set<Int> all_primes, all_opaque;
    std::map<Int, int> opaque_first;
    int k = static_cast<int>(ai.alphabet.size());

    for (int len = 0; len <= max_len; ++len) {
        if (len > 0 && k == 0) break;
        Word w(len, 0);
        while (true) {
            Rational val = evaluate(ai, w);
            Int n = int_abs(num(val));
            if (n >= 2 && seen_values.insert(n).second) {
                std::set<Int> primes, opaque;
                factor_integer(n, primes, opaque);
                for (const Int& p : primes)
                    if (all_primes.insert(p).second) out.first_seen[p] = len;
                for (const Int& o : opaque)
                    if (all_opaque.insert(o).second) opaque_first[o] = len;
            }
            int i = len - 1;
            while (i >= 0 && w[i] == k - 1) w[i--] = 0;
            if (i < 0) break;
            ++w[i];
        }
    }

    out.primes.assign(all_primes.begin(), all_primes.end());
    out.opaque.assign(all_opaque.begin(), all_opaque.end());
    for (const auto& [p, len] : out.first_seen)
        if (len == max_len) out.growth = true;
    for (const auto& [o, len] : opaque_first)
        if (len == max_len) out.growth = true;
    return out;
}

namespace {

std::vector<Rational> distinct_sorted_diagonal(const RatMatrix& m) {
    std::vector<Rational> ds;
    for (int i = 0; i < m.rows; ++i) {
        Rational d = m.get(i, i);
        if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Candidate cuts of u in search order: start position descending, width
// ascending, only idempotent-structure factors.
template <typename Fn>
std::optional<CutResult> for_each_cut(const WeightedAutomaton& a, const Word& u, int window,
                                      Fn try_cut) {
    if (u.empty()) throw std::invalid_argument("cut_search: u must be nonempty");
    if (window < 1) throw std::invalid_argument("cut_search: window must be at least 1");
    int len = static_cast<int>(u.size());
    for (int pos = len - 1; pos >= 0; --pos) {
        int max_width = std::min(window, len - pos);
        for (int width = 1; width <= max_width; ++width) {
            Word u2(u.begin() + pos, u.begin() + pos + width);
            if (!is_idempotent_structure(structure_of(a, u2))) continue;
            Word u1(u.begin(), u.begin() + pos);
            Word u3(u.begin() + pos + width, u.end());
            auto res = try_cut(u1, u2, u3, distinct_sorted_diagonal(word_matrix(a, u2)));
            if (res) return res;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<CutResult> cut_search(const WeightedAutomaton& a, const Word& u,
                                    const std::vector<Word>& suffixes, int window, bool blind) {
    auto concat = [](const Word& x, const Word& y) {
        Word out = x;
        out.insert(out.end(), y.begin(), y.end());
        return out;
    };
    return for_each_cut(
        a, u, window,
        [&](const Word& u1, const Word& u2, const Word& u3,
            const std::vector<Rational>& ds) -> std::optional<CutResult> {
            if (ds.empty()) return std::nullopt;
            Word u13 = concat(u1, u3);
            std::vector<Rational> lhs, rhs;
            for (const Word& v : suffixes) {
                lhs.push_back(evaluate(a, concat(u, v)));
                rhs.push_back(evaluate(a, concat(u13, v)));
            }
            if (blind) {
                for (const Rational& d : ds) {
                    bool ok = true;
                    for (std::size_t i = 0; i < suffixes.size() && ok; ++i)
                        if (lhs[i] != d * rhs[i]) ok = false;
                    if (ok) return CutResult{u1, u2, u3, d, {}};
                }
                return std::nullopt;
            }
            std::vector<Rational> per_suffix;
            for (std::size_t i = 0; i < suffixes.size(); ++i) {
                bool found = false;
                for (const Rational& d : ds) {
                    if (lhs[i] == d * rhs[i]) {
                        per_suffix.push_back(d);
                        found = true;
                        break;
                    }
                }
                if (!found) return std::nullopt;
            }
            Rational first = per_suffix.empty() ? ds.front() : per_suffix.front();
            return CutResult{u1, u2, u3, first, std::move(per_suffix)};
        });
}

std::optional<CutResult> cut_search_exact(const WeightedAutomaton& a, const Word& u, int window) {
    return for_each_cut(
        a, u, window,
        [&](const Word& u1, const Word& u2, const Word& u3,
            const std::vector<Rational>& ds) -> std::optional<CutResult> {
            RatVector alpha = forward_vector(a, u);
            Word u13 = u1;
            u13.insert(u13.end(), u3.begin(), u3.end());
            RatVector beta = forward_vector(a, u13);
            for (const Rational& d : ds) {
                // A(u v) = d A(u1 u3 v) for all v iff this automaton is zero.
                RatVector diff(a.size());
                for (int i = 0; i < a.size(); ++i)
                    diff.set(i, alpha.get(i) - d * beta.get(i));
                WeightedAutomaton probe = a;
                probe.initial = diff;
                if (zeroness(lazy_wrap(probe)).is_zero) return CutResult{u1, u2, u3, d, {}};
            }
            return std::nullopt;
        });
}

Rational depump_evaluate(const WeightedAutomaton& a, const Word& w, int window) {
    if (window < 1) throw std::invalid_argument("depump_evaluate: window must be at least 1");
    Word buffer;
    Rational factor(1);
    for (int sym : w) {
        buffer.push_back(sym);
        while (static_cast<int>(buffer.size()) >= window) {
            auto cut = cut_search_exact(a, buffer, window);
            if (!cut)
                throw depump_error(
                    "no valid cut: window too small or automaton not blindly pumpable");
            factor *= cut->d;
            Word shorter = cut->u1;
            shorter.insert(shorter.end(), cut->u3.begin(), cut->u3.end());
            buffer = std::move(shorter);
        }
    }
    return factor * evaluate(a, buffer);
}

PumpProfile det_pump_constants(const WeightedAutomaton& a, const Word& u, const Word& v) {
    if (!is_syntactically_deterministic(a))
        throw std::invalid_argument(
            "det_pump_constants requires a syntactically deterministic automaton");
    if (v.empty()) throw std::invalid_argument("det_pump_constants: v must be nonempty");

    const PumpProfile dead{0, 1, Rational(0)};
    if (a.initial.entries.size() != 1) return dead;
    int cur = a.initial.entries.begin()->first;

    auto step = [&](int sym, Rational& acc) {
        const auto& entries = a.trans[sym].entries;
        auto it = entries.lower_bound({cur, 0});
        if (it == entries.end() || it->first.first != cur) return false;
        cur = it->first.second;
        acc *= it->second;
        return true;
    };

    Rational ignore(1);
    for (int sym : u)
        if (!step(sym, ignore)) return dead;

    std::map<int, long long> boundary_of;  // state -> block index at which first seen
    std::vector<Rational> block_weight;
    long long block = 0;
    while (true) {
        auto [it, inserted] = boundary_of.emplace(cur, block);
        if (!inserted) {
            long long first = it->second;
            Rational d(1);
            for (long long i = first; i < block; ++i) d *= block_weight[i];
            return {first, block - first, d};
        }
        Rational w(1);
        for (int sym : v)
            if (!step(sym, w)) return {block, 1, Rational(0)};
        block_weight.push_back(w);
        ++block;
    }
}

}  // namespace walab
