// Acceptance gate: one self-contained check per shipped guarantee, each with
// a wall-clock limit. Run it directly or through ctest; the exit code is the
// number of failed checks.

#include "walab/analysis.hpp"
#include "walab/automaton.hpp"
#include "walab/determinisability.hpp"
#include "walab/equivalence.hpp"
#include "walab/exp_poly.hpp"
#include "walab/pumpability.hpp"

#include "helpers.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace walab;
using namespace walab::test;

namespace {

struct Ctx {
    bool ok = true;
    std::string note;

    void check(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            note = msg;
        }
    }
};

Word concat3(const Word& u, const Word& v, int reps, const Word& w) {
    Word out = u;
    for (int i = 0; i < reps; ++i) out.insert(out.end(), v.begin(), v.end());
    out.insert(out.end(), w.begin(), w.end());
    return out;
}

// ---- 1: values of the doubling fixture ------------------------------------

void fixture_values(Ctx& c) {
    WeightedAutomaton right = load_fixture("fig1-right.json");
    Rational expect(1);
    for (int n = 0; n <= 20; ++n) {
        Rational want = n % 2 == 0 ? expect : Rational(1);
        c.check(evaluate(right, Word(n, 0)) == want,
                "value mismatch at length " + std::to_string(n));
        if (n % 2 == 1) expect *= 2;
    }
}

// ---- 2: equivalence and classification of the two encodings ---------------

void fixture_equivalence(Ctx& c) {
    WeightedAutomaton left = load_fixture("fig1-left.json");
    WeightedAutomaton right = load_fixture("fig1-right.json");
    c.check(equivalent(left, right).is_zero, "encodings not equivalent");
    c.check(classify_ambiguity(left) == AmbiguityClass::PolynomiallyAmbiguous,
            "left encoding misclassified");
    c.check(classify_ambiguity(right) == AmbiguityClass::Unambiguous,
            "right encoding misclassified");
}

// ---- 3: determinisability verdicts on the fixtures ------------------------

void fixture_determinisability(Ctx& c) {
    WeightedAutomaton right = load_fixture("fig1-right.json");
    TwinVerdict tv = twin_property(right);
    c.check(!tv.holds, "twin property unexpectedly holds");
    if (tv.counterexample) {
        std::vector<Rational> ws{tv.counterexample->weight_p, tv.counterexample->weight_q};
        std::sort(ws.begin(), ws.end());
        c.check(ws[0] == Rational(1) && ws[1] == Rational(2),
                "twin cycle weights are not 1 and 2");
    } else {
        c.check(false, "twin failure carries no counterexample");
    }

    WeightedAutomaton left = load_fixture("fig1-left.json");
    DecisionVerdict dv = decide_determinisable(left);
    c.check(!dv.value, "left encoding reported determinisable");
    c.check(dv.method == "bounded-falsifier", "unexpected method " + dv.method);
    bool witness_ok = dv.pump && dv.pump->witness && dv.pump->witness->v == Word{0, 0} &&
                      dv.pump->witness->w.empty() && dv.pump->witness->w2 &&
                      *dv.pump->witness->w2 == Word{0};
    c.check(witness_ok, "falsifier witness is not (v=aa, suffixes empty vs a)");
}

// ---- 4: exact sizes and values of the closure operations ------------------

void closure_exactness(Ctx& c) {
    Rng g(1001);
    RandomSpec spec{.max_states = 4, .letters = 2, .density = 0.5, .negative = true,
                    .fractions = true, .io_density = 0.6};
    auto words = all_words(2, 5);
    for (int round = 0; round < 200; ++round) {
        WeightedAutomaton a1 = random_automaton(g, spec);
        WeightedAutomaton a2 = random_automaton(g, spec);
        WeightedAutomaton d = difference(a1, a2);
        WeightedAutomaton h = hadamard(a1, a2);
        c.check(d.size() == a1.size() + a2.size(), "difference size off");
        c.check(h.size() == a1.size() * a2.size(), "product size off");
        for (const Word& w : words) {
            Rational v1 = brute_value(a1, w), v2 = brute_value(a2, w);
            c.check(evaluate(d, w) == v1 - v2, "difference value off");
            c.check(evaluate(h, w) == v1 * v2, "product value off");
        }
        if (!c.ok) return;
    }
}

// ---- 5: sign removal and integer rescaling --------------------------------

void normalization_transforms(Ctx& c) {
    Rng g(1002);
    for (int round = 0; round < 200; ++round) {
        WeightedAutomaton a = random_automaton(g, {.max_states = 4});
        WeightedAutomaton n = make_nonnegative(a);
        auto [s, x] = scale_to_integers(a);
        Rational factor(x);
        for (const Word& w : all_words(2, 6)) {
            c.check(evaluate(n, w) == evaluate(a, w), "doubling changed a value");
            Rational p(1);
            for (std::size_t i = 0; i < w.size() + 2; ++i) p *= factor;
            c.check(evaluate(s, w) == p * evaluate(a, w), "rescaling law broken");
        }
        if (!c.ok) return;
    }
}

// ---- 6: block constructions match their defining formulas -----------------

void iteration_constructions(Ctx& c) {
    Rng g(1003);
    for (int round = 0; round < 100; ++round) {
        WeightedAutomaton nn = random_automaton(g, {.max_states = 3, .negative = false});
        WeightedAutomaton sg = random_automaton(g, {.max_states = 3});
        int m = sg.size();
        int dollar = 2;
        auto words = all_words(2, 3);
        auto pick = [&] { return words[rand_int(g, 0, static_cast<int>(words.size()) - 1)]; };

        WeightedAutomaton t = materialize(build_T(nn), 600000);
        c.check(t.size() <= (1 << (nn.size() * nn.size())) + 3, "T size bound broken");
        c.check(automaton_size(t).norm <= 1, "T norm bound broken");

        std::vector<WeightedAutomaton> bs;
        for (int n = 1; n <= 3; ++n) bs.push_back(materialize(build_B(sg, n), 600000));
        Int b_bound = 1;
        for (int i = 0; i < 6; ++i) b_bound *= m;
        c.check(bs[2].size() <= static_cast<long long>(b_bound + 2 * m), "B size bound broken");
        Int norm = automaton_size(sg).norm;
        if (norm >= 1)
            c.check(automaton_size(bs[2]).norm <= norm * norm * norm, "B norm bound broken");

        std::vector<WeightedAutomaton> cs;
        for (int i = 0; i < m; ++i) {
            cs.push_back(materialize(build_C(sg, i), 600000));
            c.check(cs.back().size() <= m + 2, "C size bound broken");
        }

        for (int k = 0; k < 8; ++k) {
            Word u = pick(), v = pick(), w = pick();
            Word nb = blocks(dollar, {u, v, w});
            c.check(evaluate(t, nb) ==
                        Rational(is_p_triangular(word_matrix(nn, v)).triangular ? 1 : 0),
                    "T disagrees with the triangularity of M(v)");
            for (int n = 1; n <= 3; ++n)
                c.check(evaluate(bs[n - 1], nb) == evaluate(sg, concat3(u, v, n, w)),
                        "B_n disagrees with A(u v^n w)");
            for (int i = 0; i < m; ++i)
                c.check(evaluate(cs[i], nb) == word_matrix(sg, v).get(i, i),
                        "C_i disagrees with M(v)_ii");
        }
        if (!c.ok) return;
    }
}

// ---- 7: exact pumpability deciders ----------------------------------------

void exact_deciders(Ctx& c) {
    WeightedAutomaton one = load_fixture("one2.json");
    PumpVerdict w1 = is_weakly_pumpable(one);
    PumpVerdict b1 = is_blindly_pumpable(one);
    c.check(w1.pumpable && w1.method == "exact-zeroness", "doubling loop not weakly pumpable");
    c.check(b1.pumpable && b1.method == "exact-zeroness", "doubling loop not blindly pumpable");

    WeightedAutomaton pow23 = load_fixture("pow23.json");
    PumpVerdict w2 = is_weakly_pumpable(pow23);
    c.check(!w2.pumpable && w2.method == "exact-zeroness", "two-base sum reported pumpable");
    if (w2.witness) {
        const auto& wit = *w2.witness;
        int m = pow23.size();
        RatMatrix mv = word_matrix(pow23, wit.v);
        bool any = false;
        for (int i = 0; i < m; ++i)
            any = any || evaluate(pow23, concat3(wit.u, wit.v, m + 1, wit.w)) ==
                             mv.get(i, i) * evaluate(pow23, concat3(wit.u, wit.v, m, wit.w));
        c.check(!any, "refutation witness fails to re-validate");
    } else {
        c.check(false, "refutation carries no witness");
    }
}

// ---- 8: exponential-polynomial decomposition ------------------------------

void exp_poly_reproduction(Ctx& c) {
    Rng g(1004);
    for (int round = 0; round < 100; ++round) {
        int n = rand_int(g, 1, 4);
        RatMatrix upper(n, n);
        for (int i = 0; i < n; ++i) {
            upper.set(i, i, Rational(rand_int(g, 0, 5)));
            for (int j = i + 1; j < n; ++j)
                if (rand_bool(g, 0.6)) upper.set(i, j, rand_weight(g));
        }
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), g);
        RatMatrix m(n, n);
        for (const auto& [ij, v] : upper.entries) m.set(perm[ij.first], perm[ij.second], v);
        RatVector x(n), y(n);
        for (int i = 0; i < n; ++i) {
            if (rand_bool(g, 0.7)) x.set(i, rand_weight(g));
            if (rand_bool(g, 0.7)) y.set(i, rand_weight(g));
        }

        auto d = exp_poly_decompose(m, x, y);
        for (unsigned long e = d.threshold; e <= d.threshold + 20; ++e)
            c.check(d.evaluate(e) == vec_inner(vec_mat_mul(x, mat_pow(m, e)), y),
                    "decomposition diverges from matrix powers");
        if (!c.ok) return;
    }
}

// ---- 9: invertible completions --------------------------------------------

void completions(Ctx& c) {
    Rng g(1005);
    int built = 0;
    while (built < 100 && c.ok) {
        int n = rand_int(g, 2, 4);
        int r = rand_int(g, 1, n - 1);
        RatMatrix a(n, n);
        for (int k = 0; k < r; ++k) {
            RatVector u(n), v(n);
            for (int i = 0; i < n; ++i) {
                if (rand_bool(g, 0.7)) u.set(i, rand_weight(g));
                if (rand_bool(g, 0.7)) v.set(i, rand_weight(g));
            }
            for (const auto& [i, ui] : u.entries)
                for (const auto& [j, vj] : v.entries) a.set(i, j, a.get(i, j) + ui * vj);
        }
        RatMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rand_bool(g, 0.6)) b.set(i, j, rand_weight(g));
        if (mat_rank(mat_mul(a, mat_mul(b, a))) != mat_rank(a)) continue;
        ++built;

        RatMatrix cc = invertible_completion(a, b);
        c.check(mat_inverse(cc).has_value(), "completion is singular");
        RatMatrix ba = mat_mul(b, a);
        for (unsigned long e = 0; e <= 10; ++e)
            c.check(mat_mul(a, mat_pow(ba, e)) == mat_mul(a, mat_pow(cc, e)),
                    "completion power identity broken");
    }
    c.check(built == 100 || !c.ok, "instance generation starved");
}

// ---- 10: deterministic and unambiguous automata pass the falsifier --------

WeightedAutomaton random_deterministic(Rng& g) {
    int m = rand_int(g, 1, 3);
    WeightedAutomaton a;
    for (int i = 0; i < m; ++i) a.states.push_back("q" + std::to_string(i));
    a.alphabet = {"a", "b"};
    a.initial = RatVector(m);
    a.final = RatVector(m);
    for (int s = 0; s < 2; ++s) {
        a.trans.emplace_back(m, m);
        for (int i = 0; i < m; ++i)
            if (rand_bool(g, 0.8)) a.trans[s].set(i, rand_int(g, 0, m - 1), rand_weight(g));
    }
    a.initial.set(rand_int(g, 0, m - 1), rand_weight(g));
    for (int i = 0; i < m; ++i)
        if (rand_bool(g, 0.6)) a.final.set(i, rand_weight(g));
    return a;
}

// Two deterministic 2-cycles accepting complementary parities: exactly one
// accepting run per word.
WeightedAutomaton random_parity_unambiguous(Rng& g) {
    WeightedAutomaton a;
    a.states = {"e0", "e1", "o0", "o1"};
    a.alphabet = {"a"};
    a.trans.emplace_back(4, 4);
    a.initial = RatVector(4);
    a.final = RatVector(4);
    a.trans[0].set(0, 1, rand_weight(g));
    a.trans[0].set(1, 0, rand_weight(g));
    a.trans[0].set(2, 3, rand_weight(g));
    a.trans[0].set(3, 2, rand_weight(g));
    a.initial.set(0, rand_weight(g));
    a.initial.set(2, rand_weight(g));
    a.final.set(0, rand_weight(g));  // even lengths accepted here
    a.final.set(3, rand_weight(g));  // odd lengths accepted here
    return a;
}

void pumpability_of_unambiguous(Ctx& c) {
    Rng g(1006);
    for (int round = 0; round < 100 && c.ok; ++round) {
        WeightedAutomaton a = random_deterministic(g);
        PumpVerdict v = falsify_pumpability(a, 2, 2, 2, true);
        c.check(v.pumpable, "deterministic automaton refuted in blind mode");
    }
    for (int round = 0; round < 50 && c.ok; ++round) {
        WeightedAutomaton a = random_parity_unambiguous(g);
        c.check(classify_ambiguity(a) <= AmbiguityClass::Unambiguous,
                "generator produced an ambiguous automaton");
        PumpVerdict v = falsify_pumpability(a, 2, 2, 2, false);
        c.check(v.pumpable, "unambiguous automaton refuted in per-suffix mode");
    }
}

// ---- 11: prime-divisor probe ----------------------------------------------

void prime_probe(Ctx& c) {
    PrimeProbe left = prime_divisor_probe(load_fixture("fig1-left.json"), 12);
    c.check(left.primes == std::vector<Int>{2}, "doubling fixture has extra primes");
    c.check(!left.growth, "doubling fixture flagged as growing");

    PrimeProbe pow = prime_divisor_probe(load_fixture("pow23.json"), 8);
    c.check(pow.growth, "two-base sum not flagged as growing");
}

// ---- 12: idempotent words have triangular matrices ------------------------

void idempotent_triangularity(Ctx& c) {
    Rng g(1007);
    int accepted = 0;
    while (accepted < 100 && c.ok) {
        WeightedAutomaton a = trim(random_automaton(g, {.max_states = 3, .negative = false}));
        if (classify_ambiguity(a) > AmbiguityClass::PolynomiallyAmbiguous) continue;
        ++accepted;
        for (const Word& u : all_words(static_cast<int>(a.alphabet.size()), 4)) {
            if (!is_idempotent_structure(structure_of(a, u))) continue;
            c.check(is_p_triangular(word_matrix(a, u)).triangular,
                    "idempotent word with non-triangular matrix");
        }
    }
}

// ---- 13: streamed depumping ------------------------------------------------

void depumping(Ctx& c) {
    WeightedAutomaton one = load_fixture("one2.json");
    for (int len : {0, 7, 50})
        c.check(depump_evaluate(one, Word(len, 0), 4) == evaluate(one, Word(len, 0)),
                "streamed value differs on the doubling loop");

    Rng g(1008);
    for (int round = 0; round < 20 && c.ok; ++round) {
        int states = rand_int(g, 1, 3);
        Rational d(rand_int(g, 1, 3), rand_bool(g) ? 2 : 1);
        WeightedAutomaton a;
        for (int i = 0; i < states; ++i) a.states.push_back("s" + std::to_string(i));
        a.alphabet = {"a"};
        a.trans.emplace_back(states, states);
        a.initial = RatVector(states);
        a.final = RatVector(states);
        for (int i = 0; i < states; ++i) {
            a.trans[0].set(i, i, d);
            a.initial.set(i, rand_weight(g, 3, false, false));
            if (rand_bool(g, 0.7)) a.final.set(i, rand_weight(g, 3, false, false));
        }
        int len = rand_int(g, 0, 50);
        c.check(depump_evaluate(a, Word(len, 0), 4) == evaluate(a, Word(len, 0)),
                "streamed value differs on a diagonal automaton");
    }
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* desc;
        double limit_ms;
        std::function<void(Ctx&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "doubling fixture evaluates to 2^(n/2) / 1 for n <= 20", 1000, fixture_values},
        {2, "fixture encodings equivalent and correctly classified", 5000, fixture_equivalence},
        {3, "fixture determinisability refuted via twins and blind falsifier", 10000,
         fixture_determinisability},
        {4, "closure operations have exact sizes and values (200 random pairs)", 60000,
         closure_exactness},
        {5, "sign removal and integer rescaling preserve values (200 random)", 60000,
         normalization_transforms},
        {6, "block constructions match their formulas (100 random)", 120000,
         iteration_constructions},
        {7, "exact pumpability deciders settle the curated fixtures", 60000, exact_deciders},
        {8, "power sequences reproduce from decompositions (100 random)", 30000,
         exp_poly_reproduction},
        {9, "invertible completions satisfy the power identity (100 random)", 30000, completions},
        {10, "deterministic and unambiguous automata pass the falsifier", 120000,
         pumpability_of_unambiguous},
        {11, "prime probe separates bounded from growing prime support", 30000, prime_probe},
        {12, "idempotent words have triangular matrices (100 random)", 60000,
         idempotent_triangularity},
        {13, "streamed depumped evaluation is exact up to length 50", 10000, depumping},
    };

    int failures = 0;
    for (const Criterion& cr : criteria) {
        Ctx ctx;
        auto start = std::chrono::steady_clock::now();
        try {
            cr.run(ctx);
        } catch (const std::exception& e) {
            ctx.check(false, std::string("exception: ") + e.what());
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        bool in_time = ms < cr.limit_ms;
        bool pass = ctx.ok && in_time;
        if (!pass) ++failures;
        std::printf("[%s] criterion %2d: %s (%lld ms, limit %.0f ms)%s%s\n",
                    pass ? "PASS" : "FAIL", cr.id, cr.desc, static_cast<long long>(ms),
                    cr.limit_ms, ctx.ok ? "" : ": ", ctx.note.c_str());
    }
    if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures;
}
