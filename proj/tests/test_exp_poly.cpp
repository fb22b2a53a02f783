#include "walab/exp_poly.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <algorithm>
#include <stdexcept>

using namespace walab;
using namespace walab::test;

namespace {

RatVector vec2(const Rational& a, const Rational& b) {
    RatVector v(2);
    v.set(0, a);
    v.set(1, b);
    return v;
}

Rational power_value(const RatMatrix& m, const RatVector& x, const RatVector& y,
                     unsigned long n) {
    return vec_inner(vec_mat_mul(x, mat_pow(m, n)), y);
}

// Upper-triangular matrix with natural diagonal, hidden behind a random
// simultaneous row/column permutation so the triangular order is nontrivial.
RatMatrix random_permuted_triangular(Rng& g, int n, int max_diag) {
    RatMatrix upper(n, n);
    for (int i = 0; i < n; ++i) {
        upper.set(i, i, Rational(rand_int(g, 0, max_diag)));
        for (int j = i + 1; j < n; ++j)
            if (rand_bool(g, 0.6)) upper.set(i, j, rand_weight(g));
    }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), g);
    RatMatrix m(n, n);
    for (const auto& [ij, v] : upper.entries) m.set(perm[ij.first], perm[ij.second], v);
    return m;
}

RatVector random_vector(Rng& g, int n) {
    RatVector v(n);
    for (int i = 0; i < n; ++i)
        if (rand_bool(g, 0.7)) v.set(i, rand_weight(g));
    return v;
}

}  // namespace

TEST_CASE("two distinct bases with constant coefficients") {
    RatMatrix m(2, 2);
    m.set(0, 0, Rational(2));
    m.set(0, 1, Rational(1));
    m.set(1, 1, Rational(3));
    auto d = exp_poly_decompose(m, vec2(Rational(1), Rational(0)), vec2(Rational(0), Rational(1)));

    REQUIRE(d.terms.size() == 2);
    CHECK(d.terms[0].base == 2);
    CHECK(d.terms[1].base == 3);
    // The sequence is 3^n - 2^n, so both polynomials are the constants -1 and 1.
    REQUIRE(!d.terms[0].coeffs.empty());
    CHECK(d.terms[0].coeffs[0] == Rational(-1));
    for (std::size_t e = 1; e < d.terms[0].coeffs.size(); ++e)
        CHECK(d.terms[0].coeffs[e] == 0);
    CHECK(d.terms[1].coeffs[0] == Rational(1));
    for (std::size_t e = 1; e < d.terms[1].coeffs.size(); ++e)
        CHECK(d.terms[1].coeffs[e] == 0);
}

TEST_CASE("single diagonal entry gives a single power term") {
    RatMatrix m(1, 1);
    m.set(0, 0, Rational(5));
    RatVector one(1);
    one.set(0, Rational(1));
    auto d = exp_poly_decompose(m, one, one);

    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].base == 5);
    for (unsigned long n = d.threshold; n <= d.threshold + 6; ++n) {
        Rational expect(1);
        for (unsigned long i = 0; i < n; ++i) expect *= Rational(5);
        CHECK(d.evaluate(n) == expect);
    }
}

TEST_CASE("nilpotent matrix decomposes to zero beyond the threshold") {
    RatMatrix m(2, 2);
    m.set(0, 1, Rational(1));
    Rng g(5);
    for (int round = 0; round < 5; ++round) {
        RatVector x = random_vector(g, 2), y = random_vector(g, 2);
        auto d = exp_poly_decompose(m, x, y);
        for (unsigned long n = d.threshold; n <= d.threshold + 8; ++n) CHECK(d.evaluate(n) == 0);
        for (unsigned long n = 2; n <= 8; ++n) CHECK(power_value(m, x, y, n) == 0);
    }
}

TEST_CASE("decomposition reproduces matrix powers far past the samples") {
    Rng g(2024);
    for (int round = 0; round < 40; ++round) {
        int n = rand_int(g, 1, 4);
        RatMatrix m = random_permuted_triangular(g, n, 5);
        RatVector x = random_vector(g, n), y = random_vector(g, n);
        auto d = exp_poly_decompose(m, x, y);
        for (unsigned long e = d.threshold; e <= d.threshold + 20; ++e)
            CHECK(d.evaluate(e) == power_value(m, x, y, e));
    }
}

TEST_CASE("rejects matrices outside the triangular fragment") {
    RatVector x = vec2(Rational(1), Rational(0)), y = vec2(Rational(0), Rational(1));

    RatMatrix cyc(2, 2);
    cyc.set(0, 1, Rational(1));
    cyc.set(1, 0, Rational(1));
    CHECK_THROWS_AS(exp_poly_decompose(cyc, x, y), std::invalid_argument);

    RatMatrix neg(2, 2);
    neg.set(0, 0, Rational(-2));
    neg.set(1, 1, Rational(3));
    CHECK_THROWS_AS(exp_poly_decompose(neg, x, y), std::invalid_argument);

    RatMatrix frac(2, 2);
    frac.set(0, 0, Rational(1, 2));
    CHECK_THROWS_AS(exp_poly_decompose(frac, x, y), std::invalid_argument);
}

TEST_CASE("completion of a rank-one projection") {
    RatMatrix a(2, 2);
    a.set(0, 0, Rational(1));
    RatMatrix b(2, 2);
    b.set(0, 0, Rational(2));
    b.set(1, 1, Rational(5));

    RatMatrix c = invertible_completion(a, b);
    CHECK(mat_inverse(c).has_value());
    RatMatrix ba = mat_mul(b, a);
    for (unsigned long n = 0; n <= 6; ++n)
        CHECK(mat_mul(a, mat_pow(ba, n)) == mat_mul(a, mat_pow(c, n)));
}

TEST_CASE("full-rank input forces C = BA") {
    Rng g(99);
    for (int round = 0; round < 20; ++round) {
        int n = rand_int(g, 1, 3);
        RatMatrix a = RatMatrix::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rand_bool(g, 0.4)) a.set(i, j, a.get(i, j) + rand_weight(g));
        if (!mat_inverse(a)) continue;
        RatMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rand_bool(g, 0.6)) b.set(i, j, rand_weight(g));
        if (mat_rank(mat_mul(a, mat_mul(b, a))) != n) continue;
        CHECK(invertible_completion(a, b) == mat_mul(b, a));
    }
}

TEST_CASE("zero matrix admits any invertible completion") {
    RatMatrix a(3, 3);
    RatMatrix b(3, 3);
    b.set(0, 2, Rational(7));
    RatMatrix c = invertible_completion(a, b);
    CHECK(mat_inverse(c).has_value());
    for (unsigned long n = 0; n <= 4; ++n) CHECK(mat_mul(a, mat_pow(c, n)) == RatMatrix(3, 3));
}

TEST_CASE("completion works on random rank-deficient instances") {
    Rng g(314);
    int built = 0;
    while (built < 30) {
        int n = rand_int(g, 2, 4);
        // Low-rank A as an outer product sum, then keep instances meeting the
        // rank condition rank(ABA) = rank(A).
        int r = rand_int(g, 1, n - 1);
        RatMatrix a(n, n);
        for (int k = 0; k < r; ++k) {
            RatVector u = random_vector(g, n), v = random_vector(g, n);
            for (const auto& [i, ui] : u.entries)
                for (const auto& [j, vj] : v.entries) a.set(i, j, a.get(i, j) + ui * vj);
        }
        RatMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (rand_bool(g, 0.6)) b.set(i, j, rand_weight(g));
        if (mat_rank(mat_mul(a, mat_mul(b, a))) != mat_rank(a)) continue;
        ++built;

        RatMatrix c = invertible_completion(a, b);
        CHECK(mat_inverse(c).has_value());
        RatMatrix ba = mat_mul(b, a);
        for (unsigned long e = 0; e <= 10; ++e)
            CHECK(mat_mul(a, mat_pow(ba, e)) == mat_mul(a, mat_pow(c, e)));
    }
}

TEST_CASE("rank precondition is enforced") {
    // A nilpotent of rank 1 with B = identity: ABA = A^2 = 0 drops rank.
    RatMatrix a(2, 2);
    a.set(0, 1, Rational(1));
    CHECK_THROWS_AS(invertible_completion(a, RatMatrix::identity(2)), std::invalid_argument);
}
