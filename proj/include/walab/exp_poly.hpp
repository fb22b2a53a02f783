#pragma once

#include "walab/linalg.hpp"
#include "walab/rational.hpp"

#include <vector>

namespace walab {

// Closed form x^T M^n y = sum over bases d of d^n * p_d(n), valid for every
// n >= threshold. Bases are the distinct diagonal entries of the p-triangular
// source matrix; each polynomial has degree < matrix size. The base-0 term is
// identically zero from the threshold on.
struct ExpPolyDecomposition {
    struct Term {
        Int base;
        std::vector<Rational> coeffs;  // p(n) = sum coeffs[e] * n^e
    };
    std::vector<Term> terms;  // bases strictly increasing
    unsigned long threshold = 0;

    Rational evaluate(unsigned long n) const;
};

// Recovers the decomposition by exact linear solving against sampled powers
// of M. Preconditions: M square and p-triangular with natural diagonal
// entries; violations throw std::invalid_argument.
ExpPolyDecomposition exp_poly_decompose(const RatMatrix& m, const RatVector& x,
                                        const RatVector& y);

// Given square A, B with rank(ABA) = rank(A), returns an invertible C with
// A(BA)^n = AC^n for all n. C acts like BA on the row space of A (which that
// rank condition makes invariant and bijective) and like the identity on a
// complement.
RatMatrix invertible_completion(const RatMatrix& a, const RatMatrix& b);

}  // namespace walab
