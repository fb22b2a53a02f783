#pragma once

#include "walab/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace walab {

// Sparse exact matrix over Q. Invariant: stored entries are nonzero and in
// range; absent means zero. Sparse because the product constructions built on
// top of this are astronomically sparse.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::map<std::pair<int, int>, Rational> entries;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c) {}

    static RatMatrix identity(int n);

    Rational get(int i, int j) const;
    void set(int i, int j, const Rational& v);

    bool operator==(const RatMatrix& o) const = default;
};

struct RatVector {
    int dim = 0;
    std::map<int, Rational> entries;

    RatVector() = default;
    explicit RatVector(int d) : dim(d) {}

    Rational get(int i) const;
    void set(int i, const Rational& v);

    bool operator==(const RatVector& o) const = default;
};

// Zero-one pattern multiplied in the Boolean semiring.
struct BoolMatrix {
    int dim = 0;
    std::set<std::pair<int, int>> ones;

    BoolMatrix() = default;
    explicit BoolMatrix(int d) : dim(d) {}

    static BoolMatrix identity(int n);

    bool get(int i, int j) const { return ones.count({i, j}) > 0; }

    bool operator==(const BoolMatrix& o) const = default;
};

RatMatrix mat_add(const RatMatrix& a, const RatMatrix& b);
RatMatrix mat_sub(const RatMatrix& a, const RatMatrix& b);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
RatMatrix mat_scale(const Rational& c, const RatMatrix& a);
RatMatrix mat_pow(const RatMatrix& a, unsigned long n);
RatMatrix mat_transpose(const RatMatrix& a);

// Row vector times matrix and matrix times column vector.
RatVector vec_mat_mul(const RatVector& v, const RatMatrix& m);
RatVector mat_vec_mul(const RatMatrix& m, const RatVector& v);
Rational vec_inner(const RatVector& a, const RatVector& b);
RatVector vec_scale(const Rational& c, const RatVector& v);

BoolMatrix bool_mul(const BoolMatrix& a, const BoolMatrix& b);

// Exact rank over Q (Gaussian elimination, no floating point anywhere).
int mat_rank(const RatMatrix& a);

// Solves the square system A x = b exactly. Empty result when A is singular.
std::optional<std::vector<Rational>> solve_linear(const RatMatrix& a,
                                                 const std::vector<Rational>& b);

std::optional<RatMatrix> mat_inverse(const RatMatrix& a);

// p-triangularity: some simultaneous row/column permutation makes the matrix
// upper triangular. Equivalent to acyclicity of the digraph with an edge
// i -> j for every off-diagonal nonzero. On success `order` lists original
// indices in triangular position: k > l implies M[order[k]][order[l]] = 0.
// On failure `cycle` is a cycle of distinct indices.
struct PTriangularResult {
    bool triangular = false;
    std::vector<int> order;
    std::vector<int> cycle;
};

PTriangularResult p_triangular_order(int n, const std::set<std::pair<int, int>>& offdiag);
PTriangularResult is_p_triangular(const RatMatrix& m);
PTriangularResult is_p_triangular_pattern(const BoolMatrix& b);

}  // namespace walab
