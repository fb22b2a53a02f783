#include "walab/exp_poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace walab {

namespace {

Int int_pow(const Int& b, unsigned long e) {
    Int r(1);
    Int base = b;
    while (e > 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return r;
}

Rational poly_eval(const std::vector<Rational>& coeffs, unsigned long n) {
    Rational r(0);
    Rational x(static_cast<long>(n));
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
}

// Reduced row echelon basis of the row space, pivots normalized to 1.
// Returns the nonzero rows and their pivot columns.
std::pair<std::vector<RatVector>, std::vector<int>> row_space_basis(const RatMatrix& a) {
    std::vector<std::vector<Rational>> d(a.rows, std::vector<Rational>(a.cols, Rational(0)));
    for (const auto& [ij, v] : a.entries) d[ij.first][ij.second] = v;
    std::vector<int> pivots;
    int rank = 0;
    for (int col = 0; col < a.cols && rank < a.rows; ++col) {
        int p = -1;
        for (int r = rank; r < a.rows; ++r)
            if (d[r][col] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(d[rank], d[p]);
        Rational inv = Rational(1) / d[rank][col];
        for (int c = col; c < a.cols; ++c) d[rank][c] *= inv;
        for (int r = 0; r < a.rows; ++r) {
            if (r == rank || d[r][col] == 0) continue;
            Rational f = d[r][col];
            for (int c = col; c < a.cols; ++c) d[r][c] -= f * d[rank][c];
        }
        pivots.push_back(col);
        ++rank;
    }
    std::vector<RatVector> rows;
    for (int r = 0; r < rank; ++r) {
        RatVector v(a.cols);
        for (int c = 0; c < a.cols; ++c)
            if (d[r][c] != 0) v.entries[c] = d[r][c];
        rows.push_back(std::move(v));
    }
    return {rows, pivots};
}

}  // namespace

Rational ExpPolyDecomposition::evaluate(unsigned long n) const {
    Rational s(0);
    for (const auto& t : terms) {
        if (t.base == 0) continue;  // zero for n >= threshold >= 1
        s += Rational(int_pow(t.base, n)) * poly_eval(t.coeffs, n);
    }
    return s;
}

ExpPolyDecomposition exp_poly_decompose(const RatMatrix& m, const RatVector& x,
                                        const RatVector& y) {
    if (m.rows != m.cols) throw std::invalid_argument("exp_poly_decompose: matrix not square");
    if (x.dim != m.rows || y.dim != m.rows)
        throw std::invalid_argument("exp_poly_decompose: vector dimension mismatch");
    if (!is_p_triangular(m).triangular)
        throw std::invalid_argument("exp_poly_decompose: matrix not p-triangular");

    const unsigned long msize = static_cast<unsigned long>(m.rows);
    std::vector<Int> bases;
    for (int i = 0; i < m.rows; ++i) {
        Rational d = m.get(i, i);
        if (den(d) != 1 || num(d) < 0)
            throw std::invalid_argument(
                "exp_poly_decompose: diagonal entry not a natural number");
        bases.push_back(num(d));
    }
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

    ExpPolyDecomposition out;
    out.threshold = msize;
    if (m.rows == 0) return out;

    std::vector<Int> nonzero;
    for (const Int& b : bases)
        if (b != 0) nonzero.push_back(b);

    // One polynomial of degree < msize per nonzero base; sampling the power
    // sequence at kp*msize consecutive points pins the coefficients uniquely
    // (an exponential polynomial with that shape has fewer zeros than that).
    const unsigned long kp = nonzero.size();
    const unsigned long unknowns = kp * msize;
    std::vector<std::vector<Rational>> coeffs(kp, std::vector<Rational>(msize, Rational(0)));
    if (unknowns > 0) {
        RatMatrix sys(static_cast<int>(unknowns), static_cast<int>(unknowns));
        std::vector<Rational> rhs;
        RatMatrix mn = mat_pow(m, msize);
        for (unsigned long s = 0; s < unknowns; ++s) {
            unsigned long n = msize + s;
            int colidx = 0;
            for (unsigned long bi = 0; bi < kp; ++bi) {
                Int dpow = int_pow(nonzero[bi], n);
                Int npow(1);
                for (unsigned long e = 0; e < msize; ++e) {
                    sys.set(static_cast<int>(s), colidx++, Rational(dpow * npow));
                    npow *= static_cast<long>(n);
                }
            }
            rhs.push_back(vec_inner(vec_mat_mul(x, mn), y));
            mn = mat_mul(mn, m);
        }
        auto sol = solve_linear(sys, rhs);
        if (!sol) throw std::logic_error("exp_poly_decompose: sample system singular");
        int idx = 0;
        for (unsigned long bi = 0; bi < kp; ++bi)
            for (unsigned long e = 0; e < msize; ++e) coeffs[bi][e] = (*sol)[idx++];
    }

    std::size_t nzi = 0;
    for (const Int& b : bases) {
        ExpPolyDecomposition::Term t;
        t.base = b;
        t.coeffs.assign(msize, Rational(0));
        if (b != 0) t.coeffs = coeffs[nzi++];
        out.terms.push_back(std::move(t));
    }
    return out;
}

RatMatrix invertible_completion(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows != a.cols || b.rows != b.cols || a.rows != b.rows)
        throw std::invalid_argument("invertible_completion: need square matrices of equal size");
    const int n = a.rows;
    RatMatrix ba = mat_mul(b, a);
    if (mat_rank(mat_mul(a, ba)) != mat_rank(a))
        throw std::invalid_argument("invertible_completion: rank(ABA) != rank(A)");

    auto [vrows, pivots] = row_space_basis(a);
    const int s = static_cast<int>(vrows.size());

    // Basis of Q^n: echelon rows of A first, then unit vectors on the
    // non-pivot coordinates.
    std::vector<RatVector> basis = vrows;
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    for (int j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        RatVector e(n);
        e.entries[j] = 1;
        basis.push_back(std::move(e));
    }

    RatMatrix p(n, n), w(n, n);
    for (int i = 0; i < n; ++i) {
        const RatVector& bi = basis[i];
        for (const auto& [j, v] : bi.entries) p.set(i, j, v);
        RatVector wi = i < s ? vec_mat_mul(bi, ba) : bi;
        for (const auto& [j, v] : wi.entries) w.set(i, j, v);
    }
    auto pinv = mat_inverse(p);
    if (!pinv) throw std::logic_error("invertible_completion: basis matrix singular");
    return mat_mul(*pinv, w);
}

}  // namespace walab
