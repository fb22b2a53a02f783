#include "walab/linalg.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace walab {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::vector<std::vector<Rational>> to_dense(const RatMatrix& a) {
    std::vector<std::vector<Rational>> d(a.rows, std::vector<Rational>(a.cols, Rational(0)));
    for (const auto& [ij, v] : a.entries) d[ij.first][ij.second] = v;
    return d;
}

// Forward elimination without normalization; returns rank. `aug` columns past
// `cols` ride along (used for solving and inversion).
int eliminate(std::vector<std::vector<Rational>>& d, int rows, int cols) {
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (d[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(d[rank], d[pivot]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || d[r][col] == 0) continue;
            Rational f = d[r][col] / d[rank][col];
            for (std::size_t c = col; c < d[r].size(); ++c) d[r][c] -= f * d[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.entries[{i, i}] = 1;
    return m;
}

Rational RatMatrix::get(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? Rational(0) : it->second;
}

void RatMatrix::set(int i, int j, const Rational& v) {
    if (i < 0 || i >= rows || j < 0 || j >= cols)
        throw std::out_of_range("RatMatrix::set: index out of range");
    if (v == 0)
        entries.erase({i, j});
    else
        entries[{i, j}] = v;
}

Rational RatVector::get(int i) const {
    auto it = entries.find(i);
    return it == entries.end() ? Rational(0) : it->second;
}

void RatVector::set(int i, const Rational& v) {
    if (i < 0 || i >= dim) throw std::out_of_range("RatVector::set: index out of range");
    if (v == 0)
        entries.erase(i);
    else
        entries[i] = v;
}

BoolMatrix BoolMatrix::identity(int n) {
    BoolMatrix b(n);
    for (int i = 0; i < n; ++i) b.ones.insert({i, i});
    return b;
}

RatMatrix mat_add(const RatMatrix& a, const RatMatrix& b) {
    require(a.rows == b.rows && a.cols == b.cols, "mat_add: dimension mismatch");
    RatMatrix out = a;
    for (const auto& [ij, v] : b.entries) {
        Rational s = out.get(ij.first, ij.second) + v;
        out.set(ij.first, ij.second, s);
    }
    return out;
}

RatMatrix mat_sub(const RatMatrix& a, const RatMatrix& b) {
    return mat_add(a, mat_scale(Rational(-1), b));
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    require(a.cols == b.rows, "mat_mul: dimension mismatch");
    // Index b's rows once so the product touches only nonzero pairs.
    std::vector<std::vector<std::pair<int, const Rational*>>> brows(b.rows);
    for (const auto& [ij, v] : b.entries) brows[ij.first].push_back({ij.second, &v});
    RatMatrix out(a.rows, b.cols);
    std::map<std::pair<int, int>, Rational> acc;
    for (const auto& [ij, v] : a.entries) {
        for (const auto& [k, w] : brows[ij.second]) acc[{ij.first, k}] += v * (*w);
    }
    for (auto& [ij, v] : acc)
        if (v != 0) out.entries[ij] = std::move(v);
    return out;
}

RatMatrix mat_scale(const Rational& c, const RatMatrix& a) {
    RatMatrix out(a.rows, a.cols);
    if (c == 0) return out;
    for (const auto& [ij, v] : a.entries) out.entries[ij] = c * v;
    return out;
}

RatMatrix mat_pow(const RatMatrix& a, unsigned long n) {
    require(a.rows == a.cols, "mat_pow: matrix not square");
    RatMatrix result = RatMatrix::identity(a.rows);
    RatMatrix base = a;
    while (n > 0) {
        if (n & 1) result = mat_mul(result, base);
        n >>= 1;
        if (n > 0) base = mat_mul(base, base);
    }
    return result;
}

RatMatrix mat_transpose(const RatMatrix& a) {
    RatMatrix out(a.cols, a.rows);
    for (const auto& [ij, v] : a.entries) out.entries[{ij.second, ij.first}] = v;
    return out;
}

RatVector vec_mat_mul(const RatVector& v, const RatMatrix& m) {
    require(v.dim == m.rows, "vec_mat_mul: dimension mismatch");
    RatVector out(m.cols);
    std::map<int, Rational> acc;
    std::vector<std::vector<std::pair<int, const Rational*>>> mrows(m.rows);
    for (const auto& [ij, w] : m.entries) mrows[ij.first].push_back({ij.second, &w});
    for (const auto& [i, c] : v.entries)
        for (const auto& [j, w] : mrows[i]) acc[j] += c * (*w);
    for (auto& [j, c] : acc)
        if (c != 0) out.entries[j] = std::move(c);
    return out;
}

RatVector mat_vec_mul(const RatMatrix& m, const RatVector& v) {
    require(m.cols == v.dim, "mat_vec_mul: dimension mismatch");
    RatVector out(m.rows);
    std::map<int, Rational> acc;
    for (const auto& [ij, w] : m.entries) {
        auto it = v.entries.find(ij.second);
        if (it != v.entries.end()) acc[ij.first] += w * it->second;
    }
    for (auto& [i, c] : acc)
        if (c != 0) out.entries[i] = std::move(c);
    return out;
}

Rational vec_inner(const RatVector& a, const RatVector& b) {
    require(a.dim == b.dim, "vec_inner: dimension mismatch");
    Rational s(0);
    for (const auto& [i, c] : a.entries) {
        auto it = b.entries.find(i);
        if (it != b.entries.end()) s += c * it->second;
    }
    return s;
}

RatVector vec_scale(const Rational& c, const RatVector& v) {
    RatVector out(v.dim);
    if (c == 0) return out;
    for (const auto& [i, w] : v.entries) out.entries[i] = c * w;
    return out;
}

BoolMatrix bool_mul(const BoolMatrix& a, const BoolMatrix& b) {
    require(a.dim == b.dim, "bool_mul: dimension mismatch");
    std::vector<std::vector<int>> brows(b.dim);
    for (const auto& [i, j] : b.ones) brows[i].push_back(j);
    BoolMatrix out(a.dim);
    for (const auto& [i, k] : a.ones)
        for (int j : brows[k]) out.ones.insert({i, j});
    return out;
}

int mat_rank(const RatMatrix& a) {
    auto d = to_dense(a);
    if (a.rows == 0 || a.cols == 0) return 0;
    return eliminate(d, a.rows, a.cols);
}

std::optional<std::vector<Rational>> solve_linear(const RatMatrix& a,
                                                 const std::vector<Rational>& b) {
    require(a.rows == a.cols, "solve_linear: matrix not square");
    require(static_cast<int>(b.size()) == a.rows, "solve_linear: rhs size mismatch");
    int n = a.rows;
    if (n == 0) return std::vector<Rational>{};
    auto d = to_dense(a);
    for (int i = 0; i < n; ++i) d[i].push_back(b[i]);
    if (eliminate(d, n, n) < n) return std::nullopt;
    // After full (Gauss-Jordan style) elimination each row has one pivot.
    std::vector<Rational> x(n, Rational(0));
    for (int r = 0; r < n; ++r) {
        int p = 0;
        while (d[r][p] == 0) ++p;
        x[p] = d[r][n] / d[r][p];
    }
    return x;
}

std::optional<RatMatrix> mat_inverse(const RatMatrix& a) {
    require(a.rows == a.cols, "mat_inverse: matrix not square");
    int n = a.rows;
    auto d = to_dense(a);
    for (int i = 0; i < n; ++i) {
        d[i].resize(2 * n, Rational(0));
        d[i][n + i] = 1;
    }
    if (n > 0 && eliminate(d, n, n) < n) return std::nullopt;
    RatMatrix inv(n, n);
    for (int r = 0; r < n; ++r) {
        int p = 0;
        while (d[r][p] == 0) ++p;
        for (int c = 0; c < n; ++c) inv.set(p, c, d[r][n + c] / d[r][p]);
    }
    return inv;
}

PTriangularResult p_triangular_order(int n, const std::set<std::pair<int, int>>& offdiag) {
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (const auto& [i, j] : offdiag) {
        if (i == j) continue;
        succ[i].push_back(j);
        ++indeg[j];
    }
    // A topological order of i -> j lists i before j, so every off-diagonal
    // nonzero lands strictly right of the diagonal. Kahn with smallest-index
    // tie break keeps the returned order deterministic.
    PTriangularResult res;
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(i);
    while (!ready.empty()) {
        int u = ready.top();
        ready.pop();
        res.order.push_back(u);
        for (int v : succ[u])
            if (--indeg[v] == 0) ready.push(v);
    }
    if (static_cast<int>(res.order.size()) == n) {
        res.triangular = true;
        return res;
    }
    // Kahn stalled, so a cycle exists; find one by DFS. An edge into a gray
    // node closes the cycle along the current path.
    res.order.clear();
    std::vector<int> color(n, 0);  // 0 white, 1 gray, 2 black
    std::vector<int> path;
    std::vector<std::pair<int, std::size_t>> st;
    for (int s = 0; s < n && res.cycle.empty(); ++s) {
        if (color[s] != 0) continue;
        st.push_back({s, 0});
        color[s] = 1;
        path.push_back(s);
        while (!st.empty() && res.cycle.empty()) {
            int u = st.back().first;
            std::size_t& k = st.back().second;
            if (k < succ[u].size()) {
                int v = succ[u][k++];
                if (color[v] == 0) {
                    color[v] = 1;
                    path.push_back(v);
                    st.push_back({v, 0});
                } else if (color[v] == 1) {
                    auto at = std::find(path.begin(), path.end(), v);
                    res.cycle.assign(at, path.end());
                }
            } else {
                color[u] = 2;
                path.pop_back();
                st.pop_back();
            }
        }
    }
    return res;
}

PTriangularResult is_p_triangular(const RatMatrix& m) {
    require(m.rows == m.cols, "is_p_triangular: matrix not square");
    std::set<std::pair<int, int>> offdiag;
    for (const auto& [ij, v] : m.entries) {
        (void)v;
        if (ij.first != ij.second) offdiag.insert(ij);
    }
    return p_triangular_order(m.rows, offdiag);
}

PTriangularResult is_p_triangular_pattern(const BoolMatrix& b) {
    std::set<std::pair<int, int>> offdiag;
    for (const auto& ij : b.ones)
        if (ij.first != ij.second) offdiag.insert(ij);
    return p_triangular_order(b.dim, offdiag);
}

}  // namespace walab
