#include "cmjet/exactla.hpp"

#include <stdexcept>
#include <utility>

namespace cmjet {

namespace {

struct EchelonRow {
    RatVec row;
    Rat rhs;
    size_t pivot;
};

// Reduce (row, rhs) against the echelon set in place; returns pivot column or
// row.size() when the row vanishes.
size_t reduce_row(RatVec& row, Rat& rhs, const std::vector<EchelonRow>& ech) {
    for (const auto& e : ech) {
        if (row[e.pivot] == 0) continue;
        Rat f = row[e.pivot] / e.row[e.pivot];
        for (size_t j = 0; j < row.size(); ++j) row[j] -= f * e.row[j];
        rhs -= f * e.rhs;
    }
    for (size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) return j;
    return row.size();
}

}  // namespace

std::optional<RatVec> min_norm_solve(const RatMat& A, const RatVec& b) {
    size_t m = A.size();
    if (m != b.size()) throw std::invalid_argument("min_norm_solve: size mismatch");
    size_t k = m == 0 ? 0 : A[0].size();

    std::vector<EchelonRow> ech;
    std::vector<size_t> selected;
    for (size_t i = 0; i < m; ++i) {
        RatVec row = A[i];
        Rat rhs = b[i];
        size_t p = reduce_row(row, rhs, ech);
        if (p == k) {
            if (rhs != 0) return std::nullopt;  // inconsistent
            continue;
        }
        ech.push_back({std::move(row), std::move(rhs), p});
        selected.push_back(i);
    }

    size_t r = selected.size();
    RatVec x(k, Rat(0));
    if (r == 0) return x;

    // Minimum-norm solution x = A_I^T y with (A_I A_I^T) y = b_I.
    RatMat G(r, RatVec(r, Rat(0)));
    RatVec bi(r);
    for (size_t a = 0; a < r; ++a) {
        bi[a] = b[selected[a]];
        for (size_t c = 0; c <= a; ++c) {
            Rat s(0);
            for (size_t j = 0; j < k; ++j) s += A[selected[a]][j] * A[selected[c]][j];
            G[a][c] = s;
            G[c][a] = s;
        }
    }
    RatVec y = solve_square(std::move(G), std::move(bi));
    for (size_t a = 0; a < r; ++a)
        for (size_t j = 0; j < k; ++j) x[j] += A[selected[a]][j] * y[a];
    return x;
}

RatVec solve_square(RatMat A, RatVec b) {
    size_t n = A.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) throw std::runtime_error("solve_square: singular matrix");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (size_t i = 0; i < n; ++i) {
            if (i == col || A[i][col] == 0) continue;
            Rat f = A[i][col] / A[col][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[col][j];
            b[i] -= f * b[col];
        }
    }
    RatVec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

RCMat rc_identity(int n) {
    RCMat m(n, std::vector<RC>(n));
    for (int i = 0; i < n; ++i) m[i][i] = RC(1);
    return m;
}

RCMat rc_mul(const RCMat& a, const RCMat& b) {
    size_t n = a.size(), p = b.empty() ? 0 : b[0].size(), q = b.size();
    RCMat r(n, std::vector<RC>(p));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < q; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < p; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

RCMat rc_adjoint(const RCMat& a) {
    size_t n = a.size(), p = a.empty() ? 0 : a[0].size();
    RCMat r(p, std::vector<RC>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < p; ++j) r[j][i] = a[i][j].conj();
    return r;
}

RCMat rc_inverse(RCMat a) {
    size_t n = a.size();
    RCMat inv = rc_identity(static_cast<int>(n));
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::runtime_error("rc_inverse: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        RC d = a[col][col].inverse();
        for (size_t j = 0; j < n; ++j) {
            a[col][j] *= d;
            inv[col][j] *= d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            RC f = a[i][col];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

std::vector<RC> rc_charpoly(const RCMat& m) {
    int n = static_cast<int>(m.size());
    std::vector<RC> c(n + 1);
    c[n] = RC(1);
    RCMat mk = rc_identity(n);
    for (int k = 1; k <= n; ++k) {
        mk = rc_mul(m, mk);
        RC tr;
        for (int i = 0; i < n; ++i) tr += mk[i][i];
        c[n - k] = RC(Rat(-1, k)) * tr;
        for (int i = 0; i < n; ++i) mk[i][i] += c[n - k];
    }
    return c;
}

bool rc_hermitian_psd(RCMat m) {
    size_t n = m.size();
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    for (size_t k = 0; k < n; ++k) {
        // diagonal pivoting: bring the largest remaining diagonal entry forward
        size_t best = k;
        for (size_t i = k; i < n; ++i) {
            if (m[i][i].im != 0) return false;  // not Hermitian
            if (m[i][i].re > m[best][best].re) best = i;
        }
        if (best != k) {
            std::swap(m[best], m[k]);
            for (size_t i = 0; i < n; ++i) std::swap(m[i][best], m[i][k]);
        }
        Rat d = m[k][k].re;
        if (d < 0) return false;
        if (d == 0) {
            // PSD forces the whole remaining block to vanish
            for (size_t i = k; i < n; ++i)
                for (size_t j = k; j < n; ++j)
                    if (!m[i][j].is_zero()) return false;
            return true;
        }
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k].is_zero()) continue;
            RC f = m[i][k] * RC(Rat(1) / d);
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
        // eliminate the column entries symmetrically
        for (size_t i = k + 1; i < n; ++i) m[k][i] = RC();
        for (size_t i = k + 1; i < n; ++i) m[i][k] = RC();
    }
    return true;
}

}  // namespace cmjet
