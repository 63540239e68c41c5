#include "derivedlab/zmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace dlab {

uint64_t mulmod(uint64_t x, uint64_t y, uint64_t m) {
    return (uint64_t)(((unsigned __int128)x * y) % m);
}
uint64_t addmod(uint64_t x, uint64_t y, uint64_t m) {
    uint64_t s = x + y;
    if (s >= m || s < x) s -= m;
    return s;
}
uint64_t submod(uint64_t x, uint64_t y, uint64_t m) { return x >= y ? x - y : x + m - y; }

namespace {

// extended gcd over the integers, int64 range is ample for desk-scale moduli
int64_t egcd(int64_t a, int64_t b, int64_t& s, int64_t& t) {
    if (b == 0) { s = a >= 0 ? 1 : -1; t = 0; return a >= 0 ? a : -a; }
    int64_t s1, t1;
    int64_t g = egcd(b, a % b, s1, t1);
    s = t1;
    t = s1 - (a / b) * t1;
    return g;
}

uint64_t to_mod(int64_t x, uint64_t m) {
    int64_t r = x % (int64_t)m;
    if (r < 0) r += (int64_t)m;
    return (uint64_t)r;
}

uint64_t modinv_coprime(uint64_t a, uint64_t m) {
    int64_t s, t;
    int64_t g = egcd((int64_t)(a % m), (int64_t)m, s, t);
    if (g != 1) throw ComputeError("modinv of non-unit");
    return to_mod(s, m);
}

} // namespace

std::pair<uint64_t, uint64_t> unit_to_gcd(uint64_t a, uint64_t m) {
    a %= m;
    if (a == 0) return {0 /*gcd(0,m)=m, caller treats 0 as m*/, 1};
    uint64_t g = std::gcd(a, m);
    uint64_t ap = a / g, mp = m / g;
    uint64_t u0 = (mp == 1) ? 0 : modinv_coprime(ap % mp, mp);
    // lift u0 to a unit mod m: u0 + k*mp hits a residue coprime to m
    for (uint64_t k = 0;; ++k) {
        uint64_t u = (u0 + mulmod(k, mp, m)) % m;
        if (u == 0) continue;
        if (std::gcd(u, m) == 1) {
            if (mulmod(u, a, m) != g % m) throw ComputeError("unit_to_gcd internal");
            return {g, u};
        }
        if (k > m) throw ComputeError("unit_to_gcd: no unit found");
    }
}

ZmMat ZmMat::identity(uint64_t m, size_t n) {
    ZmMat I(m, n, n);
    for (size_t i = 0; i < n; ++i) I.at(i, i) = 1 % m;
    return I;
}

ZmMat ZmMat::from_rows(uint64_t m, const std::vector<std::vector<uint64_t>>& rr) {
    size_t r = rr.size(), c = r ? rr[0].size() : 0;
    ZmMat M(m, r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rr[i].size() != c) throw ValidationError("ragged rows");
        for (size_t j = 0; j < c; ++j) M.at(i, j) = rr[i][j] % m;
    }
    return M;
}

ZmMat ZmMat::transpose() const {
    ZmMat T(mod, cols, rows);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) T.at(j, i) = at(i, j);
    return T;
}

ZmMat mat_mul_serial(const ZmMat& A, const ZmMat& B) {
    if (A.mod != B.mod || A.cols != B.rows) throw ValidationError("mat_mul shape/mod");
    ZmMat C(A.mod, A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            uint64_t aik = A.at(i, k);
            if (!aik) continue;
            for (size_t j = 0; j < B.cols; ++j)
                C.at(i, j) = addmod(C.at(i, j), mulmod(aik, B.at(k, j), A.mod), A.mod);
        }
    return C;
}

ZmMat mat_mul(const ZmMat& A, const ZmMat& B) {
    if (A.mod != B.mod || A.cols != B.rows) throw ValidationError("mat_mul shape/mod");
    if (A.rows * B.cols < 64 * 64) return mat_mul_serial(A, B);
    ZmMat C(A.mod, A.rows, B.cols);
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < (long long)A.rows; ++ii) {
        size_t i = (size_t)ii;
        for (size_t k = 0; k < A.cols; ++k) {
            uint64_t aik = A.at(i, k);
            if (!aik) continue;
            for (size_t j = 0; j < B.cols; ++j)
                C.at(i, j) = addmod(C.at(i, j), mulmod(aik, B.at(k, j), A.mod), A.mod);
        }
    }
    return C;
}

ZmMat mat_add(const ZmMat& A, const ZmMat& B) {
    if (A.mod != B.mod || A.rows != B.rows || A.cols != B.cols) throw ValidationError("mat_add shape");
    ZmMat C(A.mod, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = addmod(A.a[i], B.a[i], A.mod);
    return C;
}
ZmMat mat_sub(const ZmMat& A, const ZmMat& B) {
    if (A.mod != B.mod || A.rows != B.rows || A.cols != B.cols) throw ValidationError("mat_sub shape");
    ZmMat C(A.mod, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = submod(A.a[i], B.a[i], A.mod);
    return C;
}
ZmMat mat_scal(uint64_t c, const ZmMat& A) {
    ZmMat C(A.mod, A.rows, A.cols);
    c %= A.mod;
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = mulmod(c, A.a[i], A.mod);
    return C;
}
ZmMat mat_neg(const ZmMat& A) { return mat_scal(A.mod - 1, A); }

ZmMat hstack(const ZmMat& A, const ZmMat& B) {
    if (A.mod != B.mod || A.rows != B.rows) throw ValidationError("hstack shape");
    ZmMat C(A.mod, A.rows, A.cols + B.cols);
    for (size_t i = 0; i < A.rows; ++i) {
        for (size_t j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (size_t j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}
ZmMat vstack(const ZmMat& A, const ZmMat& B) {
    if (A.mod != B.mod || A.cols != B.cols) throw ValidationError("vstack shape");
    ZmMat C(A.mod, A.rows + B.rows, A.cols);
    std::copy(A.a.begin(), A.a.end(), C.a.begin());
    std::copy(B.a.begin(), B.a.end(), C.a.begin() + A.a.size());
    return C;
}

std::vector<uint64_t> mat_apply(const ZmMat& A, const std::vector<uint64_t>& x) {
    if (x.size() != A.cols) throw ValidationError("mat_apply shape");
    std::vector<uint64_t> y(A.rows, 0);
    for (size_t i = 0; i < A.rows; ++i) {
        uint64_t s = 0;
        for (size_t j = 0; j < A.cols; ++j) s = addmod(s, mulmod(A.at(i, j), x[j] % A.mod, A.mod), A.mod);
        y[i] = s;
    }
    return y;
}
std::vector<uint64_t> row_apply(const std::vector<uint64_t>& x, const ZmMat& A) {
    if (x.size() != A.rows) throw ValidationError("row_apply shape");
    std::vector<uint64_t> y(A.cols, 0);
    for (size_t i = 0; i < A.rows; ++i) {
        uint64_t xi = x[i] % A.mod;
        if (!xi) continue;
        for (size_t j = 0; j < A.cols; ++j) y[j] = addmod(y[j], mulmod(xi, A.at(i, j), A.mod), A.mod);
    }
    return y;
}

namespace {

struct RowOps {
    ZmMat* W;
    ZmMat* U; // optional transform accumulator
    uint64_t m;
    bool parallel;

    void axpy(size_t dst, uint64_t c, size_t src) { // row_dst += c * row_src
        if (!c) return;
        auto& Wr = *W;
        size_t n = Wr.cols;
        uint64_t* d = &Wr.a[dst * n];
        const uint64_t* s = &Wr.a[src * n];
        if (parallel && n >= 512) {
#pragma omp parallel for schedule(static)
            for (long long j = 0; j < (long long)n; ++j) d[j] = addmod(d[j], mulmod(c, s[j], m), m);
        } else {
            for (size_t j = 0; j < n; ++j) d[j] = addmod(d[j], mulmod(c, s[j], m), m);
        }
        if (U) {
            size_t un = U->cols;
            uint64_t* du = &U->a[dst * un];
            const uint64_t* su = &U->a[src * un];
            for (size_t j = 0; j < un; ++j) du[j] = addmod(du[j], mulmod(c, su[j], m), m);
        }
    }
    void scale(size_t r, uint64_t u) { // row_r *= u (u a unit)
        auto& Wr = *W;
        size_t n = Wr.cols;
        uint64_t* d = &Wr.a[r * n];
        for (size_t j = 0; j < n; ++j) d[j] = mulmod(u, d[j], m);
        if (U) {
            size_t un = U->cols;
            uint64_t* du = &U->a[r * un];
            for (size_t j = 0; j < un; ++j) du[j] = mulmod(u, du[j], m);
        }
    }
    void swap_rows(size_t i, size_t j) {
        if (i == j) return;
        auto& Wr = *W;
        size_t n = Wr.cols;
        for (size_t k = 0; k < n; ++k) std::swap(Wr.a[i * n + k], Wr.a[j * n + k]);
        if (U) {
            size_t un = U->cols;
            for (size_t k = 0; k < un; ++k) std::swap(U->a[i * un + k], U->a[j * un + k]);
        }
    }
    // unimodular 2x2 combine: puts gcd of leading entries into row i, zero into row j (column c)
    void gcd_combine(size_t i, size_t j, size_t c) {
        auto& Wr = *W;
        uint64_t a = Wr.at(i, c), b = Wr.at(j, c);
        if (b == 0) return;
        if (a == 0) { swap_rows(i, j); return; }
        int64_t s, t;
        int64_t g = egcd((int64_t)a, (int64_t)b, s, t);
        uint64_t us = to_mod(s, m), ut = to_mod(t, m);
        uint64_t p = (uint64_t)((int64_t)a / g), q = (uint64_t)((int64_t)b / g);
        // [ s  t ] [row_i]   det = s*p + t*q = 1 over Z
        // [-q  p ] [row_j]
        size_t n = Wr.cols;
        uint64_t* ri = &Wr.a[i * n];
        uint64_t* rj = &Wr.a[j * n];
        auto combine2 = [&](uint64_t* x, uint64_t* y, size_t len) {
            for (size_t k = 0; k < len; ++k) {
                uint64_t xi = x[k], yj = y[k];
                uint64_t ni = addmod(mulmod(us, xi, m), mulmod(ut, yj, m), m);
                uint64_t nj = submod(mulmod(p % m, yj, m), mulmod(q % m, xi, m), m);
                x[k] = ni;
                y[k] = nj;
            }
        };
        if (parallel && n >= 512) {
            // split the row into chunks
#pragma omp parallel for schedule(static)
            for (long long blk = 0; blk < (long long)n; blk += 256) {
                size_t lo = (size_t)blk, hi = std::min(n, lo + 256);
                for (size_t k = lo; k < hi; ++k) {
                    uint64_t xi = ri[k], yj = rj[k];
                    ri[k] = addmod(mulmod(us, xi, m), mulmod(ut, yj, m), m);
                    rj[k] = submod(mulmod(p % m, yj, m), mulmod(q % m, xi, m), m);
                }
            }
        } else {
            combine2(ri, rj, n);
        }
        if (U) combine2(&U->a[i * U->cols], &U->a[j * U->cols], U->cols);
    }
};

// Single left-to-right pass; the annihilator multiple of each new pivot row is
// injected back into the free rows so later columns see it (row-span saturation).
HowellForm howell_impl(const ZmMat& M, bool parallel) {
    uint64_t m = M.mod;
    size_t R = M.rows + M.cols; // room for one saturation row per pivot column
    ZmMat W(m, R, M.cols);
    std::copy(M.a.begin(), M.a.end(), W.a.begin());
    ZmMat U = ZmMat::identity(m, R);
    RowOps ops{&W, &U, m, parallel};

    std::vector<size_t> free_rows(M.rows);
    for (size_t i = 0; i < M.rows; ++i) free_rows[i] = i;
    std::vector<size_t> spare(M.cols); // untouched zero rows
    for (size_t i = 0; i < M.cols; ++i) spare[i] = M.rows + i;
    std::vector<std::pair<size_t, size_t>> pivots; // (row, col)

    for (size_t c = 0; c < W.cols; ++c) {
        // free rows are zero at all columns < c; fold their column-c entries together
        size_t r0 = SIZE_MAX;
        for (size_t r : free_rows) {
            if (!W.at(r, c)) continue;
            if (r0 == SIZE_MAX) { r0 = r; continue; }
            ops.gcd_combine(r0, r, c);
        }
        if (r0 == SIZE_MAX || W.at(r0, c) == 0) continue;
        auto [g, u] = unit_to_gcd(W.at(r0, c), m);
        if (u != 1) ops.scale(r0, u);
        free_rows.erase(std::find(free_rows.begin(), free_rows.end(), r0));
        pivots.emplace_back(r0, c);
        if (g != 1) {
            uint64_t ann = (m / g) % m;
            if (ann) {
                if (spare.empty()) throw ComputeError("howell: workspace overflow");
                size_t z = spare.back();
                spare.pop_back();
                ops.axpy(z, ann, r0); // zero at columns <= c, free for later columns
                free_rows.push_back(z);
            }
        }
    }
    // reduce entries above each pivot
    for (auto [r, c] : pivots) {
        uint64_t piv = W.at(r, c);
        for (auto [r2, c2] : pivots) {
            if (c2 >= c) break;
            uint64_t v = W.at(r2, c);
            if (v) ops.axpy(r2, submod(0, v / piv, m), r);
        }
    }
    // permute pivot rows to the top in column order (unimodular)
    for (size_t k = 0; k < pivots.size(); ++k) {
        size_t want = pivots[k].first;
        if (want != k) {
            ops.swap_rows(k, want);
            for (auto& p : pivots)
                if (p.first == k) { p.first = want; break; }
            pivots[k].first = k;
        }
    }
    ZmMat basis(m, pivots.size(), M.cols);
    for (size_t i = 0; i < pivots.size(); ++i)
        for (size_t j = 0; j < M.cols; ++j) basis.at(i, j) = W.at(i, j);
    return HowellForm{std::move(basis), std::move(W), std::move(U)};
}

} // namespace

HowellForm howell(const ZmMat& M) { return howell_impl(M, true); }
HowellForm howell_serial(const ZmMat& M) { return howell_impl(M, false); }

ZmMat row_basis(const ZmMat& M) { return howell(M).basis; }

RowSolver::RowSolver(const ZmMat& M)
    : mod(M.mod), nrows(M.rows), ncols(M.cols),
      form(howell(hstack(M, ZmMat::identity(M.mod, M.rows))).basis) {}

std::optional<std::vector<uint64_t>> RowSolver::solve(const std::vector<uint64_t>& v) const {
    if (v.size() != ncols) throw ValidationError("RowSolver::solve shape");
    uint64_t m = mod;
    std::vector<uint64_t> w(v);
    for (auto& x : w) x %= m;
    std::vector<uint64_t> coeff(nrows, 0);
    for (size_t i = 0; i < form.rows; ++i) {
        size_t lead = ncols;
        for (size_t j = 0; j < ncols; ++j)
            if (form.at(i, j)) { lead = j; break; }
        if (lead == ncols) break; // kernel rows from here on
        if (w[lead] == 0) continue;
        uint64_t piv = form.at(i, lead);
        if (w[lead] % piv != 0) return std::nullopt;
        uint64_t q = w[lead] / piv;
        for (size_t j = lead; j < ncols; ++j) w[j] = submod(w[j], mulmod(q, form.at(i, j), m), m);
        for (size_t j = 0; j < nrows; ++j)
            coeff[j] = addmod(coeff[j], mulmod(q, form.at(i, ncols + j), m), m);
    }
    for (auto x : w) if (x) return std::nullopt;
    return coeff;
}

ZmMat RowSolver::kernel() const {
    std::vector<std::vector<uint64_t>> ker;
    for (size_t i = 0; i < form.rows; ++i) {
        bool leftzero = true;
        for (size_t j = 0; j < ncols; ++j)
            if (form.at(i, j)) { leftzero = false; break; }
        if (!leftzero) continue;
        std::vector<uint64_t> r(nrows);
        for (size_t j = 0; j < nrows; ++j) r[j] = form.at(i, ncols + j);
        ker.push_back(std::move(r));
    }
    if (ker.empty()) return ZmMat(mod, 0, nrows);
    return ZmMat::from_rows(mod, ker);
}

std::optional<std::vector<uint64_t>> solve_row(const ZmMat& M, const std::vector<uint64_t>& v) {
    return RowSolver(M).solve(v);
}

std::optional<std::vector<uint64_t>> solve_col(const ZmMat& M, const std::vector<uint64_t>& b) {
    return solve_row(M.transpose(), b);
}

ZmMat left_kernel(const ZmMat& M) { return RowSolver(M).kernel(); }

ZmMat right_kernel(const ZmMat& M) { return left_kernel(M.transpose()); }

bool is_invertible(const ZmMat& M) {
    if (M.rows != M.cols) return false;
    return row_basis(M) == ZmMat::identity(M.mod, M.rows);
}

ZmMat inverse(const ZmMat& M) {
    if (M.rows != M.cols) throw ComputeError("inverse: not square");
    size_t n = M.rows;
    RowSolver S(M.transpose()); // x^T M^T = e^T
    ZmMat X(M.mod, n, n);
    for (size_t j = 0; j < n; ++j) {
        std::vector<uint64_t> e(n, 0);
        e[j] = 1 % M.mod;
        auto x = S.solve(e);
        if (!x) throw ComputeError("inverse: singular");
        for (size_t i = 0; i < n; ++i) X.at(i, j) = (*x)[i];
    }
    return X;
}

bool in_row_span(const ZmMat& M, const std::vector<uint64_t>& v) {
    return solve_row(M, v).has_value();
}

SmithForm smith(const ZmMat& Rin) {
    uint64_t m = Rin.mod;
    ZmMat A = Rin;
    size_t R = A.rows, C = A.cols;
    ZmMat U = ZmMat::identity(m, R);
    RowOps rops{&A, &U, m, false};

    auto col_gcd_combine = [&](size_t j, size_t k, size_t r) {
        // combine columns j, k to put gcd of row-r entries into col j, zero into col k
        uint64_t a = A.at(r, j), b = A.at(r, k);
        if (b == 0) return;
        if (a == 0) {
            for (size_t i = 0; i < R; ++i) std::swap(A.at(i, j), A.at(i, k));
            return;
        }
        int64_t s, t;
        int64_t g = egcd((int64_t)a, (int64_t)b, s, t);
        uint64_t us = to_mod(s, m), ut = to_mod(t, m);
        uint64_t p = (uint64_t)((int64_t)a / g), q = (uint64_t)((int64_t)b / g);
        for (size_t i = 0; i < R; ++i) {
            uint64_t xi = A.at(i, j), yk = A.at(i, k);
            A.at(i, j) = addmod(mulmod(us, xi, m), mulmod(ut, yk, m), m);
            A.at(i, k) = submod(mulmod(p % m, yk, m), mulmod(q % m, xi, m), m);
        }
    };

    size_t n = std::min(R, C);
    for (size_t t = 0; t < n; ++t) {
        // each pass either finishes the pivot or strictly shrinks min gcd(entry, m)
        for (int iter = 0;; ++iter) {
            if (iter > 300) throw ComputeError("smith: no convergence");
            size_t bi = t, bj = t;
            uint64_t best = 0;
            for (size_t i = t; i < R; ++i)
                for (size_t j = t; j < C; ++j) {
                    uint64_t v = A.at(i, j);
                    if (!v) continue;
                    uint64_t g = std::gcd(v, m);
                    if (best == 0 || g < best) { best = g; bi = i; bj = j; }
                }
            if (best == 0) break; // block is zero
            rops.swap_rows(t, bi);
            if (bj != t)
                for (size_t i = 0; i < R; ++i) std::swap(A.at(i, t), A.at(i, bj));
            uint64_t u = unit_to_gcd(A.at(t, t), m).second;
            if (u != 1) rops.scale(t, u);
            uint64_t piv = A.at(t, t); // == gcd with m == best
            // offender: entry the pivot does not divide
            size_t oi = SIZE_MAX, oj = SIZE_MAX;
            for (size_t i = t; i < R && oi == SIZE_MAX; ++i)
                for (size_t j = t; j < C; ++j)
                    if (A.at(i, j) % piv) { oi = i; oj = j; break; }
            if (oi != SIZE_MAX) {
                if (oj == t) rops.gcd_combine(t, oi, t);
                else if (oi == t) col_gcd_combine(t, oj, t);
                else rops.axpy(t, 1, oi); // bring interior offender into row t
                continue;
            }
            // pivot divides the whole block: clear column, then row (pivot line stays put)
            for (size_t i = t + 1; i < R; ++i) {
                uint64_t v = A.at(i, t);
                if (v) rops.axpy(i, submod(0, v / piv, m), t);
            }
            for (size_t j = t + 1; j < C; ++j) {
                uint64_t v = A.at(t, j);
                if (!v) continue;
                uint64_t q = v / piv;
                for (size_t i = 0; i < R; ++i)
                    A.at(i, j) = submod(A.at(i, j), mulmod(q, A.at(i, t), m), m);
            }
            break;
        }
    }
    SmithForm S;
    S.diag.resize(n, 0);
    for (size_t t = 0; t < n; ++t) {
        uint64_t v = A.at(t, t);
        S.diag[t] = v ? std::gcd(v, m) : m; // m == annihilator of a free Z/m factor
    }
    S.U = U;
    S.Uinv = inverse(U);
    return S;
}

uint64_t scan_count_serial(const std::vector<uint64_t>& radix,
                           const std::function<bool(const std::vector<uint64_t>&)>& pred) {
    uint64_t total = 1;
    for (auto r : radix) {
        if (r == 0) throw ValidationError("scan radix 0");
        total *= r;
        if (total > (uint64_t)1 << 40) throw ComputeError("scan space too large");
    }
    std::vector<uint64_t> x(radix.size(), 0);
    uint64_t cnt = 0;
    for (uint64_t it = 0; it < total; ++it) {
        uint64_t rem = it;
        for (size_t i = 0; i < radix.size(); ++i) { x[i] = rem % radix[i]; rem /= radix[i]; }
        if (pred(x)) ++cnt;
    }
    return cnt;
}

uint64_t scan_count(const std::vector<uint64_t>& radix,
                    const std::function<bool(const std::vector<uint64_t>&)>& pred) {
    uint64_t total = 1;
    for (auto r : radix) {
        if (r == 0) throw ValidationError("scan radix 0");
        total *= r;
        if (total > (uint64_t)1 << 40) throw ComputeError("scan space too large");
    }
    if (total < 4096) return scan_count_serial(radix, pred);
    uint64_t cnt = 0;
#pragma omp parallel reduction(+ : cnt)
    {
        std::vector<uint64_t> x(radix.size(), 0);
#pragma omp for schedule(static)
        for (long long it = 0; it < (long long)total; ++it) {
            uint64_t rem = (uint64_t)it;
            for (size_t i = 0; i < radix.size(); ++i) { x[i] = rem % radix[i]; rem /= radix[i]; }
            if (pred(x)) ++cnt;
        }
    }
    return cnt;
}

uint64_t enum_cap() {
    static uint64_t cap = [] {
        if (const char* e = std::getenv("DERIVEDLAB_ENUM_CAP")) {
            uint64_t v = std::strtoull(e, nullptr, 10);
            if (v >= 16) return v;
        }
        return (uint64_t)1 << 16;
    }();
    return cap;
}

} // namespace dlab
