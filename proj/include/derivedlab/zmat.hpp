#pragma once
#include <cstdint>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlab {

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& w) : std::runtime_error(w) {}
};
struct ComputeError : std::runtime_error {
    explicit ComputeError(const std::string& w) : std::runtime_error(w) {}
};

// Dense matrix over Z/m, entries stored reduced to [0, m).
struct ZmMat {
    uint64_t mod = 2;
    size_t rows = 0, cols = 0;
    std::vector<uint64_t> a;

    ZmMat() = default;
    ZmMat(uint64_t m, size_t r, size_t c) : mod(m), rows(r), cols(c), a(r * c, 0) {
        if (m < 2) throw ValidationError("modulus must be >= 2");
    }
    uint64_t& at(size_t i, size_t j) { return a[i * cols + j]; }
    uint64_t at(size_t i, size_t j) const { return a[i * cols + j]; }
    void set(size_t i, size_t j, uint64_t v) { a[i * cols + j] = v % mod; }

    static ZmMat identity(uint64_t m, size_t n);
    static ZmMat zero(uint64_t m, size_t r, size_t c) { return ZmMat(m, r, c); }
    static ZmMat from_rows(uint64_t m, const std::vector<std::vector<uint64_t>>& rr);

    bool operator==(const ZmMat& o) const {
        return mod == o.mod && rows == o.rows && cols == o.cols && a == o.a;
    }
    bool is_zero() const {
        for (auto v : a) if (v) return false;
        return true;
    }
    ZmMat transpose() const;
    std::vector<uint64_t> row(size_t i) const {
        return std::vector<uint64_t>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
    }
    std::vector<uint64_t> col(size_t j) const {
        std::vector<uint64_t> v(rows);
        for (size_t i = 0; i < rows; ++i) v[i] = at(i, j);
        return v;
    }
};

uint64_t mulmod(uint64_t x, uint64_t y, uint64_t m);
uint64_t addmod(uint64_t x, uint64_t y, uint64_t m);
uint64_t submod(uint64_t x, uint64_t y, uint64_t m);
// gcd(a, m) together with a unit u (gcd(u,m)=1) such that u*a = gcd(a,m) mod m.
std::pair<uint64_t, uint64_t> unit_to_gcd(uint64_t a, uint64_t m);

ZmMat mat_mul(const ZmMat& A, const ZmMat& B);
ZmMat mat_mul_serial(const ZmMat& A, const ZmMat& B);
ZmMat mat_add(const ZmMat& A, const ZmMat& B);
ZmMat mat_sub(const ZmMat& A, const ZmMat& B);
ZmMat mat_scal(uint64_t c, const ZmMat& A);
ZmMat mat_neg(const ZmMat& A);
ZmMat hstack(const ZmMat& A, const ZmMat& B);
ZmMat vstack(const ZmMat& A, const ZmMat& B);
// mat * column-vector
std::vector<uint64_t> mat_apply(const ZmMat& A, const std::vector<uint64_t>& x);
// row-vector * mat
std::vector<uint64_t> row_apply(const std::vector<uint64_t>& x, const ZmMat& A);

// Howell normal form of the row module of M.
//   basis:  trimmed canonical form (unique for the row span; pivots divide m,
//           entries above a pivot reduced mod pivot, saturation rows included)
//   padded: the full (rows+cols)-row form with zero rows, padded = transform * [M; 0]
//   transform: square invertible over Z/m
struct HowellForm {
    ZmMat basis;
    ZmMat padded;
    ZmMat transform;
};
HowellForm howell(const ZmMat& M);
// serial reference (no OpenMP inner loops); same output
HowellForm howell_serial(const ZmMat& M);

// Canonical basis of the row span (trimmed Howell form).
ZmMat row_basis(const ZmMat& M);

// Precomputed Howell form of [M | I]; answers many u*M = v queries and exposes
// the left kernel. Use instead of solve_row when querying the same M repeatedly.
struct RowSolver {
    explicit RowSolver(const ZmMat& M);
    std::optional<std::vector<uint64_t>> solve(const std::vector<uint64_t>& v) const;
    bool contains(const std::vector<uint64_t>& v) const { return solve(v).has_value(); }
    ZmMat kernel() const;
    uint64_t mod;
    size_t nrows, ncols;
    ZmMat form; // trimmed Howell basis of [M | I]
};

// Solve u * M = v for a row vector u. nullopt if unsolvable.
std::optional<std::vector<uint64_t>> solve_row(const ZmMat& M, const std::vector<uint64_t>& v);
// Solve M * x = b for a column vector x.
std::optional<std::vector<uint64_t>> solve_col(const ZmMat& M, const std::vector<uint64_t>& b);
// All rows y with y * M = 0, as canonical Howell basis of the kernel.
ZmMat left_kernel(const ZmMat& M);
// All columns x with M x = 0 (rows of the result are x^T).
ZmMat right_kernel(const ZmMat& M);

bool is_invertible(const ZmMat& M);
ZmMat inverse(const ZmMat& M); // throws ComputeError if singular

// Diagonalization U*R*V = D over Z/m (Smith-style; V not returned).
// diag entries normalized to divisors of m (0 -> m handled by caller), with
// d_1 | d_2 | ... on the nonzero part. U square invertible, uinv = U^{-1}.
struct SmithForm {
    std::vector<uint64_t> diag; // length min(rows, cols), entries divide m (m stands for 0)
    ZmMat U, Uinv;
};
SmithForm smith(const ZmMat& R);

// membership: is v in the row span of M?
bool in_row_span(const ZmMat& M, const std::vector<uint64_t>& v);

// Brute-force scan helpers (OpenMP when large, serial reference kept for tests).
// Enumerates all mixed-radix tuples x with x[i] in [0, radix[i]) and counts those
// satisfying pred; used by enumeration oracles and radical/unit scans.
uint64_t scan_count(const std::vector<uint64_t>& radix,
                    const std::function<bool(const std::vector<uint64_t>&)>& pred);
uint64_t scan_count_serial(const std::vector<uint64_t>& radix,
                           const std::function<bool(const std::vector<uint64_t>&)>& pred);

uint64_t enum_cap(); // DERIVEDLAB_ENUM_CAP, default 1<<16

} // namespace dlab
