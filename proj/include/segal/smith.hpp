#pragma once

// Exact integer Smith normal form.
//
// smith_normal_form works on sparse matrices by fraction-free elimination,
// pivoting on entries of minimal magnitude (units first, chosen to limit
// fill-in).  It runs in checked 64-bit arithmetic and restarts in arbitrary
// precision if an intermediate value overflows.  smith_decomposition is a
// dense variant that also returns the unimodular transforms and their inverses.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "segal/error.hpp"

namespace segal {

using BigInt = boost::multiprecision::cpp_int;

struct Triplet {
    std::size_t row;
    std::size_t col;
    std::int64_t value;
};

/// A sparse integer matrix in triplet form; duplicate positions are summed.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Triplet> entries;
};

struct SmithResult {
    std::vector<BigInt> factors;  // d_1 | d_2 | ... | d_r, all positive
    std::size_t rank = 0;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Overflow("smith: 64-bit overflow");
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Overflow("smith: 64-bit overflow");
    return r;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

inline std::int64_t magnitude(std::int64_t a)
{
    if (a == INT64_MIN)
        throw Overflow("smith: 64-bit overflow");
    return a < 0 ? -a : a;
}
inline BigInt magnitude(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

template <class Int>
using SparseRow = std::vector<std::pair<std::size_t, Int>>;

/// row_a -= q * row_b (both sorted by column); updates column occupancy counts.
template <class Int>
void axpy(SparseRow<Int>& a, const Int& q, const SparseRow<Int>& b, std::vector<std::size_t>& col_count)
{
    SparseRow<Int> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(std::move(a[i++]));
        } else if (i == a.size() || b[j].first < a[i].first) {
            ++col_count[b[j].first];
            out.emplace_back(b[j].first, checked_sub(Int(0), checked_mul(q, b[j].second)));
            ++j;
        } else {
            Int v = checked_sub(a[i].second, checked_mul(q, b[j].second));
            if (v != 0)
                out.emplace_back(a[i].first, std::move(v));
            else
                --col_count[a[i].first];
            ++i;
            ++j;
        }
    }
    a = std::move(out);
}

template <class Int>
Int* find_entry(SparseRow<Int>& row, std::size_t col)
{
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

/// Sorts d_1, ..., d_r into a divisibility chain with the same Smith form.
inline std::vector<BigInt> normalize_diagonal(std::vector<BigInt> d)
{
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[j] % d[i] == 0)
                continue;
            const BigInt g = boost::multiprecision::gcd(d[i], d[j]);
            const BigInt l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    std::sort(d.begin(), d.end());
    return d;
}

template <class Int>
SmithResult sparse_smith(const IntMatrix& a)
{
    // Eliminate along the shorter dimension.
    const bool transpose = a.rows > a.cols;
    const std::size_t nrows = transpose ? a.cols : a.rows;
    const std::size_t ncols = transpose ? a.rows : a.cols;

    std::vector<SparseRow<Int>> rows(nrows);
    {
        std::vector<Triplet> sorted = a.entries;
        for (auto& t : sorted)
            if (transpose)
                std::swap(t.row, t.col);
        std::sort(sorted.begin(), sorted.end(),
                  [](const Triplet& x, const Triplet& y) { return std::tie(x.row, x.col) < std::tie(y.row, y.col); });
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            Int sum = 0;
            while (j < sorted.size() && sorted[j].row == sorted[i].row && sorted[j].col == sorted[i].col)
                sum += Int(sorted[j++].value);
            if (sum != 0)
                rows[sorted[i].row].emplace_back(sorted[i].col, std::move(sum));
            i = j;
        }
    }
    std::vector<std::size_t> col_count(ncols, 0);
    for (const auto& r : rows)
        for (const auto& e : r)
            ++col_count[e.first];

    std::vector<bool> alive(nrows, true);
    std::vector<BigInt> diagonal;

    auto choose_pivot = [&](std::size_t& pr, std::size_t& pc) {
        // Shortest row holding a unit, then the unit in the sparsest column.
        std::size_t best_len = SIZE_MAX;
        bool found_unit = false;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (!alive[r] || rows[r].empty() || rows[r].size() >= best_len)
                continue;
            std::size_t best_col = SIZE_MAX, best_count = SIZE_MAX;
            for (const auto& [c, v] : rows[r])
                if ((v == 1 || v == -1) && col_count[c] < best_count) {
                    best_count = col_count[c];
                    best_col = c;
                }
            if (best_col != SIZE_MAX) {
                best_len = rows[r].size();
                pr = r;
                pc = best_col;
                found_unit = true;
            }
        }
        if (found_unit)
            return true;
        bool any = false;
        Int best = 0;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (!alive[r])
                continue;
            for (const auto& [c, v] : rows[r]) {
                Int m = magnitude(v);
                if (!any || m < best) {
                    any = true;
                    best = m;
                    pr = r;
                    pc = c;
                }
            }
        }
        return any;
    };

    std::size_t pr = 0, pc = 0;
    while (choose_pivot(pr, pc)) {
        bool settled = false;
        while (!settled) {
            settled = true;
            const Int p = *find_entry(rows[pr], pc);
            // Clear column pc with row operations.
            for (std::size_t r = 0; r < nrows && settled; ++r) {
                if (r == pr || !alive[r])
                    continue;
                Int* e = find_entry(rows[r], pc);
                if (!e)
                    continue;
                const Int q = *e / p;
                if (q != 0)
                    axpy(rows[r], q, rows[pr], col_count);
                if (find_entry(rows[r], pc)) {
                    // Remainder of smaller magnitude: pivot on it instead.
                    pr = r;
                    settled = false;
                }
            }
            if (!settled)
                continue;
            // Clear row pr with column operations; these touch row pr only.
            auto& row = rows[pr];
            for (auto& [c, v] : row) {
                if (c == pc)
                    continue;
                const Int q = v / p;
                v = checked_sub(v, checked_mul(q, p));
                if (v != 0 && settled) {
                    settled = false;
                }
            }
            if (!settled) {
                // Drop zeros produced above, then pivot on the smallest remainder.
                SparseRow<Int> kept;
                Int best = 0;
                std::size_t best_col = pc;
                for (auto& e : row) {
                    if (e.second == 0) {
                        --col_count[e.first];
                        continue;
                    }
                    if (e.first != pc) {
                        Int m = magnitude(e.second);
                        if (best == 0 || m < best) {
                            best = m;
                            best_col = e.first;
                        }
                    }
                    kept.push_back(std::move(e));
                }
                row = std::move(kept);
                pc = best_col;
            }
        }
        diagonal.emplace_back(magnitude(*find_entry(rows[pr], pc)));
        for (const auto& e : rows[pr])
            --col_count[e.first];
        rows[pr].clear();
        alive[pr] = false;
    }

    SmithResult res;
    res.rank = diagonal.size();
    res.factors = normalize_diagonal(std::move(diagonal));
    return res;
}

}  // namespace detail

inline SmithResult smith_normal_form(const IntMatrix& a)
{
    try {
        return detail::sparse_smith<std::int64_t>(a);
    } catch (const Overflow&) {
        return detail::sparse_smith<BigInt>(a);
    }
}

/// Forces the arbitrary-precision path.
inline SmithResult smith_normal_form_big(const IntMatrix& a) { return detail::sparse_smith<BigInt>(a); }

// ---------------------------------------------------------------------------
// Dense decomposition with transforms

using DenseMatrix = std::vector<std::vector<BigInt>>;

inline DenseMatrix dense_identity(std::size_t n)
{
    DenseMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b, std::size_t inner)
{
    const std::size_t r = a.size();
    const std::size_t c = b.empty() ? 0 : b[0].size();
    DenseMatrix out(r, std::vector<BigInt>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < c; ++j)
                    out[i][j] += a[i][k] * b[k][j];
    return out;
}

/// U A V = D with D diagonal in Smith form; U_inv, V_inv are the integer inverses.
struct SmithDecomposition {
    DenseMatrix u, u_inv, d, v, v_inv;
    SmithResult result;
};

inline SmithDecomposition smith_decomposition(const DenseMatrix& a, std::size_t rows, std::size_t cols)
{
    SmithDecomposition s;
    s.d = a;
    s.u = dense_identity(rows);
    s.u_inv = dense_identity(rows);
    s.v = dense_identity(cols);
    s.v_inv = dense_identity(cols);
    auto& d = s.d;

    // row_i -= q row_t
    auto row_sub = [&](std::size_t i, std::size_t t, const BigInt& q) {
        for (std::size_t j = 0; j < cols; ++j)
            d[i][j] -= q * d[t][j];
        for (std::size_t j = 0; j < rows; ++j)
            s.u[i][j] -= q * s.u[t][j];
        for (std::size_t j = 0; j < rows; ++j)
            s.u_inv[j][t] += q * s.u_inv[j][i];
    };
    // col_j -= q col_t
    auto col_sub = [&](std::size_t j, std::size_t t, const BigInt& q) {
        for (std::size_t i = 0; i < rows; ++i)
            d[i][j] -= q * d[i][t];
        for (std::size_t i = 0; i < cols; ++i)
            s.v[i][j] -= q * s.v[i][t];
        for (std::size_t i = 0; i < cols; ++i)
            s.v_inv[t][i] += q * s.v_inv[j][i];
    };
    auto row_swap = [&](std::size_t i, std::size_t t) {
        if (i == t)
            return;
        std::swap(d[i], d[t]);
        std::swap(s.u[i], s.u[t]);
        for (auto& r : s.u_inv)
            std::swap(r[i], r[t]);
    };
    auto col_swap = [&](std::size_t j, std::size_t t) {
        if (j == t)
            return;
        for (auto& r : d)
            std::swap(r[j], r[t]);
        for (auto& r : s.v)
            std::swap(r[j], r[t]);
        std::swap(s.v_inv[j], s.v_inv[t]);
    };

    const std::size_t n = std::min(rows, cols);
    std::size_t t = 0;
    for (; t < n; ++t) {
        // Smallest nonzero entry of the trailing block goes to (t, t).
        bool any = false;
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d[i][j] != 0 && (!any || abs(d[i][j]) < abs(d[bi][bj]))) {
                    any = true;
                    bi = i;
                    bj = j;
                }
        if (!any)
            break;
        row_swap(bi, t);
        col_swap(bj, t);
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (d[i][t] != 0) {
                    row_sub(i, t, d[i][t] / d[t][t]);
                    if (d[i][t] != 0) {
                        clean = false;
                        row_swap(i, t);
                    }
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (d[t][j] != 0) {
                    col_sub(j, t, d[t][j] / d[t][t]);
                    if (d[t][j] != 0) {
                        clean = false;
                        col_swap(j, t);
                    }
                }
            if (!clean)
                continue;
            // Divisibility of the trailing block by the pivot.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        // row_t += row_i
                        row_sub(t, i, BigInt(-1));
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (d[t][t] < 0) {
            for (std::size_t j = 0; j < cols; ++j)
                d[t][j] = -d[t][j];
            for (std::size_t j = 0; j < rows; ++j)
                s.u[t][j] = -s.u[t][j];
            for (std::size_t j = 0; j < rows; ++j)
                s.u_inv[j][t] = -s.u_inv[j][t];
        }
        s.result.factors.push_back(d[t][t]);
    }
    s.result.rank = t;
    return s;
}

}  // namespace segal
