#pragma once

#include <cstddef>
#include <vector>

#include "carlitz/fq.hpp"

namespace carlitz {

/// Dense row-reduction helpers over F_q. Pivoting is lexicographic (first
/// usable row for the leftmost open column), so all outputs are deterministic.

struct LinearSolution {
    bool consistent = false;
    std::vector<FqElem> particular;           // free variables set to zero
    std::vector<std::vector<FqElem>> kernel;  // basis, one vector per free column
};

namespace linalg_detail {

struct Rref {
    std::vector<std::vector<FqElem>> rows;
    std::vector<std::size_t> pivot_cols;
};

inline Rref rref(const FqPtr& f, std::vector<std::vector<FqElem>> rows, std::size_t ncols) {
    Rref out;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        FqElem inv = f->inv(rows[rank][col]);
        for (std::size_t j = col; j < rows[rank].size(); ++j)
            rows[rank][j] = f->mul(rows[rank][j], inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            FqElem m = rows[r][col];
            for (std::size_t j = col; j < rows[r].size(); ++j)
                rows[r][j] = f->sub(rows[r][j], f->mul(m, rows[rank][j]));
        }
        out.pivot_cols.push_back(col);
        ++rank;
    }
    out.rows = std::move(rows);
    return out;
}

} // namespace linalg_detail

/// Kernel basis of the homogeneous system rows * x = 0 (x has ncols entries).
inline std::vector<std::vector<FqElem>> kernel_fq(const FqPtr& f,
                                                  const std::vector<std::vector<FqElem>>& rows,
                                                  std::size_t ncols) {
    auto red = linalg_detail::rref(f, rows, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t c : red.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<FqElem>> basis;
    for (std::size_t fc = 0; fc < ncols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<FqElem> v(ncols, 0);
        v[fc] = f->one();
        for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
            // pivot row r reads x_{pivot} + ... + a*x_fc + ... = 0
            FqElem a = red.rows[r][fc];
            if (a != 0) v[red.pivot_cols[r]] = f->neg(a);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves rows * x = rhs; free variables are zero in the particular solution.
inline LinearSolution solve_fq(const FqPtr& f, std::vector<std::vector<FqElem>> rows,
                               const std::vector<FqElem>& rhs, std::size_t ncols) {
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r].push_back(rhs[r]);
    auto red = linalg_detail::rref(f, std::move(rows), ncols);
    LinearSolution sol;
    sol.consistent = true;
    for (std::size_t r = 0; r < red.rows.size(); ++r) {
        bool all_zero = true;
        for (std::size_t c = 0; c < ncols; ++c)
            if (red.rows[r][c] != 0) { all_zero = false; break; }
        if (all_zero && red.rows[r][ncols] != 0) { sol.consistent = false; return sol; }
    }
    sol.particular.assign(ncols, 0);
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r)
        sol.particular[red.pivot_cols[r]] = red.rows[r][ncols];
    std::vector<std::vector<FqElem>> hom;
    hom.reserve(red.rows.size());
    for (const auto& row : red.rows) hom.emplace_back(row.begin(), row.begin() + ncols);
    sol.kernel = kernel_fq(f, hom, ncols);
    return sol;
}

} // namespace carlitz
