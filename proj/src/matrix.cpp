#include "arran/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace arran::exact {

MatrixF::MatrixF(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), order_(1), a_(rows * cols, Cyclo::zero()) {}

void MatrixF::set(std::size_t i, std::size_t j, const Cyclo& v) {
    if (v.order() != order_ && order_ % v.order() != 0) {
        unsigned l = std::lcm(order_, v.order());
        for (auto& x : a_) x = x.embedded(l);
        order_ = l;
    }
    a_[i * cols_ + j] = v.embedded(order_);
}

MatrixF MatrixF::from_rows(const std::vector<std::vector<Cyclo>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows[0].size();
    unsigned l = 1;
    for (const auto& r : rows) {
        if (r.size() != nc) throw input_error("ragged matrix rows");
        for (const auto& x : r) l = std::lcm(l, x.order());
    }
    MatrixF m(rows.size(), nc);
    m.order_ = l;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < nc; ++j) m.a_[i * nc + j] = rows[i][j].embedded(l);
    return m;
}

namespace {

// Shared Bareiss elimination; the pivot inverse is hoisted out of the inner
// loops since field division recomputes it otherwise.
std::vector<std::pair<std::size_t, std::size_t>> eliminate(std::vector<std::vector<Cyclo>>& w,
                                                           std::size_t nr, std::size_t nc) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, col)
    Cyclo prev_inv = Cyclo::one();
    std::size_t pr = 0;
    for (std::size_t col = 0; col < nc && pr < nr; ++col) {
        std::size_t sel = nr;
        for (std::size_t i = pr; i < nr; ++i)
            if (!w[i][col].is_zero()) { sel = i; break; }
        if (sel == nr) continue;
        std::swap(w[pr], w[sel]);
        for (std::size_t i = pr + 1; i < nr; ++i) {
            if (w[i][col].is_zero()) {
                for (std::size_t j = col + 1; j < nc; ++j)
                    if (!w[i][j].is_zero()) w[i][j] = w[pr][col] * w[i][j] * prev_inv;
            } else {
                for (std::size_t j = col + 1; j < nc; ++j)
                    w[i][j] = (w[pr][col] * w[i][j] - w[i][col] * w[pr][j]) * prev_inv;
                w[i][col] = Cyclo::zero();
            }
        }
        prev_inv = w[pr][col].inverse();
        pivots.emplace_back(pr, col);
        ++pr;
    }
    return pivots;
}

} // namespace

RankKernel rank_and_kernel(const MatrixF& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Cyclo>> w(nr, std::vector<Cyclo>(nc));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) w[i][j] = m.at(i, j);
    const auto pivots = eliminate(w, nr, nc);

    RankKernel rk;
    rk.rank = pivots.size();
    std::vector<bool> is_pivot_col(nc, false);
    std::vector<Cyclo> pivot_inv;
    for (auto& p : pivots) {
        is_pivot_col[p.second] = true;
        pivot_inv.push_back(w[p.first][p.second].inverse());
    }
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot_col[f]) continue;
        std::vector<Cyclo> v(nc, Cyclo::zero());
        v[f] = -Cyclo::one();
        for (std::size_t t = pivots.size(); t-- > 0;) {
            auto [prow, pcol] = pivots[t];
            if (pcol > f) continue; // eliminated part right of f is zero there
            Cyclo s = Cyclo::zero();
            for (std::size_t j = pcol + 1; j <= f; ++j)
                if (!v[j].is_zero()) s += w[prow][j] * v[j];
            v[pcol] = -(s * pivot_inv[t]);
        }
        rk.kernel.push_back(std::move(v));
    }
    return rk;
}

std::size_t matrix_rank(const MatrixF& m) {
    // Plain Gaussian elimination; rank does not depend on the pivot rule, so
    // pick the sparsest candidate row to limit fill-in, and touch only rows
    // with a nonzero entry in the pivot column.
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Cyclo>> w(nr, std::vector<Cyclo>(nc));
    std::vector<std::size_t> nnz(nr, 0);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            w[i][j] = m.at(i, j);
            if (!w[i][j].is_zero()) ++nnz[i];
        }
    std::vector<bool> used(nr, false);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t sel = nr;
        for (std::size_t i = 0; i < nr; ++i) {
            if (used[i] || w[i][col].is_zero()) continue;
            if (sel == nr || nnz[i] < nnz[sel]) sel = i;
        }
        if (sel == nr) continue;
        used[sel] = true;
        ++rank;
        const Cyclo piv_inv = w[sel][col].inverse();
        for (std::size_t i = 0; i < nr; ++i) {
            if (used[i] || w[i][col].is_zero()) continue;
            const Cyclo f = w[i][col] * piv_inv;
            for (std::size_t j = col; j < nc; ++j) {
                if (w[sel][j].is_zero()) continue;
                const bool was = !w[i][j].is_zero();
                w[i][j] -= f * w[sel][j];
                const bool now = !w[i][j].is_zero();
                if (was && !now) --nnz[i];
                if (!was && now) ++nnz[i];
            }
        }
    }
    return rank;
}

namespace {

// Smith reduction; when track_cols is non-null, every column operation is
// mirrored on it (so it maps original column space to reduced one).
std::vector<Integer> smith_core(MatrixZ& m, MatrixZ* track_cols) {
    const std::size_t nr = m.size(), nc = nr ? m[0].size() : 0;
    const std::size_t n = std::min(nr, nc);
    std::vector<Integer> diag(n, Integer(0));
    if (nr == 0 || nc == 0) return diag;

    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < nr; ++i) std::swap(m[i][a], m[i][b]);
        if (track_cols)
            for (auto& row : *track_cols) std::swap(row[a], row[b]);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& f) {
        // col_dst += f * col_src
        for (std::size_t i = 0; i < nr; ++i) m[i][dst] += f * m[i][src];
        if (track_cols)
            for (auto& row : *track_cols) row[dst] += f * row[src];
    };
    auto col_negate = [&](std::size_t c) {
        for (std::size_t i = 0; i < nr; ++i) m[i][c] = -m[i][c];
        if (track_cols)
            for (auto& row : *track_cols) row[c] = -row[c];
    };

    for (std::size_t t = 0; t < n; ++t) {
        // find minimal-|value| nonzero entry in the trailing submatrix
        bool found = false;
        std::size_t bi = t, bj = t;
        Integer best = 0;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                if (m[i][j] == 0) continue;
                Integer v = abs(m[i][j]);
                if (!found || v < best) {
                    found = true;
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (!found) break;
        std::swap(m[t], m[bi]);
        col_swap(t, bj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (m[i][t] == 0) continue;
                Integer q = m[i][t] / m[t][t];
                for (std::size_t j = t; j < nc; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) { // remainder smaller than pivot; swap up
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (m[t][j] == 0) continue;
                Integer q = m[t][j] / m[t][t];
                col_axpy(j, t, -q);
                if (m[t][j] != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
        }
        // divisibility: pivot must divide the whole trailing block
        bool restart = false;
        for (std::size_t i = t + 1; i < nr && !restart; ++i)
            for (std::size_t j = t + 1; j < nc && !restart; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (std::size_t jj = t; jj < nc; ++jj) m[t][jj] += m[i][jj];
                    restart = true;
                }
        if (restart) {
            --t;
            continue;
        }
        if (m[t][t] < 0) col_negate(t);
        diag[t] = m[t][t];
    }
    return diag;
}

} // namespace

std::vector<Integer> smith_normal_form(MatrixZ m) {
    return smith_core(m, nullptr);
}

std::vector<std::vector<Integer>> integer_kernel_basis(MatrixZ m) {
    const std::size_t nc = m.empty() ? 0 : m[0].size();
    if (nc == 0) return {};
    MatrixZ v(nc, std::vector<Integer>(nc, Integer(0)));
    for (std::size_t i = 0; i < nc; ++i) v[i][i] = 1;
    std::vector<Integer> diag = smith_core(m, &v);
    std::size_t rank = 0;
    for (const auto& d : diag)
        if (d != 0) ++rank;
    std::vector<std::vector<Integer>> basis;
    for (std::size_t j = rank; j < nc; ++j) {
        std::vector<Integer> x(nc);
        for (std::size_t i = 0; i < nc; ++i) x[i] = v[i][j];
        basis.push_back(std::move(x));
    }
    return basis;
}

std::size_t rank_of_integer_matrix(const MatrixZ& m) {
    std::vector<std::vector<Cyclo>> rows;
    rows.reserve(m.size());
    for (const auto& r : m) {
        std::vector<Cyclo> row;
        row.reserve(r.size());
        for (const auto& x : r) row.push_back(Cyclo(Rational(x)));
        rows.push_back(std::move(row));
    }
    return matrix_rank(MatrixF::from_rows(rows));
}

} // namespace arran::exact
