#pragma once

#include <vector>

#include "arran/cyclo.hpp"

namespace arran::exact {

// Dense row-major matrix over Q(zeta_order). All entries are kept embedded in
// a single common field.
class MatrixF {
public:
    MatrixF() : rows_(0), cols_(0), order_(1) {}
    MatrixF(std::size_t rows, std::size_t cols);
    // Builds from rows, promoting every entry into Q(zeta_lcm).
    static MatrixF from_rows(const std::vector<std::vector<Cyclo>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    unsigned order() const { return order_; }

    const Cyclo& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const Cyclo& v);

private:
    std::size_t rows_, cols_;
    unsigned order_;
    std::vector<Cyclo> a_;
};

struct RankKernel {
    std::size_t rank;
    std::vector<std::vector<Cyclo>> kernel; // basis of the right kernel
};

// Fraction-free (Bareiss) elimination with a fixed pivot rule: for each column
// in order, the pivot is the first remaining row with a nonzero entry. Kernel
// vectors are normalized so the free coordinate equals -1 and earlier free
// coordinates are 0. rank + kernel.size() == cols.
RankKernel rank_and_kernel(const MatrixF& m);

// Rank only; skips the kernel back-substitution.
std::size_t matrix_rank(const MatrixF& m);

using MatrixZ = std::vector<std::vector<Integer>>; // rectangular, row-major

// Diagonal of the Smith normal form, length min(rows, cols), nonnegative,
// each entry dividing the next; trailing zeros kept.
std::vector<Integer> smith_normal_form(MatrixZ m);

// Basis of {x in Z^cols : m x = 0}. Kernels of integer matrices are saturated
// lattices, so the basis spans all rational kernel vectors with integer
// coordinates.
std::vector<std::vector<Integer>> integer_kernel_basis(MatrixZ m);

std::size_t rank_of_integer_matrix(const MatrixZ& m);

} // namespace arran::exact
