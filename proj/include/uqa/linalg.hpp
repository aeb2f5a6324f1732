#pragma once

#include "uqa/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace uqa {

// Sorted sparse row: (column, value) pairs, strictly increasing columns, no zeros.
using SparseVec = std::vector<std::pair<int, Rat>>;

SparseVec sv_add(const SparseVec& a, const SparseVec& b);
// a + f*b
SparseVec sv_axpy(const SparseVec& a, const Rat& f, const SparseVec& b);
SparseVec sv_scale(const SparseVec& a, const Rat& f);
const Rat* sv_find(const SparseVec& a, int col);

// Sparse matrix over Q, row-major. Values are immutable once built; all
// linear-algebra entry points return fresh objects.
class SparseMatrix {
public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Rat& v);
    void add(int r, int c, const Rat& v);
    Rat get(int r, int c) const;
    const SparseVec& row(int r) const { return data_[r]; }
    void set_row(int r, SparseVec v) { data_[r] = std::move(v); }

    bool operator==(const SparseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    int rows_, cols_;
    std::vector<SparseVec> data_;
};

struct RrefResult {
    SparseMatrix reduced;
    std::vector<int> pivots; // strictly increasing pivot columns
};

// Unique reduced row-echelon form; deterministic pivoting by (column, row) order.
RrefResult rref(const SparseMatrix& m);

int rank(const SparseMatrix& m);

// One solution of m*x = b (free variables zeroed under the fixed column order),
// or nullopt if inconsistent. Throws on dimension mismatch.
std::optional<std::vector<Rat>> solve(const SparseMatrix& m, const std::vector<Rat>& b);

// Null-space basis in column-echelon order (one vector per free column, ascending).
std::vector<std::vector<Rat>> kernel_basis(const SparseMatrix& m);

std::vector<Rat> mat_vec(const SparseMatrix& m, const std::vector<Rat>& x);

} // namespace uqa
