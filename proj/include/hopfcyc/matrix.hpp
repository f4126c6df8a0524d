#pragma once

#include "hopfcyc/sparse.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfcyc {

struct MatrixEntry {
    std::size_t row;
    std::size_t col;
    Rational value;
};

// Column-major sparse matrix; each column is a SparseVector keyed by row.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}
    static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVector> columns);
    static SparseMatrix from_entries(std::size_t rows, std::size_t cols, const std::vector<MatrixEntry>& entries);
    static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }
    std::size_t nnz() const;
    const SparseVector& column(std::size_t j) const { return columns_.at(j); }
    const std::vector<SparseVector>& columns() const { return columns_; }
    std::vector<SparseVector> row_vectors() const;
    Rational at(std::size_t r, std::size_t c) const { return columns_.at(c).get(r); }

    SparseVector apply(const SparseVector& x) const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix transpose() const;
    SparseMatrix permuted(const std::vector<std::size_t>& row_perm, const std::vector<std::size_t>& col_perm) const;
    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<SparseVector> columns_;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotAComplex : public std::runtime_error {
public:
    NotAComplex(std::size_t row, std::size_t col, Rational value);
    std::size_t row;
    std::size_t col;
    Rational value;
};

enum class PivotOrder { kMinFill, kNatural, kReverse };

// Incremental fraction-free row echelon form. Rows are kept primitive over Z
// with a positive leading entry; leading positions follow a fixed column order.
class Echelon {
public:
    explicit Echelon(std::size_t ncols);
    Echelon(std::size_t ncols, const std::vector<std::size_t>& column_order);

    // Returns true if v was independent of the rows so far (and stores it).
    bool insert(const SparseVector& v);
    bool in_span(const SparseVector& v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t ncols() const { return position_of_.size(); }

    // x with (stored rows) . x = rhs, where rhs is read from column `rhs_col`
    // of each row; free columns set to zero.
    std::vector<Rational> back_substitute(std::size_t rhs_col) const;
    std::vector<SparseVector> kernel_basis() const;

private:
    using Row = std::vector<std::pair<std::size_t, Rational>>;  // (position, value)
    Row reduce(Row v) const;
    Row to_row(const SparseVector& v) const;

    std::vector<std::size_t> position_of_;
    std::vector<std::size_t> column_at_;
    std::vector<Row> rows_;
    std::vector<long> pivot_row_;  // by position
};

std::vector<std::size_t> column_order(const SparseMatrix& a, PivotOrder order);

struct RankNullity {
    std::size_t rank;
    std::size_t nullity;
};

RankNullity rank_nullity(const SparseMatrix& a, PivotOrder order = PivotOrder::kMinFill);
std::size_t rank(const SparseMatrix& a, PivotOrder order = PivotOrder::kMinFill);
std::optional<std::vector<Rational>> solve_linear(const SparseMatrix& a, const std::vector<Rational>& b);
std::optional<SparseVector> solve_linear(const SparseMatrix& a, const SparseVector& b);
std::vector<SparseVector> kernel_basis(const SparseMatrix& a);

// Throws NotAComplex with the first nonzero entry of d_out * d_in.
void require_complex(const SparseMatrix& d_in, const SparseMatrix& d_out);
std::size_t cohomology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out);
// Cocycles spanning a complement of the coboundaries inside the cocycles.
std::vector<SparseVector> cohomology_representatives(const SparseMatrix& d_in, const SparseMatrix& d_out);

}  // namespace hopfcyc
