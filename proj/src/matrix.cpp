#include "hopfcyc/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace hopfcyc {

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<SparseVector> columns)
{
    SparseMatrix m;
    m.rows_ = rows;
    for (const auto& c : columns)
        if (!c.empty() && c.entries().back().first >= rows)
            throw DimensionMismatch("column entry outside row range");
    m.columns_ = std::move(columns);
    return m;
}

SparseMatrix SparseMatrix::from_entries(std::size_t rows, std::size_t cols, const std::vector<MatrixEntry>& entries)
{
    std::vector<std::vector<Entry>> cs(cols);
    for (const auto& e : entries) {
        if (e.row >= rows || e.col >= cols)
            throw DimensionMismatch("matrix entry outside shape");
        cs[e.col].emplace_back(e.row, e.value);
    }
    std::vector<SparseVector> columns;
    columns.reserve(cols);
    for (auto& c : cs)
        columns.push_back(SparseVector::from_unsorted(std::move(c)));
    return from_columns(rows, std::move(columns));
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows)
{
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<MatrixEntry> entries;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DimensionMismatch("ragged dense matrix");
        for (std::size_t c = 0; c < cols; ++c)
            if (!rows[r][c].is_zero())
                entries.push_back({r, c, rows[r][c]});
    }
    return from_entries(rows.size(), cols, entries);
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    std::vector<SparseVector> cs;
    cs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        cs.push_back(SparseVector::unit(i));
    return from_columns(n, std::move(cs));
}

std::size_t SparseMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& c : columns_)
        n += c.size();
    return n;
}

std::vector<SparseVector> SparseMatrix::row_vectors() const
{
    std::vector<std::vector<Entry>> rs(rows_);
    for (std::size_t j = 0; j < columns_.size(); ++j)
        for (const auto& [r, x] : columns_[j])
            rs[r].emplace_back(j, x);
    std::vector<SparseVector> out;
    out.reserve(rows_);
    for (auto& r : rs)
        out.push_back(SparseVector::from_unsorted(std::move(r)));
    return out;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const
{
    Accumulator acc;
    for (const auto& [j, v] : x) {
        if (j >= columns_.size())
            throw DimensionMismatch("vector entry outside column range");
        acc.add(columns_[j], v);
    }
    return acc.take();
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const
{
    if (cols() != o.rows())
        throw DimensionMismatch("product shape mismatch");
    std::vector<SparseVector> cs;
    cs.reserve(o.cols());
    for (const auto& c : o.columns_)
        cs.push_back(apply(c));
    return from_columns(rows_, std::move(cs));
}

SparseMatrix SparseMatrix::transpose() const { return from_columns(cols(), row_vectors()); }

SparseMatrix SparseMatrix::permuted(const std::vector<std::size_t>& row_perm,
                                    const std::vector<std::size_t>& col_perm) const
{
    if (row_perm.size() != rows_ || col_perm.size() != cols())
        throw DimensionMismatch("permutation size mismatch");
    std::vector<SparseVector> cs(cols());
    for (std::size_t j = 0; j < cols(); ++j) {
        std::vector<Entry> e;
        for (const auto& [r, x] : columns_[j])
            e.emplace_back(row_perm[r], x);
        cs[col_perm[j]] = SparseVector::from_unsorted(std::move(e));
    }
    return from_columns(rows_, std::move(cs));
}

NotAComplex::NotAComplex(std::size_t r, std::size_t c, Rational v)
    : std::runtime_error("not a complex: (d_out*d_in)[" + std::to_string(r) + "," + std::to_string(c) +
                         "] = " + v.str()),
      row(r),
      col(c),
      value(std::move(v))
{
}

// --- echelon -----------------------------------------------------------------

namespace {

template <class RowT>
void make_primitive(RowT& row)
{
    if (row.empty())
        return;
    Rational g;
    for (const auto& e : row) {
        g = integer_gcd(g, e.second);
        if (g.is_one())
            break;
    }
    bool negate = row.front().second.sign() < 0;
    if (g.is_one() && !negate)
        return;
    Rational f = negate ? -g : g;
    for (auto& e : row)
        e.second /= f;
}

}  // namespace

Echelon::Echelon(std::size_t ncols) : Echelon(ncols, [ncols] {
    std::vector<std::size_t> o(ncols);
    std::iota(o.begin(), o.end(), 0);
    return o;
}())
{
}

Echelon::Echelon(std::size_t ncols, const std::vector<std::size_t>& order)
    : position_of_(ncols), column_at_(order), pivot_row_(ncols, -1)
{
    if (order.size() != ncols)
        throw DimensionMismatch("column order size mismatch");
    for (std::size_t p = 0; p < ncols; ++p)
        position_of_.at(order[p]) = p;
}

Echelon::Row Echelon::to_row(const SparseVector& v) const
{
    Row row;
    row.reserve(v.size());
    bool integral = true;
    for (const auto& [c, x] : v) {
        if (c >= position_of_.size())
            throw DimensionMismatch("vector entry outside echelon width");
        row.emplace_back(position_of_[c], x);
        integral = integral && x.is_integer();
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!integral) {
        mpz_class l = 1;
        for (const auto& e : row)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.denominator().get_mpz_t());
        Rational lr{mpq_class(l)};
        for (auto& e : row)
            e.second *= lr;
    }
    make_primitive(row);
    return row;
}

Echelon::Row Echelon::reduce(Row v) const
{
    Row out;
    while (!v.empty()) {
        long pr = pivot_row_[v.front().first];
        if (pr < 0)
            break;
        const Row& p = rows_[static_cast<std::size_t>(pr)];
        const Rational a = p.front().second;
        const Rational c = v.front().second;
        out.clear();
        out.reserve(v.size() + p.size());
        auto i = v.begin() + 1;
        auto j = p.begin() + 1;
        while (i != v.end() || j != p.end()) {
            if (j == p.end() || (i != v.end() && i->first < j->first)) {
                out.emplace_back(i->first, i->second * a);
                ++i;
            } else if (i == v.end() || j->first < i->first) {
                out.emplace_back(j->first, -(j->second * c));
                ++j;
            } else {
                Rational s = i->second * a - j->second * c;
                if (!s.is_zero())
                    out.emplace_back(i->first, std::move(s));
                ++i;
                ++j;
            }
        }
        make_primitive(out);
        std::swap(v, out);
    }
    return v;
}

bool Echelon::insert(const SparseVector& v)
{
    Row r = reduce(to_row(v));
    if (r.empty())
        return false;
    pivot_row_[r.front().first] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
}

bool Echelon::in_span(const SparseVector& v) const { return reduce(to_row(v)).empty(); }

std::vector<Rational> Echelon::back_substitute(std::size_t rhs_col) const
{
    const std::size_t n = position_of_.size();
    const std::size_t rhs_pos = position_of_.at(rhs_col);
    std::vector<Rational> x(n);
    for (std::size_t p = n; p-- > 0;) {
        long pr = pivot_row_[p];
        if (pr < 0 || p == rhs_pos)
            continue;
        const Row& row = rows_[static_cast<std::size_t>(pr)];
        Rational s;
        for (std::size_t t = 1; t < row.size(); ++t) {
            const auto& [q, val] = row[t];
            if (q == rhs_pos)
                s += val;
            else
                s -= val * x[q];
        }
        x[p] = s / row.front().second;
    }
    std::vector<Rational> by_col(n);
    for (std::size_t p = 0; p < n; ++p)
        by_col[column_at_[p]] = x[p];
    return by_col;
}

std::vector<SparseVector> Echelon::kernel_basis() const
{
    const std::size_t n = position_of_.size();
    std::vector<std::size_t> pivots;
    for (std::size_t p = 0; p < n; ++p)
        if (pivot_row_[p] >= 0)
            pivots.push_back(p);
    std::vector<SparseVector> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (pivot_row_[f] >= 0)
            continue;
        std::vector<Rational> x(n);
        x[f] = 1;
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            if (*it > f)
                continue;  // rows leading after f cannot reach f
            const Row& row = rows_[static_cast<std::size_t>(pivot_row_[*it])];
            Rational s;
            for (std::size_t t = 1; t < row.size(); ++t)
                if (!x[row[t].first].is_zero())
                    s -= row[t].second * x[row[t].first];
            if (!s.is_zero())
                x[*it] = s / row.front().second;
        }
        std::vector<Entry> e;
        for (std::size_t p = 0; p < n; ++p)
            if (!x[p].is_zero())
                e.emplace_back(column_at_[p], x[p]);
        basis.push_back(SparseVector::from_unsorted(std::move(e)));
    }
    return basis;
}

// --- matrix level operations ------------------------------------------------

std::vector<std::size_t> column_order(const SparseMatrix& a, PivotOrder order)
{
    std::vector<std::size_t> o(a.cols());
    std::iota(o.begin(), o.end(), 0);
    if (order == PivotOrder::kReverse) {
        std::reverse(o.begin(), o.end());
    } else if (order == PivotOrder::kMinFill) {
        std::vector<std::size_t> count(a.cols());
        for (std::size_t j = 0; j < a.cols(); ++j)
            count[j] = a.column(j).size();
        std::stable_sort(o.begin(), o.end(), [&](std::size_t x, std::size_t y) { return count[x] < count[y]; });
    }
    return o;
}

namespace {

Echelon row_echelon(const SparseMatrix& a, const std::vector<std::size_t>& order)
{
    Echelon e(a.cols(), order);
    auto rows = a.row_vectors();
    std::vector<std::size_t> idx(rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return rows[x].size() < rows[y].size(); });
    for (std::size_t i : idx)
        if (!rows[i].empty())
            e.insert(rows[i]);
    return e;
}

}  // namespace

std::size_t rank(const SparseMatrix& a, PivotOrder order) { return row_echelon(a, column_order(a, order)).rank(); }

RankNullity rank_nullity(const SparseMatrix& a, PivotOrder order)
{
    std::size_t r = rank(a, order);
    return {r, a.cols() - r};
}

std::optional<std::vector<Rational>> solve_linear(const SparseMatrix& a, const std::vector<Rational>& b)
{
    if (b.size() != a.rows())
        throw DimensionMismatch("solve_linear: rhs length " + std::to_string(b.size()) + " != rows " +
                                std::to_string(a.rows()));
    const std::size_t n = a.cols();
    std::vector<std::size_t> order = column_order(a, PivotOrder::kMinFill);
    order.push_back(n);  // the right-hand side is never a pivot unless inconsistent
    Echelon e(n + 1, order);
    auto rows = a.row_vectors();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        SparseVector row = rows[r];
        if (!b[r].is_zero())
            row += SparseVector::unit(n, b[r]);
        if (row.empty())
            continue;
        e.insert(row);
    }
    if (e.in_span(SparseVector::unit(n)))
        return std::nullopt;
    auto x = e.back_substitute(n);
    x.pop_back();
    return x;
}

std::optional<SparseVector> solve_linear(const SparseMatrix& a, const SparseVector& b)
{
    std::vector<Rational> dense(a.rows());
    for (const auto& [k, v] : b) {
        if (k >= a.rows())
            throw DimensionMismatch("solve_linear: rhs entry outside row range");
        dense[k] = v;
    }
    auto x = solve_linear(a, dense);
    if (!x)
        return std::nullopt;
    std::vector<Entry> e;
    for (std::size_t i = 0; i < x->size(); ++i)
        if (!(*x)[i].is_zero())
            e.emplace_back(i, (*x)[i]);
    return SparseVector::from_unsorted(std::move(e));
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& a)
{
    return row_echelon(a, column_order(a, PivotOrder::kMinFill)).kernel_basis();
}

void require_complex(const SparseMatrix& d_in, const SparseMatrix& d_out)
{
    if (d_in.rows() != d_out.cols())
        throw DimensionMismatch("complex: d_in has " + std::to_string(d_in.rows()) + " rows but d_out has " +
                                std::to_string(d_out.cols()) + " columns");
    for (std::size_t j = 0; j < d_in.cols(); ++j) {
        SparseVector c = d_out.apply(d_in.column(j));
        if (!c.empty())
            throw NotAComplex(c.begin()->first, j, c.begin()->second);
    }
}

std::size_t cohomology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out)
{
    require_complex(d_in, d_out);
    return d_out.cols() - rank(d_out) - rank(d_in);
}

std::vector<SparseVector> cohomology_representatives(const SparseMatrix& d_in, const SparseMatrix& d_out)
{
    require_complex(d_in, d_out);
    Echelon image(d_in.rows());
    for (const auto& c : d_in.columns())
        if (!c.empty())
            image.insert(c);
    std::vector<SparseVector> reps;
    for (auto& z : kernel_basis(d_out))
        if (image.insert(z))
            reps.push_back(std::move(z));
    return reps;
}

}  // namespace hopfcyc
