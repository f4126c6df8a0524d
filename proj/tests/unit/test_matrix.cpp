#include "hopfcyc/matrix.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace hopfcyc;

namespace {

// Independent dense Gaussian elimination over mpq.
std::size_t dense_rank(const SparseMatrix& a)
{
    std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (const auto& [r, x] : a.column(c))
            m[r][c] = x.to_mpq();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t p = rank;
        while (p < a.rows() && m[p][c] == 0)
            ++p;
        if (p == a.rows())
            continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (r != rank && m[r][c] != 0) {
                mpq_class f = m[r][c] / m[rank][c];
                for (std::size_t k = c; k < a.cols(); ++k)
                    m[r][k] -= f * m[rank][k];
            }
        ++rank;
    }
    return rank;
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int density)
{
    std::vector<MatrixEntry> e;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (static_cast<int>(rng() % 100) < density)
                e.push_back({i, j, Rational(static_cast<long long>(rng() % 7) - 3)});
    return SparseMatrix::from_entries(r, c, e);
}

}  // namespace

TEST_CASE("rank of small hand matrices")
{
    auto a = SparseMatrix::from_dense({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(rank(a) == 2);
    CHECK(rank_nullity(a).nullity == 1);
    CHECK(rank(SparseMatrix(3, 0)) == 0);
    CHECK(rank(SparseMatrix::identity(5)) == 5);
}

TEST_CASE("rank agrees with dense elimination and is permutation invariant")
{
    std::mt19937_64 rng(11);
    for (int it = 0; it < 150; ++it) {
        std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
        SparseMatrix a = random_matrix(rng, r, c, 20 + static_cast<int>(rng() % 60));
        std::size_t expected = dense_rank(a);
        CHECK(rank(a, PivotOrder::kMinFill) == expected);
        CHECK(rank(a, PivotOrder::kNatural) == expected);
        CHECK(rank(a, PivotOrder::kReverse) == expected);
        std::vector<std::size_t> rp(r), cp(c);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        CHECK(rank(a.permuted(rp, cp)) == expected);
        CHECK(rank(a.transpose()) == expected);
    }
}

TEST_CASE("kernel basis and solve")
{
    std::mt19937_64 rng(5);
    for (int it = 0; it < 80; ++it) {
        std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        SparseMatrix a = random_matrix(rng, r, c, 50);
        auto ker = kernel_basis(a);
        CHECK(ker.size() == c - dense_rank(a));
        for (const auto& v : ker)
            CHECK(a.apply(v).empty());
        // b in the image is solvable, and the solution reproduces b
        std::vector<Entry> xe;
        for (std::size_t j = 0; j < c; ++j)
            xe.emplace_back(j, Rational(static_cast<long long>(rng() % 5) - 2));
        SparseVector b = a.apply(SparseVector::from_unsorted(xe));
        auto x = solve_linear(a, b);
        REQUIRE(x.has_value());
        CHECK(a.apply(*x) == b);
    }
    auto a = SparseMatrix::from_dense({{1, 1}, {1, 1}});
    CHECK_FALSE(solve_linear(a, SparseVector{{0, 1}}).has_value());
}

TEST_CASE("cohomology of a small complex")
{
    // circle: two vertices, two edges
    auto d0 = SparseMatrix::from_dense({{-1, 1}, {1, -1}});
    auto d1 = SparseMatrix(0, 2);
    CHECK(cohomology_dim(d0, d1) == 1);
    CHECK(cohomology_dim(SparseMatrix(2, 0), d0) == 1);
    CHECK_THROWS_AS(require_complex(d0, SparseMatrix::from_dense({{1, 0}})), NotAComplex);
}
