#include "hopfcyc/weil.hpp"

#include <doctest.h>

using namespace hopfcyc;

namespace {

TruncatedWeil weil(std::string_view name, int q) { return TruncatedWeil(builtin_lie_algebra(name), q); }

std::vector<std::size_t> dims(std::initializer_list<std::size_t> v) { return v; }

}  // namespace

TEST_CASE("Lie algebra data")
{
    for (const auto& name : builtin_lie_algebra_names()) {
        CAPTURE(name);
        auto rep = check_lie_algebra(builtin_lie_algebra(name));
        CHECK_MESSAGE(rep.passed(), rep.summary());
    }

    LieAlgebraData bad = builtin_lie_algebra("sl2");
    bad.bracket[1][2] = SparseVector::unit(1);  // [e, f] = e, no longer antisymmetric with [f, e] = -h
    auto rep = check_lie_algebra(bad);
    CHECK(rep.has_failure("antisymmetry"));
    CHECK(rep.has_failure("jacobi"));
    CHECK_THROWS_AS(TruncatedWeil(bad, 1), std::invalid_argument);

    LieAlgebraData twisted = builtin_lie_algebra("sl2");
    // h ↦ -h, e ↦ e, f ↦ f does not preserve [h, e] = 2e
    twisted.components.push_back(SparseMatrix::from_entries(3, 3, {{0, 0, -1}, {1, 1, 1}, {2, 2, 1}}));
    CHECK(check_lie_algebra(twisted).has_failure("component-automorphism"));
    // the Chevalley involution h ↦ -h, e ↦ -f, f ↦ -e does
    LieAlgebraData chevalley = builtin_lie_algebra("sl2");
    chevalley.components.push_back(SparseMatrix::from_entries(3, 3, {{0, 0, -1}, {2, 1, -1}, {1, 2, -1}}));
    CHECK(check_lie_algebra(chevalley).passed());

    CHECK_THROWS_AS(builtin_lie_algebra("abelian:0"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_lie_algebra("so3"), std::invalid_argument);
}

TEST_CASE("W(gl1) by hand")
{
    TruncatedWeil w = weil("gl1", 1);
    REQUIRE(w.dim() == 4);
    CHECK(w.basis_name(0) == "1");
    CHECK(w.basis_name(1) == "θ");
    CHECK(w.basis_name(2) == "Ω");
    CHECK(w.basis_name(3) == "θΩ");
    CHECK(w.apply_d(w.theta(0)) == w.curvature(0));
    CHECK(w.apply_d(w.curvature(0)).empty());
    CHECK(w.multiply(w.theta(0), w.curvature(0)) == SparseVector::unit(3));
    CHECK(w.multiply(w.curvature(0), w.curvature(0)).empty());  // truncated

    auto h = weil_cohomology(w);
    CHECK(h.complex_dims == dims({1, 1, 1, 1}));
    CHECK(h.dims == dims({1, 0, 0, 1}));
    REQUIRE(h.representatives[3].size() == 1);
    CHECK(w.format(h.representatives[3][0]) == "θΩ");
    CHECK(h.euler == 0);

    // q = 0 kills Ω, so dθ = 0 and θ survives
    TruncatedWeil w0 = weil("gl1", 0);
    CHECK(w0.dim() == 2);
    CHECK(w0.apply_d(w0.theta(0)).empty());
    CHECK(weil_cohomology(w0).dims == dims({1, 1}));

    TruncatedWeil w2 = weil("gl1", 2);
    CHECK(weil_cohomology(w2).dims == dims({1, 0, 0, 0, 0, 1}));
    CHECK(w2.format(weil_cohomology(w2).representatives[5][0]) == "θΩ^2");
}

TEST_CASE("Weil differential squares to zero")
{
    for (const char* name : {"gl1", "sl2", "gl2", "abelian:2"})
        for (int q = 0; q <= 2; ++q) {
            if (std::string_view(name) == "gl2" && q == 2)
                continue;  // the Leibniz sweep is quadratic in dim W
            CAPTURE(name);
            CAPTURE(q);
            TruncatedWeil w = weil(name, q);
            auto rep = check_weil(w);
            CHECK_MESSAGE(rep.passed(), rep.summary());
        }

    TruncatedWeil w = weil("sl2", 1);
    CHECK(w.dim() == 32);
    auto rep = check_dga_axioms(*w.as_algebra());
    CHECK_MESSAGE(rep.passed(), rep.summary());
}

TEST_CASE("contraction and Lie derivative")
{
    TruncatedWeil w = weil("sl2", 1);
    const LieAlgebraData& g = w.lie();
    for (std::size_t x = 0; x < 3; ++x) {
        const SparseVector X = SparseVector::unit(x);
        for (std::size_t a = 0; a < 3; ++a) {
            CHECK(w.contract(X, w.theta(a)) == (a == x ? SparseVector::unit(0) : SparseVector{}));
            CHECK(w.contract(X, w.curvature(a)).empty());
            // coadjoint: L_X θ^a = -Σ_c c^a_xc θ^c
            Accumulator t, c;
            for (std::size_t e = 0; e < 3; ++e) {
                t.add(w.theta(e), -g.bracket[x][e].get(a));
                c.add(w.curvature(e), -g.bracket[x][e].get(a));
            }
            CHECK(w.lie_derivative(X, w.theta(a)) == t.take());
            CHECK(w.lie_derivative(X, w.curvature(a)) == c.take());
        }
    }

    // transform by the identity is the identity; by an automorphism, it commutes with d
    const SparseMatrix inv = SparseMatrix::from_entries(3, 3, {{0, 0, -1}, {2, 1, -1}, {1, 2, -1}});
    for (std::size_t i = 0; i < w.dim(); ++i) {
        const Element e = SparseVector::unit(i);
        CHECK(w.transform(SparseMatrix::identity(3), e) == e);
        CHECK(w.apply_d(w.transform(inv, e)) == w.transform(inv, w.apply_d(e)));
        CHECK(w.transform(inv, w.transform(inv, e)) == e);
    }
}

TEST_CASE("abelian Weil algebras against the Koszul oracle")
{
    for (std::size_t k = 1; k <= 3; ++k)
        for (int q = 0; q <= 3; ++q) {
            CAPTURE(k);
            CAPTURE(q);
            TruncatedWeil w(builtin_lie_algebra("abelian:" + std::to_string(k)), q);
            auto h = weil_cohomology(w);
            CHECK(h.complex_dims == abelian_weil_dims_oracle(k, q));
            CHECK(h.dims == abelian_weil_cohomology_oracle(k, q));
            CHECK(h.euler == euler_characteristic(h.complex_dims));
        }
    // hand values: rank 2, q = 1 has classes θ_iΩ_j modulo d(θ0θ1) in degree 3 and θ0θ1Ω_j in degree 4
    CHECK(abelian_weil_cohomology_oracle(2, 1) == dims({1, 0, 0, 3, 2}));
    CHECK(abelian_weil_dims_oracle(2, 1) == dims({1, 2, 3, 4, 2}));
}

TEST_CASE("Euler characteristic matches cohomology")
{
    for (const auto& name : builtin_lie_algebra_names())
        for (int q = 0; q <= 2; ++q) {
            CAPTURE(name);
            CAPTURE(q);
            TruncatedWeil w = weil(name, q);
            auto h = weil_cohomology(w);
            CHECK(h.euler == euler_characteristic(h.complex_dims));
        }
}

TEST_CASE("basic subcomplex")
{
    // no relative data, or a component acting trivially: the whole complex
    for (const char* name : {"gl1", "gl1/O1"}) {
        TruncatedWeil w = weil(name, 1);
        auto b = basic_subcomplex(w);
        CHECK(b.complex.dims == dims({1, 1, 1, 1}));
        CHECK(weil_cohomology(w, true).dims == dims({1, 0, 0, 1}));
    }

    TruncatedWeil w = weil("gl2/O2", 1);
    auto b = basic_subcomplex(w);
    const LieAlgebraData& g = w.lie();
    for (const auto& slot : b.basis)
        for (const auto& e : slot) {
            CHECK(w.contract(g.compact[0], e).empty());
            CHECK(w.lie_derivative(g.compact[0], e).empty());
            CHECK(w.transform(g.components[0], e) == e);
        }
    auto h = weil_cohomology(w, true);
    CHECK(h.complex_dims == b.complex.dims);
    CHECK(h.euler == euler_characteristic(h.complex_dims));
    CHECK(h.complex_dims == dims({1, 1, 1, 2, 2, 1, 0}));
    CHECK(h.dims == dims({1, 0, 0, 1, 0, 0, 0}));
    // tr θ · tr Ω
    CHECK(h.representatives[3][0] ==
          w.multiply(w.theta(0) + w.theta(3), w.curvature(0) + w.curvature(3)));
    CHECK(weil_cohomology(weil("gl2/O2", 0), true).dims == dims({1, 1, 0, 0, 0}));

    // infinitesimal conditions always cut out a subcomplex (L = dι + ιd); a component map
    // that is not an automorphism does not
    LieAlgebraData span = builtin_lie_algebra("gl2");
    span.compact = {SparseVector::unit(1), SparseVector::unit(2)};
    CHECK_NOTHROW(basic_subcomplex(TruncatedWeil(span, 1)));
    LieAlgebraData bad = builtin_lie_algebra("sl2");
    bad.components.push_back(SparseMatrix::from_entries(3, 3, {{0, 0, -1}, {1, 1, 1}, {2, 2, 1}}));
    CHECK_THROWS_WITH_AS(basic_subcomplex(TruncatedWeil(bad, 1)), doctest::Contains("leaves the basic subspace"),
                         NotSubcomplex);
}

TEST_CASE("resource bound")
{
    CHECK(TruncatedWeil::estimated_dim(4, 2) == 16 * 15);
    try {
        TruncatedWeil w(builtin_lie_algebra("abelian:12"), 3);
        FAIL("expected WeilTooLarge");
    } catch (const WeilTooLarge& e) {
        CHECK(e.estimate == 4096 * 455);
        CHECK(std::string(e.what()).find("1863680") != std::string::npos);
    }
}
