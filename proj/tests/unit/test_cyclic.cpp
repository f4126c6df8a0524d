#include "hopfcyc/cochains.hpp"
#include "hopfcyc/window.hpp"

#include <doctest.h>

#include <random>

using namespace hopfcyc;

namespace {

std::shared_ptr<AlgebraCochains> cochains(const std::string& name, bool normalized = false)
{
    AlgebraPtr a = builtin_algebra(name);
    if (normalized && !a->unit_index())
        a = rebase_unit(*a).algebra;
    return std::make_shared<AlgebraCochains>(a, normalized);
}

// Evaluates a cochain given on keys at an explicit tuple.
Rational evaluate(const AlgebraCochains& x, const SparseVector& phi, const std::vector<std::size_t>& t)
{
    return phi.get(x.key_of(t));
}

std::vector<std::vector<std::size_t>> tuples(std::size_t dim, std::size_t len)
{
    std::vector<std::vector<std::size_t>> out{{}};
    for (std::size_t p = 0; p < len; ++p) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& t : out)
            for (std::size_t i = 0; i < dim; ++i) {
                auto u = t;
                u.push_back(i);
                next.push_back(u);
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("dga cyclic objects satisfy the cyclic axioms")
{
    for (const auto& name : {"q", "ext:1", "ext:2", "theta-c", "group:Z2", "mat2"}) {
        CAPTURE(name);
        auto x = cochains(name);
        auto rep = check_cyclic_axioms(*x, 3);
        CHECK_MESSAGE(rep.passed(), rep.summary());
        auto ops = check_operator_identities(*x, 3);
        CHECK_MESSAGE(ops.passed(), ops.summary());
    }
}

TEST_CASE("negated cyclic operator is caught")
{
    auto x = cochains("q");
    NegatedCyclic bad(*x);
    auto rep = check_cyclic_axioms(bad, 2);
    CHECK_FALSE(rep.passed());
    CHECK(rep.has_failure("tau-power"));
}

TEST_CASE("literal B factor fails B^2 = 0")
{
    auto x = cochains("ext:1");
    CHECK(check_operator_identities(*x, 4, BConvention::kStandard).passed());
    auto lit = check_operator_identities(*x, 4, BConvention::kLiteral);
    CHECK_FALSE(lit.passed());
}

TEST_CASE("graded cyclic operator sign on the exterior algebra")
{
    auto x = cochains("ext:1");
    const std::size_t t = x->algebra().index("t");
    SparseVector phi = SparseVector::unit(x->key_of({t, t}));
    SparseVector tphi = apply_cyclic(*x, 1, phi);
    CHECK(evaluate(*x, tphi, {t, t}) == -1);
}

TEST_CASE("b on level 0 of an ungraded algebra")
{
    auto x = cochains("mat2");
    const auto& a = x->algebra();
    std::mt19937_64 rng(3);
    std::vector<Entry> e;
    for (std::size_t i = 0; i < a.dim(); ++i)
        e.emplace_back(x->key_of({i}), Rational(static_cast<long long>(rng() % 9) - 4));
    SparseVector phi = SparseVector::from_unsorted(e);
    SparseVector bphi = apply_b(*x, 0, phi);
    auto value = [&](const Element& el) {
        Rational s;
        for (const auto& [k, c] : el)
            s += c * evaluate(*x, phi, {static_cast<std::size_t>(k)});
        return s;
    };
    for (const auto& t : tuples(a.dim(), 2)) {
        Rational expected = value(a.product(t[0], t[1])) - value(a.product(t[1], t[0]));
        CHECK(evaluate(*x, bphi, t) == expected);
    }
    // a trace is a b-cocycle
    auto tr = a.trace()->values;
    std::vector<Entry> te;
    for (const auto& [k, c] : tr)
        te.emplace_back(x->key_of({static_cast<std::size_t>(k)}), c);
    CHECK(apply_b(*x, 0, SparseVector::from_unsorted(te)).empty());
}

// Direct summation: (Bφ)(a_0..a_{n-1}) = Σ_j (-1)^{j(n-1)} φ(1, a_{n-j}, .., a_{n-1}, a_0, .., a_{n-j-1})
// for normalized φ on an ungraded algebra.
TEST_CASE("B agrees with direct summation on normalized cochains")
{
    auto x = cochains("group:Z3", true);
    const auto& a = x->algebra();
    std::mt19937_64 rng(9);
    for (int n = 1; n <= 3; ++n) {
        std::vector<Entry> e;
        for (Key k : x->keys(n, 0))
            e.emplace_back(k, Rational(static_cast<long long>(rng() % 7) - 3));
        SparseVector phi = SparseVector::from_unsorted(e);
        SparseVector bphi = apply_B(*x, n, phi);
        const std::size_t one = *a.unit_index();
        for (const auto& t : tuples(a.dim(), static_cast<std::size_t>(n))) {
            Rational expected;
            for (int j = 0; j < n; ++j) {
                std::vector<std::size_t> arg{one};
                for (int p = 0; p < n; ++p)
                    arg.push_back(t[static_cast<std::size_t>((n - j + p) % n)]);
                expected += sign_power(static_cast<long long>(j) * (n - 1)) * evaluate(*x, phi, arg);
            }
            CHECK(evaluate(*x, bphi, t) == expected);
        }
    }
}

TEST_CASE("window slot dimensions for the ground field")
{
    auto x = cochains("q");
    WindowSpec spec;
    spec.max_level = 4;
    spec.min_degree = 0;
    spec.max_degree = 4;
    ComplexWindow w(*x, spec);
    CHECK(w.dimensions() == std::vector<std::size_t>{1, 1, 2, 2, 3});
    auto xn = cochains("q", true);
    ComplexWindow wn(*xn, spec);
    CHECK(wn.dimensions() == std::vector<std::size_t>{1, 0, 1, 0, 1});

    auto empty = std::make_shared<AlgebraCochains>(adjoin_unit(*vanishing_function_algebra(1)));
    CHECK(empty->algebra().dim() == 1);
}

TEST_CASE("cyclic cohomology of the ground field and of Q[Z/2]")
{
    WindowSpec spec;
    spec.max_level = 6;
    for (bool normalized : {false, true}) {
        auto x = cochains("q", normalized);
        std::vector<std::size_t> hc;
        for (int n = 0; n <= 4; ++n)
            hc.push_back(compute_HC(*x, n, spec));
        CHECK(hc == std::vector<std::size_t>{1, 0, 1, 0, 1});
    }
    auto z2 = cochains("group:Z2");
    std::vector<std::size_t> hh;
    for (int n = 0; n <= 3; ++n)
        hh.push_back(compute_HH(*z2, n, spec));
    CHECK(hh == std::vector<std::size_t>{2, 0, 0, 0});

    auto hp = compute_HP(*cochains("q"), 0, spec);
    CHECK(hp.dim == 1);
    CHECK(hp.stabilized);

    WindowSpec tiny;
    tiny.max_level = 2;
    CHECK_THROWS_AS(compute_HC(*cochains("q"), 4, tiny), WindowTooSmall);
}

TEST_CASE("periodicity shift")
{
    auto x = cochains("q");
    WindowSpec spec;
    spec.max_level = 5;
    spec.min_degree = 0;
    spec.max_degree = 4;
    ComplexWindow w(*x, spec);
    auto reps = w.cohomology_representatives(0);
    REQUIRE(reps.size() == 1);
    SparseVector s = periodicity_shift(w, 0, reps[0]);
    CHECK(w.differential(2).apply(s).empty());
    // the image is not a coboundary
    CHECK_FALSE(solve_linear(w.differential(1), s).has_value());
    CHECK(periodicity_shift(w, 0, SparseVector{}).empty());
    CHECK_THROWS_AS(periodicity_shift(w, 3, SparseVector{}), WindowTooSmall);
}
