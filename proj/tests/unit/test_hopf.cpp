#include "hopfcyc/hopf.hpp"
#include "hopfcyc/window.hpp"

#include <doctest.h>

using namespace hopfcyc;

namespace {

// A DG algebra dressed up with trivial coalgebra data; only used to exercise extend_d_cm.
HopfPtr dg_test_hopf()
{
    AlgebraData a = theta_c_algebra()->data();
    a.name = "theta-c";
    HopfData d;
    d.name = "dg-test";
    d.algebra = make_algebra(a);
    const std::size_t n = d.algebra->dim();
    const std::size_t one = *d.algebra->unit_index();
    for (std::size_t i = 0; i < n; ++i) {
        d.coproduct.push_back({{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(one), Rational(1)}});
        d.counit.emplace_back(i == one ? 1 : 0);
        d.antipode.push_back(SparseVector::unit(i));
    }
    return std::make_shared<HopfAlgebra>(std::move(d));
}

}  // namespace

TEST_CASE("built-in Hopf algebras satisfy the axioms")
{
    for (const auto& name : builtin_hopf_names()) {
        CAPTURE(name);
        auto h = builtin_hopf(name);
        auto rep = check_hopf_axioms(*h);
        CHECK_MESSAGE(rep.passed(), rep.summary());
        CHECK(check_modular_pair(*h, trivial_modular_pair(*h)).passed());
    }
    auto ext2 = builtin_hopf("exterior-primitive:2");
    CHECK(check_hopf_axioms(*ext2).passed());
    CHECK_THROWS(builtin_hopf("fun:Z0"));
    CHECK_THROWS(builtin_hopf("hopf"));
}

TEST_CASE("corrupted Hopf data is reported")
{
    auto h = builtin_hopf("group-algebra:Z3");
    HopfData d = h->data();
    d.antipode[1] = SparseVector::unit(1);  // S(g) = g instead of g²
    auto rep = check_hopf_axioms(HopfAlgebra(d));
    CHECK(rep.has_failure("antipode"));

    HopfData e = h->data();
    e.coproduct[1] = {{1, 0, Rational(1)}};  // Δg = g⊗1
    auto rep2 = check_hopf_axioms(HopfAlgebra(e));
    CHECK(rep2.has_failure("coproduct-multiplicative"));
}

TEST_CASE("twisted antipode")
{
    for (const auto& name : builtin_hopf_names()) {
        auto h = builtin_hopf(name);
        auto tw = twisted_antipode(*h, h->data().counit);
        for (std::size_t i = 0; i < h->dim(); ++i)
            CHECK(tw[i] == h->antipode(i));
    }
    auto z2 = builtin_hopf("group-algebra:Z2");
    CHECK(twisted_antipode(*z2, z2->data().counit)[1] == SparseVector::unit(1));

    // Fun(ℤ/3) with δ = evaluation at r: S̃(e_s) = Σ_{x+y=s} S(e_x) δ(e_y) = e_{r-s}
    auto f3 = builtin_hopf("fun:Z3");
    for (std::size_t r = 0; r < 3; ++r) {
        std::vector<Rational> delta(3);
        delta[r] = 1;
        auto tw = twisted_antipode(*f3, delta);
        for (std::size_t s = 0; s < 3; ++s) {
            Accumulator oracle;
            for (std::size_t x = 0; x < 3; ++x)
                for (std::size_t y = 0; y < 3; ++y)
                    if ((x + y) % 3 == s)
                        oracle.add(SparseVector::unit((3 - x) % 3), delta[y]);
            CHECK(tw[s] == oracle.take());
            CHECK(tw[s] == SparseVector::unit((r + 3 - s) % 3));
        }
    }
}

TEST_CASE("modular pairs")
{
    auto z2 = builtin_hopf("group-algebra:Z2");
    CHECK(check_modular_pair(*z2, builtin_modular_pair(*z2, "sigma:g")).passed());
    CHECK(check_modular_pair(*z2, builtin_modular_pair(*z2, "delta:sign")).passed());
    auto f3 = builtin_hopf("fun:Z3");
    CHECK(check_modular_pair(*f3, builtin_modular_pair(*f3, "delta:eval:e1")).passed());

    ModularPair bad = trivial_modular_pair(*z2);
    bad.sigma = SparseVector{{0, 1}, {1, 1}};
    auto rep = check_modular_pair(*z2, bad);
    CHECK(rep.has_failure("sigma-grouplike"));
    CHECK(rep.summary().find("Δσ ≠ σ⊗σ") != std::string::npos);
    CHECK_THROWS_AS(CMCyclicObject(z2, bad), std::invalid_argument);

    ModularPair bad_delta = trivial_modular_pair(*f3);
    bad_delta.delta = {1, 1, 0};
    CHECK(check_modular_pair(*f3, bad_delta).has_failure("delta-multiplicative"));
}

TEST_CASE("CM cyclic objects satisfy the cyclic axioms")
{
    struct Case {
        const char* hopf;
        const char* pair;
    };
    for (auto c : {Case{"group-algebra:Z2", "trivial"}, Case{"group-algebra:Z2", "sigma:g"},
                   Case{"group-algebra:Z2", "delta:sign"}, Case{"fun:Z3", "trivial"}, Case{"fun:Z3", "delta:eval:e1"},
                   Case{"exterior-primitive:1", "trivial"}, Case{"exterior-primitive:2", "trivial"}}) {
        CAPTURE(c.hopf);
        CAPTURE(c.pair);
        auto h = builtin_hopf(c.hopf);
        CMCyclicObject x(h, builtin_modular_pair(*h, c.pair));
        const int n = std::string(c.hopf) == "exterior-primitive:2" ? 3 : 4;
        auto rep = check_cyclic_axioms(x, n);
        CHECK_MESSAGE(rep.passed(), rep.summary());
        auto ops = check_operator_identities(x, n);
        CHECK_MESSAGE(ops.passed(), ops.summary());
        CHECK(check_internal_grading(x, n).passed());
    }
}

TEST_CASE("CM cyclic operator examples")
{
    auto z2 = builtin_hopf("group-algebra:Z2");
    CMCyclicObject x(z2, trivial_modular_pair(*z2));
    const Key g = x.key_of({1});
    CHECK(apply_cyclic(x, 1, SparseVector::unit(g)) == SparseVector::unit(g));

    auto psi = builtin_hopf("exterior-primitive:1");
    CMCyclicObject y(psi, trivial_modular_pair(*psi));
    const Key p = y.key_of({psi->algebra().index("psi")});
    CHECK(apply_cyclic(y, 1, SparseVector::unit(p)) == SparseVector::unit(p, -1));

    // δ₀ then σ₀ on level 1
    for (std::size_t i = 0; i < psi->dim(); ++i) {
        SparseVector e = SparseVector::unit(y.key_of({i}));
        CHECK(apply_degeneracy(y, 2, 0, apply_face(y, 2, 0, e)) == e);
    }
}

TEST_CASE("extended differential on tensors")
{
    auto psi = builtin_hopf("exterior-primitive:1");
    CMCyclicObject y(psi, trivial_modular_pair(*psi));
    CHECK(extend_d_cm(y, 2, SparseVector::unit(3)).empty());

    auto h = dg_test_hopf();
    CMCyclicObject x(h, trivial_modular_pair(*h));
    const auto& a = h->algebra();
    const std::size_t t = a.index("t"), c = a.index("c");
    CHECK(extend_d_cm(x, 1, SparseVector::unit(x.key_of({t}))) == SparseVector::unit(x.key_of({c})));
    SparseVector expected{{x.key_of({c, t}), 1}, {x.key_of({t, c}), -1}};
    CHECK(extend_d_cm(x, 2, SparseVector::unit(x.key_of({t, t}))) == expected);
    for (Key k : x.keys(2, 2))
        CHECK(extend_d_cm(x, 2, extend_d_cm(x, 2, SparseVector::unit(k))).empty());
}

TEST_CASE("truncated Hopf windows")
{
    auto psi = builtin_hopf("exterior-primitive:1");
    CMCyclicObject y(psi, trivial_modular_pair(*psi));
    WindowSpec spec;
    spec.max_level = 6;
    spec.min_degree = 0;
    spec.max_degree = 4;
    ComplexWindow w0(y, truncated(spec, 0));
    for (int n = 0; n <= 4; ++n)
        for (const auto& s : w0.slot(n).summands)
            CHECK(s.internal == 0);
    // weights never exceed the level, so l >= max level is the full window
    ComplexWindow full(y, spec), big(y, truncated(spec, 7));
    CHECK(full.dimensions() == big.dimensions());

    std::vector<std::size_t> hc;
    for (int i = 0; i <= 3; ++i)
        hc.push_back(compute_HC(y, i, truncated(spec, 1)));
    MESSAGE("HC^i(exterior-primitive:1)_1 = " << hc[0] << hc[1] << hc[2] << hc[3]);
    CHECK(hc == std::vector<std::size_t>{1, 0, 2, 0});
}
