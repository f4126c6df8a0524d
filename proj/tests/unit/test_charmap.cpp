#include "hopfcyc/charmap.hpp"

#include <doctest.h>

using namespace hopfcyc;

namespace {

Element el(const GradedAlgebra& a, const std::map<std::string, Rational>& c) { return a.parse_element(c); }

// ψ acts on M₂(Λ[t]) by the graded commutator with an odd element g with g² = 0.
HopfAction inner_action(const HopfPtr& h, const AlgebraPtr& a, const Element& g)
{
    const GradedAlgebra& A = *a;
    const std::size_t psi = h->algebra().index("psi");
    return HopfAction(h, a, [&A, &g, &h, psi](std::size_t x, std::size_t b) -> Element {
        const Element e = SparseVector::unit(b);
        if (x != psi)
            return h->counit(x).is_zero() ? Element{} : e;
        Element r = A.multiply(g, e);
        r.add_scaled(A.multiply(e, g), -koszul(1, A.degree(b)));
        return r;
    });
}

GradedFunctional weight_one_trace(const GradedAlgebra& a)
{
    return GradedFunctional{1, el(a, {{"t@11", 1}, {"t@22", 1}})};
}

struct InnerModel {
    HopfPtr hopf = builtin_hopf("exterior-primitive:1");
    AlgebraPtr algebra = builtin_algebra("mat2:ext:1");
    Element g = el(*algebra, {{"t@12", 1}});
    HopfAction pi = inner_action(hopf, algebra, g);
    GradedFunctional trace = weight_one_trace(*algebra);
    ModularPair pair = trivial_modular_pair(*hopf);
};

}  // namespace

TEST_CASE("actions: trivial and inner actions pass, corrupted ones are caught")
{
    auto h = builtin_hopf("group-algebra:Z2");
    auto a = builtin_algebra("ext:1");
    CHECK(check_action(trivial_action(h, a)).passed());

    InnerModel m;
    auto rep = check_action(m.pi);
    CHECK_MESSAGE(rep.passed(), rep.summary());
    CHECK(check_invariant_trace(m.pi, m.trace, m.pair).passed());

    // ψ acting by left multiplication with g is not a derivation
    const GradedAlgebra& A = *m.algebra;
    const std::size_t psi = m.hopf->algebra().index("psi");
    HopfAction left(m.hopf, m.algebra, [&](std::size_t x, std::size_t b) -> Element {
        if (x != psi)
            return SparseVector::unit(b);
        return A.multiply(m.g, SparseVector::unit(b));
    });
    CHECK(check_action(left).has_failure("leibniz"));

    // every idempotent of Fun(ℤ/2) acting as the identity
    HopfAction all_identity(builtin_hopf("fun:Z2"), a, [](std::size_t, std::size_t b) { return SparseVector::unit(b); });
    auto bad = check_action(all_identity);
    CHECK(bad.has_failure("unit"));
    CHECK(bad.has_failure("unit-element"));
    CHECK(bad.has_failure("multiplicative"));
}

TEST_CASE("traces: closedness, invariance and the σ condition")
{
    auto h = builtin_hopf("group-algebra:Z2");
    auto tc = builtin_algebra("theta-c");
    auto pi = trivial_action(h, tc);
    GradedFunctional bad{2, el(*tc, {{"c", 1}})};
    auto rep = check_invariant_trace(pi, bad, trivial_modular_pair(*h));
    CHECK(rep.has_failure("closed"));
    CHECK(rep.violations().front().witness.find("∫ dω ≠ 0") != std::string::npos);

    GradedFunctional off{1, el(*tc, {{"c", 1}})};
    CHECK(check_invariant_trace(pi, off, trivial_modular_pair(*h)).has_failure("weight"));

    // ℤ/2 swapping two points: the sum is invariant, but σ = g breaks the trace property
    auto fun = builtin_algebra("fun:2");
    HopfAction swap(h, fun, [](std::size_t x, std::size_t b) { return SparseVector::unit(x == 0 ? b : 1 - b); });
    REQUIRE(check_action(swap).passed());
    GradedFunctional sum{0, el(*fun, {{"e0", 1}, {"e1", 1}})};
    CHECK(check_invariant_trace(swap, sum, trivial_modular_pair(*h)).passed());
    CHECK(check_invariant_trace(swap, sum, builtin_modular_pair(*h, "sigma:g")).has_failure("sigma-trace"));
    GradedFunctional point{0, el(*fun, {{"e0", 1}})};
    CHECK(check_invariant_trace(swap, point, trivial_modular_pair(*h)).has_failure("delta-invariance"));
}

TEST_CASE("characteristic map values")
{
    auto h = builtin_hopf("group-algebra:Z2");
    auto a = builtin_algebra("ext:1");
    auto pi = trivial_action(h, a);
    GradedFunctional tr{1, el(*a, {{"t", 1}})};
    CMCyclicObject cm(h, trivial_modular_pair(*h));
    AlgebraCochains cc(a);
    CharacteristicMap chi(pi, tr, cm, cc);

    CHECK(chi.apply(0, SparseVector::unit(0)) == tr.values);
    // χ(g)(a_0, a_1) = ∫ a_0 a_1
    CHECK(chi.apply(1, cm.tensor({{{"g"}, 1}})) == cc.cochain({{{"1", "t"}, 1}, {{"t", "1"}, 1}}));

    InnerModel m;
    CMCyclicObject cm2(m.hopf, m.pair);
    AlgebraCochains cc2(m.algebra);
    CharacteristicMap chi2(m.pi, m.trace, cm2, cc2);
    // χ(ψ)(a_0, a_1) = (-1)^{|a_0|} ∫ a_0 [g, a_1], checked pointwise against the formula
    const SparseVector img = chi2.apply(1, cm2.tensor({{{"psi"}, 1}}));
    const GradedAlgebra& A = *m.algebra;
    const std::size_t psi = m.hopf->algebra().index("psi");
    std::size_t nonzero = 0;
    for (std::size_t a0 = 0; a0 < A.dim(); ++a0)
        for (std::size_t a1 = 0; a1 < A.dim(); ++a1) {
            const Element inner = m.pi.apply(psi, a1);
            const Rational want = m.trace(A.multiply(SparseVector::unit(a0), inner)) * sign_power(A.degree(a0));
            CHECK(img.get(cc2.key_of({a0, a1})) == want);
            nonzero += want.is_zero() ? 0 : 1;
        }
    CHECK(nonzero > 0);

    CHECK_THROWS_AS(CharacteristicMap(m.pi, m.trace, cm2, AlgebraCochains(builtin_algebra("mat2:ext:1"))),
                    std::invalid_argument);
}

TEST_CASE("characteristic map is a map of cyclic objects")
{
    {
        auto h = builtin_hopf("group-algebra:Z2");
        auto fun = builtin_algebra("fun:2");
        HopfAction swap(h, fun, [](std::size_t x, std::size_t b) { return SparseVector::unit(x == 0 ? b : 1 - b); });
        CMCyclicObject cm(h, trivial_modular_pair(*h));
        AlgebraCochains cc(fun);
        CharacteristicMap chi(swap, GradedFunctional{0, el(*fun, {{"e0", 1}, {"e1", 1}})}, cm, cc);
        auto rep = check_cyclic_map(chi, 4);
        CHECK_MESSAGE(rep.passed(), rep.summary());
    }
    {
        InnerModel m;
        CMCyclicObject cm(m.hopf, m.pair);
        AlgebraCochains cc(m.algebra);
        CharacteristicMap chi(m.pi, m.trace, cm, cc);
        auto rep = check_cyclic_map(chi, 3);
        CHECK_MESSAGE(rep.passed(), rep.summary());
        CHECK(check_filtration_vanishing(chi, 3).passed());
    }
    {
        // DG target: trivial ℤ/2 action on Λ[θ, c] with the closed trace on θc
        auto h = builtin_hopf("group-algebra:Z2");
        auto tc = builtin_algebra("theta-c");
        auto pi = trivial_action(h, tc);
        GradedFunctional tr{3, el(*tc, {{"tc", 1}})};
        REQUIRE(check_invariant_trace(pi, tr, trivial_modular_pair(*h)).passed());
        CMCyclicObject cm(h, trivial_modular_pair(*h));
        AlgebraCochains cc(tc);
        CharacteristicMap chi(pi, tr, cm, cc);
        auto rep = check_cyclic_map(chi, 3);
        CHECK_MESSAGE(rep.passed(), rep.summary());
    }
}

TEST_CASE("twist cocycles")
{
    InnerModel m;
    const GradedAlgebra& A = *m.algebra;
    const std::size_t psi = m.hopf->algebra().index("psi");

    auto triv = trivial_twist(m.pi);
    CHECK(check_twist_cocycle(m.pi, triv, m.pair).passed());
    CHECK(check_action(twist_action(m.pi, triv, m.pair)).passed());

    const Element u = el(A, {{"t@11", 1}});
    TwistCocycle rho = triv;
    rho.plus[psi] = u;
    rho.minus[psi] = -u;
    auto rep = check_twist_cocycle(m.pi, rho, m.pair);
    CHECK_MESSAGE(rep.passed(), rep.summary());

    // the twisted action is the graded commutator with g + u
    HopfAction twisted = twist_action(m.pi, rho, m.pair);
    HopfAction expected = inner_action(m.hopf, m.algebra, m.g + u);
    for (std::size_t x = 0; x < m.hopf->dim(); ++x)
        for (std::size_t b = 0; b < A.dim(); ++b)
            CHECK(twisted.apply(x, b) == expected.apply(x, b));
    CHECK(check_action(twisted).passed());
    CHECK(check_invariant_trace(twisted, m.trace, m.pair).passed());

    TwistCocycle no_inverse = rho;
    no_inverse.minus[psi] = u;
    CHECK(check_twist_cocycle(m.pi, no_inverse, m.pair).has_failure("convolution-inverse"));
    CHECK_THROWS_WITH_AS(twist_action(m.pi, no_inverse, m.pair), doctest::Contains("convolution-inverse"), std::invalid_argument);

    TwistCocycle unnormalized = triv;
    unnormalized.plus[0] = A.unit().scaled(2);
    CHECK(check_twist_cocycle(m.pi, unnormalized, m.pair).has_failure("normalization"));

    TwistCocycle wrong_degree = triv;
    wrong_degree.plus[psi] = el(A, {{"1@12", 1}});
    wrong_degree.minus[psi] = el(A, {{"1@12", -1}});
    CHECK(check_twist_cocycle(m.pi, wrong_degree, m.pair).has_failure("degree"));

    HopfAction shifted = inner_action(m.hopf, m.algebra, el(A, {{"t@12", 1}, {"t@11", 1}}));
    TwistCocycle v = triv;
    v.plus[psi] = el(A, {{"t@21", 1}});
    v.minus[psi] = el(A, {{"t@21", -1}});
    CHECK(check_twist_cocycle(shifted, v, m.pair).passed());
}

TEST_CASE("amplification corners recover both characteristic maps")
{
    InnerModel m;
    const GradedAlgebra& A = *m.algebra;
    const std::size_t psi = m.hopf->algebra().index("psi");
    TwistCocycle rho = trivial_twist(m.pi);
    rho.plus[psi] = el(A, {{"t@11", 1}});
    rho.minus[psi] = el(A, {{"t@11", -1}});
    HopfAction twisted = twist_action(m.pi, rho, m.pair);

    AmplifiedTwist amp = amplify_twist(m.pi, rho, m.trace);
    REQUIRE(check_action(amp.action).passed());
    REQUIRE(check_twist_cocycle(amp.action, amp.rho, m.pair).passed());
    HopfAction twisted2 = twist_action(amp.action, amp.rho, m.pair);
    REQUIRE(check_action(twisted2).passed());
    REQUIRE(check_invariant_trace(twisted2, amp.trace, m.pair).passed());

    CMCyclicObject cm(m.hopf, m.pair);
    AlgebraCochains small(m.algebra);
    AlgebraCochains big(amp.algebra);
    CharacteristicMap chi_pi(m.pi, m.trace, cm, small);
    CharacteristicMap chi_tw(twisted, m.trace, cm, small);
    CharacteristicMap chi_big(twisted2, amp.trace, cm, big);

    for (const auto& t : {std::vector<std::string>{"psi"}, std::vector<std::string>{"psi", "psi"},
                          std::vector<std::string>{"1", "psi"}}) {
        const int level = static_cast<int>(t.size());
        const SparseVector x = cm.tensor({{t, 1}});
        const SparseVector phi = chi_big.apply(level, x);
        CHECK(pullback_cochain(big, small, amp.corner_second, level, phi) == chi_pi.apply(level, x));
        CHECK(pullback_cochain(big, small, amp.corner_first, level, phi) == chi_tw.apply(level, x));
    }
    CHECK(chi_pi.apply(1, cm.tensor({{{"psi"}, 1}})) != chi_tw.apply(1, cm.tensor({{{"psi"}, 1}})));
}

TEST_CASE("coboundary certificates")
{
    InnerModel m;
    CMCyclicObject cm(m.hopf, m.pair);
    AlgebraCochains cc(m.algebra);
    CharacteristicMap chi(m.pi, m.trace, cm, cc);
    const SparseVector chi_psi = chi.apply(1, cm.tensor({{{"psi"}, 1}}));

    WindowSpec spec;
    spec.max_level = 3;
    spec.min_degree = 0;
    spec.max_degree = 2;
    spec.internal = WindowSpec::weights(0, 0);
    ComplexWindow w(cc, spec);
    const SparseVector phi = w.to_slot(1, {{{1, 0}, chi_psi}});

    CertificateEvidence ev;
    auto x = coboundary_certificate(w, 1, phi, &ev);
    REQUIRE(x.has_value());
    CHECK(ev.boundary_rank == ev.augmented_rank);
    CHECK_FALSE(verify_certificate(w, 1, *x, phi).has_value());
    CHECK(w.differential(0).apply(*x) == phi);

    // by hand, X(a) = -∫ g a is a primitive
    const SparseVector by_hand = w.to_slot(0, {{{0, 0}, cc.cochain({{{"1@21"}, -1}, {{"t@21"}, 0}})}});
    CHECK_FALSE(verify_certificate(w, 1, by_hand, phi).has_value());

    SparseVector perturbed = *x;
    perturbed.add_scaled(SparseVector::unit(0), 1);
    auto mismatch = verify_certificate(w, 1, perturbed, phi);
    REQUIRE(mismatch.has_value());
    CHECK(mismatch->find("differs") != std::string::npos);

    // non-closed input
    SparseVector open = phi;
    open.add_scaled(w.to_slot(1, {{{1, 0}, cc.cochain({{{"1@11", "1@12"}, 1}})}}), 1);
    CHECK_THROWS_AS(coboundary_certificate(w, 1, open), NotClosed);
}

TEST_CASE("a trace generator is not a coboundary")
{
    auto q = builtin_algebra("q");
    AlgebraCochains cc(q);
    WindowSpec spec;
    spec.max_level = 3;
    spec.min_degree = 0;
    spec.max_degree = 2;
    ComplexWindow w(cc, spec);
    const SparseVector phi = w.to_slot(0, {{{0, 0}, cc.cochain({{{"1"}, 1}})}});
    CertificateEvidence ev;
    CHECK_FALSE(coboundary_certificate(w, 0, phi, &ev).has_value());
    CHECK(ev.augmented_rank == ev.boundary_rank + 1);
}
