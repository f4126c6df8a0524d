#include "hopfcyc/charmap.hpp"

#include <sstream>
#include <stdexcept>

namespace hopfcyc {

namespace {

Element shift_keys(const Element& v, Key by)
{
    std::vector<Entry> e;
    e.reserve(v.size());
    for (const auto& [k, c] : v)
        e.emplace_back(k + by, c);
    return SparseVector::from_unsorted(std::move(e));
}

// Degree of a homogeneous element; nullopt for 0 or mixed degrees.
std::optional<int> degree_of(const GradedAlgebra& a, const Element& v)
{
    int d = 0;
    if (v.empty() || !a.is_homogeneous(v, &d))
        return std::nullopt;
    return d;
}

Element evaluate_on(const std::vector<Element>& images, const Element& h)
{
    Accumulator acc;
    for (const auto& [i, c] : h)
        acc.add(images[i], c);
    return acc.take();
}

std::string hname(const HopfAction& pi, std::size_t i) { return pi.hopf().algebra().basis_name(i); }
std::string aname(const HopfAction& pi, std::size_t i) { return pi.algebra().basis_name(i); }

std::vector<Key> keys_at(const CyclicObject& x, int level)
{
    std::vector<Key> all;
    auto [lo, hi] = x.internal_range(level);
    for (int e = lo; e <= hi; ++e) {
        auto ks = x.keys(level, e);
        all.insert(all.end(), ks.begin(), ks.end());
    }
    return all;
}

}  // namespace

// --- actions -------------------------------------------------------------------------

HopfAction::HopfAction(HopfPtr hopf, AlgebraPtr algebra, const Rule& rule)
    : hopf_(std::move(hopf)), algebra_(std::move(algebra))
{
    if (!hopf_ || !algebra_)
        throw std::invalid_argument("action needs a Hopf algebra and an algebra");
    const std::size_t n = algebra_->dim();
    table_.reserve(hopf_->dim() * n);
    for (std::size_t h = 0; h < hopf_->dim(); ++h)
        for (std::size_t a = 0; a < n; ++a) {
            Element v = rule(h, a);
            for (const auto& [k, c] : v)
                if (k >= n)
                    throw std::invalid_argument("action image outside the algebra basis");
            table_.push_back(std::move(v));
        }
}

Element HopfAction::apply(std::size_t h, const Element& a) const
{
    Accumulator acc;
    for (const auto& [i, c] : a)
        acc.add(apply(h, i), c);
    return acc.take();
}

Element HopfAction::apply(const Element& h, const Element& a) const
{
    Accumulator acc;
    for (const auto& [j, c] : h)
        acc.add(apply(j, a), c);
    return acc.take();
}

HopfAction trivial_action(HopfPtr hopf, AlgebraPtr algebra)
{
    const HopfAlgebra& h = *hopf;
    return HopfAction(std::move(hopf), std::move(algebra), [&h](std::size_t x, std::size_t a) {
        return h.counit(x).is_zero() ? Element{} : SparseVector::unit(a, h.counit(x));
    });
}

HopfAction extend_to_unitization(const HopfAction& pi, AlgebraPtr unitized)
{
    if (unitized->dim() != pi.algebra().dim() + 1)
        throw std::invalid_argument("unitization must add exactly one basis element");
    const HopfAlgebra& h = pi.hopf();
    return HopfAction(pi.hopf_ptr(), std::move(unitized), [&](std::size_t x, std::size_t a) -> Element {
        if (a == 0)
            return h.counit(x).is_zero() ? Element{} : SparseVector::unit(0, h.counit(x));
        return shift_keys(pi.apply(x, a - 1), 1);
    });
}

GradedFunctional extend_to_unitization(const GradedFunctional& trace)
{
    return GradedFunctional{trace.weight, shift_keys(trace.values, 1)};
}

CheckReport check_action(const HopfAction& pi)
{
    const HopfAlgebra& H = pi.hopf();
    const GradedAlgebra& A = pi.algebra();
    CheckReport rep("action of " + H.name() + " on " + A.name());
    const std::size_t nh = H.dim();
    const std::size_t na = A.dim();

    const Element& one = H.algebra().unit();
    for (std::size_t a = 0; a < na; ++a) {
        rep.count();
        const Element got = pi.apply(one, SparseVector::unit(a));
        if (got != SparseVector::unit(a))
            rep.fail("unit", "π(1)(" + aname(pi, a) + ") = " + A.format(got));
    }

    for (std::size_t h = 0; h < nh; ++h)
        for (std::size_t a = 0; a < na; ++a) {
            rep.count();
            const Element& v = pi.apply(h, a);
            int d = 0;
            if (!v.empty() && (!A.is_homogeneous(v, &d) || d != H.degree(h) + A.degree(a)))
                rep.fail("degree", "π(" + hname(pi, h) + ")(" + aname(pi, a) + ") = " + A.format(v));
        }

    for (std::size_t h = 0; h < nh; ++h)
        for (std::size_t g = 0; g < nh; ++g) {
            const Element& hg = H.algebra().product(h, g);
            for (std::size_t a = 0; a < na; ++a) {
                rep.count();
                const Element lhs = pi.apply(hg, SparseVector::unit(a));
                const Element rhs = pi.apply(h, pi.apply(g, a));
                if (lhs != rhs)
                    rep.fail("multiplicative", "π(" + hname(pi, h) + "·" + hname(pi, g) + ")(" + aname(pi, a) +
                                                   ") = " + A.format(lhs) + " but π(h)π(g) gives " + A.format(rhs));
            }
        }

    // π(h)(ab) = Σ (-1)^{|a||h_(1)|} π(h_(0))(a) π(h_(1))(b)
    for (std::size_t h = 0; h < nh; ++h)
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t b = 0; b < na; ++b) {
                rep.count();
                const Element lhs = pi.apply(h, A.product(a, b));
                Accumulator acc;
                for (const auto& t : H.coproduct(h)) {
                    const Element& x = pi.apply(t.left, a);
                    if (x.empty())
                        continue;
                    const Element& y = pi.apply(t.right, b);
                    if (y.empty())
                        continue;
                    acc.add(A.multiply(x, y), t.coef * koszul(A.degree(a), H.degree(t.right)));
                }
                const Element rhs = acc.take();
                if (lhs != rhs)
                    rep.fail("leibniz", "π(" + hname(pi, h) + ")(" + aname(pi, a) + "·" + aname(pi, b) +
                                            ") = " + A.format(lhs) + " but the coproduct rule gives " + A.format(rhs));
            }

    if (A.has_unit())
        for (std::size_t h = 0; h < nh; ++h) {
            rep.count();
            const Element got = pi.apply(h, A.unit());
            const Element want = A.unit().scaled(H.counit(h));
            if (got != want)
                rep.fail("unit-element", "π(" + hname(pi, h) + ")(1) = " + A.format(got));
        }

    // d π(h)(a) = π(dh)(a) + (-1)^{|h|} π(h)(da)
    if (A.has_differential() || H.algebra().has_differential())
        for (std::size_t h = 0; h < nh; ++h)
            for (std::size_t a = 0; a < na; ++a) {
                rep.count();
                const Element lhs = A.has_differential() ? A.apply_d(pi.apply(h, a)) : Element{};
                Element rhs;
                if (H.algebra().has_differential())
                    rhs += pi.apply(H.algebra().d(h), SparseVector::unit(a));
                if (A.has_differential())
                    rhs.add_scaled(pi.apply(h, A.d(a)), sign_power(H.degree(h)));
                if (lhs != rhs)
                    rep.fail("d-compatibility", "d π(" + hname(pi, h) + ")(" + aname(pi, a) + ") = " + A.format(lhs) +
                                                    " but π(dh)(a) ± π(h)(da) = " + A.format(rhs));
            }
    return rep;
}

CheckReport check_invariant_trace(const HopfAction& pi, const GradedFunctional& trace, const ModularPair& pair)
{
    const HopfAlgebra& H = pi.hopf();
    const GradedAlgebra& A = pi.algebra();
    CheckReport rep("trace on " + A.name());
    const std::size_t na = A.dim();

    for (const auto& [i, c] : trace.values) {
        rep.count();
        if (i >= na)
            rep.fail("weight", "trace value on index " + std::to_string(i) + " outside the basis");
        else if (A.degree(i) != trace.weight)
            rep.fail("weight", "∫ " + aname(pi, i) + " = " + c.str() + " but the degree is " +
                                   std::to_string(A.degree(i)));
    }
    if (!rep.passed())
        return rep;

    if (A.has_differential())
        for (std::size_t i = 0; i < na; ++i) {
            rep.count();
            const Rational v = trace(A.d(i));
            if (!v.is_zero())
                rep.fail("closed", "∫ dω ≠ 0 at ω = " + aname(pi, i) + ": " + v.str());
        }

    const auto twisted = twisted_antipode(H, pair.delta);
    for (std::size_t h = 0; h < H.dim(); ++h)
        for (std::size_t a = 0; a < na; ++a) {
            const Element& ha = pi.apply(h, a);
            for (std::size_t b = 0; b < na; ++b) {
                rep.count();
                const Rational lhs = ha.empty() ? Rational() : trace(A.multiply(ha, SparseVector::unit(b)));
                const Element sb = pi.apply(twisted[h], SparseVector::unit(b));
                const Rational rhs = sb.empty() ? Rational()
                                                : trace(A.multiply(SparseVector::unit(a), sb)) *
                                                      koszul(H.degree(h), A.degree(a));
                if (lhs != rhs)
                    rep.fail("delta-invariance", "h = " + hname(pi, h) + ", a = " + aname(pi, a) +
                                                     ", b = " + aname(pi, b) + ": " + lhs.str() + " vs " + rhs.str());
            }
        }

    for (std::size_t a = 0; a < na; ++a) {
        const Element sa = pi.apply(pair.sigma, SparseVector::unit(a));
        for (std::size_t b = 0; b < na; ++b) {
            rep.count();
            const Rational lhs = trace(A.product(a, b));
            const Rational rhs = sa.empty() ? Rational()
                                            : trace(A.multiply(SparseVector::unit(b), sa)) *
                                                  koszul(A.degree(a), A.degree(b));
            if (lhs != rhs)
                rep.fail("sigma-trace", "a = " + aname(pi, a) + ", b = " + aname(pi, b) + ": " + lhs.str() +
                                            " vs " + rhs.str());
        }
    }
    return rep;
}

// --- the characteristic map ----------------------------------------------------------

CharacteristicMap::CharacteristicMap(const HopfAction& pi, GradedFunctional trace, const CMCyclicObject& source,
                                     const AlgebraCochains& target)
    : pi_(&pi), trace_(std::move(trace)), source_(&source), target_(&target)
{
    if (source.hopf_ptr() != pi.hopf_ptr())
        throw std::invalid_argument("characteristic map: source Hopf algebra differs from the acting one");
    if (target.algebra_ptr() != pi.algebra_ptr())
        throw std::invalid_argument("characteristic map: target cochains are not on the acted-on algebra");
    if (target.normalized())
        throw std::invalid_argument("characteristic map needs unnormalized target cochains");
}

SparseVector CharacteristicMap::apply_basis(int level, Key key) const
{
    const Tuple hs = source_->decode(level, key);
    const GradedAlgebra& A = pi_->algebra();
    const std::size_t na = A.dim();
    Accumulator out;
    Tuple as;
    // Depth-first over a_0..a_k with the running product a_0 π(h¹)(a_1)..π(h^j)(a_j).
    auto rec = [&](auto&& self, int j, const Element& prod, int prefix_deg, long long sign_exp) -> void {
        if (j > level) {
            const Rational v = trace_(prod);
            if (!v.is_zero())
                out.add(target_->encode(as), v * sign_power(sign_exp));
            return;
        }
        const std::uint32_t h = hs[j - 1];
        const long long s = sign_exp + static_cast<long long>(source_->base_degree(h)) * prefix_deg;
        for (std::size_t a = 0; a < na; ++a) {
            const Element& img = pi_->apply(h, a);
            if (img.empty())
                continue;
            const Element next = A.multiply(prod, img);
            if (next.empty())
                continue;
            as.push_back(static_cast<std::uint32_t>(a));
            self(self, j + 1, next, prefix_deg + A.degree(a), s);
            --as.size;
        }
    };
    for (std::size_t a0 = 0; a0 < na; ++a0) {
        as = Tuple{};
        as.push_back(static_cast<std::uint32_t>(a0));
        rec(rec, 1, SparseVector::unit(a0), A.degree(a0), 0);
    }
    return out.take();
}

SparseVector CharacteristicMap::apply(int level, const SparseVector& tensor) const
{
    Accumulator acc;
    for (const auto& [k, c] : tensor)
        acc.add(apply_basis(level, k), c);
    return acc.take();
}

LevelVector CharacteristicMap::apply(const LevelVector& tensors) const
{
    LevelVector r;
    for (const auto& [level, v] : tensors) {
        SparseVector img = apply(level, v);
        if (!img.empty())
            r[level] = std::move(img);
    }
    return r;
}

std::map<std::pair<int, int>, SparseVector> CharacteristicMap::apply(
    const std::map<std::pair<int, int>, SparseVector>& parts) const
{
    std::map<std::pair<int, int>, SparseVector> r;
    for (const auto& [lq, v] : parts) {
        SparseVector img = apply(lq.first, v);
        if (!img.empty())
            r[lq] += img;
    }
    return r;
}

CheckReport check_cyclic_map(const CharacteristicMap& chi, int n_max)
{
    const CMCyclicObject& src = chi.source();
    const AlgebraCochains& tgt = chi.target();
    CheckReport rep("characteristic map into " + tgt.name());
    auto compare = [&](const char* check, int level, Key key, const SparseVector& lhs, const SparseVector& rhs,
                       const std::string& what) {
        rep.count();
        if (lhs != rhs)
            rep.fail(check, what + " at " + src.format_key(level, key) + ": " + lhs.str() + " vs " + rhs.str());
    };

    for (int n = 0; n <= n_max; ++n) {
        for (Key key : keys_at(src, n)) {
            const SparseVector e = SparseVector::unit(key);
            const SparseVector img = chi.apply(n, e);
            if (n + 1 <= n_max)
                for (int i = 0; i <= n + 1; ++i)
                    compare("face", n, key, chi.apply(n + 1, apply_face(src, n + 1, i, e)),
                            apply_face(tgt, n + 1, i, img), "δ_" + std::to_string(i));
            if (n >= 1)
                for (int i = 0; i < n; ++i)
                    compare("degeneracy", n, key, chi.apply(n - 1, apply_degeneracy(src, n, i, e)),
                            apply_degeneracy(tgt, n, i, img), "σ_" + std::to_string(i));
            compare("cyclic", n, key, chi.apply(n, apply_cyclic(src, n, e)), apply_cyclic(tgt, n, img), "τ");
            if (src.has_differential() || tgt.has_differential())
                compare("differential", n, key, chi.apply(n, apply_internal_d(src, n, e)),
                        apply_internal_d(tgt, n, img), "d");
        }
    }
    return rep;
}

CheckReport check_filtration_vanishing(const CharacteristicMap& chi, int n_max)
{
    const CMCyclicObject& src = chi.source();
    CheckReport rep("filtration of the characteristic map");
    for (int n = 0; n <= n_max; ++n) {
        auto [lo, hi] = src.internal_range(n);
        for (int e = std::max(lo, chi.weight() + 1); e <= hi; ++e)
            for (Key key : src.keys(n, e)) {
                rep.count();
                const SparseVector img = chi.apply(n, SparseVector::unit(key));
                if (!img.empty())
                    rep.fail("filtration", "weight " + std::to_string(e) + " tensor " + src.format_key(n, key) +
                                               " maps to " + img.str());
            }
    }
    return rep;
}

// --- twisting ------------------------------------------------------------------------

TwistCocycle trivial_twist(const HopfAction& pi)
{
    const GradedAlgebra& A = pi.algebra();
    if (!A.has_unit())
        throw std::invalid_argument("twist cocycles need a unital algebra");
    TwistCocycle rho;
    for (std::size_t h = 0; h < pi.hopf().dim(); ++h)
        rho.plus.push_back(A.unit().scaled(pi.hopf().counit(h)));
    rho.minus = rho.plus;
    return rho;
}

CheckReport check_twist_cocycle(const HopfAction& pi, const TwistCocycle& rho, const ModularPair& pair)
{
    const HopfAlgebra& H = pi.hopf();
    const GradedAlgebra& A = pi.algebra();
    CheckReport rep("twist cocycle");
    const std::size_t nh = H.dim();
    if (!A.has_unit()) {
        rep.fail("unit", "twist cocycles need a unital algebra");
        return rep;
    }
    if (rho.plus.size() != nh || rho.minus.size() != nh) {
        rep.fail("size", "ρ± must have one value per Hopf basis element");
        return rep;
    }
    for (const auto* side : {&rho.plus, &rho.minus})
        for (const auto& v : *side)
            for (const auto& [k, c] : v)
                if (k >= A.dim()) {
                    rep.fail("size", "ρ± value outside the algebra basis");
                    return rep;
                }

    const char* label[2] = {"ρ⁺", "ρ⁻"};
    for (int s = 0; s < 2; ++s) {
        const auto& r = s == 0 ? rho.plus : rho.minus;
        for (std::size_t h = 0; h < nh; ++h) {
            rep.count();
            auto d = degree_of(A, r[h]);
            if (!r[h].empty() && (!d || *d != H.degree(h)))
                rep.fail("degree", std::string(label[s]) + "(" + hname(pi, h) + ") = " + A.format(r[h]));
            if (A.has_differential() || H.algebra().has_differential()) {
                rep.count();
                const Element lhs = A.has_differential() ? A.apply_d(r[h]) : Element{};
                const Element rhs =
                    H.algebra().has_differential() ? evaluate_on(r, H.algebra().d(h)) : Element{};
                if (lhs != rhs)
                    rep.fail("d-compatibility", "d" + std::string(label[s]) + "(" + hname(pi, h) +
                                                    ") = " + A.format(lhs) + " but ρ(dh) = " + A.format(rhs));
            }
        }
    }

    // convolution inverse: Σ ρ⁺(h_(0)) ρ⁻(h_(1)) = ε(h) 1
    for (std::size_t h = 0; h < nh; ++h) {
        rep.count();
        Accumulator acc;
        for (const auto& t : H.coproduct(h))
            acc.add(A.multiply(rho.plus[t.left], rho.minus[t.right]), t.coef);
        const Element got = acc.take();
        if (got != A.unit().scaled(H.counit(h)))
            rep.fail("convolution-inverse", "Σ ρ⁺(h_(0))ρ⁻(h_(1)) at h = " + hname(pi, h) + " is " + A.format(got));
    }

    for (std::size_t h = 0; h < nh; ++h)
        for (std::size_t g = 0; g < nh; ++g) {
            const Element& hg = H.algebra().product(h, g);
            // ρ⁺ cocycle law: ρ⁺(hg) = Σ ρ⁺(h_(0)) π(h_(1))(ρ⁺(g))
            rep.count();
            const Element lhs2 = evaluate_on(rho.plus, hg);
            Accumulator acc2;
            for (const auto& t : H.coproduct(h))
                acc2.add(A.multiply(rho.plus[t.left], pi.apply(t.right, rho.plus[g])), t.coef);
            const Element rhs2 = acc2.take();
            if (lhs2 != rhs2)
                rep.fail("plus-cocycle", "ρ⁺(" + hname(pi, h) + "·" + hname(pi, g) + ") = " + A.format(lhs2) +
                                    " but the cocycle rule gives " + A.format(rhs2));
            // ρ⁻ cocycle law: ρ⁻(gh) = Σ (-1)^{|g||h_(0)|} π(h_(0))(ρ⁻(g)) ρ⁻(h_(1))
            rep.count();
            const Element lhs3 = evaluate_on(rho.minus, H.algebra().product(g, h));
            Accumulator acc3;
            for (const auto& t : H.coproduct(h))
                acc3.add(A.multiply(pi.apply(t.left, rho.minus[g]), rho.minus[t.right]),
                         t.coef * koszul(H.degree(g), H.degree(t.left)));
            const Element rhs3 = acc3.take();
            if (lhs3 != rhs3)
                rep.fail("minus-cocycle", "ρ⁻(" + hname(pi, g) + "·" + hname(pi, h) + ") = " + A.format(lhs3) +
                                    " but the cocycle rule gives " + A.format(rhs3));
        }

    // normalization: ρ±(1) = ρ±(σ) = 1
    for (int s = 0; s < 2; ++s) {
        const auto& r = s == 0 ? rho.plus : rho.minus;
        for (const auto* x : {&H.algebra().unit(), &pair.sigma}) {
            rep.count();
            const Element v = evaluate_on(r, *x);
            if (v != A.unit())
                rep.fail("normalization", std::string(label[s]) + "(" + H.algebra().format(*x) + ") = " + A.format(v));
        }
    }
    return rep;
}

HopfAction twist_action(const HopfAction& pi, const TwistCocycle& rho, const ModularPair& pair)
{
    const CheckReport rep = check_twist_cocycle(pi, rho, pair);
    if (!rep.passed()) {
        const Violation& v = rep.violations().front();
        throw std::invalid_argument("twist cocycle violates " + v.check + ": " + v.witness);
    }
    const HopfAlgebra& H = pi.hopf();
    const GradedAlgebra& A = pi.algebra();
    return HopfAction(pi.hopf_ptr(), pi.algebra_ptr(), [&](std::size_t h, std::size_t a) {
        Accumulator acc;
        for (const auto& [legs, c] : H.iterated_coproduct(h, 3)) {
            const Element& mid = pi.apply(legs[1], a);
            if (mid.empty() || rho.plus[legs[0]].empty() || rho.minus[legs[2]].empty())
                continue;
            const Element v = A.multiply(A.multiply(rho.plus[legs[0]], mid), rho.minus[legs[2]]);
            acc.add(v, c * koszul(H.degree(legs[2]), A.degree(a)));
        }
        return acc.take();
    });
}

AmplifiedTwist amplify_twist(const HopfAction& pi, const TwistCocycle& rho, const GradedFunctional& trace)
{
    const GradedAlgebra& A = pi.algebra();
    const HopfAlgebra& H = pi.hopf();
    auto idx = [](std::size_t i, std::size_t r, std::size_t c) -> Key { return i * 4 + r * 2 + c; };
    auto place = [&](const Element& v, std::size_t r, std::size_t c) {
        std::vector<Entry> e;
        for (const auto& [k, x] : v)
            e.emplace_back(idx(k, r, c), x);
        return SparseVector::from_unsorted(std::move(e));
    };

    AlgebraPtr m2 = matrix_amplify(A);
    HopfAction act(pi.hopf_ptr(), m2, [&](std::size_t h, std::size_t x) {
        const std::size_t i = x / 4;
        return place(pi.apply(h, i), (x % 4) / 2, x % 2);
    });
    TwistCocycle r2;
    for (std::size_t h = 0; h < H.dim(); ++h) {
        const Element eps = A.unit().scaled(H.counit(h));
        r2.plus.push_back(place(rho.plus[h], 0, 0) + place(eps, 1, 1));
        r2.minus.push_back(place(rho.minus[h], 0, 0) + place(eps, 1, 1));
    }
    GradedFunctional tr{trace.weight, place(trace.values, 0, 0) + place(trace.values, 1, 1)};
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        first.push_back(idx(i, 0, 0));
        second.push_back(idx(i, 1, 1));
    }
    return AmplifiedTwist{m2, std::move(act), std::move(r2), std::move(tr), std::move(first), std::move(second)};
}

SparseVector pullback_cochain(const AlgebraCochains& from, const AlgebraCochains& to,
                              const std::vector<std::size_t>& inclusion, int level, const SparseVector& phi)
{
    if (inclusion.size() != to.algebra().dim())
        throw std::invalid_argument("inclusion must map every basis element of the smaller algebra");
    std::unordered_map<std::size_t, std::uint32_t> preimage;
    for (std::size_t i = 0; i < inclusion.size(); ++i) {
        if (inclusion[i] >= from.algebra().dim())
            throw std::invalid_argument("inclusion index outside the larger algebra");
        preimage.emplace(inclusion[i], static_cast<std::uint32_t>(i));
    }
    Accumulator acc;
    for (const auto& [k, c] : phi) {
        const Tuple t = from.decode(level, k);
        Tuple s;
        bool inside = true;
        for (int j = 0; j < t.size && inside; ++j) {
            auto it = preimage.find(t[j]);
            if (it == preimage.end())
                inside = false;
            else
                s.push_back(it->second);
        }
        if (inside && to.in_subspace(level, to.encode(s)))
            acc.add(to.encode(s), c);
    }
    return acc.take();
}

// --- certificates --------------------------------------------------------------------

std::optional<SparseVector> coboundary_certificate(const ComplexWindow& w, int degree, const SparseVector& phi,
                                                   CertificateEvidence* evidence)
{
    if (!w.has_slot(degree - 1) || !w.has_slot(degree + 1))
        throw WindowTooSmall("certificate at total degree " + std::to_string(degree) + " needs degrees " +
                             std::to_string(degree - 1) + ".." + std::to_string(degree + 1) + " in the window");
    const Slot& target = w.slot(degree);
    if (!target.complete)
        throw WindowTooSmall("total degree " + std::to_string(degree) + " is not complete in the window");
    const SparseVector dphi = w.differential(degree).apply(phi);
    if (!dphi.empty()) {
        const auto parts = w.from_slot(degree + 1, dphi);
        const auto& [lq, v] = *parts.begin();
        throw NotClosed("cochain is not closed: ∂φ has a component at level " + std::to_string(lq.first) +
                        ", column " + std::to_string(lq.second) + ": " +
                        w.object().format_key(lq.first, v.begin()->first) + " ↦ " + v.begin()->second.str());
    }

    const Slot& source = w.slot(degree - 1);
    const SparseMatrix& d = w.differential(degree - 1);
    std::vector<std::size_t> used;
    std::vector<SparseVector> cols;
    for (const auto& m : source.summands) {
        if (m.level >= w.spec().max_level)
            continue;
        for (std::size_t i = 0; i < m.keys.size(); ++i) {
            used.push_back(m.offset + i);
            cols.push_back(d.column(m.offset + i));
        }
    }
    const SparseMatrix restricted = SparseMatrix::from_columns(target.dim, cols);
    auto sol = solve_linear(restricted, phi);
    if (evidence) {
        evidence->source_dim = used.size();
        evidence->boundary_rank = rank(restricted);
        cols.push_back(phi);
        evidence->augmented_rank = rank(SparseMatrix::from_columns(target.dim, std::move(cols)));
    }
    if (!sol)
        return std::nullopt;
    std::vector<Entry> x;
    for (const auto& [j, c] : *sol)
        x.emplace_back(used[j], c);
    return SparseVector::from_unsorted(std::move(x));
}

std::optional<std::string> verify_certificate(const ComplexWindow& w, int degree, const SparseVector& primitive,
                                              const SparseVector& phi)
{
    const CyclicObject& x = w.object();
    const WindowSpec& spec = w.spec();
    const auto parts = w.from_slot(degree - 1, primitive);
    std::map<std::pair<int, int>, Accumulator> acc;
    for (const auto& [lq, v] : parts) {
        const auto [k, q] = lq;
        if (k >= spec.max_level)
            return "primitive has a component at the top level " + std::to_string(k);
        acc[{k + 1, q}].add(apply_b(x, k, v));
        if (spec.cyclic && k >= 1)
            acc[{k - 1, q + 1}].add(apply_B(x, k, v, spec.convention));
        if (x.has_differential())
            for (const auto& [key, c] : apply_internal_d(x, k, v))
                if (!spec.internal || x.internal_degree(k, key) <= spec.internal->second)
                    acc[{k, q}].add(key, c * sign_power(k));
    }
    auto expected = w.from_slot(degree, phi);
    std::map<std::pair<int, int>, SparseVector> got;
    for (auto& [lq, a] : acc) {
        SparseVector v = a.take();
        if (!v.empty())
            got[lq] = std::move(v);
    }
    for (const auto& [lq, v] : got) {
        const SparseVector diff = v - expected[lq];
        if (!diff.empty()) {
            const auto& [key, c] = *diff.begin();
            return "∂X differs from φ at level " + std::to_string(lq.first) + ", column " +
                   std::to_string(lq.second) + ", " + x.format_key(lq.first, key) + ": " + v.get(key).str() +
                   " vs " + expected[lq].get(key).str();
        }
    }
    for (const auto& [lq, v] : expected)
        if (!v.empty() && !got.count(lq)) {
            const auto& [key, c] = *v.begin();
            return "∂X misses φ at level " + std::to_string(lq.first) + ", column " + std::to_string(lq.second) +
                   ", " + x.format_key(lq.first, key) + ": 0 vs " + c.str();
        }
    return std::nullopt;
}

}  // namespace hopfcyc
