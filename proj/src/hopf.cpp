#include "hopfcyc/hopf.hpp"

#include <sstream>
#include <stdexcept>

namespace hopfcyc {

namespace {

// Elements of H ⊗ H and H ⊗ H ⊗ H keyed by mixed-radix indices.
struct Tensors {
    std::size_t n;
    Key pair(std::size_t a, std::size_t b) const { return a * n + b; }
    Key triple(std::size_t a, std::size_t b, std::size_t c) const { return (a * n + b) * n + c; }
    std::pair<std::size_t, std::size_t> split(Key k) const { return {k / n, k % n}; }
};

SparseVector coproduct_of(const HopfAlgebra& h, const Element& x)
{
    Tensors t{h.dim()};
    Accumulator acc;
    for (const auto& [i, c] : x)
        for (const auto& term : h.coproduct(i))
            acc.add(t.pair(term.left, term.right), c * term.coef);
    return acc.take();
}

// (a⊗b)(c⊗d) = (-1)^{|b||c|} ac ⊗ bd
SparseVector tensor_multiply(const GradedAlgebra& a, const SparseVector& x, const SparseVector& y)
{
    Tensors t{a.dim()};
    Accumulator acc;
    for (const auto& [kx, cx] : x) {
        auto [p, q] = t.split(kx);
        for (const auto& [ky, cy] : y) {
            auto [r, s] = t.split(ky);
            const Element& left = a.product(p, r);
            if (left.empty())
                continue;
            const Element& right = a.product(q, s);
            if (right.empty())
                continue;
            const Rational c = cx * cy * koszul(a.degree(q), a.degree(r));
            for (const auto& [l, cl] : left)
                for (const auto& [m, cm] : right)
                    acc.add(t.pair(l, m), c * cl * cm);
        }
    }
    return acc.take();
}

std::string name_of(const HopfAlgebra& h, std::size_t i) { return h.algebra().basis_name(i); }

std::string tensor_str(const HopfAlgebra& h, const SparseVector& v, int legs)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : v) {
        if (!first)
            os << " + ";
        first = false;
        os << c.str() << "*";
        std::vector<std::size_t> idx(static_cast<std::size_t>(legs));
        Key r = k;
        for (int i = legs - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = r % h.dim();
            r /= h.dim();
        }
        for (int i = 0; i < legs; ++i)
            os << (i ? "⊗" : "") << name_of(h, idx[static_cast<std::size_t>(i)]);
    }
    return first ? "0" : os.str();
}

}  // namespace

HopfAlgebra::HopfAlgebra(HopfData data) : data_(std::move(data))
{
    if (!data_.algebra)
        throw std::invalid_argument("Hopf algebra without an underlying algebra");
    const std::size_t n = data_.algebra->dim();
    if (data_.coproduct.size() != n || data_.counit.size() != n || data_.antipode.size() != n)
        throw std::invalid_argument(data_.name + ": coproduct, counit and antipode must cover all " +
                                    std::to_string(n) + " basis elements");
    if (!data_.algebra->has_unit())
        throw std::invalid_argument(data_.name + ": Hopf algebra needs a unit");
    for (const auto& terms : data_.coproduct)
        for (const auto& t : terms)
            if (t.left >= n || t.right >= n)
                throw std::invalid_argument(data_.name + ": coproduct index out of range");
}

Rational HopfAlgebra::counit(const Element& h) const
{
    Rational r;
    for (const auto& [i, c] : h)
        r += c * data_.counit[i];
    return r;
}

Element HopfAlgebra::apply_antipode(const Element& h) const
{
    Accumulator acc;
    for (const auto& [i, c] : h)
        acc.add(data_.antipode[i], c);
    return acc.take();
}

Legs HopfAlgebra::iterated_coproduct(std::size_t i, int legs) const
{
    if (legs < 1)
        throw std::invalid_argument("iterated coproduct needs at least one leg");
    Legs cur{{{static_cast<std::uint32_t>(i)}, Rational(1)}};
    for (int l = 1; l < legs; ++l) {
        std::map<std::vector<std::uint32_t>, Rational> next;
        for (const auto& [t, c] : cur) {
            for (const auto& term : data_.coproduct[t.back()]) {
                auto u = t;
                u.back() = term.left;
                u.push_back(term.right);
                next[u] += c * term.coef;
            }
        }
        cur.clear();
        for (auto& [t, c] : next)
            if (!c.is_zero())
                cur.emplace_back(t, c);
    }
    return cur;
}

CheckReport check_hopf_axioms(const HopfAlgebra& h)
{
    CheckReport rep("Hopf algebra " + h.name());
    rep.merge(check_dga_axioms(h.algebra()));
    const GradedAlgebra& a = h.algebra();
    const std::size_t n = h.dim();
    Tensors t{n};
    auto nm = [&](std::size_t i) { return name_of(h, i); };
    const Element one = a.unit();

    for (std::size_t i = 0; i < n; ++i) {
        rep.count();
        for (const auto& term : h.coproduct(i))
            if (a.degree(term.left) + a.degree(term.right) != a.degree(i))
                rep.fail("coproduct-degree", nm(i) + " has leg " + nm(term.left) + "⊗" + nm(term.right));
        if (!h.counit(i).is_zero() && a.degree(i) != 0)
            rep.fail("counit-degree", "ε(" + nm(i) + ") = " + h.counit(i).str());
        int sd = 0;
        if (!a.is_homogeneous(h.antipode(i), &sd) || (!h.antipode(i).empty() && sd != a.degree(i)))
            rep.fail("antipode-degree", "S(" + nm(i) + ") = " + a.format(h.antipode(i)));

        // coassociativity
        Accumulator left, right;
        for (const auto& x : h.coproduct(i)) {
            for (const auto& y : h.coproduct(x.left))
                left.add(t.triple(y.left, y.right, x.right), x.coef * y.coef);
            for (const auto& y : h.coproduct(x.right))
                right.add(t.triple(x.left, y.left, y.right), x.coef * y.coef);
        }
        SparseVector l = left.take(), r = right.take();
        if (l != r)
            rep.fail("coassociativity", "(Δ⊗id)Δ(" + nm(i) + ") = " + tensor_str(h, l, 3) +
                                            " but (id⊗Δ)Δ = " + tensor_str(h, r, 3));

        // counit and antipode
        Accumulator cl, cr, sl, sr;
        for (const auto& x : h.coproduct(i)) {
            cl.add(x.right, x.coef * h.counit(x.left));
            cr.add(x.left, x.coef * h.counit(x.right));
            sl.add(a.multiply(h.antipode(x.left), SparseVector::unit(x.right)), x.coef);
            sr.add(a.multiply(SparseVector::unit(x.left), h.antipode(x.right)), x.coef);
        }
        const Element self = SparseVector::unit(i);
        if (cl.take() != self || cr.take() != self)
            rep.fail("counit", "(ε⊗id)Δ or (id⊗ε)Δ differs from id on " + nm(i));
        const Element expect = one.scaled(h.counit(i));
        Element s1 = sl.take(), s2 = sr.take();
        if (s1 != expect)
            rep.fail("antipode", "Σ S(h_(0))h_(1) = " + a.format(s1) + " ≠ ε(h)1 for h = " + nm(i));
        if (s2 != expect)
            rep.fail("antipode", "Σ h_(0)S(h_(1)) = " + a.format(s2) + " ≠ ε(h)1 for h = " + nm(i));
    }

    // Δ and ε are algebra maps
    SparseVector d_one = coproduct_of(h, one);
    Accumulator one_one;
    for (const auto& [x, cx] : one)
        for (const auto& [y, cy] : one)
            one_one.add(t.pair(x, y), cx * cy);
    if (d_one != one_one.take())
        rep.fail("coproduct-unit", "Δ(1) ≠ 1⊗1");
    if (h.counit(one) != 1)
        rep.fail("counit-unit", "ε(1) = " + h.counit(one).str());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            rep.count();
            const Element& p = a.product(i, j);
            SparseVector lhs = coproduct_of(h, p);
            SparseVector rhs =
                tensor_multiply(a, coproduct_of(h, SparseVector::unit(i)), coproduct_of(h, SparseVector::unit(j)));
            if (lhs != rhs)
                rep.fail("coproduct-multiplicative", "Δ(" + nm(i) + "·" + nm(j) + ") = " + tensor_str(h, lhs, 2) +
                                                         " but Δ(" + nm(i) + ")Δ(" + nm(j) + ") = " +
                                                         tensor_str(h, rhs, 2));
            if (h.counit(p) != h.counit(i) * h.counit(j))
                rep.fail("counit-multiplicative", "ε(" + nm(i) + "·" + nm(j) + ") ≠ ε(" + nm(i) + ")ε(" + nm(j) + ")");
        }
    }

    if (a.has_differential()) {
        for (std::size_t i = 0; i < n; ++i) {
            rep.count();
            const Element& di = a.d(i);
            SparseVector lhs = coproduct_of(h, di);
            Accumulator rhs;
            for (const auto& x : h.coproduct(i)) {
                for (const auto& [y, cy] : a.d(x.left))
                    rhs.add(t.pair(y, x.right), x.coef * cy);
                for (const auto& [y, cy] : a.d(x.right))
                    rhs.add(t.pair(x.left, y), x.coef * cy * sign_power(a.degree(x.left)));
            }
            SparseVector r = rhs.take();
            if (lhs != r)
                rep.fail("d-coderivation", "Δ(d " + nm(i) + ") = " + tensor_str(h, lhs, 2) + " but (d⊗1 ± 1⊗d)Δ = " +
                                               tensor_str(h, r, 2));
            if (a.apply_d(h.antipode(i)) != h.apply_antipode(di))
                rep.fail("d-antipode", "dS ≠ Sd on " + nm(i));
            if (!h.counit(di).is_zero())
                rep.fail("d-counit", "ε(d " + nm(i) + ") = " + h.counit(di).str());
        }
    }
    return rep;
}

ModularPair trivial_modular_pair(const HopfAlgebra& h)
{
    return {std::vector<Rational>(h.data().counit), h.algebra().unit()};
}

std::vector<Element> twisted_antipode(const HopfAlgebra& h, const std::vector<Rational>& delta)
{
    if (delta.size() != h.dim())
        throw std::invalid_argument("character has " + std::to_string(delta.size()) + " values, expected " +
                                    std::to_string(h.dim()));
    std::vector<Element> out;
    out.reserve(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) {
        Accumulator acc;
        for (const auto& term : h.coproduct(i))
            acc.add(h.antipode(term.left), term.coef * delta[term.right]);
        out.push_back(acc.take());
    }
    return out;
}

CheckReport check_modular_pair(const HopfAlgebra& h, const ModularPair& pair)
{
    CheckReport rep("modular pair on " + h.name());
    const GradedAlgebra& a = h.algebra();
    const std::size_t n = h.dim();
    auto nm = [&](std::size_t i) { return name_of(h, i); };
    if (pair.delta.size() != n) {
        rep.fail("delta-size", "character has " + std::to_string(pair.delta.size()) + " values");
        return rep;
    }
    auto delta = [&](const Element& x) {
        Rational r;
        for (const auto& [i, c] : x)
            r += c * pair.delta[i];
        return r;
    };
    if (delta(a.unit()) != 1)
        rep.fail("delta-unit", "δ(1) = " + delta(a.unit()).str());
    for (std::size_t i = 0; i < n; ++i) {
        if (!pair.delta[i].is_zero() && a.degree(i) != 0)
            rep.fail("delta-degree", "δ(" + nm(i) + ") ≠ 0 in degree " + std::to_string(a.degree(i)));
        for (std::size_t j = 0; j < n; ++j) {
            rep.count();
            if (delta(a.product(i, j)) != pair.delta[i] * pair.delta[j])
                rep.fail("delta-multiplicative", "δ(" + nm(i) + "·" + nm(j) + ") ≠ δ(" + nm(i) + ")δ(" + nm(j) + ")");
        }
    }

    int sdeg = 0;
    if (pair.sigma.empty() || !a.is_homogeneous(pair.sigma, &sdeg) || sdeg != 0)
        rep.fail("sigma-degree", "σ = " + a.format(pair.sigma) + " is not a nonzero degree-0 element");
    Tensors t{n};
    Accumulator ss;
    for (const auto& [x, cx] : pair.sigma)
        for (const auto& [y, cy] : pair.sigma)
            ss.add(t.pair(x, y), cx * cy);
    if (coproduct_of(h, pair.sigma) != ss.take())
        rep.fail("sigma-grouplike", "Δσ ≠ σ⊗σ for σ = " + a.format(pair.sigma));
    if (h.counit(pair.sigma) != 1)
        rep.fail("sigma-counit", "ε(σ) = " + h.counit(pair.sigma).str());
    if (delta(pair.sigma) != 1)
        rep.fail("delta-sigma", "δ(σ) = " + delta(pair.sigma).str());
    if (!rep.passed())
        return rep;

    // (σ^{-1} S̃)² = id with σ^{-1} = S(σ)
    const Element inv = h.apply_antipode(pair.sigma);
    if (a.multiply(inv, pair.sigma) != a.unit())
        rep.fail("sigma-inverse", "S(σ)σ ≠ 1");
    const auto tw = twisted_antipode(h, pair.delta);
    auto apply = [&](const Element& x) {
        Accumulator acc;
        for (const auto& [i, c] : x)
            acc.add(a.multiply(inv, tw[i]), c);
        return acc.take();
    };
    for (std::size_t i = 0; i < n; ++i) {
        rep.count();
        const Element e = SparseVector::unit(i);
        const Element twice = apply(apply(e));
        if (twice != e)
            rep.fail("involutivity", "(σ^{-1}S̃)²(" + nm(i) + ") = " + a.format(twice));
    }
    return rep;
}

// --- CM cyclic object ------------------------------------------------------------

namespace {

std::vector<int> hopf_degrees(const HopfAlgebra& h)
{
    std::vector<int> d;
    for (std::size_t i = 0; i < h.dim(); ++i)
        d.push_back(h.degree(i));
    return d;
}

std::vector<std::string> hopf_names(const HopfAlgebra& h)
{
    std::vector<std::string> d;
    for (std::size_t i = 0; i < h.dim(); ++i)
        d.push_back(h.algebra().basis_name(i));
    return d;
}

const HopfPtr& require_pair(const HopfPtr& h, const ModularPair& pair)
{
    if (!h)
        throw std::invalid_argument("null Hopf algebra");
    CheckReport rep = check_modular_pair(*h, pair);
    if (!rep.passed())
        throw std::invalid_argument("modular pair check failed: " + rep.summary());
    return h;
}

}  // namespace

CMCyclicObject::CMCyclicObject(HopfPtr hopf, ModularPair pair)
    : TensorPowerObject(hopf_degrees(*require_pair(hopf, pair)), hopf_names(*hopf), 0, 1, std::nullopt),
      hopf_(std::move(hopf)), pair_(std::move(pair)), twisted_(twisted_antipode(*hopf_, pair_.delta))
{
}

std::string CMCyclicObject::name() const { return "cyclic module of " + hopf_->name(); }

Key CMCyclicObject::key_of(const std::vector<std::size_t>& tuple) const
{
    Tuple t;
    for (std::size_t i : tuple) {
        if (i >= hopf_->dim())
            throw std::out_of_range("basis index out of range");
        t.push_back(static_cast<std::uint32_t>(i));
    }
    return encode(t);
}

SparseVector CMCyclicObject::tensor(const std::vector<std::pair<std::vector<std::string>, Rational>>& terms) const
{
    std::vector<Entry> e;
    for (const auto& [names, c] : terms) {
        std::vector<std::size_t> idx;
        for (const auto& s : names)
            idx.push_back(hopf_->algebra().index(s));
        e.emplace_back(key_of(idx), c);
    }
    return SparseVector::from_unsorted(std::move(e));
}

void CMCyclicObject::face(int n, int i, Key key, const Rational& c, Accumulator& out) const
{
    const Tuple s = decode(n - 1, key);
    if (i == 0) {
        for (const auto& [u, cu] : hopf_->algebra().unit())
            out.add(encode(s.inserted(0, static_cast<std::uint32_t>(u))), c * cu);
    } else if (i == n) {
        for (const auto& [g, cg] : pair_.sigma) {
            Tuple t = s;
            t.push_back(static_cast<std::uint32_t>(g));
            out.add(encode(t), c * cg);
        }
    } else {
        for (const auto& term : hopf_->coproduct(s[i - 1]))
            out.add(encode(s.split(i - 1, term.left, term.right)), c * term.coef);
    }
}

void CMCyclicObject::degeneracy(int n, int i, Key key, const Rational& c, Accumulator& out) const
{
    const Tuple s = decode(n, key);
    const Rational& e = hopf_->counit(s[i]);
    if (!e.is_zero())
        out.add(encode(s.erased(i)), c * e);
}

// τ_n(h¹⊗..⊗hⁿ) = Σ ± (S̃h¹)_(1) h² ⊗ .. ⊗ (S̃h¹)_(n-1) hⁿ ⊗ (S̃h¹)_(n) σ, the sign being
// incurred when each leg of S̃h¹ moves past h², .., to reach its slot.
void CMCyclicObject::cyclic(int n, Key key, const Rational& c, Accumulator& out) const
{
    if (n == 0) {
        out.add(key, c);
        return;
    }
    const Tuple s = decode(n, key);
    const GradedAlgebra& a = hopf_->algebra();
    std::vector<Element> partners;  // h², .., hⁿ, σ
    std::vector<int> partner_deg;
    for (int i = 1; i < n; ++i) {
        partners.push_back(SparseVector::unit(s[i]));
        partner_deg.push_back(base_degree(s[i]));
    }
    partners.push_back(pair_.sigma);
    partner_deg.push_back(0);

    for (const auto& [lead, cl] : twisted_[s[0]]) {
        for (const auto& [legs, cg] : hopf_->iterated_coproduct(lead, n)) {
            long long sign_exp = 0;
            int passed = 0;
            for (int i = 0; i < n; ++i) {
                sign_exp += static_cast<long long>(a.degree(legs[static_cast<std::size_t>(i)])) * passed;
                passed += partner_deg[static_cast<std::size_t>(i)];
            }
            // expand Π (leg_i · partner_i)
            std::vector<std::pair<Tuple, Rational>> acc{{Tuple{}, c * cl * cg * sign_power(sign_exp)}};
            for (int i = 0; i < n && !acc.empty(); ++i) {
                const Element p = a.multiply(SparseVector::unit(legs[static_cast<std::size_t>(i)]),
                                             partners[static_cast<std::size_t>(i)]);
                std::vector<std::pair<Tuple, Rational>> next;
                for (const auto& [t, x] : acc)
                    for (const auto& [b, y] : p) {
                        Tuple u = t;
                        u.push_back(static_cast<std::uint32_t>(b));
                        next.emplace_back(u, x * y);
                    }
                acc = std::move(next);
            }
            for (const auto& [t, x] : acc)
                out.add(encode(t), x);
        }
    }
}

void CMCyclicObject::differential(int n, Key key, const Rational& c, Accumulator& out) const
{
    const Tuple s = decode(n, key);
    const GradedAlgebra& a = hopf_->algebra();
    int prefix = 0;
    for (int j = 0; j < s.size; ++j) {
        const Rational sg = sign_power(prefix);
        for (const auto& [y, cy] : a.d(s[j])) {
            Tuple t = s;
            t[j] = static_cast<std::uint32_t>(y);
            out.add(encode(t), c * sg * cy);
        }
        prefix += base_degree(s[j]);
    }
}

SparseVector extend_d_cm(const CMCyclicObject& x, int level, const SparseVector& v)
{
    if (!x.has_differential())
        return {};
    return apply_internal_d(x, level, v);
}

WindowSpec truncated(WindowSpec spec, int l)
{
    if (l < 0)
        throw std::invalid_argument("truncation level must be non-negative");
    spec.internal = std::pair<int, int>{0, l};
    return spec;
}

// --- built-ins -------------------------------------------------------------------

HopfPtr group_algebra_hopf(std::size_t order)
{
    HopfData d;
    d.name = "group-algebra:Z" + std::to_string(order);
    d.algebra = cyclic_group_algebra(order);
    for (std::size_t i = 0; i < order; ++i) {
        const auto k = static_cast<std::uint32_t>(i);
        d.coproduct.push_back({{k, k, Rational(1)}});
        d.counit.emplace_back(1);
        d.antipode.push_back(SparseVector::unit((order - i) % order));
    }
    return std::make_shared<HopfAlgebra>(std::move(d));
}

HopfPtr function_hopf(std::size_t order)
{
    HopfData d;
    d.name = "fun:Z" + std::to_string(order);
    d.algebra = function_algebra(order);
    for (std::size_t s = 0; s < order; ++s) {
        std::vector<CoproductTerm> terms;
        for (std::size_t x = 0; x < order; ++x)
            terms.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>((s + order - x) % order),
                             Rational(1)});
        d.coproduct.push_back(std::move(terms));
        d.counit.emplace_back(s == 0 ? 1 : 0);
        d.antipode.push_back(SparseVector::unit((order - s) % order));
    }
    return std::make_shared<HopfAlgebra>(std::move(d));
}

HopfPtr exterior_primitive_hopf(std::size_t gens)
{
    if (gens == 0)
        throw std::invalid_argument("exterior-primitive needs at least one generator");
    AlgebraData ad = exterior_algebra(gens)->data();
    ad.name = "exterior-primitive:" + std::to_string(gens);
    for (auto& b : ad.basis) {
        std::string r;
        for (char ch : b.name)
            r += ch == 't' ? std::string("psi") : std::string(1, ch);
        b.name = r;
    }
    AlgebraPtr a = make_algebra(ad);
    const std::size_t n = a->dim();
    const std::size_t one = *a->unit_index();
    Tensors t{n};

    std::vector<std::optional<SparseVector>> cop(n);
    std::vector<std::optional<Element>> anti(n);
    cop[one] = SparseVector::unit(t.pair(one, one));
    anti[one] = SparseVector::unit(one);
    std::vector<std::size_t> generators = a->indices_of_degree(1);
    for (std::size_t g : generators) {
        cop[g] = SparseVector{{t.pair(g, one), 1}, {t.pair(one, g), 1}};
        anti[g] = SparseVector::unit(g, -1);
    }
    // Extend multiplicatively: Δ(g r) = Δ(g)Δ(r), S(g r) = (-1)^{|g||r|} S(r)S(g).
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t b = 0; b < n; ++b) {
            if (cop[b])
                continue;
            for (std::size_t g : generators) {
                for (std::size_t r = 0; r < n && !cop[b]; ++r) {
                    if (!cop[r])
                        continue;
                    const Element& p = a->product(g, r);
                    if (p.size() != 1 || p.begin()->first != b)
                        continue;
                    const Rational inv = Rational(1) / p.begin()->second;
                    cop[b] = tensor_multiply(*a, *cop[g], *cop[r]).scaled(inv);
                    anti[b] = a->multiply(*anti[r], *anti[g]).scaled(inv * koszul(a->degree(g), a->degree(r)));
                    progress = true;
                }
                if (cop[b])
                    break;
            }
        }
    }
    HopfData d;
    d.name = ad.name;
    d.algebra = a;
    for (std::size_t b = 0; b < n; ++b) {
        if (!cop[b])
            throw std::logic_error("exterior-primitive: basis element not generated");
        std::vector<CoproductTerm> terms;
        for (const auto& [k, c] : *cop[b]) {
            auto [l, r] = t.split(k);
            terms.push_back({static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(r), c});
        }
        d.coproduct.push_back(std::move(terms));
        d.counit.emplace_back(b == one ? 1 : 0);
        d.antipode.push_back(*anti[b]);
    }
    return std::make_shared<HopfAlgebra>(std::move(d));
}

HopfPtr builtin_hopf(std::string_view name)
{
    auto count = [&](std::string_view s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
            throw std::invalid_argument("malformed built-in Hopf algebra name '" + std::string(name) + "'");
        const std::size_t v = std::stoul(std::string(s));
        if (v == 0)
            throw std::invalid_argument("built-in Hopf algebra '" + std::string(name) + "' needs a positive size");
        return v;
    };
    auto starts = [&](std::string_view p) { return name.substr(0, p.size()) == p; };
    if (starts("group-algebra:Z"))
        return group_algebra_hopf(count(name.substr(15)));
    if (starts("fun:Z"))
        return function_hopf(count(name.substr(5)));
    if (starts("exterior-primitive:"))
        return exterior_primitive_hopf(count(name.substr(19)));
    throw std::invalid_argument("unknown built-in Hopf algebra '" + std::string(name) + "'");
}

std::vector<std::string> builtin_hopf_names()
{
    return {"group-algebra:Z2", "group-algebra:Z3", "fun:Z2", "fun:Z3", "exterior-primitive:1"};
}

ModularPair builtin_modular_pair(const HopfAlgebra& h, std::string_view spec)
{
    ModularPair p = trivial_modular_pair(h);
    if (spec.empty() || spec == "trivial")
        return p;
    const GradedAlgebra& a = h.algebra();
    std::string s(spec);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? s.size() + 1 : comma + 1;
        if (item.rfind("sigma:", 0) == 0) {
            p.sigma = SparseVector::unit(a.index(item.substr(6)));
        } else if (item == "delta:sign") {
            // sign character of ℚ[ℤ/2N]: g^k ↦ (-1)^k
            for (std::size_t i = 0; i < h.dim(); ++i)
                p.delta[i] = sign_power(static_cast<long long>(i));
        } else if (item.rfind("delta:eval:", 0) == 0) {
            // evaluation of functions at a point
            const std::size_t pt = a.index(item.substr(11));
            for (std::size_t i = 0; i < h.dim(); ++i)
                p.delta[i] = i == pt ? 1 : 0;
        } else {
            throw std::invalid_argument("unknown modular pair item '" + item + "'");
        }
    }
    return p;
}

}  // namespace hopfcyc
