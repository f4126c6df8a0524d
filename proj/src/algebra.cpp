#include "hopfcyc/algebra.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace hopfcyc {

Rational GradedFunctional::operator()(const Element& a) const
{
    Rational s;
    for (const auto& [k, x] : a)
        s += x * values.get(k);
    return s;
}

GradedAlgebra::GradedAlgebra(AlgebraData data) : data_(std::move(data))
{
    const std::size_t n = dim();
    auto check_element = [n, this](const Element& e, const std::string& what) {
        if (!e.empty() && e.entries().back().first >= n)
            throw std::invalid_argument(data_.name + ": " + what + " refers to basis index outside dimension");
    };
    for (const auto& b : data_.basis) {
        if (b.degree < 0)
            throw std::invalid_argument(data_.name + ": negative degree for basis element '" + b.name + "'");
        top_degree_ = std::max(top_degree_, b.degree);
    }
    table_.assign(n * n, Element{});
    for (const auto& [ij, v] : data_.products) {
        if (ij.first >= n || ij.second >= n)
            throw std::invalid_argument(data_.name + ": product of basis indices outside dimension");
        check_element(v, "product");
        table_[ij.first * n + ij.second] = v;
    }
    if (data_.unit) {
        check_element(*data_.unit, "unit");
        if (data_.unit->size() == 1 && data_.unit->begin()->second.is_one())
            unit_index_ = data_.unit->begin()->first;
    }
    if (data_.differential) {
        if (data_.differential->size() != n)
            throw std::invalid_argument(data_.name + ": differential must list every basis element");
        for (const auto& e : *data_.differential)
            check_element(e, "differential");
    }
    if (data_.trace)
        check_element(data_.trace->values, "trace");

    factors_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [c, x] : table_[i * n + j])
                factors_[c].push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), x});
    d_pre_.assign(n, {});
    if (data_.differential)
        for (std::size_t s = 0; s < n; ++s)
            for (const auto& [c, x] : (*data_.differential)[s])
                d_pre_[c].push_back({static_cast<std::uint32_t>(s), x});
}

std::optional<std::size_t> GradedAlgebra::find(std::string_view name) const
{
    for (std::size_t i = 0; i < dim(); ++i)
        if (data_.basis[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t GradedAlgebra::index(std::string_view name) const
{
    auto i = find(name);
    if (!i)
        throw std::invalid_argument(data_.name + ": unknown basis element '" + std::string(name) + "'");
    return *i;
}

Element GradedAlgebra::multiply(const Element& a, const Element& b) const
{
    Accumulator acc;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b) {
            const Element& p = product(i, j);
            if (!p.empty())
                acc.add(p, x * y);
        }
    return acc.take();
}

const Element& GradedAlgebra::unit() const
{
    if (!data_.unit)
        throw std::logic_error(data_.name + " has no unit");
    return *data_.unit;
}

const Element& GradedAlgebra::d(std::size_t i) const
{
    if (!data_.differential)
        return zero_;
    return (*data_.differential)[i];
}

Element GradedAlgebra::apply_d(const Element& a) const
{
    Accumulator acc;
    for (const auto& [i, x] : a)
        acc.add(d(i), x);
    return acc.take();
}

std::vector<std::size_t> GradedAlgebra::indices_of_degree(int deg) const
{
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < dim(); ++i)
        if (degree(i) == deg)
            r.push_back(i);
    return r;
}

bool GradedAlgebra::is_homogeneous(const Element& a, int* deg) const
{
    std::optional<int> d;
    for (const auto& [i, x] : a) {
        if (d && *d != degree(i))
            return false;
        d = degree(i);
    }
    if (deg)
        *deg = d.value_or(0);
    return true;
}

std::string GradedAlgebra::format(const Element& a) const
{
    if (a.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, x] : a) {
        if (!first)
            os << " + ";
        first = false;
        if (x.is_one())
            os << basis_name(i);
        else
            os << x << "*" << basis_name(i);
    }
    return os.str();
}

Element GradedAlgebra::parse_element(const std::map<std::string, Rational>& coefficients) const
{
    std::vector<Entry> e;
    for (const auto& [name, c] : coefficients)
        e.emplace_back(index(name), c);
    return SparseVector::from_unsorted(std::move(e));
}

AlgebraPtr make_algebra(AlgebraData data) { return std::make_shared<const GradedAlgebra>(std::move(data)); }

// --- axiom suite -------------------------------------------------------------------

CheckReport check_dga_axioms(const GradedAlgebra& a)
{
    CheckReport rep("dga " + a.name());
    const std::size_t n = a.dim();
    auto nm = [&](std::size_t i) { return a.basis_name(i); };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rep.count();
            for (const auto& [c, x] : a.product(i, j))
                if (a.degree(c) != a.degree(i) + a.degree(j)) {
                    rep.fail("degree", nm(i) + "*" + nm(j) + " has component " + nm(c) + " of degree " +
                                           std::to_string(a.degree(c)));
                    break;
                }
        }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Element& ij = a.product(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                rep.count();
                Element lhs = a.multiply(ij, SparseVector::unit(k));
                Element rhs = a.multiply(SparseVector::unit(i), a.product(j, k));
                if (lhs != rhs)
                    rep.fail("associativity", "(" + nm(i) + "," + nm(j) + "," + nm(k) + "): " + a.format(lhs) +
                                                  " != " + a.format(rhs));
            }
        }

    if (a.has_unit()) {
        int ud = 0;
        if (!a.is_homogeneous(a.unit(), &ud) || (!a.unit().empty() && ud != 0))
            rep.fail("unit-degree", "unit " + a.format(a.unit()) + " is not of degree 0");
        for (std::size_t i = 0; i < n; ++i) {
            rep.count();
            Element e = SparseVector::unit(i);
            Element l = a.multiply(a.unit(), e);
            Element r = a.multiply(e, a.unit());
            if (l != e)
                rep.fail("left-unit", "1*" + nm(i) + " = " + a.format(l));
            if (r != e)
                rep.fail("right-unit", nm(i) + "*1 = " + a.format(r));
        }
    }

    if (a.has_differential()) {
        for (std::size_t i = 0; i < n; ++i) {
            rep.count();
            for (const auto& [c, x] : a.d(i))
                if (a.degree(c) != a.degree(i) + 1) {
                    rep.fail("d-degree", "d(" + nm(i) + ") has component " + nm(c));
                    break;
                }
            Element dd = a.apply_d(a.d(i));
            if (!dd.empty())
                rep.fail("d-squared", "d(d(" + nm(i) + ")) = " + a.format(dd));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                rep.count();
                Element lhs = a.apply_d(a.product(i, j));
                Element rhs = a.multiply(a.d(i), SparseVector::unit(j));
                rhs.add_scaled(a.multiply(SparseVector::unit(i), a.d(j)), sign_power(a.degree(i)));
                if (lhs != rhs)
                    rep.fail("leibniz", "d(" + nm(i) + "*" + nm(j) + "): " + a.format(lhs) + " != " + a.format(rhs));
            }
    }

    if (const auto& tr = a.trace()) {
        for (const auto& [i, x] : tr->values) {
            rep.count();
            if (a.degree(i) != tr->weight)
                rep.fail("trace-weight", "trace nonzero on " + nm(i) + " of degree " + std::to_string(a.degree(i)));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                rep.count();
                Rational l = (*tr)(a.product(i, j));
                Rational r = koszul(a.degree(i), a.degree(j)) * (*tr)(a.product(j, i));
                if (l != r)
                    rep.fail("graded-trace", "tr(" + nm(i) + "*" + nm(j) + ") = " + l.str() + " vs " + r.str());
            }
        if (a.has_differential())
            for (std::size_t i = 0; i < n; ++i) {
                rep.count();
                Rational v = (*tr)(a.d(i));
                if (!v.is_zero())
                    rep.fail("trace-closed", "tr(d " + nm(i) + ") = " + v.str());
            }
    }
    return rep;
}

// --- derivations -------------------------------------------------------------------

Element Derivation::apply(const Element& a) const
{
    Accumulator acc;
    for (const auto& [i, x] : a)
        acc.add(images.at(i), x);
    return acc.take();
}

Element apply_derivation(const Derivation& d, const Element& a) { return d.apply(a); }

Derivation grading_derivation(const GradedAlgebra& a)
{
    Derivation d;
    d.degree = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        d.images.push_back(a.degree(i) == 0 ? Element{} : SparseVector::unit(i, a.degree(i)));
    return d;
}

Derivation inner_derivation(const GradedAlgebra& a, const Element& g)
{
    int gd = 0;
    if (!a.is_homogeneous(g, &gd))
        throw std::invalid_argument("inner derivation needs a homogeneous element");
    Derivation d;
    d.degree = gd;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Element e = SparseVector::unit(i);
        Element v = a.multiply(g, e);
        v.add_scaled(a.multiply(e, g), -koszul(gd, a.degree(i)));
        d.images.push_back(std::move(v));
    }
    return d;
}

CheckReport check_derivation(const GradedAlgebra& a, const Derivation& d)
{
    CheckReport rep("derivation on " + a.name());
    const std::size_t n = a.dim();
    if (d.images.size() != n) {
        rep.fail("shape", "derivation lists " + std::to_string(d.images.size()) + " images for dimension " +
                              std::to_string(n));
        return rep;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [c, x] : d.images[i])
            if (a.degree(c) != a.degree(i) + d.degree) {
                rep.fail("degree", "D(" + a.basis_name(i) + ") has component " + a.basis_name(c));
                break;
            }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rep.count();
            Element lhs = d.apply(a.product(i, j));
            Element rhs = a.multiply(d.images[i], SparseVector::unit(j));
            rhs.add_scaled(a.multiply(SparseVector::unit(i), d.images[j]), koszul(d.degree, a.degree(i)));
            if (lhs != rhs)
                rep.fail("leibniz", "D(" + a.basis_name(i) + "*" + a.basis_name(j) + ")");
        }
    return rep;
}

CheckReport check_multiplier(const GradedAlgebra& a, const MultiplierPair& m)
{
    CheckReport rep("multiplier on " + a.name());
    const std::size_t n = a.dim();
    if (m.left.size() != n || m.right.size() != n) {
        rep.fail("shape", "multiplier tables must list every basis element");
        return rep;
    }
    auto lift = [&](const std::vector<Element>& table, const Element& x) {
        Accumulator acc;
        for (const auto& [c, v] : x)
            acc.add(table[c], v);
        return acc.take();
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rep.count(3);
            Element ei = SparseVector::unit(i), ej = SparseVector::unit(j);
            if (a.multiply(m.right[i], ej) != a.multiply(ei, m.left[j]))
                rep.fail("bimodule", "(" + a.basis_name(i) + "m)" + a.basis_name(j));
            if (lift(m.left, a.product(i, j)) != a.multiply(m.left[i], ej))
                rep.fail("left-linear", "m(" + a.basis_name(i) + a.basis_name(j) + ")");
            if (lift(m.right, a.product(i, j)) != a.multiply(ei, m.right[j]))
                rep.fail("right-linear", "(" + a.basis_name(i) + a.basis_name(j) + ")m");
        }
    return rep;
}

// --- constructions -------------------------------------------------------------------

namespace {

Element shift_keys(const Element& e, std::size_t offset)
{
    std::vector<Entry> v;
    for (const auto& [k, x] : e)
        v.emplace_back(k + offset, x);
    return SparseVector::from_unsorted(std::move(v));
}

}  // namespace

AlgebraPtr adjoin_unit(const GradedAlgebra& a)
{
    AlgebraData d;
    d.name = a.name() + "+";
    std::string uname = a.find("1") ? "1+" : "1";
    d.basis.push_back({uname, 0});
    for (const auto& b : a.data().basis)
        d.basis.push_back(b);
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i <= n; ++i) {
        d.products[{0, i}] = SparseVector::unit(i);
        d.products[{i, 0}] = SparseVector::unit(i);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a.product(i, j).empty())
                d.products[{i + 1, j + 1}] = shift_keys(a.product(i, j), 1);
    d.unit = SparseVector::unit(0);
    if (a.has_differential()) {
        std::vector<Element> diff{Element{}};
        for (std::size_t i = 0; i < n; ++i)
            diff.push_back(shift_keys(a.d(i), 1));
        d.differential = std::move(diff);
    }
    if (a.trace())
        d.trace = GradedFunctional{a.trace()->weight, shift_keys(a.trace()->values, 1)};
    return make_algebra(std::move(d));
}

AlgebraPtr matrix_amplify(const GradedAlgebra& a)
{
    static const char* kPos[4] = {"11", "12", "21", "22"};
    const std::size_t n = a.dim();
    auto idx = [](std::size_t i, std::size_t r, std::size_t c) { return i * 4 + r * 2 + c; };
    AlgebraData d;
    d.name = "M2(" + a.name() + ")";
    for (std::size_t i = 0; i < n; ++i)
        for (int m = 0; m < 4; ++m)
            d.basis.push_back({a.basis_name(i) + "@" + kPos[m], a.degree(i)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Element& p = a.product(i, j);
            if (p.empty())
                continue;
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t k = 0; k < 2; ++k)
                    for (std::size_t c = 0; c < 2; ++c) {
                        std::vector<Entry> v;
                        for (const auto& [t, x] : p)
                            v.emplace_back(idx(t, r, c), x);
                        d.products[{idx(i, r, k), idx(j, k, c)}] = SparseVector::from_unsorted(std::move(v));
                    }
        }
    if (a.has_unit()) {
        std::vector<Entry> u;
        for (const auto& [t, x] : a.unit()) {
            u.emplace_back(idx(t, 0, 0), x);
            u.emplace_back(idx(t, 1, 1), x);
        }
        d.unit = SparseVector::from_unsorted(std::move(u));
    }
    if (a.has_differential()) {
        std::vector<Element> diff(4 * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) {
                    std::vector<Entry> v;
                    for (const auto& [t, x] : a.d(i))
                        v.emplace_back(idx(t, r, c), x);
                    diff[idx(i, r, c)] = SparseVector::from_unsorted(std::move(v));
                }
        d.differential = std::move(diff);
    }
    if (a.trace()) {
        std::vector<Entry> v;
        for (const auto& [t, x] : a.trace()->values) {
            v.emplace_back(idx(t, 0, 0), x);
            v.emplace_back(idx(t, 1, 1), x);
        }
        d.trace = GradedFunctional{a.trace()->weight, SparseVector::from_unsorted(std::move(v))};
    }
    return make_algebra(std::move(d));
}

AlgebraPtr tensor_product(const GradedAlgebra& a, const GradedAlgebra& b)
{
    const std::size_t na = a.dim(), nb = b.dim();
    auto idx = [nb](std::size_t i, std::size_t j) { return i * nb + j; };
    AlgebraData d;
    d.name = a.name() + "(x)" + b.name();
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            d.basis.push_back({a.basis_name(i) + "|" + b.basis_name(j), a.degree(i) + b.degree(j)});
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < na; ++k)
                for (std::size_t l = 0; l < nb; ++l) {
                    const Element& p = a.product(i, k);
                    const Element& q = b.product(j, l);
                    if (p.empty() || q.empty())
                        continue;
                    Rational s = koszul(b.degree(j), a.degree(k));
                    std::vector<Entry> v;
                    for (const auto& [x, cx] : p)
                        for (const auto& [y, cy] : q)
                            v.emplace_back(idx(x, y), s * cx * cy);
                    d.products[{idx(i, j), idx(k, l)}] = SparseVector::from_unsorted(std::move(v));
                }
    if (a.has_unit() && b.has_unit()) {
        std::vector<Entry> v;
        for (const auto& [x, cx] : a.unit())
            for (const auto& [y, cy] : b.unit())
                v.emplace_back(idx(x, y), cx * cy);
        d.unit = SparseVector::from_unsorted(std::move(v));
    }
    if (a.has_differential() || b.has_differential()) {
        std::vector<Element> diff(na * nb);
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < nb; ++j) {
                std::vector<Entry> v;
                for (const auto& [x, cx] : a.d(i))
                    v.emplace_back(idx(x, j), cx);
                for (const auto& [y, cy] : b.d(j))
                    v.emplace_back(idx(i, y), sign_power(a.degree(i)) * cy);
                diff[idx(i, j)] = SparseVector::from_unsorted(std::move(v));
            }
        d.differential = std::move(diff);
    }
    if (a.trace() && b.trace()) {
        std::vector<Entry> v;
        for (const auto& [x, cx] : a.trace()->values)
            for (const auto& [y, cy] : b.trace()->values)
                v.emplace_back(idx(x, y), cx * cy);
        d.trace = GradedFunctional{a.trace()->weight + b.trace()->weight, SparseVector::from_unsorted(std::move(v))};
    }
    return make_algebra(std::move(d));
}

RebasedAlgebra rebase_unit(const GradedAlgebra& a)
{
    if (!a.has_unit() || a.unit().empty())
        throw std::invalid_argument(a.name() + ": rebase_unit needs a nonzero unit");
    const std::size_t n = a.dim();
    std::optional<std::size_t> pivot;
    for (const auto& [c, x] : a.unit())
        if (a.degree(c) == 0) {
            pivot = c;
            break;
        }
    if (!pivot)
        throw std::invalid_argument(a.name() + ": unit has no degree-0 component");
    const std::size_t p = *pivot;
    const Rational up = a.unit().get(p);
    // new index of old basis element c != p
    std::vector<std::size_t> new_of(n, 0);
    std::size_t next = 1;
    for (std::size_t c = 0; c < n; ++c)
        if (c != p)
            new_of[c] = next++;

    std::vector<SparseVector> to_new_cols(n), to_old_cols(n);
    for (std::size_t c = 0; c < n; ++c) {
        if (c == p) {
            std::vector<Entry> v{{0, Rational(1) / up}};
            for (const auto& [t, x] : a.unit())
                if (t != p)
                    v.emplace_back(new_of[t], -x / up);
            to_new_cols[c] = SparseVector::from_unsorted(std::move(v));
        } else {
            to_new_cols[c] = SparseVector::unit(new_of[c]);
        }
    }
    to_old_cols[0] = a.unit();
    for (std::size_t c = 0; c < n; ++c)
        if (c != p)
            to_old_cols[new_of[c]] = SparseVector::unit(c);

    RebasedAlgebra r;
    r.to_new = SparseMatrix::from_columns(n, to_new_cols);
    r.to_old = SparseMatrix::from_columns(n, to_old_cols);

    AlgebraData d;
    d.name = a.name();
    d.basis.resize(n);
    d.basis[0] = {a.find("1") && *a.find("1") != p ? "1'" : "1", 0};
    for (std::size_t c = 0; c < n; ++c)
        if (c != p)
            d.basis[new_of[c]] = a.data().basis[c];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Element prod = r.to_new.apply(a.multiply(to_old_cols[i], to_old_cols[j]));
            if (!prod.empty())
                d.products[{i, j}] = std::move(prod);
        }
    d.unit = SparseVector::unit(0);
    if (a.has_differential()) {
        std::vector<Element> diff(n);
        for (std::size_t i = 0; i < n; ++i)
            diff[i] = r.to_new.apply(a.apply_d(to_old_cols[i]));
        d.differential = std::move(diff);
    }
    if (a.trace()) {
        std::vector<Entry> v;
        for (std::size_t i = 0; i < n; ++i) {
            Rational t = (*a.trace())(to_old_cols[i]);
            if (!t.is_zero())
                v.emplace_back(i, t);
        }
        d.trace = GradedFunctional{a.trace()->weight, SparseVector::from_unsorted(std::move(v))};
    }
    r.algebra = make_algebra(std::move(d));
    return r;
}

SubalgebraInclusion degree_zero_part(const GradedAlgebra& a)
{
    SubalgebraInclusion s;
    s.inclusion = a.indices_of_degree(0);
    std::vector<long> sub_of(a.dim(), -1);
    for (std::size_t i = 0; i < s.inclusion.size(); ++i)
        sub_of[s.inclusion[i]] = static_cast<long>(i);
    auto restrict = [&](const Element& e) {
        std::vector<Entry> v;
        for (const auto& [k, x] : e) {
            if (sub_of[k] < 0)
                throw std::invalid_argument(a.name() + ": degree-0 product leaves degree 0");
            v.emplace_back(static_cast<Key>(sub_of[k]), x);
        }
        return SparseVector::from_unsorted(std::move(v));
    };
    AlgebraData d;
    d.name = a.name() + "^0";
    for (std::size_t i : s.inclusion)
        d.basis.push_back(a.data().basis[i]);
    for (std::size_t i = 0; i < s.inclusion.size(); ++i)
        for (std::size_t j = 0; j < s.inclusion.size(); ++j) {
            const Element& p = a.product(s.inclusion[i], s.inclusion[j]);
            if (!p.empty())
                d.products[{i, j}] = restrict(p);
        }
    if (a.has_unit())
        d.unit = restrict(a.unit());
    if (a.trace() && a.trace()->weight == 0)
        d.trace = GradedFunctional{0, restrict(a.trace()->values)};
    s.algebra = make_algebra(std::move(d));
    return s;
}

// --- built-ins ---------------------------------------------------------------------

AlgebraPtr ground_field()
{
    AlgebraData d;
    d.name = "q";
    d.basis = {{"1", 0}};
    d.products[{0, 0}] = SparseVector::unit(0);
    d.unit = SparseVector::unit(0);
    d.trace = GradedFunctional{0, SparseVector::unit(0)};
    return make_algebra(std::move(d));
}

AlgebraPtr function_algebra(std::size_t points)
{
    AlgebraData d;
    d.name = "fun:" + std::to_string(points);
    std::vector<Entry> u;
    for (std::size_t i = 0; i < points; ++i) {
        d.basis.push_back({"e" + std::to_string(i), 0});
        d.products[{i, i}] = SparseVector::unit(i);
        u.emplace_back(i, 1);
    }
    if (points > 0) {
        d.unit = SparseVector::from_unsorted(u);
        d.trace = GradedFunctional{0, SparseVector::from_unsorted(u)};
    }
    return make_algebra(std::move(d));
}

AlgebraPtr vanishing_function_algebra(std::size_t points)
{
    AlgebraData d;
    d.name = "fun0:" + std::to_string(points);
    for (std::size_t i = 1; i < points; ++i) {
        d.basis.push_back({"e" + std::to_string(i), 0});
        d.products[{i - 1, i - 1}] = SparseVector::unit(i - 1);
    }
    return make_algebra(std::move(d));
}

AlgebraPtr exterior_algebra(std::size_t k)
{
    if (k > 12)
        throw std::invalid_argument("exterior algebra on more than 12 generators is not supported");
    std::vector<unsigned> subsets(std::size_t(1) << k);
    for (unsigned s = 0; s < subsets.size(); ++s)
        subsets[s] = s;
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](unsigned x, unsigned y) { return std::popcount(x) < std::popcount(y); });
    std::vector<std::size_t> index_of(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i)
        index_of[subsets[i]] = i;
    auto name = [k](unsigned s) {
        if (s == 0)
            return std::string("1");
        if (k == 1)
            return std::string("t");
        std::string r;
        for (std::size_t i = 0; i < k; ++i)
            if (s >> i & 1u)
                r += "t" + std::to_string(i + 1);
        return r;
    };
    AlgebraData d;
    d.name = "ext:" + std::to_string(k);
    for (unsigned s : subsets)
        d.basis.push_back({name(s), std::popcount(s)});
    for (unsigned s : subsets)
        for (unsigned t : subsets) {
            if (s & t)
                continue;
            int inv = 0;  // pairs i in s, j in t with i > j
            for (std::size_t i = 0; i < k; ++i)
                if (s >> i & 1u)
                    inv += std::popcount(t & ((1u << i) - 1u));
            d.products[{index_of[s], index_of[t]}] = SparseVector::unit(index_of[s | t], sign_power(inv));
        }
    d.unit = SparseVector::unit(0);
    d.trace = GradedFunctional{static_cast<int>(k), SparseVector::unit(index_of[(1u << k) - 1u])};
    return make_algebra(std::move(d));
}

AlgebraPtr theta_c_algebra()
{
    AlgebraData d;
    d.name = "theta-c";
    d.basis = {{"1", 0}, {"t", 1}, {"c", 2}, {"tc", 3}};
    for (std::size_t i = 0; i < 4; ++i) {
        d.products[{0, i}] = SparseVector::unit(i);
        d.products[{i, 0}] = SparseVector::unit(i);
    }
    d.products[{1, 2}] = SparseVector::unit(3);
    d.products[{2, 1}] = SparseVector::unit(3);
    d.unit = SparseVector::unit(0);
    d.differential = std::vector<Element>{{}, SparseVector::unit(2), {}, {}};
    d.trace = GradedFunctional{3, SparseVector::unit(3)};
    return make_algebra(std::move(d));
}

AlgebraPtr cyclic_group_algebra(std::size_t order)
{
    if (order == 0)
        throw std::invalid_argument("group of order 0");
    AlgebraData d;
    d.name = "group:Z" + std::to_string(order);
    for (std::size_t i = 0; i < order; ++i)
        d.basis.push_back({i == 0 ? "1" : (i == 1 ? "g" : "g" + std::to_string(i)), 0});
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j)
            d.products[{i, j}] = SparseVector::unit((i + j) % order);
    d.unit = SparseVector::unit(0);
    d.trace = GradedFunctional{0, SparseVector::unit(0)};
    return make_algebra(std::move(d));
}

AlgebraPtr matrix_algebra2()
{
    AlgebraPtr m = matrix_amplify(*ground_field());
    AlgebraData d = m->data();
    d.name = "mat2";
    for (auto& b : d.basis)
        b.name = "e" + b.name.substr(b.name.find('@') + 1);
    return make_algebra(std::move(d));
}

namespace {

std::size_t parse_count(std::string_view s, std::string_view full)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
        throw std::invalid_argument("malformed built-in algebra name '" + std::string(full) + "'");
    return std::stoul(std::string(s));
}

}  // namespace

AlgebraPtr builtin_algebra(std::string_view name)
{
    auto starts = [&](std::string_view p) { return name.substr(0, p.size()) == p; };
    if (name == "q")
        return ground_field();
    if (name == "theta-c")
        return theta_c_algebra();
    if (name == "mat2")
        return matrix_algebra2();
    if (starts("mat2:"))
        return matrix_amplify(*builtin_algebra(name.substr(5)));
    if (starts("unital:"))
        return adjoin_unit(*builtin_algebra(name.substr(7)));
    if (starts("fun0:"))
        return vanishing_function_algebra(parse_count(name.substr(5), name));
    if (starts("fun:"))
        return function_algebra(parse_count(name.substr(4), name));
    if (starts("ext:"))
        return exterior_algebra(parse_count(name.substr(4), name));
    if (starts("group:Z"))
        return cyclic_group_algebra(parse_count(name.substr(7), name));
    throw std::invalid_argument("unknown built-in algebra '" + std::string(name) + "'");
}

std::vector<std::string> builtin_algebra_names()
{
    return {"q", "fun:2", "fun:3", "ext:1", "ext:2", "theta-c", "group:Z2", "group:Z3", "mat2", "mat2:ext:1"};
}

}  // namespace hopfcyc
