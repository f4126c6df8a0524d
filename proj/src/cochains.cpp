#include "hopfcyc/cochains.hpp"

#include <stdexcept>

namespace hopfcyc {

namespace {

std::vector<int> basis_degrees(const GradedAlgebra& a)
{
    std::vector<int> d;
    for (std::size_t i = 0; i < a.dim(); ++i)
        d.push_back(a.degree(i));
    return d;
}

std::vector<std::string> basis_names(const GradedAlgebra& a)
{
    std::vector<std::string> d;
    for (std::size_t i = 0; i < a.dim(); ++i)
        d.push_back(a.basis_name(i));
    return d;
}

const AlgebraPtr& require_unital(const AlgebraPtr& a, bool normalized)
{
    if (!a)
        throw std::invalid_argument("null algebra");
    if (!a->has_unit() || a->unit().empty())
        throw std::invalid_argument(a->name() + " is not unital; adjoin a unit before forming its cyclic object");
    if (normalized && !a->unit_index())
        throw std::invalid_argument(a->name() +
                                    ": normalized cochains need the unit as a basis element (use rebase_unit)");
    return a;
}

std::optional<std::uint32_t> excluded_index(const AlgebraPtr& a, bool normalized)
{
    if (!normalized)
        return std::nullopt;
    return static_cast<std::uint32_t>(*a->unit_index());
}

// Transposed derivation table: for each basis index c, the (source, coefficient) pairs with D(source) ∋ c.
std::vector<std::vector<std::pair<std::uint32_t, Rational>>> transpose(const Derivation& d, std::size_t dim)
{
    if (d.images.size() != dim)
        throw std::invalid_argument("derivation does not match the algebra dimension");
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> t(dim);
    for (std::size_t s = 0; s < dim; ++s)
        for (const auto& [c, x] : d.images[s])
            t[c].emplace_back(static_cast<std::uint32_t>(s), x);
    return t;
}

template <typename F>
LevelVector per_level(const LevelVector& v, int shift, F&& f)
{
    LevelVector r;
    for (const auto& [lvl, part] : v) {
        if (lvl + shift < 0)
            continue;
        SparseVector out = f(lvl, part);
        if (out.empty())
            continue;
        auto& slot = r[lvl + shift];
        slot += out;
        if (slot.empty())
            r.erase(lvl + shift);
    }
    return r;
}

}  // namespace

AlgebraCochains::AlgebraCochains(AlgebraPtr algebra, bool normalized)
    : TensorPowerObject(basis_degrees(*require_unital(algebra, normalized)), basis_names(*algebra), 1, -1,
                        excluded_index(algebra, normalized)),
      algebra_(std::move(algebra)), normalized_(normalized)
{
}

std::string AlgebraCochains::name() const
{
    return "cochains of " + algebra_->name() + (normalized_ ? " (normalized)" : "");
}

void AlgebraCochains::face(int n, int i, Key key, const Rational& c, Accumulator& out) const
{
    const Tuple s = decode(n - 1, key);
    const GradedAlgebra& a = *algebra_;
    if (i < n) {
        for (const auto& f : a.factorizations(s[i]))
            out.add(encode(s.split(i, f.left, f.right)), c * f.coef);
        return;
    }
    const int rest = degree_sum(s, 1, s.size);
    for (const auto& f : a.factorizations(s[0])) {
        // (δ_n φ)(a_0..a_n) = ± φ(a_n a_0, a_1, .., a_{n-1}); here a_n = left, a_0 = right
        Tuple t = s;
        t[0] = f.right;
        t.push_back(f.left);
        const long long sign_exp = static_cast<long long>(a.degree(f.left)) * (a.degree(f.right) + rest);
        out.add(encode(t), c * f.coef * sign_power(sign_exp));
    }
}

void AlgebraCochains::degeneracy(int n, int i, Key key, const Rational& c, Accumulator& out) const
{
    const Tuple s = decode(n, key);
    const Rational u = algebra_->unit_coefficient(s[i + 1]);
    if (!u.is_zero())
        out.add(encode(s.erased(i + 1)), c * u);
}

void AlgebraCochains::cyclic(int n, Key key, const Rational& c, Accumulator& out) const
{
    const Tuple s = decode(n, key);
    Tuple t = s.erased(0);
    t.push_back(s[0]);
    const long long e = static_cast<long long>(base_degree(s[0])) * degree_sum(s, 1, s.size);
    out.add(encode(t), c * sign_power(e));
}

void AlgebraCochains::differential(int n, Key key, const Rational& c, Accumulator& out) const
{
    const Tuple s = decode(n, key);
    int prefix = 0;
    for (int j = 0; j < s.size; ++j) {
        const Rational sg = sign_power(prefix);
        for (const auto& p : algebra_->d_preimages(s[j])) {
            Tuple t = s;
            t[j] = p.source;
            out.add(encode(t), c * sg * p.coef);
        }
        prefix += base_degree(s[j]);
    }
}

Key AlgebraCochains::key_of(const std::vector<std::size_t>& tuple) const
{
    Tuple t;
    for (std::size_t i : tuple) {
        if (i >= algebra_->dim())
            throw std::out_of_range("basis index out of range");
        t.push_back(static_cast<std::uint32_t>(i));
    }
    return encode(t);
}

SparseVector AlgebraCochains::cochain(const std::vector<std::pair<std::vector<std::string>, Rational>>& values) const
{
    std::vector<Entry> e;
    std::optional<std::size_t> len;
    for (const auto& [names, v] : values) {
        if (len && *len != names.size())
            throw std::invalid_argument("cochain values must share one level");
        len = names.size();
        std::vector<std::size_t> idx;
        for (const auto& n : names)
            idx.push_back(algebra_->index(n));
        e.emplace_back(key_of(idx), v);
    }
    return SparseVector::from_unsorted(std::move(e));
}

std::map<int, SparseVector> split_by_weight(const AlgebraCochains& x, int level, const SparseVector& v)
{
    std::map<int, std::vector<Entry>> parts;
    for (const auto& [k, c] : v)
        parts[x.weight(level, k)].emplace_back(k, c);
    std::map<int, SparseVector> r;
    for (auto& [m, e] : parts)
        r[m] = SparseVector::from_unsorted(std::move(e));
    return r;
}

LevelVector weight_part(const AlgebraCochains& x, const LevelVector& v, int weight)
{
    LevelVector r;
    for (const auto& [lvl, part] : v) {
        auto parts = split_by_weight(x, lvl, part);
        auto it = parts.find(weight);
        if (it != parts.end())
            r[lvl] = it->second;
    }
    return r;
}

// --- derivation operators --------------------------------------------------------

SparseVector lie_derivative(const AlgebraCochains& x, const Derivation& d, int level, const SparseVector& v)
{
    const auto dt = transpose(d, x.algebra().dim());
    Accumulator acc;
    for (const auto& [key, c] : v) {
        const Tuple s = x.decode(level, key);
        int prefix = 0;
        for (int j = 0; j < s.size; ++j) {
            const Rational sg = sign_power(static_cast<long long>(d.degree) * prefix);
            for (const auto& [src, y] : dt[s[j]]) {
                Tuple t = s;
                t[j] = src;
                acc.add(x.encode(t), c * y * sg);
            }
            prefix += x.base_degree(s[j]);
        }
    }
    return acc.take();
}

SparseVector interior_e(const AlgebraCochains& x, const Derivation& d, int level, const SparseVector& v)
{
    if (d.degree != 0)
        throw std::invalid_argument("e_D is implemented for derivations of degree 0");
    const auto dt = transpose(d, x.algebra().dim());
    const GradedAlgebra& a = x.algebra();
    const int k = level + 1;
    Accumulator acc;
    for (const auto& [key, c] : v) {
        const Tuple s = x.decode(level, key);
        const int rest = x.degree_sum(s, 1, s.size);
        for (const auto& f : a.factorizations(s[0])) {
            // D(a_k) a_0 ∋ s_0: left factor is D(a_k), right factor is a_0
            for (const auto& [ak, y] : dt[f.left]) {
                Tuple t = s;
                t[0] = f.right;
                t.push_back(ak);
                const long long e = static_cast<long long>(a.degree(ak)) * (a.degree(f.right) + rest);
                acc.add(x.encode(t), c * f.coef * y * sign_power(k + 1 + e));
            }
        }
    }
    return acc.take();
}

SparseVector interior_E(const AlgebraCochains& x, const Derivation& d, int level, const SparseVector& v)
{
    if (d.degree != 0)
        throw std::invalid_argument("E_D is implemented for derivations of degree 0");
    const int k = level - 1;
    if (k < 1)
        return {};
    const auto dt = transpose(d, x.algebra().dim());
    const GradedAlgebra& a = x.algebra();
    Accumulator acc;
    for (const auto& [key, c] : v) {
        const Tuple s = x.decode(level, key);
        const Rational u = a.unit_coefficient(s[0]);
        if (u.is_zero())
            continue;
        // s = (1, a_i..a_k with one D applied, a_0..a_{i-1})
        Tuple rest = s.erased(0);
        for (int i = 1; i <= k; ++i) {
            const int blk = k - i + 1;
            Tuple back;
            for (int p = blk; p < rest.size; ++p)
                back.push_back(rest[p]);
            const int back_deg = x.degree_sum(back);
            for (int jj = 0; jj < blk; ++jj)
                for (const auto& [src, y] : dt[rest[jj]]) {
                    Tuple t = back;
                    int front_deg = 0;
                    for (int p = 0; p < blk; ++p) {
                        const std::uint32_t b = p == jj ? src : rest[p];
                        t.push_back(b);
                        front_deg += x.base_degree(b);
                    }
                    const long long e = static_cast<long long>(i) * k + 1 + static_cast<long long>(front_deg) * back_deg;
                    acc.add(x.encode(t), c * u * y * sign_power(e));
                }
        }
    }
    return acc.take();
}

LevelVector lie_derivative(const AlgebraCochains& x, const Derivation& d, const LevelVector& v)
{
    return per_level(v, 0, [&](int lvl, const SparseVector& p) { return lie_derivative(x, d, lvl, p); });
}

LevelVector interior_e(const AlgebraCochains& x, const Derivation& d, const LevelVector& v)
{
    return per_level(v, 1, [&](int lvl, const SparseVector& p) { return interior_e(x, d, lvl, p); });
}

LevelVector interior_E(const AlgebraCochains& x, const Derivation& d, const LevelVector& v)
{
    return per_level(v, -1, [&](int lvl, const SparseVector& p) { return interior_E(x, d, lvl, p); });
}

LevelVector extend_d(const AlgebraCochains& x, const LevelVector& v)
{
    return per_level(v, 0, [&](int lvl, const SparseVector& p) { return apply_internal_d(x, lvl, p); });
}

// --- weight retraction and homotopy -------------------------------------------------

LevelVector homotopy_h(const AlgebraCochains& x, const LevelVector& v)
{
    const Derivation grading = grading_derivation(x.algebra());
    LevelVector r;
    for (const auto& [lvl, part] : v)
        for (const auto& [m, piece] : split_by_weight(x, lvl, part)) {
            if (m == 0)
                continue;
            LevelVector one{{lvl, piece}};
            const Rational inv = Rational(1, m);
            add_scaled(r, interior_e(x, grading, one), inv);
            add_scaled(r, interior_E(x, grading, one), inv);
        }
    return r;
}

Rational sign_c(int k, int m)
{
    return sign_power(static_cast<long long>(k) * m + (static_cast<long long>(m) * m - m) / 2);
}

namespace {

template <typename F>
void for_each_level_weight(const AlgebraCochains& x, const LevelVector& v, F&& f)
{
    for (const auto& [lvl, part] : v)
        for (const auto& [m, piece] : split_by_weight(x, lvl, part))
            f(lvl, m, LevelVector{{lvl, piece}});
}

}  // namespace

LevelVector weight_retraction(const AlgebraCochains& x, const LevelVector& v)
{
    LevelVector r;
    for_each_level_weight(x, v, [&](int k, int m, LevelVector y) {
        for (int j = 0; j < m; ++j)
            y = extend_d(x, homotopy_h(x, y));
        add_scaled(r, y, sign_c(k, m));
    });
    return r;
}

LevelVector weight_homotopy(const AlgebraCochains& x, const LevelVector& v)
{
    LevelVector r;
    for_each_level_weight(x, v, [&](int k, int m, LevelVector y) {
        for (int j = 0; j < m; ++j) {
            LevelVector hy = homotopy_h(x, y);
            add_scaled(r, hy, sign_c(k, j));
            y = extend_d(x, hy);
        }
    });
    return r;
}

DegreeZeroComparison::DegreeZeroComparison(const AlgebraCochains& full_cochains)
    : full(full_cochains), sub(degree_zero_part(full_cochains.algebra())),
      sub_cochains(std::make_shared<AlgebraCochains>(sub.algebra, full_cochains.normalized()))
{
}

LevelVector DegreeZeroComparison::map_I(const LevelVector& sub_cochain) const
{
    LevelVector r;
    for (const auto& [lvl, part] : sub_cochain) {
        std::vector<Entry> e;
        for (const auto& [k, c] : part) {
            Tuple s = sub_cochains->decode(lvl, k);
            for (int i = 0; i < s.size; ++i)
                s[i] = static_cast<std::uint32_t>(sub.inclusion[s[i]]);
            e.emplace_back(full.encode(s), c);
        }
        if (!e.empty())
            r[lvl] = SparseVector::from_unsorted(std::move(e));
    }
    return r;
}

LevelVector DegreeZeroComparison::map_R(const LevelVector& cochain) const
{
    std::vector<long> sub_of(full.algebra().dim(), -1);
    for (std::size_t i = 0; i < sub.inclusion.size(); ++i)
        sub_of[sub.inclusion[i]] = static_cast<long>(i);
    LevelVector r;
    for (const auto& [lvl, part] : weight_retraction(full, cochain)) {
        std::vector<Entry> e;
        for (const auto& [k, c] : part) {
            Tuple s = full.decode(lvl, k);
            for (int i = 0; i < s.size; ++i) {
                if (sub_of[s[i]] < 0)
                    throw std::logic_error("R produced a cochain of nonzero weight");
                s[i] = static_cast<std::uint32_t>(sub_of[s[i]]);
            }
            e.emplace_back(sub_cochains->encode(s), c);
        }
        if (!e.empty())
            r[lvl] = SparseVector::from_unsorted(std::move(e));
    }
    return r;
}

// --- I_g ------------------------------------------------------------------------------

SparseVector interior_I(const AlgebraCochains& x, const Element& g, int level, const SparseVector& v)
{
    int gd = 0;
    if (!x.algebra().is_homogeneous(g, &gd) || (!g.empty() && gd != 0))
        throw std::invalid_argument("I_g is implemented for g of degree 0");
    Accumulator acc;
    for (const auto& [key, c] : v) {
        const Tuple s = x.decode(level, key);
        for (int p = 1; p < s.size; ++p) {
            const Rational gc = g.get(s[p]);
            if (!gc.is_zero())
                acc.add(x.encode(s.erased(p)), c * gc * sign_power(p));
        }
    }
    return acc.take();
}

LevelVector interior_I(const AlgebraCochains& x, const Element& g, const LevelVector& v)
{
    return per_level(v, -1, [&](int lvl, const SparseVector& p) { return interior_I(x, g, lvl, p); });
}

}  // namespace hopfcyc
