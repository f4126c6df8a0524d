#include "hopfcyc/weil.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace hopfcyc {

namespace {

std::size_t saturating_binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (unsigned __int128)1 << 62)
            return std::size_t(1) << 62;
    }
    return static_cast<std::size_t>(r);
}

long long binomial(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    return static_cast<long long>(saturating_binomial(static_cast<std::size_t>(n), static_cast<std::size_t>(k)));
}

std::size_t parse_rank(std::string_view s, std::string_view full)
{
    std::size_t n = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("bad Lie algebra name '" + std::string(full) + "'");
        n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    if (s.empty() || n == 0)
        throw std::invalid_argument("bad Lie algebra name '" + std::string(full) + "'");
    return n;
}

LieAlgebraData empty_lie(std::string name, std::size_t dim)
{
    LieAlgebraData g;
    g.name = std::move(name);
    g.dim = dim;
    g.bracket.assign(dim, std::vector<SparseVector>(dim));
    return g;
}

LieAlgebraData gl(std::size_t n, std::string name)
{
    // basis E_ij at index i*n + j; [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
    LieAlgebraData g = empty_lie(std::move(name), n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Accumulator acc;
                    if (j == k)
                        acc.add(i * n + l, 1);
                    if (l == i)
                        acc.add(k * n + j, -1);
                    g.bracket[i * n + j][k * n + l] = acc.take();
                }
    return g;
}

SparseVector bracket_of(const LieAlgebraData& g, const SparseVector& x, const SparseVector& y)
{
    Accumulator acc;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y)
            acc.add(g.bracket[i][j], a * b);
    return acc.take();
}

std::string vector_str(const SparseVector& v) { return v.empty() ? "0" : v.str(); }

// Sign of θ_A θ_B -> θ_{A∪B} for disjoint subsets in increasing order.
Rational merge_sign(std::uint32_t a, std::uint32_t b)
{
    long long swaps = 0;
    for (std::uint32_t bits = b; bits; bits &= bits - 1) {
        const int j = std::countr_zero(bits);
        swaps += std::popcount(a >> (j + 1));
    }
    return sign_power(swaps);
}

SparseMatrix inverse_matrix(const SparseMatrix& a)
{
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        auto x = solve_linear(a, SparseVector::unit(j));
        if (!x)
            throw std::invalid_argument("component generator is not invertible");
        cols.push_back(std::move(*x));
    }
    return SparseMatrix::from_columns(a.rows(), std::move(cols));
}

}  // namespace

// --- Lie algebras ---------------------------------------------------------------------

CheckReport check_lie_algebra(const LieAlgebraData& g)
{
    CheckReport rep("Lie algebra " + g.name);
    const std::size_t n = g.dim;
    if (g.bracket.size() != n) {
        rep.fail("shape", "bracket table has " + std::to_string(g.bracket.size()) + " rows for dimension " +
                              std::to_string(n));
        return rep;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            rep.count();
            if (g.bracket[i][j] != -g.bracket[j][i])
                rep.fail("antisymmetry", "[" + std::to_string(i) + "," + std::to_string(j) + "] = " +
                                             vector_str(g.bracket[i][j]) + " but [" + std::to_string(j) + "," +
                                             std::to_string(i) + "] = " + vector_str(g.bracket[j][i]));
            for (std::size_t k = 0; k < n; ++k) {
                rep.count();
                auto x = SparseVector::unit(i), y = SparseVector::unit(j), z = SparseVector::unit(k);
                SparseVector jac = bracket_of(g, x, g.bracket[j][k]) + bracket_of(g, y, g.bracket[k][i]) +
                                   bracket_of(g, z, g.bracket[i][j]);
                if (!jac.empty())
                    rep.fail("jacobi", "basis " + std::to_string(i) + "," + std::to_string(j) + "," +
                                           std::to_string(k) + ": " + jac.str());
            }
        }
    for (const auto& x : g.compact)
        for (const auto& [i, c] : x)
            if (i >= n)
                rep.fail("compact", "generator " + x.str() + " lies outside the algebra");
    for (std::size_t c = 0; c < g.components.size(); ++c) {
        const SparseMatrix& a = g.components[c];
        const std::string name = "component " + std::to_string(c);
        if (a.rows() != n || a.cols() != n) {
            rep.fail("component-shape", name + " is not " + std::to_string(n) + "x" + std::to_string(n));
            continue;
        }
        rep.count();
        if (rank(a) != n) {
            rep.fail("component-invertible", name + " is singular");
            continue;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                rep.count();
                SparseVector lhs = bracket_of(g, a.column(i), a.column(j));
                SparseVector rhs = a.apply(g.bracket[i][j]);
                if (lhs != rhs)
                    rep.fail("component-automorphism", name + " on basis " + std::to_string(i) + "," +
                                                           std::to_string(j) + ": [Ax,Ay] = " + vector_str(lhs) +
                                                           ", A[x,y] = " + vector_str(rhs));
            }
    }
    return rep;
}

LieAlgebraData builtin_lie_algebra(std::string_view name)
{
    if (name == "gl1")
        return gl(1, "gl1");
    if (name == "gl1/O1") {
        // Ad(-1) is the identity on gl1
        LieAlgebraData g = gl(1, "gl1/O1");
        g.components.push_back(SparseMatrix::identity(1));
        return g;
    }
    if (name == "gl2")
        return gl(2, "gl2");
    if (name == "gl2/O2") {
        LieAlgebraData g = gl(2, "gl2/O2");
        g.compact.push_back(SparseVector{{1, 1}, {2, -1}});  // E12 - E21
        // conjugation by diag(1, -1)
        g.components.push_back(SparseMatrix::from_entries(4, 4, {{0, 0, 1}, {1, 1, -1}, {2, 2, -1}, {3, 3, 1}}));
        return g;
    }
    if (name == "sl2") {
        // h, e, f
        LieAlgebraData g = empty_lie("sl2", 3);
        auto set = [&](std::size_t i, std::size_t j, SparseVector v) {
            g.bracket[j][i] = -v;
            g.bracket[i][j] = std::move(v);
        };
        set(0, 1, SparseVector::unit(1, 2));
        set(0, 2, SparseVector::unit(2, -2));
        set(1, 2, SparseVector::unit(0));
        return g;
    }
    if (name.substr(0, 8) == "abelian:")
        return empty_lie(std::string(name), parse_rank(name.substr(8), name));
    throw std::invalid_argument("unknown built-in Lie algebra '" + std::string(name) + "'");
}

std::vector<std::string> builtin_lie_algebra_names()
{
    return {"gl1", "gl1/O1", "gl2", "gl2/O2", "sl2", "abelian:1", "abelian:2", "abelian:3"};
}

WeilTooLarge::WeilTooLarge(const std::string& what, std::size_t estimate_, std::size_t limit_)
    : std::runtime_error(what + " needs about " + std::to_string(estimate_) + " basis elements (limit " +
                         std::to_string(limit_) + ")"),
      estimate(estimate_), limit(limit_)
{
}

// --- complexes -------------------------------------------------------------------------

std::vector<std::size_t> cohomology_dims(const CochainComplex& c)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        SparseMatrix in = k == 0 ? SparseMatrix(c.dims[0], 0) : c.d[k - 1];
        SparseMatrix next = k < c.d.size() ? c.d[k] : SparseMatrix(0, c.dims[k]);
        out.push_back(cohomology_dim(in, next));
    }
    return out;
}

long long euler_characteristic(const std::vector<std::size_t>& dims)
{
    long long chi = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(dims[k]);
    return chi;
}

// --- truncated Weil algebra ---------------------------------------------------------------

std::size_t TruncatedWeil::estimated_dim(std::size_t lie_dim, int q)
{
    if (lie_dim >= 62)
        return std::size_t(1) << 62;
    const std::size_t sym = saturating_binomial(lie_dim + static_cast<std::size_t>(q), static_cast<std::size_t>(q));
    const std::size_t ext = std::size_t(1) << lie_dim;
    if (sym > (std::size_t(1) << 62) / ext)
        return std::size_t(1) << 62;
    return ext * sym;
}

TruncatedWeil::TruncatedWeil(LieAlgebraData g, int q, std::size_t limit) : g_(std::move(g)), q_(q)
{
    if (q < 0)
        throw std::invalid_argument("truncation must be non-negative");
    const std::size_t n = g_.dim;
    const std::size_t estimate = estimated_dim(n, q);
    if (estimate > limit || n > 24)
        throw WeilTooLarge("W(" + g_.name + ")_" + std::to_string(q), estimate, limit);
    // bad relative data is left for basic_subcomplex to report
    if (auto rep = check_lie_algebra(g_);
        rep.has_failure("shape") || rep.has_failure("antisymmetry") || rep.has_failure("jacobi"))
        throw std::invalid_argument("not a Lie algebra: " + rep.summary());

    // symmetric multisets of size <= q, as sorted index lists
    std::vector<std::vector<std::uint8_t>> words{{}};
    for (std::size_t begin = 0, len = 1; len <= static_cast<std::size_t>(q); ++len) {
        const std::size_t end = words.size();
        for (std::size_t w = begin; w < end; ++w) {
            const std::uint8_t from = words[w].empty() ? 0 : words[w].back();
            for (std::size_t a = from; a < n; ++a) {
                auto next = words[w];
                next.push_back(static_cast<std::uint8_t>(a));
                words.push_back(std::move(next));
            }
        }
        begin = end;
    }
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask)
        for (const auto& w : words)
            basis_.push_back(Monomial{mask, w});
    std::stable_sort(basis_.begin(), basis_.end(), [](const Monomial& a, const Monomial& b) {
        const int da = std::popcount(a.exterior) + 2 * static_cast<int>(a.symmetric.size());
        const int db = std::popcount(b.exterior) + 2 * static_cast<int>(b.symmetric.size());
        if (da != db)
            return da < db;
        if (a.exterior != b.exterior)
            return a.exterior < b.exterior;
        return a.symmetric < b.symmetric;
    });
    for (std::size_t i = 0; i < basis_.size(); ++i)
        index_.emplace(std::make_pair(basis_[i].exterior, basis_[i].symmetric), i);

    // dθ^a = Ω^a - ½ c^a_bc θ^b θ^c,  dΩ^a = c^a_bc Ω^b θ^c
    std::vector<Element> dtheta(n), dcurv(n);
    for (std::size_t a = 0; a < n; ++a) {
        Accumulator t, c;
        t.add(curvature(a));
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t e = 0; e < n; ++e) {
                const Rational coef = g_.bracket[b][e].get(a);
                if (coef.is_zero())
                    continue;
                t.add(multiply(theta(b), theta(e)), coef * Rational(-1, 2));
                c.add(multiply(curvature(b), theta(e)), coef);
            }
        dtheta[a] = t.take();
        dcurv[a] = c.take();
    }
    d_ = derivation_on_basis(dtheta, dcurv, 1);
}

int TruncatedWeil::degree(std::size_t i) const
{
    return std::popcount(basis_[i].exterior) + 2 * static_cast<int>(basis_[i].symmetric.size());
}

std::optional<std::size_t> TruncatedWeil::find(const Monomial& m) const
{
    auto it = index_.find({m.exterior, m.symmetric});
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::string TruncatedWeil::basis_name(std::size_t i) const
{
    const Monomial& m = basis_[i];
    if (m.exterior == 0 && m.symmetric.empty())
        return "1";
    auto label = [&](std::size_t a) { return g_.dim == 1 ? std::string() : std::to_string(a); };
    std::string s;
    for (std::size_t a = 0; a < g_.dim; ++a)
        if (m.exterior >> a & 1u)
            s += "θ" + label(a);
    for (std::size_t k = 0; k < m.symmetric.size();) {
        std::size_t run = 1;
        while (k + run < m.symmetric.size() && m.symmetric[k + run] == m.symmetric[k])
            ++run;
        s += "Ω" + label(m.symmetric[k]);
        if (run > 1)
            s += "^" + std::to_string(run);
        k += run;
    }
    return s;
}

std::string TruncatedWeil::format(const Element& e) const
{
    if (e.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, x] : e) {
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

std::vector<std::size_t> TruncatedWeil::indices_of_degree(int deg) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (degree(i) == deg)
            out.push_back(i);
    return out;
}

Element TruncatedWeil::theta(std::size_t a) const
{
    return SparseVector::unit(*find(Monomial{std::uint32_t(1) << a, {}}));
}

Element TruncatedWeil::curvature(std::size_t a) const
{
    if (q_ == 0)
        return {};
    return SparseVector::unit(*find(Monomial{0, {static_cast<std::uint8_t>(a)}}));
}

Element TruncatedWeil::multiply_basis(std::size_t i, std::size_t j) const
{
    const Monomial& x = basis_[i];
    const Monomial& y = basis_[j];
    if ((x.exterior & y.exterior) != 0 || x.symmetric.size() + y.symmetric.size() > static_cast<std::size_t>(q_))
        return {};
    Monomial m{x.exterior | y.exterior, {}};
    std::merge(x.symmetric.begin(), x.symmetric.end(), y.symmetric.begin(), y.symmetric.end(),
               std::back_inserter(m.symmetric));
    // Ω is even, so only the θ parts reorder
    return SparseVector::unit(*find(m), merge_sign(x.exterior, y.exterior));
}

Element TruncatedWeil::multiply(const Element& x, const Element& y) const
{
    Accumulator acc;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y)
            acc.add(multiply_basis(i, j), a * b);
    return acc.take();
}

Element TruncatedWeil::apply(const std::vector<Element>& images, const Element& x) const
{
    Accumulator acc;
    for (const auto& [i, c] : x)
        acc.add(images[i], c);
    return acc.take();
}

std::vector<Element> TruncatedWeil::derivation_on_basis(const std::vector<Element>& theta_images,
                                                        const std::vector<Element>& curvature_images,
                                                        int degree) const
{
    std::vector<Element> out(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Monomial& m = basis_[i];
        // the monomial as an ordered product of generators: θ's increasing, then Ω's
        std::vector<std::pair<Element, Element>> factors;  // (generator, its image)
        for (std::size_t a = 0; a < g_.dim; ++a)
            if (m.exterior >> a & 1u)
                factors.emplace_back(theta(a), theta_images[a]);
        for (auto a : m.symmetric)
            factors.emplace_back(curvature(a), curvature_images[a]);
        const Element one = SparseVector::unit(0);
        Accumulator acc;
        Element prefix = one;
        int prefix_degree = 0;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            Element term = multiply(prefix, factors[k].second);
            for (std::size_t r = k + 1; r < factors.size() && !term.empty(); ++r)
                term = multiply(term, factors[r].first);
            acc.add(term, sign_power(static_cast<long long>(degree) * prefix_degree));
            prefix = multiply(prefix, factors[k].first);
            prefix_degree += k < static_cast<std::size_t>(std::popcount(m.exterior)) ? 1 : 2;
        }
        out[i] = acc.take();
    }
    return out;
}

std::vector<Element> TruncatedWeil::automorphism_on_basis(const std::vector<Element>& theta_images,
                                                          const std::vector<Element>& curvature_images) const
{
    std::vector<Element> out(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Monomial& m = basis_[i];
        Element e = SparseVector::unit(0);
        for (std::size_t a = 0; a < g_.dim; ++a)
            if (m.exterior >> a & 1u)
                e = multiply(e, theta_images[a]);
        for (auto a : m.symmetric)
            e = multiply(e, curvature_images[a]);
        out[i] = std::move(e);
    }
    return out;
}

Element TruncatedWeil::contract(const SparseVector& x, const Element& e) const
{
    std::vector<Element> t(g_.dim), c(g_.dim);
    for (std::size_t a = 0; a < g_.dim; ++a)
        if (auto v = x.get(a); !v.is_zero())
            t[a] = SparseVector::unit(0, v);
    return apply(derivation_on_basis(t, c, -1), e);
}

Element TruncatedWeil::lie_derivative(const SparseVector& x, const Element& e) const
{
    return contract(x, apply_d(e)) + apply_d(contract(x, e));
}

Element TruncatedWeil::transform(const SparseMatrix& a, const Element& e) const
{
    const SparseMatrix inv = inverse_matrix(a);
    std::vector<Element> t(g_.dim), c(g_.dim);
    for (std::size_t r = 0; r < g_.dim; ++r) {
        Accumulator tr, cr;
        for (std::size_t b = 0; b < g_.dim; ++b) {
            const Rational coef = inv.at(r, b);
            tr.add(theta(b), coef);
            cr.add(curvature(b), coef);
        }
        t[r] = tr.take();
        c[r] = cr.take();
    }
    return apply(automorphism_on_basis(t, c), e);
}

CochainComplex TruncatedWeil::complex() const
{
    // the basis is sorted by degree, so each degree is a contiguous block
    const auto top = static_cast<std::size_t>(top_degree());
    CochainComplex c;
    c.dims.assign(top + 1, 0);
    for (std::size_t i = 0; i < basis_.size(); ++i)
        ++c.dims[static_cast<std::size_t>(degree(i))];
    std::size_t first = 0;
    for (std::size_t k = 0; k < top; ++k) {
        const std::size_t next = first + c.dims[k];
        std::vector<SparseVector> cols;
        for (std::size_t i = first; i < next; ++i) {
            std::vector<Entry> e;
            for (const auto& [j, v] : d_[i])
                e.emplace_back(j - next, v);
            cols.push_back(SparseVector::from_unsorted(std::move(e)));
        }
        c.d.push_back(SparseMatrix::from_columns(c.dims[k + 1], std::move(cols)));
        first = next;
    }
    return c;
}

AlgebraPtr TruncatedWeil::as_algebra() const
{
    AlgebraData data;
    data.name = "W(" + g_.name + ")_" + std::to_string(q_);
    for (std::size_t i = 0; i < basis_.size(); ++i)
        data.basis.push_back({basis_name(i), degree(i)});
    for (std::size_t i = 0; i < basis_.size(); ++i)
        for (std::size_t j = 0; j < basis_.size(); ++j)
            if (auto p = multiply_basis(i, j); !p.empty())
                data.products.emplace(std::make_pair(i, j), std::move(p));
    data.unit = SparseVector::unit(0);
    data.differential = d_;
    return make_algebra(std::move(data));
}

// --- basic subcomplex and cohomology --------------------------------------------------------

BasicSubcomplex basic_subcomplex(const TruncatedWeil& w)
{
    const LieAlgebraData& g = w.lie();
    const int top = w.top_degree();
    BasicSubcomplex out;
    std::vector<std::vector<std::size_t>> slots;
    for (int k = 0; k <= top; ++k)
        slots.push_back(w.indices_of_degree(k));

    for (int k = 0; k <= top; ++k) {
        const auto& slot = slots[static_cast<std::size_t>(k)];
        std::vector<Element> basis;
        if (g.compact.empty() && g.components.empty()) {
            for (auto i : slot)
                basis.push_back(SparseVector::unit(i));
        } else {
            // stack every constraint as a block of rows over W, keyed block * dim W + index
            std::vector<SparseVector> cols;
            for (auto i : slot) {
                const Element e = SparseVector::unit(i);
                std::vector<Entry> stacked;
                std::size_t block = 0;
                auto push = [&](const Element& v) {
                    for (const auto& [j, c] : v)
                        stacked.emplace_back(block * w.dim() + j, c);
                    ++block;
                };
                for (const auto& x : g.compact) {
                    push(w.contract(x, e));
                    push(w.lie_derivative(x, e));
                }
                for (const auto& a : g.components)
                    push(w.transform(a, e) - e);
                cols.push_back(SparseVector::from_unsorted(std::move(stacked)));
            }
            const std::size_t blocks = 2 * g.compact.size() + g.components.size();
            for (auto& z : kernel_basis(SparseMatrix::from_columns(blocks * w.dim(), std::move(cols)))) {
                std::vector<Entry> e;
                for (const auto& [local, c] : z)
                    e.emplace_back(slot[local], c);
                basis.push_back(SparseVector::from_unsorted(std::move(e)));
            }
        }
        out.basis.push_back(std::move(basis));
        out.complex.dims.push_back(out.basis.back().size());
    }

    for (int k = 0; k < top; ++k) {
        const auto& src = out.basis[static_cast<std::size_t>(k)];
        const auto& dst = out.basis[static_cast<std::size_t>(k) + 1];
        const SparseMatrix span = SparseMatrix::from_columns(w.dim(), dst);
        std::vector<SparseVector> cols;
        for (const auto& b : src) {
            const Element db = w.apply_d(b);
            auto x = db.empty() ? std::optional<SparseVector>(SparseVector{}) : solve_linear(span, db);
            if (!x)
                throw NotSubcomplex("d leaves the basic subspace: d(" + w.format(b) + ") = " + w.format(db));
            cols.push_back(std::move(*x));
        }
        out.complex.d.push_back(SparseMatrix::from_columns(dst.size(), std::move(cols)));
    }
    return out;
}

WeilCohomology weil_cohomology(const TruncatedWeil& w, bool basic)
{
    CochainComplex c;
    std::vector<std::vector<Element>> basis;
    if (basic) {
        auto b = basic_subcomplex(w);
        c = std::move(b.complex);
        basis = std::move(b.basis);
    } else {
        c = w.complex();
        for (int k = 0; k <= w.top_degree(); ++k) {
            std::vector<Element> slot;
            for (auto i : w.indices_of_degree(k))
                slot.push_back(SparseVector::unit(i));
            basis.push_back(std::move(slot));
        }
    }
    WeilCohomology out;
    out.complex_dims = c.dims;
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        SparseMatrix in = k == 0 ? SparseMatrix(c.dims[0], 0) : c.d[k - 1];
        SparseMatrix next = k < c.d.size() ? c.d[k] : SparseMatrix(0, c.dims[k]);
        std::vector<Element> reps;
        for (const auto& z : cohomology_representatives(in, next)) {
            Accumulator acc;
            for (const auto& [local, coef] : z)
                acc.add(basis[k][local], coef);
            reps.push_back(acc.take());
        }
        out.dims.push_back(reps.size());
        out.representatives.push_back(std::move(reps));
    }
    out.euler = euler_characteristic(out.dims);
    return out;
}

CheckReport check_weil(const TruncatedWeil& w)
{
    CheckReport rep("W(" + w.lie().name + ")_" + std::to_string(w.truncation()));
    const LieAlgebraData& g = w.lie();
    for (std::size_t i = 0; i < w.dim(); ++i) {
        rep.count();
        const Element e = SparseVector::unit(i);
        if (auto dd = w.apply_d(w.apply_d(e)); !dd.empty())
            rep.fail("d-squared", "d²(" + w.basis_name(i) + ") = " + w.format(dd));
    }
    for (std::size_t a = 0; a < g.dim; ++a) {
        rep.count(2);
        Accumulator t, c;
        t.add(w.curvature(a));
        for (std::size_t b = 0; b < g.dim; ++b)
            for (std::size_t e = 0; e < g.dim; ++e) {
                const Rational coef = g.bracket[b][e].get(a);
                t.add(w.multiply(w.theta(b), w.theta(e)), coef * Rational(-1, 2));
                c.add(w.multiply(w.curvature(b), w.theta(e)), coef);
            }
        if (auto lhs = w.apply_d(w.theta(a)), rhs = t.take(); lhs != rhs)
            rep.fail("structure-equation", "dθ" + std::to_string(a) + " = " + w.format(lhs) + ", expected " +
                                               w.format(rhs));
        if (auto lhs = w.apply_d(w.curvature(a)), rhs = c.take(); lhs != rhs)
            rep.fail("bianchi", "dΩ" + std::to_string(a) + " = " + w.format(lhs) + ", expected " + w.format(rhs));
    }
    for (std::size_t i = 0; i < w.dim(); ++i)
        for (std::size_t j = 0; j < w.dim(); ++j) {
            rep.count();
            const Element x = SparseVector::unit(i), y = SparseVector::unit(j);
            Element lhs = w.apply_d(w.multiply(x, y));
            Element rhs = w.multiply(w.apply_d(x), y) + w.multiply(x, w.apply_d(y)).scaled(sign_power(w.degree(i)));
            if (lhs != rhs)
                rep.fail("leibniz", w.basis_name(i) + ", " + w.basis_name(j));
        }
    return rep;
}

std::vector<std::size_t> abelian_weil_dims_oracle(std::size_t rank, int q)
{
    const long long k = static_cast<long long>(rank);
    std::vector<std::size_t> dims(rank + 2 * static_cast<std::size_t>(q) + 1);
    for (long long r = 0; r <= k; ++r)
        for (long long s = 0; s <= q; ++s)
            dims[static_cast<std::size_t>(r + 2 * s)] +=
                static_cast<std::size_t>(binomial(k, r) * binomial(k + s - 1, s));
    return dims;
}

std::vector<std::size_t> abelian_weil_cohomology_oracle(std::size_t rank, int q)
{
    // Weight strand w (w = #θ + #Ω) is the Koszul complex Λ^{w-s} ⊗ S^s, exact for w >= 1.
    // Truncating to s <= q leaves it untouched for w <= q; for w > q only the slot s = q
    // carries cohomology, of dimension Σ_j (-1)^j dim Λ^{w-q+j} ⊗ S^{q-j}, in degree w + q.
    const long long k = static_cast<long long>(rank);
    std::vector<std::size_t> dims(rank + 2 * static_cast<std::size_t>(q) + 1);
    dims[0] = 1;
    for (long long w = q + 1; w <= k + q; ++w) {
        long long h = 0;
        for (long long j = 0; j <= q; ++j)
            h += (j % 2 == 0 ? 1 : -1) * binomial(k, w - q + j) * binomial(k + q - j - 1, q - j);
        dims[static_cast<std::size_t>(w + q)] += static_cast<std::size_t>(h);
    }
    return dims;
}

}  // namespace hopfcyc
