#include "hopfcyc/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace hopfcyc {

namespace {

std::string word_or_unit(const std::string& w) { return w.empty() ? "1" : w; }

std::size_t parse_count(std::string_view s, std::string_view what)
{
    std::size_t n = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
        n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    if (s.empty() || n == 0)
        throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
    return n;
}

Element evaluate_on(const std::vector<Element>& images, const Element& h)
{
    Accumulator acc;
    for (const auto& [i, c] : h)
        acc.add(images[i], c);
    return acc.take();
}

}  // namespace

// --- groupoids -----------------------------------------------------------------------

GroupoidModel::GroupoidModel(const GroupoidSpec& spec)
    : name_(spec.name), points_(spec.points), bundle_order_(spec.bundle_order)
{
    if (points_ == 0 || bundle_order_ == 0)
        throw std::invalid_argument("groupoid needs at least one point and a bundle group of order >= 1");
    for (const auto& g : spec.generators) {
        std::vector<bool> src(points_), dst(points_);
        for (const auto& [x, y] : g.pairs) {
            if (x >= points_ || y >= points_)
                throw std::invalid_argument("generator " + g.name + " maps outside the point set");
            if (src[x] || dst[y])
                throw std::invalid_argument("generator " + g.name + " is not a partial bijection at " +
                                            std::to_string(x) + " > " + std::to_string(y));
            src[x] = dst[y] = true;
        }
        if ((!g.bundle.empty() && g.bundle.size() != g.pairs.size()) ||
            (!g.ell.empty() && g.ell.size() != g.pairs.size()))
            throw std::invalid_argument("generator " + g.name + ": bundle and ℓ tables must match its pairs");
        for (auto b : g.bundle)
            if (b >= bundle_order_)
                throw std::invalid_argument("generator " + g.name + ": bundle value outside ℤ/" +
                                            std::to_string(bundle_order_));
    }

    using GermKey = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;
    std::map<GermKey, Arrow> found;
    std::deque<GermKey> queue;
    auto visit = [&](Arrow a) {
        GermKey key{a.source, a.target, a.bundle};
        auto it = found.find(key);
        if (it == found.end()) {
            found.emplace(key, a);
            queue.push_back(key);
            return;
        }
        if (it->second.ell != a.ell)
            throw NonFunctorial("ℓ is not functorial: at point " + std::to_string(a.source) + " the words " +
                                word_or_unit(it->second.word) + " and " + word_or_unit(a.word) + " give the germ " +
                                std::to_string(a.source) + ">" + std::to_string(a.target) + " with ℓ = " +
                                it->second.ell.str() + " and " + a.ell.str());
    };
    for (std::uint32_t x = 0; x < points_; ++x)
        visit(Arrow{x, x, 0, Rational(), ""});
    const auto F = static_cast<std::uint32_t>(bundle_order_);
    while (!queue.empty()) {
        const Arrow a = found.at(queue.front());
        queue.pop_front();
        auto extend = [&](std::string step) { return a.word.empty() ? step : a.word + "·" + step; };
        for (const auto& g : spec.generators)
            for (std::size_t p = 0; p < g.pairs.size(); ++p) {
                const auto [x, y] = g.pairs[p];
                const std::uint32_t h = g.bundle.empty() ? 0 : g.bundle[p];
                const Rational l = g.ell.empty() ? Rational() : g.ell[p];
                if (x == a.target)
                    visit(Arrow{a.source, y, (a.bundle + h) % F, a.ell + l, extend(g.name)});
                if (y == a.target)
                    visit(Arrow{a.source, x, (a.bundle + F - h) % F, a.ell - l, extend(g.name + "⁻¹")});
            }
    }

    for (auto& [key, a] : found) {
        index_.emplace(key, arrows_.size());
        arrows_.push_back(std::move(a));
    }
    units_.resize(points_);
    for (std::uint32_t x = 0; x < points_; ++x)
        units_[x] = index_.at({x, x, 0});

    for (std::size_t i = 0; i < arrows_.size(); ++i)
        for (std::size_t j = 0; j < arrows_.size(); ++j) {
            auto k = compose(i, j);
            if (k && arrows_[*k].ell != arrows_[i].ell + arrows_[j].ell)
                throw NonFunctorial("ℓ is not additive on " + word_or_unit(arrows_[i].word) + " then " +
                                    word_or_unit(arrows_[j].word) + ": " + arrows_[*k].ell.str() + " ≠ " +
                                    arrows_[i].ell.str() + " + " + arrows_[j].ell.str());
        }
}

std::optional<std::size_t> GroupoidModel::find(std::uint32_t source, std::uint32_t target, std::uint32_t bundle) const
{
    auto it = index_.find({source, target, bundle});
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

bool GroupoidModel::is_unit(std::size_t i) const
{
    const Arrow& a = arrows_[i];
    return a.source == a.target && a.bundle == 0;
}

std::size_t GroupoidModel::inverse(std::size_t i) const
{
    const Arrow& a = arrows_[i];
    const auto F = static_cast<std::uint32_t>(bundle_order_);
    return index_.at({a.target, a.source, (F - a.bundle) % F});
}

std::optional<std::size_t> GroupoidModel::compose(std::size_t i, std::size_t j) const
{
    const Arrow& a = arrows_[i];
    const Arrow& b = arrows_[j];
    if (a.target != b.source)
        return std::nullopt;
    return find(a.source, b.target, static_cast<std::uint32_t>((a.bundle + b.bundle) % bundle_order_));
}

std::string GroupoidModel::label(std::size_t i) const
{
    const Arrow& a = arrows_[i];
    std::string s = std::to_string(a.source) + ">" + std::to_string(a.target);
    if (bundle_order_ > 1)
        s += ";" + std::to_string(a.bundle);
    return s;
}

CheckReport check_groupoid(const GroupoidModel& g)
{
    CheckReport rep("groupoid " + g.name());
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        rep.count();
        const Arrow& a = g.arrow(i);
        if (g.compose(g.unit(a.source), i) != i || g.compose(i, g.unit(a.target)) != i)
            rep.fail("units", "units do not act trivially on " + g.label(i));
        const std::size_t v = g.inverse(i);
        if (g.compose(i, v) != g.unit(a.source) || g.compose(v, i) != g.unit(a.target))
            rep.fail("inverse", g.label(i));
        for (std::size_t j = 0; j < n; ++j) {
            auto ij = g.compose(i, j);
            if (!ij)
                continue;
            rep.count();
            if (g.arrow(*ij).ell != a.ell + g.arrow(j).ell)
                rep.fail("ell-additive", g.label(i) + " then " + g.label(j));
            for (std::size_t k = 0; k < n; ++k) {
                auto ij_k = g.compose(*ij, k);
                if (!ij_k)
                    continue;
                rep.count();
                auto jk = g.compose(j, k);
                if (!jk || g.compose(i, *jk) != ij_k)
                    rep.fail("associativity", g.label(i) + ", " + g.label(j) + ", " + g.label(k));
            }
        }
    }
    return rep;
}

GroupoidSpec builtin_groupoid_spec(std::string_view name)
{
    auto shift = [](std::size_t n, std::string gname) {
        PartialBijection s{std::move(gname), {}, {}, {}};
        for (std::uint32_t x = 0; x < n; ++x)
            s.pairs.emplace_back(x, static_cast<std::uint32_t>((x + 1) % n));
        return s;
    };
    GroupoidSpec g;
    g.name = std::string(name);
    if (name == "point") {
        g.points = 1;
        g.generators.push_back({"id", {{0, 0}}, {}, {}});
    } else if (name.starts_with("shift:Z")) {
        g.points = parse_count(name.substr(7), "groupoid size");
        g.generators.push_back(shift(g.points, "s"));
    } else if (name == "sign-shift:Z3") {
        g.points = 3;
        g.bundle_order = 2;
        auto s = shift(3, "s");
        s.bundle = {1, 1, 1};
        g.generators.push_back(s);
    } else if (name == "two-chart:4") {
        // the shift of ℤ/4 cut along the charts {0,1}, {2,3}: g_ij on U_i ∩ g⁻¹(U_j)
        g.points = 4;
        g.generators = {{"g11", {{0, 1}}, {}, {}},
                        {"g12", {{1, 2}}, {}, {}},
                        {"g22", {{2, 3}}, {}, {}},
                        {"g21", {{3, 0}}, {}, {}}};
    } else if (name == "gv:Z3") {
        // ℓ(x > x+1) = u(x+1) - u(x) for u = (0, 1, 3)
        g.points = 3;
        auto s = shift(3, "s");
        s.ell = {Rational(1), Rational(2), Rational(-3)};
        g.generators.push_back(s);
    } else if (name == "klein-nonexact:4") {
        // ℤ/2 × ℤ/2 acting freely on 4 points, ℓ(a) = 1, ℓ(b) = 0
        g.points = 4;
        PartialBijection a{"a", {{0, 2}, {1, 3}, {2, 0}, {3, 1}}, {}, {}};
        PartialBijection b{"b", {{0, 1}, {1, 0}, {2, 3}, {3, 2}}, {}, {}};
        a.ell.assign(4, Rational(1));
        g.generators = {a, b};
    } else {
        throw std::invalid_argument("unknown built-in groupoid '" + std::string(name) + "'");
    }
    return g;
}

std::vector<std::string> builtin_groupoid_names()
{
    return {"point", "shift:Z2", "shift:Z3", "sign-shift:Z3", "two-chart:4", "gv:Z3", "klein-nonexact:4"};
}

// --- cross products ------------------------------------------------------------------

CrossProduct::CrossProduct(GroupoidPtr groupoid, AlgebraPtr fiber)
    : groupoid_(std::move(groupoid)), fiber_(std::move(fiber))
{
    const GroupoidModel& g = *groupoid_;
    const GradedAlgebra& t = *fiber_;
    if (!t.has_unit())
        throw std::invalid_argument("cross product needs a unital fiber algebra");
    AlgebraData d;
    d.name = "(fun:" + std::to_string(g.points()) + "(x)" + t.name() + ")x|" + g.name();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t r = 0; r < t.dim(); ++r)
            d.basis.push_back({t.basis_name(r) + "[" + g.label(i) + "]", t.degree(r)});
    auto lift = [&](std::size_t arrow, const Element& v) {
        std::vector<Entry> e;
        for (const auto& [r, c] : v)
            e.emplace_back(index(arrow, r), c);
        return SparseVector::from_unsorted(std::move(e));
    };
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            auto k = g.compose(i, j);
            if (!k)
                continue;
            for (std::size_t r = 0; r < t.dim(); ++r)
                for (std::size_t s = 0; s < t.dim(); ++s)
                    if (!t.product(r, s).empty())
                        d.products[{index(i, r), index(j, s)}] = lift(*k, t.product(r, s));
        }
    Accumulator unit;
    for (std::uint32_t x = 0; x < g.points(); ++x)
        unit.add(lift(g.unit(x), t.unit()));
    d.unit = unit.take();
    if (t.has_differential()) {
        std::vector<Element> diff;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t r = 0; r < t.dim(); ++r)
                diff.push_back(lift(i, t.d(r)));
        d.differential = std::move(diff);
    }
    algebra_ = make_algebra(std::move(d));
}

Element CrossProduct::on_units(std::span<const Rational> f, std::size_t fiber_index) const
{
    if (f.size() != groupoid_->points())
        throw std::invalid_argument("function on points has the wrong size");
    std::vector<Entry> e;
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if (!f[x].is_zero())
            e.emplace_back(index(groupoid_->unit(x), fiber_index), f[x]);
    return SparseVector::from_unsorted(std::move(e));
}

HopfAction pullback_action(const CrossProduct& cp, std::optional<std::vector<std::uint32_t>> bundle)
{
    const GroupoidModel& g = cp.groupoid();
    std::vector<std::uint32_t> h;
    if (bundle) {
        if (bundle->size() != g.size())
            throw std::invalid_argument("bundle table must cover every arrow");
        h = std::move(*bundle);
    } else {
        for (const auto& a : g.arrows())
            h.push_back(a.bundle);
    }
    return HopfAction(function_hopf(g.bundle_order()), cp.algebra(), [&](std::size_t s, std::size_t i) -> Element {
        return h[cp.arrow_of(i)] == s ? SparseVector::unit(i) : Element{};
    });
}

HopfAction gv_action(const CrossProduct& cp, std::size_t nu, std::optional<std::vector<Rational>> ell)
{
    const GroupoidModel& g = cp.groupoid();
    const GradedAlgebra& t = cp.fiber();
    if (nu >= t.dim() || t.degree(nu) != 1)
        throw std::invalid_argument("ν must be a degree-one basis element of the fiber");
    std::vector<Rational> l;
    if (ell) {
        if (ell->size() != g.size())
            throw std::invalid_argument("ℓ table must cover every arrow");
        l = std::move(*ell);
    } else {
        for (const auto& a : g.arrows())
            l.push_back(a.ell);
    }
    HopfPtr hopf = exterior_primitive_hopf(1);
    const std::size_t psi = hopf->algebra().index("psi");
    return HopfAction(hopf, cp.algebra(), [&](std::size_t x, std::size_t i) -> Element {
        if (x != psi)
            return SparseVector::unit(i);
        const std::size_t arrow = cp.arrow_of(i);
        if (l[arrow].is_zero())
            return {};
        std::vector<Entry> e;
        for (const auto& [r, c] : t.product(nu, cp.fiber_of(i)))
            e.emplace_back(cp.index(arrow, r), c * l[arrow]);
        return SparseVector::from_unsorted(std::move(e));
    });
}

GradedFunctional unit_trace(const CrossProduct& cp, std::span<const Rational> measure, const GradedFunctional& fiber_trace)
{
    const GroupoidModel& g = cp.groupoid();
    if (measure.size() != g.points())
        throw std::invalid_argument("measure must have one value per point");
    std::vector<Entry> e;
    for (std::uint32_t x = 0; x < g.points(); ++x)
        for (const auto& [r, c] : fiber_trace.values)
            if (!measure[x].is_zero())
                e.emplace_back(cp.index(g.unit(x), r), measure[x] * c);
    return GradedFunctional{fiber_trace.weight, SparseVector::from_unsorted(std::move(e))};
}

std::vector<std::uint32_t> changed_bundle(const CrossProduct& cp, std::span<const std::uint32_t> change)
{
    const GroupoidModel& g = cp.groupoid();
    const auto F = static_cast<std::uint32_t>(g.bundle_order());
    if (change.size() != g.points())
        throw std::invalid_argument("trivialization change must have one value per point");
    std::vector<std::uint32_t> h;
    for (const auto& a : g.arrows())
        h.push_back((change[a.source] % F + a.bundle + F - change[a.target] % F) % F);
    return h;
}

TwistCocycle bundle_change_twist(const CrossProduct& cp, const HopfAction& pi, std::span<const std::uint32_t> change)
{
    const GroupoidModel& g = cp.groupoid();
    const HopfAlgebra& H = pi.hopf();
    const auto one = cp.fiber().unit_index();
    if (!one)
        throw std::invalid_argument("trivialization change needs the fiber unit as a basis element");
    if (change.size() != g.points())
        throw std::invalid_argument("trivialization change must have one value per point");
    TwistCocycle rho;
    for (std::size_t s = 0; s < H.dim(); ++s) {
        std::vector<Rational> indicator(g.points());
        for (std::size_t x = 0; x < g.points(); ++x)
            indicator[x] = change[x] % g.bundle_order() == s ? 1 : 0;
        rho.plus.push_back(cp.on_units(indicator, *one));
    }
    for (std::size_t s = 0; s < H.dim(); ++s)
        rho.minus.push_back(evaluate_on(rho.plus, H.antipode(s)));
    return rho;
}

std::vector<Rational> changed_ell(const CrossProduct& cp, std::span<const Rational> potential)
{
    const GroupoidModel& g = cp.groupoid();
    if (potential.size() != g.points())
        throw std::invalid_argument("potential must have one value per point");
    std::vector<Rational> l;
    for (const auto& a : g.arrows())
        l.push_back(a.ell + potential[a.source] - potential[a.target]);
    return l;
}

TwistCocycle potential_twist(const CrossProduct& cp, const HopfAction& pi, std::size_t nu,
                             std::span<const Rational> potential)
{
    TwistCocycle rho = trivial_twist(pi);
    const std::size_t psi = pi.hopf().algebra().index("psi");
    rho.plus[psi] = cp.on_units(potential, nu);
    rho.minus[psi] = -rho.plus[psi];
    return rho;
}

std::optional<std::vector<Rational>> ell_potential(const GroupoidModel& g)
{
    std::vector<std::optional<Rational>> u(g.points());
    for (std::uint32_t root = 0; root < g.points(); ++root) {
        if (u[root])
            continue;
        u[root] = Rational();
        for (const auto& a : g.arrows())
            if (a.source == root && !u[a.target])
                u[a.target] = a.ell;
    }
    std::vector<Rational> r;
    for (auto& v : u)
        r.push_back(*v);
    for (const auto& a : g.arrows())
        if (a.ell != r[a.target] - r[a.source])
            return std::nullopt;
    return r;
}

DiscreteGV builtin_discrete_gv(std::string_view groupoid)
{
    DiscreteGV gv;
    auto g = std::make_shared<const GroupoidModel>(builtin_groupoid_spec(groupoid));
    AlgebraPtr fiber = builtin_algebra("ext:1");
    gv.cross = std::make_shared<CrossProduct>(g, fiber);
    gv.nu = fiber->index("t");
    gv.action = std::make_shared<HopfAction>(gv_action(*gv.cross, gv.nu));
    gv.hopf = gv.action->hopf_ptr();
    std::vector<Rational> mu(g->points(), Rational(1));
    gv.trace = unit_trace(*gv.cross, mu, GradedFunctional{1, SparseVector::unit(gv.nu)});
    if (auto u = ell_potential(*g))
        gv.potential = std::move(*u);
    return gv;
}

// --- Ψ ---------------------------------------------------------------------------------

PsiModel::PsiModel(std::shared_ptr<const CrossProduct> cp, std::size_t order, std::vector<std::uint32_t> generator)
    : cp_(std::move(cp)), order_(order), points_(cp_->groupoid().points())
{
    const GroupoidModel& g = cp_->groupoid();
    if (order_ == 0 || generator.size() != points_)
        throw std::invalid_argument("global action needs a permutation of every point and a group order");
    if (g.bundle_order() != 1)
        throw std::invalid_argument("Ψ needs a groupoid without bundle values");
    power_.assign(order_, std::vector<std::uint32_t>(points_));
    for (std::uint32_t x = 0; x < points_; ++x) {
        std::uint32_t y = x;
        for (std::size_t k = 0; k < order_; ++k) {
            power_[k][x] = y;
            if (y >= points_)
                throw std::invalid_argument("generator maps outside the point set");
            y = generator[y];
        }
        if (y != x)
            throw std::invalid_argument("generator does not have order dividing " + std::to_string(order_));
    }
    if (g.size() != points_ * order_)
        throw std::invalid_argument("Ψ needs the action groupoid of a free global action: " +
                                    std::to_string(g.size()) + " arrows for " + std::to_string(points_) +
                                    " points and a group of order " + std::to_string(order_));
    arrow_at_.assign(points_, std::vector<std::size_t>(order_));
    decode_.resize(g.size());
    std::vector<bool> seen(g.size());
    for (std::uint32_t x = 0; x < points_; ++x)
        for (std::size_t k = 0; k < order_; ++k) {
            auto a = g.find(x, power_[k][x], 0);
            if (!a || seen[*a])
                throw std::invalid_argument("action is not free: group elements share the germ at point " +
                                            std::to_string(x));
            seen[*a] = true;
            arrow_at_[x][k] = *a;
            decode_[*a] = {x, k};
        }
    coefficients_ = tensor_product(*function_algebra(points_), cp_->fiber());
}

std::size_t PsiModel::tuples(int k) const
{
    std::size_t n = 1;
    for (int i = 0; i <= k; ++i)
        n *= order_;
    return n;
}

GroupCochain PsiModel::zero(int k, int l) const { return GroupCochain{k, l, std::vector<SparseVector>(tuples(k))}; }

SparseVector PsiModel::act(const SparseVector& current, std::size_t g) const
{
    // C^g(e_y t) = C(e_{y·g⁻¹} t), so the value at e_y t is C at e_{y·g⁻¹} t
    const std::size_t ft = cp_->fiber().dim();
    const std::size_t inv = (order_ - g % order_) % order_;
    std::vector<Entry> e;
    for (std::uint32_t y = 0; y < points_; ++y) {
        const std::uint32_t x = power_[inv][y];
        for (std::size_t t = 0; t < ft; ++t) {
            Rational v = current.get(x * ft + t);
            if (!v.is_zero())
                e.emplace_back(y * ft + t, v);
        }
    }
    return SparseVector::from_unsorted(std::move(e));
}

namespace {

std::vector<std::size_t> digits(std::size_t code, int len, std::size_t base)
{
    std::vector<std::size_t> d(static_cast<std::size_t>(len));
    for (int i = len - 1; i >= 0; --i) {
        d[static_cast<std::size_t>(i)] = code % base;
        code /= base;
    }
    return d;
}

std::size_t encode_digits(const std::vector<std::size_t>& d, std::size_t base)
{
    std::size_t c = 0;
    for (auto x : d)
        c = c * base + x;
    return c;
}

std::string tuple_str(const std::vector<std::size_t>& d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

}  // namespace

GroupCochain PsiModel::average(const GroupCochain& f) const
{
    GroupCochain r = zero(f.k, f.l);
    for (std::size_t code = 0; code < r.values.size(); ++code) {
        const auto d = digits(code, f.k + 1, order_);
        Accumulator acc;
        for (std::size_t g = 0; g < order_; ++g) {
            auto shifted = d;
            for (auto& x : shifted)
                x = (x + g) % order_;
            acc.add(act(f.values[encode_digits(shifted, order_)], g));
        }
        r.values[code] = acc.take();
    }
    return r;
}

GroupCochain PsiModel::alternate(const GroupCochain& f) const
{
    GroupCochain r = zero(f.k, f.l);
    std::vector<std::size_t> perm(static_cast<std::size_t>(f.k + 1));
    for (std::size_t code = 0; code < r.values.size(); ++code) {
        const auto d = digits(code, f.k + 1, order_);
        std::iota(perm.begin(), perm.end(), 0);
        Accumulator acc;
        do {
            long long inversions = 0;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    inversions += perm[i] > perm[j] ? 1 : 0;
            std::vector<std::size_t> p(d.size());
            for (std::size_t i = 0; i < d.size(); ++i)
                p[i] = d[perm[i]];
            acc.add(f.values[encode_digits(p, order_)], sign_power(inversions));
        } while (std::next_permutation(perm.begin(), perm.end()));
        r.values[code] = acc.take();
    }
    return r;
}

std::optional<std::string> PsiModel::alternation_violation(const GroupCochain& tau) const
{
    for (std::size_t code = 0; code < tau.values.size(); ++code) {
        const auto d = digits(code, tau.k + 1, order_);
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            auto swapped = d;
            std::swap(swapped[i], swapped[i + 1]);
            const SparseVector& other = tau.values[encode_digits(swapped, order_)];
            if (tau.values[code] != -other)
                return "τ" + tuple_str(d) + " = " + tau.values[code].str() + " but τ" + tuple_str(swapped) + " = " +
                       other.str();
        }
    }
    return std::nullopt;
}

std::optional<std::string> PsiModel::invariance_violation(const GroupCochain& tau) const
{
    if (tau.values.size() != tuples(tau.k))
        return "cochain has " + std::to_string(tau.values.size()) + " values, expected " + std::to_string(tuples(tau.k));
    for (std::size_t code = 0; code < tau.values.size(); ++code) {
        const auto d = digits(code, tau.k + 1, order_);
        for (const auto& [i, c] : tau.values[code])
            if (i >= coefficient_dim() || coefficient_degree(i) != tau.l)
                return "τ" + tuple_str(d) + " is not a current of degree " + std::to_string(tau.l);
        for (std::size_t g = 1; g < order_; ++g) {
            auto shifted = d;
            for (auto& x : shifted)
                x = (x + g) % order_;
            const SparseVector lhs = tau.values[encode_digits(shifted, order_)];
            const SparseVector rhs = act(tau.values[code], order_ - g);
            if (lhs != rhs)
                return "τ(g·" + tuple_str(d) + ") ≠ τ" + tuple_str(d) + "^{g⁻¹} for g = " + std::to_string(g) + ": " +
                       lhs.str() + " vs " + rhs.str();
        }
    }
    return std::nullopt;
}

GroupCochain PsiModel::d1(const GroupCochain& tau) const
{
    GroupCochain r = zero(tau.k + 1, tau.l);
    const Rational lead = sign_power(tau.l + 1);
    for (std::size_t code = 0; code < r.values.size(); ++code) {
        const auto d = digits(code, tau.k + 2, order_);
        Accumulator acc;
        for (int j = 0; j <= tau.k + 1; ++j) {
            auto face = d;
            face.erase(face.begin() + j);
            acc.add(tau.values[encode_digits(face, order_)], lead * sign_power(j));
        }
        r.values[code] = acc.take();
    }
    return r;
}

GroupCochain PsiModel::d2(const GroupCochain& tau) const
{
    GroupCochain r = zero(tau.k, tau.l - 1);
    const GradedAlgebra& a = *coefficients_;
    if (!a.has_differential())
        return r;
    for (std::size_t code = 0; code < r.values.size(); ++code) {
        Accumulator acc;
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Rational v;
            for (const auto& [i, c] : a.d(j))
                v += c * tau.values[code].get(i);
            acc.add(j, v);
        }
        r.values[code] = acc.take();
    }
    return r;
}

SparseVector PsiModel::psi(const GroupCochain& tau, const AlgebraCochains& target) const
{
    if (target.algebra_ptr() != cp_->algebra() || target.normalized())
        throw std::invalid_argument("Ψ lands in the unnormalized cochains of its own cross product");
    if (auto w = invariance_violation(tau))
        throw NotInvariant("Ψ needs an invariant cochain: " + *w);
    if (auto w = alternation_violation(tau))
        throw NotInvariant("Ψ needs an alternating cochain: " + *w);
    const GradedAlgebra& cross = *cp_->algebra();
    const GradedAlgebra& coef = *coefficients_;
    const std::size_t ft = cp_->fiber().dim();
    const int k = tau.k;
    const Rational sign = sign_power(static_cast<long long>(k) * tau.l);
    Accumulator out;
    Tuple as;
    std::vector<std::size_t> prefixes;  // 1, g_0, g_0 g_1, ..
    auto rec = [&](auto&& self, int j, const Element& prod, std::size_t prefix) -> void {
        if (j > k) {
            if (prefix != 0)
                return;
            const SparseVector& current = tau.values[encode_digits(prefixes, order_)];
            Rational v;
            for (const auto& [i, c] : prod)
                v += c * current.get(i);
            if (!v.is_zero())
                out.add(target.encode(as), sign * v);
            return;
        }
        const std::size_t inv = (order_ - prefix) % order_;
        for (std::size_t b = 0; b < cross.dim(); ++b) {
            const auto [x, g] = decode_[cp_->arrow_of(b)];
            // ω_j^{prefix} = e_{x·prefix⁻¹} t
            const std::size_t w = power_[inv][x] * ft + cp_->fiber_of(b);
            Element next = j == 0 ? SparseVector::unit(w) : coef.multiply(prod, SparseVector::unit(w));
            if (next.empty())
                continue;
            as.push_back(static_cast<std::uint32_t>(b));
            prefixes.push_back(prefix);
            self(self, j + 1, next, (prefix + g) % order_);
            prefixes.pop_back();
            --as.size;
        }
    };
    rec(rec, 0, Element{}, 0);
    return out.take();
}

CheckReport check_psi_identities(const PsiModel& m, const GroupCochain& tau, const AlgebraCochains& target)
{
    CheckReport rep("Ψ identities at k = " + std::to_string(tau.k) + ", l = " + std::to_string(tau.l));
    const SparseVector p = m.psi(tau, target);
    rep.count();
    const SparseVector bp = apply_b(target, tau.k, p);
    const SparseVector pd1 = m.psi(m.d1(tau), target);
    if (bp != pd1)
        rep.fail("b", "bΨ(τ) = " + bp.str() + " but Ψ(d₁τ) = " + pd1.str());
    rep.count();
    const SparseVector dp = apply_internal_d(target, tau.k, p).scaled(sign_power(tau.k));
    const SparseVector pd2 = m.psi(m.d2(tau), target);
    if (dp != pd2)
        rep.fail("d", "(-1)^k dΨ(τ) = " + dp.str() + " but Ψ(d₂τ) = " + pd2.str());
    if (tau.k >= 1) {
        rep.count();
        const SparseVector Bp = apply_B(target, tau.k, p);
        if (!Bp.empty())
            rep.fail("B", "BΨ(τ) = " + Bp.str());
    }
    return rep;
}

std::shared_ptr<PsiModel> shift_psi_model(std::size_t n, AlgebraPtr fiber)
{
    auto g = std::make_shared<const GroupoidModel>(builtin_groupoid_spec("shift:Z" + std::to_string(n)));
    auto cp = std::make_shared<const CrossProduct>(g, std::move(fiber));
    std::vector<std::uint32_t> gen;
    for (std::uint32_t x = 0; x < n; ++x)
        gen.push_back(static_cast<std::uint32_t>((x + 1) % n));
    return std::make_shared<PsiModel>(cp, n, gen);
}

}  // namespace hopfcyc
