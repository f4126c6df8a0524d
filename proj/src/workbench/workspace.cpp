#include "workspace.hpp"

namespace hopfcyc {

namespace {

std::map<std::string, Rational> as_map(const ElementSpec& e)
{
    return {e.begin(), e.end()};
}

Element element(const GradedAlgebra& a, const ElementSpec& e) { return a.parse_element(as_map(e)); }

std::vector<Element> images(const GradedAlgebra& domain, const GradedAlgebra& codomain, const ImageTable& t)
{
    std::vector<Element> out(domain.dim());
    for (const auto& [name, e] : t)
        out[domain.index(name)] = element(codomain, e);
    return out;
}

ResolvedAlgebra explicit_algebra(const AlgebraSpec& s)
{
    AlgebraData d;
    d.name = s.name;
    for (const auto& [name, deg] : s.basis)
        d.basis.push_back({name, deg});
    // a throwaway algebra with no products gives name lookup for the tables
    const GradedAlgebra names(AlgebraData{s.name, d.basis, {}, {}, {}, {}});
    for (const auto& p : s.products)
        d.products[{names.index(p.left), names.index(p.right)}] = element(names, p.value);
    if (s.unit)
        d.unit = element(names, *s.unit);
    if (s.differential)
        d.differential = images(names, names, *s.differential);
    if (s.trace)
        d.trace = GradedFunctional{s.trace->weight, element(names, s.trace->values)};
    return {make_algebra(std::move(d)), nullptr};
}

GroupoidSpec explicit_groupoid(const GroupoidDecl& g)
{
    GroupoidSpec spec;
    spec.name = g.name;
    spec.points = g.points;
    spec.bundle_order = g.bundle_order;
    for (const auto& x : g.generators)
        spec.generators.push_back({x.name, x.pairs, x.bundle, x.ell});
    return spec;
}

ResolvedHopf explicit_hopf(const HopfSpec& s, const ResolvedAlgebra& a)
{
    const GradedAlgebra& alg = *a.algebra;
    HopfData d;
    d.name = s.name;
    d.algebra = a.algebra;
    d.coproduct.resize(alg.dim());
    for (const auto& [name, terms] : s.coproduct) {
        auto& out = d.coproduct[alg.index(name)];
        for (const auto& t : terms)
            out.push_back({static_cast<std::uint32_t>(alg.index(t.left)), static_cast<std::uint32_t>(alg.index(t.right)),
                           t.coef});
    }
    d.counit.assign(alg.dim(), Rational());
    for (const auto& [name, c] : s.counit)
        d.counit[alg.index(name)] = c;
    d.antipode = images(alg, alg, s.antipode);
    return {std::make_shared<const HopfAlgebra>(std::move(d)), {}};
}

ModularPair resolve_pair(const HopfAlgebra& h, const PairSpec& p)
{
    if (!p.named.empty())
        return builtin_modular_pair(h, p.named);
    ModularPair pair = trivial_modular_pair(h);
    if (p.delta) {
        pair.delta.assign(h.dim(), Rational());
        for (const auto& [name, c] : *p.delta)
            pair.delta[h.algebra().index(name)] = c;
    }
    if (p.sigma)
        pair.sigma = element(h.algebra(), *p.sigma);
    return pair;
}

const CrossProduct& require_cross(const ResolvedAlgebra& a, const std::string& what)
{
    if (!a.cross)
        throw std::invalid_argument(what + " needs a cross-product algebra");
    return *a.cross;
}

// The built-in action carries its own copy of the Hopf algebra; it must agree with the declared one.
void match_hopf(const HopfAlgebra& declared, const HopfAlgebra& built)
{
    bool same = declared.dim() == built.dim();
    for (std::size_t i = 0; same && i < declared.dim(); ++i)
        same = declared.algebra().basis_name(i) == built.algebra().basis_name(i) &&
               declared.degree(i) == built.degree(i);
    if (!same)
        throw std::invalid_argument("declared Hopf algebra " + declared.name() + " does not match the action's " +
                                    built.name());
}

ResolvedAction resolve_action(const ActionSpec& s, const ResolvedHopf& h, const ResolvedAlgebra& a)
{
    std::shared_ptr<const HopfAction> pi;
    if (s.kind == "trivial") {
        pi = std::make_shared<const HopfAction>(trivial_action(h.hopf, a.algebra));
    } else if (s.kind == "pullback") {
        pi = std::make_shared<const HopfAction>(pullback_action(require_cross(a, "a pullback action"), s.bundle));
        match_hopf(*h.hopf, pi->hopf());
    } else if (s.kind == "gv") {
        const CrossProduct& cp = require_cross(a, "a gv action");
        pi = std::make_shared<const HopfAction>(gv_action(cp, cp.fiber().index(s.nu), s.ell));
        match_hopf(*h.hopf, pi->hopf());
    } else {
        std::map<std::pair<std::size_t, std::size_t>, Element> table;
        for (const auto& e : s.table)
            table[{h.hopf->algebra().index(e.hopf), a.algebra->index(e.algebra)}] = element(*a.algebra, e.value);
        pi = std::make_shared<const HopfAction>(h.hopf, a.algebra, [&](std::size_t x, std::size_t y) {
            auto it = table.find({x, y});
            return it == table.end() ? Element{} : it->second;
        });
    }
    return {pi, s.hopf};
}

ResolvedTrace resolve_trace(const TraceDecl& s, const ResolvedAlgebra& a)
{
    if (s.kind == "algebra") {
        if (!a.algebra->trace())
            throw std::invalid_argument("algebra " + s.algebra + " has no trace of its own");
        return {*a.algebra->trace()};
    }
    if (s.kind == "unit") {
        const CrossProduct& cp = require_cross(a, "a unit trace");
        GradedFunctional fiber;
        if (s.fiber_trace)
            fiber = {s.fiber_trace->weight, element(cp.fiber(), s.fiber_trace->values)};
        else if (cp.fiber().trace())
            fiber = *cp.fiber().trace();
        else
            throw std::invalid_argument("fiber " + cp.fiber().name() + " has no trace; give 'fiber-trace'");
        return {unit_trace(cp, s.measure, fiber)};
    }
    return {GradedFunctional{s.values.weight, element(*a.algebra, s.values.values)}};
}

ResolvedTwist resolve_twist(const TwistSpec& s, const ResolvedAction& act, const ResolvedAlgebra& a)
{
    const HopfAction& pi = *act.action;
    if (s.kind == "trivial")
        return {trivial_twist(pi), s.action};
    if (s.kind == "potential") {
        const CrossProduct& cp = require_cross(a, "a potential twist");
        return {potential_twist(cp, pi, cp.fiber().index(s.nu), s.potential), s.action};
    }
    if (s.kind == "bundle-change")
        return {bundle_change_twist(require_cross(a, "a bundle-change twist"), pi, s.change), s.action};
    const GradedAlgebra& h = pi.hopf().algebra();
    return {TwistCocycle{images(h, pi.algebra(), s.plus), images(h, pi.algebra(), s.minus)}, s.action};
}

LieAlgebraData resolve_lie(const LieSpec& s)
{
    LieAlgebraData g;
    if (!s.builtin.empty()) {
        g = builtin_lie_algebra(s.builtin);
    } else {
        g.dim = s.dim;
        g.bracket.assign(s.dim, std::vector<SparseVector>(s.dim));
        for (const auto& b : s.brackets) {
            std::vector<Entry> e;
            for (const auto& [k, c] : b.value)
                e.emplace_back(k, c);
            SparseVector v = SparseVector::from_unsorted(std::move(e));
            g.bracket[b.right][b.left] = -v;
            g.bracket[b.left][b.right] = std::move(v);
        }
    }
    g.name = s.name;
    auto check_length = [&](std::size_t n) {
        if (n != g.dim)
            throw std::invalid_argument("Lie algebra " + s.name + ": expected " + std::to_string(g.dim) +
                                        " coordinates, got " + std::to_string(n));
    };
    for (const auto& x : s.compact) {
        check_length(x.size());
        std::vector<Entry> e;
        for (std::size_t i = 0; i < x.size(); ++i)
            e.emplace_back(i, x[i]);
        g.compact.push_back(SparseVector::from_unsorted(std::move(e)));
    }
    for (const auto& m : s.components) {
        check_length(m.size());
        for (const auto& row : m)
            check_length(row.size());
        g.components.push_back(SparseMatrix::from_dense(m));
    }
    return g;
}

template <class T, class F>
void resolve(std::map<std::string, Workspace::Slot<T>>& out, const std::string& section, const std::string& name,
             int line, F&& build)
{
    auto& slot = out[name];
    try {
        slot.value = build();
    } catch (const std::exception& e) {
        slot.error = section + "." + name + " (line " + std::to_string(line) + "): " + e.what();
    }
}

}  // namespace

Workspace::Workspace(const Scenario& s)
{
    for (const auto& g : s.groupoids)
        resolve(groupoids_, "groupoids", g.name, g.line.value, [&] {
            GroupoidSpec spec = g.builtin.empty() ? explicit_groupoid(g) : builtin_groupoid_spec(g.builtin);
            try {
                return ResolvedGroupoid{std::make_shared<const GroupoidModel>(spec), {}};
            } catch (const NonFunctorial& e) {
                return ResolvedGroupoid{nullptr, e.what()};
            }
        });
    for (const auto& a : s.algebras)
        resolve(algebras_, "algebras", a.name, a.line.value, [&] {
            ResolvedAlgebra r;
            if (!a.builtin.empty()) {
                r.algebra = builtin_algebra(a.builtin);
            } else if (!a.cross_groupoid.empty()) {
                const ResolvedGroupoid& g = groupoid(a.cross_groupoid);
                if (!g.model)
                    throw std::invalid_argument("groupoid " + a.cross_groupoid + " was rejected: " + g.rejection);
                r.cross = std::make_shared<const CrossProduct>(g.model, algebra(a.cross_fiber).algebra);
                r.algebra = r.cross->algebra();
            } else {
                r = explicit_algebra(a);
            }
            if (a.rebase) {
                if (r.cross)
                    throw std::invalid_argument("a cross product cannot be rebased");
                r.algebra = rebase_unit(*r.algebra).algebra;
            }
            return r;
        });
    for (const auto& h : s.hopf)
        resolve(hopf_, "hopf", h.name, h.line.value, [&] {
            ResolvedHopf r = h.builtin.empty() ? explicit_hopf(h, algebra(h.algebra))
                                               : ResolvedHopf{builtin_hopf(h.builtin), {}};
            r.pair = resolve_pair(*r.hopf, h.pair);
            return r;
        });
    for (const auto& a : s.actions)
        resolve(actions_, "actions", a.name, a.line.value,
                [&] { return resolve_action(a, hopf(a.hopf), algebra(a.algebra)); });
    for (const auto& t : s.traces)
        resolve(traces_, "traces", t.name, t.line.value, [&] { return resolve_trace(t, algebra(t.algebra)); });
    for (const auto& t : s.twists)
        resolve(twists_, "twists", t.name, t.line.value, [&] {
            const auto it = std::find_if(s.actions.begin(), s.actions.end(),
                                         [&](const ActionSpec& a) { return a.name == t.action; });
            return resolve_twist(t, action(t.action), algebra(it->algebra));
        });
    for (const auto& g : s.lie_algebras)
        resolve(lie_, "lie-algebras", g.name, g.line.value, [&] { return resolve_lie(g); });
    for (const auto& m : s.psi_models)
        resolve(psi_, "psi-models", m.name, m.line.value,
                [&] { return shift_psi_model(m.order, algebra(m.fiber).algebra); });
}

GroupCochain explicit_tau(const PsiModel& m, const TaskSpec& t)
{
    if (!t.tau_k)
        throw std::invalid_argument("task gives no explicit τ");
    GroupCochain tau = m.zero(*t.tau_k, t.l);
    for (const auto& e : t.tau) {
        std::size_t code = 0;
        for (auto g : e.tuple) {
            if (g >= m.order())
                throw std::invalid_argument("group element " + std::to_string(g) + " outside ℤ/" +
                                            std::to_string(m.order()));
            code = code * m.order() + g;
        }
        tau.values[code] = m.coefficients().parse_element(as_map(e.value));
    }
    return tau;
}

// --- characteristic maps ---------------------------------------------------------------------

SparseVector ChiSetup::cochain() const
{
    SparseVector v = (chi_twisted ? *chi_twisted : *chi).apply(level, tensor);
    if (chi_twisted)
        v -= chi->apply(level, tensor);
    return v;
}

std::unique_ptr<ChiSetup> make_chi_setup(const Workspace& ws, const TaskSpec& t, bool twisted)
{
    auto s = std::make_unique<ChiSetup>();
    std::optional<TwistCocycle> rho;
    if (twisted) {
        const ResolvedTwist& tw = ws.twist(t.twist);
        const ResolvedAction& a = ws.action(tw.action);
        s->action = a.action;
        s->pair = ws.pair_of(a);
        rho = tw.rho;
    } else {
        const ResolvedAction& a = ws.action(t.action);
        s->action = a.action;
        s->pair = ws.pair_of(a);
    }
    s->trace = ws.trace(t.trace).trace;
    if (t.tensor.empty())
        throw std::invalid_argument("task needs a Hopf tensor");
    s->level = static_cast<int>(t.tensor.front().first.size());
    for (const auto& [legs, c] : t.tensor)
        if (static_cast<int>(legs.size()) != s->level)
            throw std::invalid_argument("tensor terms have different lengths");

    s->preconditions.merge(check_action(*s->action));
    s->preconditions.merge(check_invariant_trace(*s->action, s->trace, s->pair));
    if (rho) {
        CheckReport cocycle = check_twist_cocycle(*s->action, *rho, s->pair);
        s->preconditions.merge(cocycle);
        if (cocycle.passed()) {
            s->twisted.emplace(twist_action(*s->action, *rho, s->pair));
            s->preconditions.merge(check_action(*s->twisted));
        }
    }
    if (!s->preconditions.passed())
        return s;

    s->source = std::make_unique<CMCyclicObject>(s->action->hopf_ptr(), s->pair);
    s->cochains = std::make_unique<AlgebraCochains>(s->action->algebra_ptr());
    s->tensor = s->source->tensor(t.tensor);
    s->chi = std::make_unique<CharacteristicMap>(*s->action, s->trace, *s->source, *s->cochains);
    if (s->twisted)
        s->chi_twisted = std::make_unique<CharacteristicMap>(*s->twisted, s->trace, *s->source, *s->cochains);
    return s;
}

BuiltCertificate build_certificate(const ChiSetup& setup, const TaskSpec& t, const RunOptions& o,
                                   const SparseVector& cochain)
{
    BuiltCertificate c;
    const auto parts = split_by_weight(*setup.cochains, setup.level, cochain);
    if (parts.size() > 1)
        throw std::invalid_argument("cochain is not of a single weight");
    const int weight = parts.empty() ? 0 : parts.begin()->first;
    c.degree = setup.level - weight;
    c.spec.max_level = o.window.value_or(t.window.levels.value_or(setup.level + 1));
    c.spec.min_degree = c.degree - 1;
    c.spec.max_degree = c.degree;
    const auto w = t.window.weights.value_or(std::pair{weight, weight});
    c.spec.internal = WindowSpec::weights(w.first, w.second);
    c.window = std::make_unique<ComplexWindow>(*setup.cochains, c.spec);
    c.window_info = Json{{"max-level", c.spec.max_level},
                         {"degrees", Json::array({c.spec.min_degree, c.spec.max_degree})},
                         {"weights", Json::array({w.first, w.second})},
                         {"dims", c.window->dimensions()}};
    c.phi = c.window->to_slot(c.degree, {{{setup.level, 0}, cochain}});
    try {
        c.primitive = coboundary_certificate(*c.window, c.degree, c.phi, &c.evidence);
    } catch (const NotClosed& e) {
        c.error = std::string("cochain is not a cocycle: ") + e.what();
    }
    return c;
}

namespace {

Json slot_entries(const ChiSetup& setup, const ComplexWindow& w, int degree, const SparseVector& v)
{
    const AlgebraCochains& cc = *setup.cochains;
    Json out = Json::array();
    for (const auto& [lq, part] : w.from_slot(degree, v))
        for (const auto& [key, c] : part) {
            const Tuple tuple = cc.decode(lq.first, key);
            Json names = Json::array();
            for (int i = 0; i < tuple.size; ++i)
                names.push_back(cc.algebra().basis_name(tuple[i]));
            out.push_back(Json{{"level", lq.first}, {"column", lq.second}, {"tuple", names}, {"value", c.str()}});
        }
    return out;
}

}  // namespace

Json certificate_json(const ChiSetup& setup, const BuiltCertificate& c, const std::string& scenario,
                      std::size_t index, const std::string& kind)
{
    Json j;
    j["scenario"] = scenario;
    j["task"] = index;
    j["kind"] = kind;
    j["degree"] = c.degree;
    j["window"] = Json{{"max-level", c.spec.max_level},
                       {"min-degree", c.spec.min_degree},
                       {"max-degree", c.spec.max_degree},
                       {"internal", Json::array({c.spec.internal->first, c.spec.internal->second})}};
    j["cocycle"] = slot_entries(setup, *c.window, c.degree, c.phi);
    j["primitive"] = slot_entries(setup, *c.window, c.degree - 1, *c.primitive);
    return j;
}

}  // namespace hopfcyc
