#include "hopfcyc/workbench.hpp"

#include "workspace.hpp"

#include "hopfcyc/weil.hpp"

#include <chrono>
#include <future>
#include <random>
#include <sstream>

namespace hopfcyc {

bool RunReport::passed() const
{
    return std::all_of(tasks.begin(), tasks.end(), [](const TaskResult& t) { return t.passed(); });
}

namespace {

// What a task produced before expectations are applied.
struct Outcome {
    bool holds = true;
    std::vector<std::string> witnesses;
    Json result = Json::object();
    Json info = Json::object();
    std::optional<Json> certificate;
    std::optional<std::vector<std::size_t>> dims;
    std::optional<bool> certificate_found;

    void absorb(const std::string& what, const CheckReport& rep)
    {
        result[what] = rep.passed() ? "holds" : "violated";
        info["checked:" + what] = rep.checked();
        if (!rep.passed()) {
            holds = false;
            for (const auto& v : rep.violations())
                witnesses.push_back(v.check + ": " + v.witness);
        }
    }
};

Json dims_json(const std::vector<std::size_t>& d)
{
    Json a = Json::array();
    for (auto x : d)
        a.push_back(x);
    return a;
}

std::string dims_text(const std::vector<std::size_t>& d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

int check_levels(const TaskSpec& t, const RunOptions& o, int fallback)
{
    if (o.levels)
        return *o.levels;
    return t.window.levels.value_or(fallback);
}

Json cochain_json(const CyclicObject& x, int level, const SparseVector& v)
{
    Json a = Json::array();
    for (const auto& [k, c] : v)
        a.push_back(Json{{"tuple", x.format_key(level, k)}, {"value", c.str()}});
    return a;
}

// --- checks --------------------------------------------------------------------------------

void run_check(const Workspace& ws, const TaskSpec& t, const RunOptions& o, Outcome& out)
{
    const std::string& what = t.what;
    if (what == "dga") {
        out.absorb("dga", check_dga_axioms(*ws.algebra(t.algebra).algebra));
    } else if (what == "hopf") {
        out.absorb("hopf", check_hopf_axioms(*ws.hopf(t.hopf).hopf));
    } else if (what == "modular-pair") {
        const auto& h = ws.hopf(t.hopf);
        out.absorb("modular-pair", check_modular_pair(*h.hopf, h.pair));
    } else if (what == "action") {
        out.absorb("action", check_action(*ws.action(t.action).action));
    } else if (what == "trace") {
        const auto& a = ws.action(t.action);
        out.absorb("trace", check_invariant_trace(*a.action, ws.trace(t.trace).trace, ws.pair_of(a)));
    } else if (what == "twist") {
        const auto& tw = ws.twist(t.twist);
        const auto& a = ws.action(tw.action);
        const ModularPair& pair = ws.pair_of(a);
        CheckReport rep = check_twist_cocycle(*a.action, tw.rho, pair);
        out.absorb("cocycle", rep);
        if (rep.passed())
            out.absorb("twisted-action", check_action(twist_action(*a.action, tw.rho, pair)));
    } else if (what == "cyclic") {
        const int n = check_levels(t, o, 3);
        out.info["levels"] = n;
        auto run = [&](const CyclicObject& x) {
            out.absorb("cyclic-axioms", check_cyclic_axioms(x, n));
            out.absorb("grading", check_internal_grading(x, n));
            out.absorb("operator-identities", check_operator_identities(x, n));
        };
        if (!t.hopf.empty()) {
            const auto& h = ws.hopf(t.hopf);
            run(CMCyclicObject(h.hopf, h.pair));
        } else {
            run(AlgebraCochains(ws.algebra(t.algebra).algebra, t.normalized));
        }
    } else if (what == "groupoid") {
        const auto& g = ws.groupoid(t.groupoid);
        if (!g.model) {
            out.holds = false;
            out.result["groupoid"] = "rejected";
            out.witnesses.push_back(g.rejection);
        } else {
            out.absorb("groupoid", check_groupoid(*g.model));
        }
    } else if (what == "lie") {
        out.absorb("lie", check_lie_algebra(ws.lie(t.lie)));
    } else if (what == "weil") {
        TruncatedWeil w(ws.lie(t.lie), t.truncation.value_or(1));
        out.info["dim"] = w.dim();
        out.absorb("weil", check_weil(w));
    } else if (what == "chi") {
        const auto& a = ws.action(t.action);
        const ModularPair& pair = ws.pair_of(a);
        CMCyclicObject cm(a.action->hopf_ptr(), pair);
        AlgebraCochains cc(a.action->algebra_ptr());
        CharacteristicMap chi(*a.action, ws.trace(t.trace).trace, cm, cc);
        const int n = check_levels(t, o, 2);
        out.info["levels"] = n;
        out.absorb("cyclic-map", check_cyclic_map(chi, n));
        out.absorb("filtration", check_filtration_vanishing(chi, n));
    } else if (what == "psi-invariance") {
        const PsiModel& m = ws.psi_model(t.model);
        const GroupCochain tau = explicit_tau(m, t);
        CheckReport rep("τ on " + t.model);
        rep.count(2);
        if (auto w = m.invariance_violation(tau))
            rep.fail("invariance", *w);
        if (auto w = m.alternation_violation(tau))
            rep.fail("alternation", *w);
        out.absorb("psi-invariance", rep);
    } else {
        throw std::invalid_argument("unknown check '" + what + "'");
    }
}

// --- compute ---------------------------------------------------------------------------------

void run_compute(const Workspace& ws, const TaskSpec& t, const RunOptions& o, Outcome& out)
{
    const auto [lo, hi] = *t.degrees;
    WindowSpec spec;
    spec.max_level = o.window.value_or(t.window.levels.value_or(std::max(hi + 2, 2)));

    std::unique_ptr<CyclicObject> x;
    if (!t.hopf.empty()) {
        const auto& h = ws.hopf(t.hopf);
        x = std::make_unique<CMCyclicObject>(h.hopf, h.pair);
        if (auto l = o.truncate ? o.truncate : t.window.truncate) {
            spec = truncated(spec, *l);
            out.result["truncate"] = *l;
        }
    } else {
        AlgebraPtr a = ws.algebra(t.algebra).algebra;
        if (t.normalized && a->unit_index() != 0)
            a = rebase_unit(*a).algebra;
        x = std::make_unique<AlgebraCochains>(a, t.normalized);
        if (t.window.weights)
            spec.internal = WindowSpec::weights(t.window.weights->first, t.window.weights->second);
    }
    out.result["invariant"] = t.invariant;
    out.result["degrees"] = Json::array({lo, hi});
    out.info["max-level"] = spec.max_level;

    std::vector<std::size_t> dims;
    if (t.invariant == "HP") {
        Json stab = Json::array();
        for (int p = lo; p <= hi; ++p) {
            PeriodicResult r = compute_HP(*x, p, spec);
            dims.push_back(r.dim);
            stab.push_back(r.stabilized);
            if (!r.stabilized) {
                out.holds = false;
                out.witnesses.push_back("HP parity " + std::to_string(p) + " did not stabilize in the window; HC " +
                                        dims_text(r.hc_dims) + ", S ranks " + dims_text(r.shift_ranks));
            }
        }
        out.result["stabilized"] = stab;
    } else {
        for (int n = lo; n <= hi; ++n)
            dims.push_back(t.invariant == "HC" ? compute_HC(*x, n, spec) : compute_HH(*x, n, spec));
    }
    out.result["dims"] = dims_json(dims);
    out.dims = std::move(dims);
}

// --- characteristic map and certificates -----------------------------------------------------

void certify(const ChiSetup& setup, const std::string& scenario, std::size_t index, const TaskSpec& t,
             const RunOptions& o, const SparseVector& v, Outcome& out)
{
    auto made = build_certificate(setup, t, o, v);
    out.info["window"] = made.window_info;
    if (made.error) {
        out.holds = false;
        out.witnesses.push_back(*made.error);
        out.result["certificate"] = "not-closed";
        return;
    }
    out.certificate_found = made.primitive.has_value();
    out.result["certificate"] = made.primitive ? "found" : "absent";
    out.result["evidence"] = Json{{"source-dim", made.evidence.source_dim},
                                  {"boundary-rank", made.evidence.boundary_rank},
                                  {"augmented-rank", made.evidence.augmented_rank}};
    if (!made.primitive)
        return;
    Json cert = certificate_json(setup, made, scenario, index, t.verb);
    if (auto mismatch = verify_certificate(*made.window, made.degree, *made.primitive, made.phi)) {
        out.holds = false;
        out.witnesses.push_back("certificate failed re-verification: " + *mismatch);
        out.result["verified"] = false;
    } else {
        out.result["verified"] = true;
    }
    out.result["primitive"] = cert["primitive"];
    out.certificate = std::move(cert);
}

void run_chi(const Workspace& ws, const std::string& scenario, std::size_t index, const TaskSpec& t,
             const RunOptions& o, Outcome& out)
{
    auto setup = make_chi_setup(ws, t, false);
    out.absorb("preconditions", setup->preconditions);
    if (!setup->preconditions.passed())
        return;
    const SparseVector v = setup->cochain();
    out.result["level"] = setup->level;
    out.result["cochain"] = cochain_json(*setup->cochains, setup->level, v);
    out.result["cyclic-cocycle"] = is_zero(apply_total(*setup->cochains, LevelVector{{setup->level, v}}));
    if (t.certificate)
        certify(*setup, scenario, index, t, o, v, out);
}

void run_twist_compare(const Workspace& ws, const std::string& scenario, std::size_t index, const TaskSpec& t,
                       const RunOptions& o, Outcome& out)
{
    auto setup = make_chi_setup(ws, t, true);
    out.absorb("preconditions", setup->preconditions);
    if (!setup->preconditions.passed())
        return;
    const SparseVector v = setup->cochain();
    out.result["level"] = setup->level;
    out.result["difference"] = cochain_json(*setup->cochains, setup->level, v);
    certify(*setup, scenario, index, t, o, v, out);
}

// --- Ψ ----------------------------------------------------------------------------------------

GroupCochain random_invariant(const PsiModel& m, int k, int l, std::mt19937& rng)
{
    GroupCochain f = m.zero(k, l);
    for (auto& v : f.values) {
        std::vector<Entry> e;
        for (std::size_t i = 0; i < m.coefficient_dim(); ++i)
            if (m.coefficient_degree(i) == l)
                e.emplace_back(i, Rational(static_cast<long long>(rng() % 7) - 3));
        v = SparseVector::from_unsorted(std::move(e));
    }
    return m.alternate(m.average(f));
}

void run_psi(const Workspace& ws, const TaskSpec& t, const RunOptions& o, Outcome& out)
{
    const PsiModel& m = ws.psi_model(t.model);
    AlgebraCochains target(m.cross().algebra());
    Json per_k = Json::array();
    auto run = [&](const GroupCochain& tau) {
        CheckReport rep("Ψ identities, k = " + std::to_string(tau.k));
        try {
            rep = check_psi_identities(m, tau, target);
        } catch (const NotInvariant& e) {
            rep.fail("precondition", e.what());
        }
        per_k.push_back(Json{{"k", tau.k}, {"l", tau.l}, {"identities", rep.passed() ? "hold" : "violated"}});
        out.info["checked:k=" + std::to_string(tau.k)] = rep.checked();
        if (!rep.passed()) {
            out.holds = false;
            for (const auto& v : rep.violations())
                out.witnesses.push_back("k = " + std::to_string(tau.k) + ", " + v.check + ": " + v.witness);
        }
    };
    if (t.tau_k) {
        run(explicit_tau(m, t));
    } else {
        auto [lo, hi] = *t.k_range;
        if (o.levels)
            hi = std::min(hi, *o.levels);
        std::mt19937 rng(t.seed.value_or(1));
        for (int k = lo; k <= hi; ++k)
            run(random_invariant(m, k, t.l, rng));
    }
    out.result["psi"] = per_k;
}

// --- Weil ---------------------------------------------------------------------------------------

void run_weil(const Workspace& ws, const TaskSpec& t, Outcome& out)
{
    const int q = t.truncation.value_or(1);
    TruncatedWeil w(ws.lie(t.lie), q);
    WeilCohomology h = weil_cohomology(w, t.basic);
    out.result["lie"] = w.lie().name;
    out.result["truncation"] = q;
    out.result["basic"] = t.basic;
    out.result["complex"] = dims_json(h.complex_dims);
    out.result["dims"] = dims_json(h.dims);
    out.result["euler"] = h.euler;
    Json reps = Json::object();
    for (std::size_t deg = 0; deg < h.representatives.size(); ++deg) {
        if (h.representatives[deg].empty())
            continue;
        Json a = Json::array();
        for (const auto& e : h.representatives[deg])
            a.push_back(w.format(e));
        reps[std::to_string(deg)] = a;
    }
    out.result["representatives"] = reps;
    out.info["dim"] = w.dim();
    out.dims = h.dims;
}

TaskResult run_task(const Workspace& ws, const Scenario& s, std::size_t index, const RunOptions& o)
{
    const TaskSpec& t = s.tasks[index];
    TaskResult r;
    r.index = index;
    r.verb = t.verb;
    r.label = t.label;
    Outcome out;
    std::optional<std::string> error;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (t.verb == "check")
            run_check(ws, t, o, out);
        else if (t.verb == "compute")
            run_compute(ws, t, o, out);
        else if (t.verb == "chi")
            run_chi(ws, s.name, index, t, o, out);
        else if (t.verb == "twist-compare")
            run_twist_compare(ws, s.name, index, t, o, out);
        else if (t.verb == "psi")
            run_psi(ws, t, o, out);
        else if (t.verb == "weil")
            run_weil(ws, t, out);
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::vector<std::string> problems;
    if (error) {
        if (t.expect_fail && t.verb == "check") {
            out.holds = false;
            out.witnesses.push_back(*error);
            out.result["rejected"] = true;
            error.reset();
        } else {
            r.status = "error";
            problems.push_back(*error);
        }
    }
    if (!error) {
        if (t.expect_fail) {
            if (out.holds)
                problems.push_back("expected a failure, but every check held");
            else if (out.witnesses.empty())
                problems.push_back("failed without a witness");
        } else if (!out.holds) {
            problems.push_back("check failed");
        }
        if (t.expect_dims && out.dims && *t.expect_dims != *out.dims)
            problems.push_back("expected " + dims_text(*t.expect_dims) + ", got " + dims_text(*out.dims));
        if (t.expect_dims && !out.dims)
            problems.push_back("task produced no dimensions to compare");
        if (t.expect_certificate && out.certificate_found != t.expect_certificate)
            problems.push_back(std::string("expected the certificate to be ") +
                               (*t.expect_certificate ? "found" : "absent"));
        r.status = problems.empty() ? "pass" : "fail";
    }

    Json c;
    c["index"] = index;
    c["task"] = t.verb;
    if (!t.label.empty())
        c["label"] = t.label;
    c["status"] = r.status;
    if (t.expect_fail)
        c["expect"] = "fail";
    c["result"] = std::move(out.result);
    if (!out.witnesses.empty())
        c["witnesses"] = out.witnesses;
    if (!problems.empty())
        c["problems"] = problems;
    r.comparable = std::move(c);

    Json info = std::move(out.info);
    info["index"] = index;
    info["seconds"] = seconds;
    r.informational = std::move(info);
    r.certificate = std::move(out.certificate);
    return r;
}

}  // namespace

RunReport run_scenario(const Scenario& s, const RunOptions& options)
{
    RunReport report;
    report.scenario = s.name;
    const Workspace ws(s);

    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < s.tasks.size(); ++i)
        if (options.verbs.empty() ||
            std::find(options.verbs.begin(), options.verbs.end(), s.tasks[i].verb) != options.verbs.end())
            selected.push_back(i);

    if (options.concurrent) {
        std::vector<std::future<TaskResult>> running;
        for (auto i : selected)
            running.push_back(std::async(std::launch::async, [&, i] { return run_task(ws, s, i, options); }));
        for (auto& f : running)
            report.tasks.push_back(f.get());
    } else {
        for (auto i : selected)
            report.tasks.push_back(run_task(ws, s, i, options));
    }
    return report;
}

Json report_json(const RunReport& r, ReportSection section)
{
    Json comparable;
    comparable["scenario"] = r.scenario;
    comparable["passed"] = r.passed();
    comparable["tasks"] = Json::array();
    for (const auto& t : r.tasks)
        comparable["tasks"].push_back(t.comparable);
    Json out;
    out["comparable"] = std::move(comparable);
    if (section == ReportSection::kAll) {
        Json info = Json::array();
        for (const auto& t : r.tasks)
            info.push_back(t.informational);
        out["informational"] = Json{{"tasks", std::move(info)}};
    }
    return out;
}

namespace {

std::string scalar_text(const Json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

std::string report_text(const RunReport& r, ReportSection section)
{
    std::ostringstream out;
    out << "scenario " << r.scenario << ": " << (r.passed() ? "pass" : "fail") << "\n";
    for (const auto& t : r.tasks) {
        const Json& c = t.comparable;
        out << "[" << t.index << "] " << t.verb;
        if (!t.label.empty())
            out << " " << t.label;
        out << ": " << t.status << "\n";
        for (const auto& [key, value] : c["result"].items())
            out << "    " << key << " = " << scalar_text(value) << "\n";
        if (c.contains("witnesses"))
            for (const auto& w : c["witnesses"])
                out << "    witness: " << w.get<std::string>() << "\n";
        if (c.contains("problems"))
            for (const auto& p : c["problems"])
                out << "    problem: " << p.get<std::string>() << "\n";
        if (section == ReportSection::kAll)
            for (const auto& [key, value] : t.informational.items())
                if (key != "index")
                    out << "    (" << key << " " << scalar_text(value) << ")\n";
    }
    return out.str();
}

std::string report_tabular(const RunReport& r)
{
    std::ostringstream out;
    out << "task\tverb\tlabel\tstatus\tfield\tvalue\n";
    for (const auto& t : r.tasks) {
        const std::string head = std::to_string(t.index) + "\t" + t.verb + "\t" + t.label + "\t" + t.status + "\t";
        const Json& res = t.comparable["result"];
        if (res.empty())
            out << head << "\t\n";
        for (const auto& [key, value] : res.items())
            out << head << key << "\t" << scalar_text(value) << "\n";
    }
    return out.str();
}

}  // namespace hopfcyc
