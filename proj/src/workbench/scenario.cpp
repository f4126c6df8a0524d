#include "hopfcyc/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace hopfcyc {

ScenarioError::ScenarioError(std::string source_, int line_, std::string field_, const std::string& message)
    : std::runtime_error(source_ + ":" + (line_ > 0 ? std::to_string(line_) + ":" : std::string()) + " " +
                         (field_.empty() ? std::string() : field_ + ": ") + message),
      source(std::move(source_)), line(line_), field(std::move(field_))
{
}

namespace {

// --- reading ---------------------------------------------------------------------------

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& n, const std::string& field, const std::string& msg) const
    {
        throw ScenarioError(source_, line_of(n), field, msg);
    }
    static int line_of(const YAML::Node& n) { return n.IsDefined() ? n.Mark().line + 1 : 0; }

    void require_map(const YAML::Node& n, const std::string& field) const
    {
        if (!n.IsMap())
            fail(n, field, "expected a mapping");
    }
    void require_seq(const YAML::Node& n, const std::string& field) const
    {
        if (!n.IsSequence())
            fail(n, field, "expected a list");
    }
    void allow_keys(const YAML::Node& n, const std::string& field, std::initializer_list<std::string_view> keys) const
    {
        require_map(n, field);
        for (const auto& kv : n) {
            const std::string k = kv.first.Scalar();
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                fail(kv.first, field, "unknown key '" + k + "'");
        }
    }

    std::string str(const YAML::Node& n, const std::string& field) const
    {
        if (!n.IsScalar())
            fail(n, field, "expected a string");
        return n.Scalar();
    }
    long long integer(const YAML::Node& n, const std::string& field) const
    {
        if (!n.IsScalar())
            fail(n, field, "expected an integer");
        try {
            std::size_t pos = 0;
            long long v = std::stoll(n.Scalar(), &pos);
            if (pos != n.Scalar().size())
                throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            fail(n, field, "expected an integer, got '" + n.Scalar() + "'");
        }
    }
    std::size_t count(const YAML::Node& n, const std::string& field) const
    {
        long long v = integer(n, field);
        if (v < 0)
            fail(n, field, "expected a non-negative integer");
        return static_cast<std::size_t>(v);
    }
    bool boolean(const YAML::Node& n, const std::string& field) const
    {
        if (n.IsScalar()) {
            const std::string& s = n.Scalar();
            if (s == "true")
                return true;
            if (s == "false")
                return false;
        }
        fail(n, field, "expected true or false");
    }
    Rational rational(const YAML::Node& n, const std::string& field) const
    {
        if (!n.IsScalar())
            fail(n, field, "expected a rational");
        try {
            return Rational::parse(n.Scalar());
        } catch (const std::exception&) {
            fail(n, field, "expected a rational 'p' or 'p/q', got '" + n.Scalar() + "'");
        }
    }
    std::vector<Rational> rationals(const YAML::Node& n, const std::string& field) const
    {
        require_seq(n, field);
        std::vector<Rational> out;
        for (const auto& x : n)
            out.push_back(rational(x, field));
        return out;
    }
    std::vector<std::uint32_t> indices(const YAML::Node& n, const std::string& field) const
    {
        require_seq(n, field);
        std::vector<std::uint32_t> out;
        for (const auto& x : n)
            out.push_back(static_cast<std::uint32_t>(count(x, field)));
        return out;
    }
    std::pair<int, int> range(const YAML::Node& n, const std::string& field) const
    {
        if (!n.IsSequence() || n.size() != 2)
            fail(n, field, "expected [low, high]");
        const auto lo = static_cast<int>(integer(n[0], field));
        const auto hi = static_cast<int>(integer(n[1], field));
        if (lo > hi)
            fail(n, field, "empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return {lo, hi};
    }
    ElementSpec element(const YAML::Node& n, const std::string& field) const
    {
        if (n.IsNull())
            return {};
        require_map(n, field);
        ElementSpec out;
        std::set<std::string> seen;
        for (const auto& kv : n) {
            std::string name = kv.first.Scalar();
            if (!seen.insert(name).second)
                fail(kv.first, field, "basis name '" + name + "' repeated");
            out.emplace_back(std::move(name), rational(kv.second, field + "." + kv.first.Scalar()));
        }
        return out;
    }
    ImageTable images(const YAML::Node& n, const std::string& field) const
    {
        require_map(n, field);
        ImageTable out;
        for (const auto& kv : n)
            out.emplace_back(kv.first.Scalar(), element(kv.second, field + "." + kv.first.Scalar()));
        return out;
    }
    FunctionalSpec functional(const YAML::Node& n, const std::string& field) const
    {
        allow_keys(n, field, {"weight", "values"});
        FunctionalSpec f;
        if (n["weight"])
            f.weight = static_cast<int>(integer(n["weight"], field + ".weight"));
        if (!n["values"])
            fail(n, field, "missing 'values'");
        f.values = element(n["values"], field + ".values");
        return f;
    }

private:
    std::string source_;
};

template <class T>
std::vector<T> read_section(const Reader& r, const YAML::Node& root, const std::string& key,
                            T (*read)(const Reader&, const std::string&, const YAML::Node&, const std::string&))
{
    std::vector<T> out;
    const YAML::Node n = root[key];
    if (!n || n.IsNull())
        return out;
    r.require_map(n, key);
    for (const auto& kv : n) {
        const std::string name = kv.first.Scalar();
        out.push_back(read(r, name, kv.second, key + "." + name));
        out.back().line.value = Reader::line_of(kv.first);
    }
    return out;
}

AlgebraSpec read_algebra(const Reader& r, const std::string& name, const YAML::Node& n, const std::string& f)
{
    r.allow_keys(n, f, {"builtin", "rebase", "basis", "unit", "products", "differential", "trace", "cross"});
    AlgebraSpec a;
    a.name = name;
    int sources = 0;
    if (n["builtin"]) {
        a.builtin = r.str(n["builtin"], f + ".builtin");
        ++sources;
    }
    if (n["basis"]) {
        ++sources;
        r.require_seq(n["basis"], f + ".basis");
        for (const auto& b : n["basis"]) {
            if (!b.IsSequence() || b.size() != 2)
                r.fail(b, f + ".basis", "expected [name, degree]");
            a.basis.emplace_back(r.str(b[0], f + ".basis"), static_cast<int>(r.integer(b[1], f + ".basis")));
        }
        if (n["unit"])
            a.unit = r.element(n["unit"], f + ".unit");
        if (n["products"]) {
            r.require_seq(n["products"], f + ".products");
            for (const auto& p : n["products"]) {
                if (!p.IsSequence() || p.size() != 3)
                    r.fail(p, f + ".products", "expected [left, right, {value}]");
                a.products.push_back({r.str(p[0], f + ".products"), r.str(p[1], f + ".products"),
                                      r.element(p[2], f + ".products")});
            }
        }
        if (n["differential"])
            a.differential = r.images(n["differential"], f + ".differential");
        if (n["trace"])
            a.trace = r.functional(n["trace"], f + ".trace");
    } else {
        for (const char* k : {"unit", "products", "differential", "trace"})
            if (n[k])
                r.fail(n[k], f + "." + k, "only allowed with an explicit basis");
    }
    if (n["cross"]) {
        ++sources;
        const YAML::Node c = n["cross"];
        r.allow_keys(c, f + ".cross", {"groupoid", "fiber"});
        if (!c["groupoid"] || !c["fiber"])
            r.fail(c, f + ".cross", "needs 'groupoid' and 'fiber'");
        a.cross_groupoid = r.str(c["groupoid"], f + ".cross.groupoid");
        a.cross_fiber = r.str(c["fiber"], f + ".cross.fiber");
    }
    if (sources != 1)
        r.fail(n, f, "needs exactly one of 'builtin', 'basis', 'cross'");
    if (n["rebase"])
        a.rebase = r.boolean(n["rebase"], f + ".rebase");
    return a;
}

GroupoidDecl read_groupoid(const Reader& r, const std::string& name, const YAML::Node& n, const std::string& f)
{
    r.allow_keys(n, f, {"builtin", "points", "bundle-order", "generators"});
    GroupoidDecl g;
    g.name = name;
    if (n["builtin"]) {
        if (n["points"] || n["generators"])
            r.fail(n, f, "'builtin' excludes 'points' and 'generators'");
        g.builtin = r.str(n["builtin"], f + ".builtin");
        return g;
    }
    if (!n["points"])
        r.fail(n, f, "needs 'builtin' or 'points'");
    g.points = r.count(n["points"], f + ".points");
    if (n["bundle-order"])
        g.bundle_order = r.count(n["bundle-order"], f + ".bundle-order");
    if (n["generators"]) {
        r.require_seq(n["generators"], f + ".generators");
        for (const auto& x : n["generators"]) {
            const std::string gf = f + ".generators";
            r.allow_keys(x, gf, {"name", "pairs", "bundle", "ell"});
            GeneratorSpec s;
            if (!x["name"] || !x["pairs"])
                r.fail(x, gf, "a generator needs 'name' and 'pairs'");
            s.name = r.str(x["name"], gf + ".name");
            r.require_seq(x["pairs"], gf + ".pairs");
            for (const auto& p : x["pairs"]) {
                if (!p.IsSequence() || p.size() != 2)
                    r.fail(p, gf + ".pairs", "expected [source, target]");
                s.pairs.emplace_back(static_cast<std::uint32_t>(r.count(p[0], gf + ".pairs")),
                                     static_cast<std::uint32_t>(r.count(p[1], gf + ".pairs")));
            }
            if (x["bundle"])
                s.bundle = r.indices(x["bundle"], gf + ".bundle");
            if (x["ell"])
                s.ell = r.rationals(x["ell"], gf + ".ell");
            g.generators.push_back(std::move(s));
        }
    }
    return g;
}

HopfSpec read_hopf(const Reader& r, const std::string& name, const YAML::Node& n, const std::string& f)
{
    r.allow_keys(n, f, {"builtin", "algebra", "coproduct", "counit", "antipode", "pair"});
    HopfSpec h;
    h.name = name;
    if (n["builtin"]) {
        if (n["algebra"])
            r.fail(n, f, "'builtin' excludes an explicit algebra");
        h.builtin = r.str(n["builtin"], f + ".builtin");
    } else {
        for (const char* k : {"algebra", "coproduct", "counit", "antipode"})
            if (!n[k])
                r.fail(n, f, std::string("explicit Hopf data needs '") + k + "'");
        h.algebra = r.str(n["algebra"], f + ".algebra");
        r.require_map(n["coproduct"], f + ".coproduct");
        for (const auto& kv : n["coproduct"]) {
            const std::string cf = f + ".coproduct." + kv.first.Scalar();
            r.require_seq(kv.second, cf);
            std::vector<CoproductSpec> terms;
            for (const auto& t : kv.second) {
                if (!t.IsSequence() || t.size() != 3)
                    r.fail(t, cf, "expected [left, right, coefficient]");
                terms.push_back({r.str(t[0], cf), r.str(t[1], cf), r.rational(t[2], cf)});
            }
            h.coproduct.emplace_back(kv.first.Scalar(), std::move(terms));
        }
        h.counit = r.element(n["counit"], f + ".counit");
        h.antipode = r.images(n["antipode"], f + ".antipode");
    }
    if (const YAML::Node p = n["pair"]) {
        if (p.IsScalar()) {
            h.pair.named = p.Scalar();
        } else {
            r.allow_keys(p, f + ".pair", {"delta", "sigma"});
            h.pair.named.clear();
            if (p["delta"])
                h.pair.delta = r.element(p["delta"], f + ".pair.delta");
            if (p["sigma"])
                h.pair.sigma = r.element(p["sigma"], f + ".pair.sigma");
        }
    }
    return h;
}

ActionSpec read_action(const Reader& r, const std::string& name, const YAML::Node& n, const std::string& f)
{
    r.allow_keys(n, f, {"hopf", "algebra", "kind", "nu", "ell", "bundle", "table"});
    ActionSpec a;
    a.name = name;
    if (!n["hopf"] || !n["algebra"])
        r.fail(n, f, "an action needs 'hopf' and 'algebra'");
    a.hopf = r.str(n["hopf"], f + ".hopf");
    a.algebra = r.str(n["algebra"], f + ".algebra");
    if (n["kind"])
        a.kind = r.str(n["kind"], f + ".kind");
    static const std::set<std::string> kinds{"trivial", "pullback", "gv", "table"};
    if (!kinds.contains(a.kind))
        r.fail(n["kind"], f + ".kind", "unknown action kind '" + a.kind + "' (trivial, pullback, gv, table)");
    if (n["nu"])
        a.nu = r.str(n["nu"], f + ".nu");
    if (a.kind == "gv" && a.nu.empty())
        r.fail(n, f, "a gv action needs 'nu'");
    if (n["ell"])
        a.ell = r.rationals(n["ell"], f + ".ell");
    if (n["bundle"])
        a.bundle = r.indices(n["bundle"], f + ".bundle");
    if (n["table"]) {
        if (a.kind != "table")
            r.fail(n["table"], f + ".table", "only allowed with kind: table");
        r.require_seq(n["table"], f + ".table");
        for (const auto& t : n["table"]) {
            if (!t.IsSequence() || t.size() != 3)
                r.fail(t, f + ".table", "expected [hopf basis, algebra basis, {value}]");
            a.table.push_back({r.str(t[0], f + ".table"), r.str(t[1], f + ".table"), r.element(t[2], f + ".table")});
        }
    }
    return a;
}

TraceDecl read_trace(const Reader& r, const std::string& name, const YAML::Node& n, const std::string& f)
{
    r.allow_keys(n, f, {"algebra", "kind", "weight", "values", "measure", "fiber-trace"});
    TraceDecl t;
    t.name = name;
    if (!n["algebra"])
        r.fail(n, f, "a trace needs 'algebra'");
    t.algebra = r.str(n["algebra"], f + ".algebra");
    if (n["kind"])
        t.kind = r.str(n["kind"], f + ".kind");
    if (t.kind == "explicit") {
        if (!n["values"])
            r.fail(n, f, "an explicit trace needs 'values'");
        if (n["weight"])
            t.values.weight = static_cast<int>(r.integer(n["weight"], f + ".weight"));
        t.values.values = r.element(n["values"], f + ".values");
    } else if (t.kind == "unit") {
        if (!n["measure"])
            r.fail(n, f, "a unit trace needs 'measure'");
        t.measure = r.rationals(n["measure"], f + ".measure");
        if (n["fiber-trace"])
            t.fiber_trace = r.functional(n["fiber-trace"], f + ".fiber-trace");
    } else if (t.kind != "algebra") {
        r.fail(n["kind"], f + ".kind", "unknown trace kind '" + t.kind + "' (explicit, algebra, unit)");
    }
    return t;
}

TwistSpec read_twist(const Reader& r, const std::string& name, const YAML::Node& n, const std::string& f)
{
    r.allow_keys(n, f, {"action", "kind", "nu", "potential", "change", "plus", "minus"});
    TwistSpec t;
    t.name = name;
    if (!n["action"])
        r.fail(n, f, "a twist needs 'action'");
    t.action = r.str(n["action"], f + ".action");
    if (n["kind"])
        t.kind = r.str(n["kind"], f + ".kind");
    if (t.kind == "potential") {
        if (!n["nu"] || !n["potential"])
            r.fail(n, f, "a potential twist needs 'nu' and 'potential'");
        t.nu = r.str(n["nu"], f + ".nu");
        t.potential = r.rationals(n["potential"], f + ".potential");
    } else if (t.kind == "bundle-change") {
        if (!n["change"])
            r.fail(n, f, "a bundle-change twist needs 'change'");
        t.change = r.indices(n["change"], f + ".change");
    } else if (t.kind == "explicit") {
        if (!n["plus"] || !n["minus"])
            r.fail(n, f, "an explicit twist needs 'plus' and 'minus'");
        t.plus = r.images(n["plus"], f + ".plus");
        t.minus = r.images(n["minus"], f + ".minus");
    } else if (t.kind != "trivial") {
        r.fail(n["kind"], f + ".kind",
               "unknown twist kind '" + t.kind + "' (trivial, potential, bundle-change, explicit)");
    }
    return t;
}

LieSpec read_lie(const Reader& r, const std::string& name, const YAML::Node& n, const std::string& f)
{
    r.allow_keys(n, f, {"builtin", "dim", "brackets", "compact", "components"});
    LieSpec g;
    g.name = name;
    if (n["builtin"]) {
        if (n["dim"] || n["brackets"])
            r.fail(n, f, "'builtin' excludes 'dim' and 'brackets'");
        g.builtin = r.str(n["builtin"], f + ".builtin");
    } else {
        if (!n["dim"])
            r.fail(n, f, "needs 'builtin' or 'dim'");
        g.dim = r.count(n["dim"], f + ".dim");
        if (n["brackets"]) {
            r.require_seq(n["brackets"], f + ".brackets");
            for (const auto& b : n["brackets"]) {
                if (!b.IsSequence() || b.size() != 3 || !b[2].IsMap())
                    r.fail(b, f + ".brackets", "expected [i, j, {k: coefficient}]");
                BracketSpec s{r.count(b[0], f + ".brackets"), r.count(b[1], f + ".brackets"), {}};
                for (const auto& kv : b[2])
                    s.value.emplace_back(r.count(kv.first, f + ".brackets"), r.rational(kv.second, f + ".brackets"));
                if (s.left >= g.dim || s.right >= g.dim)
                    r.fail(b, f + ".brackets", "index outside 0.." + std::to_string(g.dim - 1));
                for (const auto& [k, c] : s.value)
                    if (k >= g.dim)
                        r.fail(b, f + ".brackets", "index outside 0.." + std::to_string(g.dim - 1));
                g.brackets.push_back(std::move(s));
            }
        }
    }
    if (n["compact"]) {
        r.require_seq(n["compact"], f + ".compact");
        for (const auto& x : n["compact"])
            g.compact.push_back(r.rationals(x, f + ".compact"));
    }
    if (n["components"]) {
        r.require_seq(n["components"], f + ".components");
        for (const auto& m : n["components"]) {
            r.require_seq(m, f + ".components");
            std::vector<std::vector<Rational>> rows;
            for (const auto& row : m)
                rows.push_back(r.rationals(row, f + ".components"));
            g.components.push_back(std::move(rows));
        }
    }
    return g;
}

PsiModelSpec read_psi_model(const Reader& r, const std::string& name, const YAML::Node& n, const std::string& f)
{
    r.allow_keys(n, f, {"order", "fiber"});
    if (!n["order"] || !n["fiber"])
        r.fail(n, f, "a Ψ model needs 'order' and 'fiber'");
    PsiModelSpec m;
    m.name = name;
    m.order = r.count(n["order"], f + ".order");
    if (m.order == 0)
        r.fail(n["order"], f + ".order", "order must be positive");
    m.fiber = r.str(n["fiber"], f + ".fiber");
    return m;
}

const std::set<std::string>& check_kinds()
{
    static const std::set<std::string> k{"dga",   "hopf",  "modular-pair", "action", "trace", "twist",
                                         "cyclic", "groupoid", "lie",       "weil",   "chi",   "psi-invariance"};
    return k;
}

TaskSpec read_task(const Reader& r, const YAML::Node& n, const std::string& f)
{
    r.allow_keys(n, f, {"task",   "label",     "what",     "algebra",  "hopf",      "action",     "trace",
                        "twist",  "groupoid",  "lie",      "model",    "invariant", "degrees",    "normalized",
                        "levels", "weights",   "truncate", "tensor",   "certificate", "k",        "l",
                        "seed",   "tau",       "truncation", "basic",  "expect",    "expect-certificate"});
    TaskSpec t;
    t.line.value = Reader::line_of(n);
    if (!n["task"])
        r.fail(n, f, "missing 'task'");
    t.verb = r.str(n["task"], f + ".task");
    static const std::set<std::string> verbs{"check", "compute", "chi", "twist-compare", "psi", "weil"};
    if (!verbs.contains(t.verb))
        r.fail(n["task"], f + ".task", "unknown task '" + t.verb + "' (check, compute, chi, twist-compare, psi, weil)");
    auto text = [&](const char* key, std::string& out) {
        if (n[key])
            out = r.str(n[key], f + "." + key);
    };
    text("label", t.label);
    text("what", t.what);
    text("algebra", t.algebra);
    text("hopf", t.hopf);
    text("action", t.action);
    text("trace", t.trace);
    text("twist", t.twist);
    text("groupoid", t.groupoid);
    text("lie", t.lie);
    text("model", t.model);
    text("invariant", t.invariant);
    if (n["degrees"])
        t.degrees = r.range(n["degrees"], f + ".degrees");
    if (n["normalized"])
        t.normalized = r.boolean(n["normalized"], f + ".normalized");
    if (n["levels"])
        t.window.levels = static_cast<int>(r.count(n["levels"], f + ".levels"));
    if (n["weights"])
        t.window.weights = r.range(n["weights"], f + ".weights");
    if (n["truncate"])
        t.window.truncate = static_cast<int>(r.count(n["truncate"], f + ".truncate"));
    if (const YAML::Node x = n["tensor"]) {
        r.require_map(x, f + ".tensor");
        for (const auto& kv : x) {
            std::vector<std::string> legs;
            const std::string s = kv.first.Scalar();
            const std::string sep = "⊗";
            for (std::size_t pos = 0; !s.empty();) {
                const std::size_t next = s.find(sep, pos);
                legs.push_back(s.substr(pos, next - pos));
                if (next == std::string::npos)
                    break;
                pos = next + sep.size();
            }
            t.tensor.emplace_back(std::move(legs), r.rational(kv.second, f + ".tensor." + s));
        }
    }
    if (n["certificate"])
        t.certificate = r.boolean(n["certificate"], f + ".certificate");
    if (n["k"])
        t.k_range = r.range(n["k"], f + ".k");
    if (n["l"])
        t.l = static_cast<int>(r.integer(n["l"], f + ".l"));
    if (n["seed"])
        t.seed = static_cast<std::uint32_t>(r.count(n["seed"], f + ".seed"));
    if (const YAML::Node x = n["tau"]) {
        r.allow_keys(x, f + ".tau", {"k", "values"});
        if (!x["k"] || !x["values"])
            r.fail(x, f + ".tau", "needs 'k' and 'values'");
        t.tau_k = static_cast<int>(r.count(x["k"], f + ".tau.k"));
        r.require_seq(x["values"], f + ".tau.values");
        for (const auto& e : x["values"]) {
            if (!e.IsSequence() || e.size() != 2)
                r.fail(e, f + ".tau.values", "expected [[g0, .., gk], {value}]");
            CochainEntry c;
            for (auto g : r.indices(e[0], f + ".tau.values"))
                c.tuple.push_back(g);
            if (c.tuple.size() != static_cast<std::size_t>(*t.tau_k) + 1)
                r.fail(e, f + ".tau.values", "tuple length must be k + 1");
            c.value = r.element(e[1], f + ".tau.values");
            t.tau.push_back(std::move(c));
        }
    }
    if (n["truncation"])
        t.truncation = static_cast<int>(r.count(n["truncation"], f + ".truncation"));
    if (n["basic"])
        t.basic = r.boolean(n["basic"], f + ".basic");
    if (const YAML::Node x = n["expect"]) {
        if (x.IsScalar()) {
            if (x.Scalar() == "fail")
                t.expect_fail = true;
            else if (x.Scalar() != "pass")
                r.fail(x, f + ".expect", "expected pass, fail or a list of dimensions");
        } else {
            std::vector<std::size_t> dims;
            r.require_seq(x, f + ".expect");
            for (const auto& d : x)
                dims.push_back(r.count(d, f + ".expect"));
            t.expect_dims = std::move(dims);
        }
    }
    if (n["expect-certificate"])
        t.expect_certificate = r.boolean(n["expect-certificate"], f + ".expect-certificate");

    // per-verb requirements
    auto need = [&](bool ok, const std::string& what) {
        if (!ok)
            r.fail(n, f, t.verb + " task needs " + what);
    };
    if (t.verb == "check") {
        need(!t.what.empty(), "'what'");
        if (!check_kinds().contains(t.what))
            r.fail(n["what"], f + ".what", "unknown check '" + t.what + "'");
        const std::string& w = t.what;
        if (w == "dga")
            need(!t.algebra.empty(), "'algebra'");
        else if (w == "hopf" || w == "modular-pair")
            need(!t.hopf.empty(), "'hopf'");
        else if (w == "action")
            need(!t.action.empty(), "'action'");
        else if (w == "trace" || w == "chi")
            need(!t.action.empty() && !t.trace.empty(), "'action' and 'trace'");
        else if (w == "twist")
            need(!t.twist.empty(), "'twist'");
        else if (w == "cyclic")
            need(!t.algebra.empty() || !t.hopf.empty(), "'algebra' or 'hopf'");
        else if (w == "groupoid")
            need(!t.groupoid.empty(), "'groupoid'");
        else if (w == "lie" || w == "weil")
            need(!t.lie.empty(), "'lie'");
        else if (w == "psi-invariance")
            need(!t.model.empty() && t.tau_k.has_value(), "'model' and an explicit 'tau'");
    } else if (t.verb == "compute") {
        need(t.invariant == "HC" || t.invariant == "HH" || t.invariant == "HP", "'invariant' (HC, HH or HP)");
        need(!t.algebra.empty() || !t.hopf.empty(), "'algebra' or 'hopf'");
        need(t.degrees.has_value(), "'degrees'");
    } else if (t.verb == "chi") {
        need(!t.action.empty() && !t.trace.empty() && !t.tensor.empty(), "'action', 'trace' and 'tensor'");
    } else if (t.verb == "twist-compare") {
        need(!t.twist.empty() && !t.trace.empty() && !t.tensor.empty(), "'twist', 'trace' and 'tensor'");
    } else if (t.verb == "psi") {
        need(!t.model.empty(), "'model'");
        need(t.tau_k.has_value() || t.k_range.has_value(), "'k' or an explicit 'tau'");
    } else if (t.verb == "weil") {
        need(!t.lie.empty(), "'lie'");
    }
    return t;
}

// Every reference resolves to an earlier declaration of the right kind.
void validate_references(const Scenario& s, const std::string& source)
{
    std::map<std::string, std::set<std::string>> declared;
    std::set<std::string> all;
    auto declare = [&](const std::string& kind, const std::string& name, int line) {
        if (!all.insert(kind + "/" + name).second)
            throw ScenarioError(source, line, kind + "." + name, "declared twice");
        declared[kind].insert(name);
    };
    auto require = [&](const std::string& kind, const std::string& name, int line, const std::string& field) {
        if (!name.empty() && !declared[kind].contains(name))
            throw ScenarioError(source, line, field, "'" + name + "' is not a declared " + kind + " entry");
    };
    for (const auto& g : s.groupoids)
        declare("groupoids", g.name, g.line.value);
    for (const auto& a : s.algebras) {
        require("groupoids", a.cross_groupoid, a.line.value, "algebras." + a.name + ".cross.groupoid");
        require("algebras", a.cross_fiber, a.line.value, "algebras." + a.name + ".cross.fiber");
        declare("algebras", a.name, a.line.value);
    }
    for (const auto& h : s.hopf) {
        require("algebras", h.algebra, h.line.value, "hopf." + h.name + ".algebra");
        declare("hopf", h.name, h.line.value);
    }
    for (const auto& a : s.actions) {
        require("hopf", a.hopf, a.line.value, "actions." + a.name + ".hopf");
        require("algebras", a.algebra, a.line.value, "actions." + a.name + ".algebra");
        declare("actions", a.name, a.line.value);
    }
    for (const auto& t : s.traces) {
        require("algebras", t.algebra, t.line.value, "traces." + t.name + ".algebra");
        declare("traces", t.name, t.line.value);
    }
    for (const auto& t : s.twists) {
        require("actions", t.action, t.line.value, "twists." + t.name + ".action");
        declare("twists", t.name, t.line.value);
    }
    for (const auto& g : s.lie_algebras)
        declare("lie-algebras", g.name, g.line.value);
    for (const auto& m : s.psi_models) {
        require("algebras", m.fiber, m.line.value, "psi-models." + m.name + ".fiber");
        declare("psi-models", m.name, m.line.value);
    }
}

// Task references are checked against the node so the error points at the field.
void validate_task_references(const Scenario& s, const YAML::Node& tasks, const std::string& source)
{
    std::map<std::string, std::set<std::string>> names;
    for (const auto& x : s.algebras)
        names["algebra"].insert(x.name);
    for (const auto& x : s.hopf)
        names["hopf"].insert(x.name);
    for (const auto& x : s.actions)
        names["action"].insert(x.name);
    for (const auto& x : s.traces)
        names["trace"].insert(x.name);
    for (const auto& x : s.twists)
        names["twist"].insert(x.name);
    for (const auto& x : s.groupoids)
        names["groupoid"].insert(x.name);
    for (const auto& x : s.lie_algebras)
        names["lie"].insert(x.name);
    for (const auto& x : s.psi_models)
        names["model"].insert(x.name);
    static const std::map<std::string, std::string> sections{
        {"algebra", "algebras"}, {"hopf", "hopf"},           {"action", "actions"},   {"trace", "traces"},
        {"twist", "twists"},     {"groupoid", "groupoids"}, {"lie", "lie-algebras"}, {"model", "psi-models"}};
    for (std::size_t i = 0; i < tasks.size(); ++i)
        for (const auto& [key, section] : sections)
            if (const YAML::Node ref = tasks[i][key]; ref && !names[key].contains(ref.Scalar()))
                throw ScenarioError(source, Reader::line_of(ref), "tasks[" + std::to_string(i) + "]." + key,
                                    "'" + ref.Scalar() + "' is not a declared " + section + " entry");
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string source)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw ScenarioError(source, e.mark.line + 1, "", e.msg);
    }
    Reader r(source);
    Scenario s;
    if (root.IsNull())
        return s;
    r.allow_keys(root, "", {"name", "description", "algebras", "groupoids", "hopf", "actions", "traces", "twists",
                            "lie-algebras", "psi-models", "tasks"});
    if (root["name"])
        s.name = r.str(root["name"], "name");
    if (root["description"])
        s.description = r.str(root["description"], "description");
    s.groupoids = read_section<GroupoidDecl>(r, root, "groupoids", read_groupoid);
    s.algebras = read_section<AlgebraSpec>(r, root, "algebras", read_algebra);
    s.hopf = read_section<HopfSpec>(r, root, "hopf", read_hopf);
    s.actions = read_section<ActionSpec>(r, root, "actions", read_action);
    s.traces = read_section<TraceDecl>(r, root, "traces", read_trace);
    s.twists = read_section<TwistSpec>(r, root, "twists", read_twist);
    s.lie_algebras = read_section<LieSpec>(r, root, "lie-algebras", read_lie);
    s.psi_models = read_section<PsiModelSpec>(r, root, "psi-models", read_psi_model);
    if (const YAML::Node tasks = root["tasks"]; tasks && !tasks.IsNull()) {
        r.require_seq(tasks, "tasks");
        for (std::size_t i = 0; i < tasks.size(); ++i)
            s.tasks.push_back(read_task(r, tasks[i], "tasks[" + std::to_string(i) + "]"));
        validate_references(s, source);
        validate_task_references(s, tasks, source);
        return s;
    }
    validate_references(s, source);
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError(path, 0, "", "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

// --- canonical formatting ------------------------------------------------------------------

namespace {

void emit(YAML::Emitter& out, const Rational& r)
{
    if (r.is_integer())
        out << r.str();
    else
        out << YAML::DoubleQuoted << r.str();
}

void emit(YAML::Emitter& out, const ElementSpec& e)
{
    out << YAML::Flow << YAML::BeginMap;
    for (const auto& [name, c] : e) {
        out << YAML::Key << name << YAML::Value;
        emit(out, c);
    }
    out << YAML::EndMap;
}

void emit(YAML::Emitter& out, const std::vector<Rational>& v)
{
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& r : v)
        emit(out, r);
    out << YAML::EndSeq;
}

template <class T>
void emit_indices(YAML::Emitter& out, const std::vector<T>& v)
{
    out << YAML::Flow << YAML::BeginSeq;
    for (auto x : v)
        out << x;
    out << YAML::EndSeq;
}

void emit(YAML::Emitter& out, const ImageTable& t)
{
    out << YAML::BeginMap;
    for (const auto& [name, e] : t) {
        out << YAML::Key << name << YAML::Value;
        emit(out, e);
    }
    out << YAML::EndMap;
}

void emit(YAML::Emitter& out, const FunctionalSpec& f)
{
    out << YAML::BeginMap << YAML::Key << "weight" << YAML::Value << f.weight << YAML::Key << "values"
        << YAML::Value;
    emit(out, f.values);
    out << YAML::EndMap;
}

void emit_range(YAML::Emitter& out, const char* key, const std::optional<std::pair<int, int>>& r)
{
    if (r)
        out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << r->first << r->second
            << YAML::EndSeq;
}

void emit_text(YAML::Emitter& out, const char* key, const std::string& v)
{
    if (!v.empty())
        out << YAML::Key << key << YAML::Value << v;
}

void emit_algebra(YAML::Emitter& out, const AlgebraSpec& a)
{
    out << YAML::BeginMap;
    emit_text(out, "builtin", a.builtin);
    if (!a.basis.empty()) {
        out << YAML::Key << "basis" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& [n, d] : a.basis)
            out << YAML::Flow << YAML::BeginSeq << n << d << YAML::EndSeq;
        out << YAML::EndSeq;
        if (a.unit) {
            out << YAML::Key << "unit" << YAML::Value;
            emit(out, *a.unit);
        }
        if (!a.products.empty()) {
            out << YAML::Key << "products" << YAML::Value << YAML::BeginSeq;
            for (const auto& p : a.products) {
                out << YAML::Flow << YAML::BeginSeq << p.left << p.right;
                emit(out, p.value);
                out << YAML::EndSeq;
            }
            out << YAML::EndSeq;
        }
        if (a.differential) {
            out << YAML::Key << "differential" << YAML::Value;
            emit(out, *a.differential);
        }
        if (a.trace) {
            out << YAML::Key << "trace" << YAML::Value;
            emit(out, *a.trace);
        }
    }
    if (!a.cross_groupoid.empty())
        out << YAML::Key << "cross" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key << "groupoid"
            << YAML::Value << a.cross_groupoid << YAML::Key << "fiber" << YAML::Value << a.cross_fiber
            << YAML::EndMap;
    if (a.rebase)
        out << YAML::Key << "rebase" << YAML::Value << true;
    out << YAML::EndMap;
}

void emit_groupoid(YAML::Emitter& out, const GroupoidDecl& g)
{
    out << YAML::BeginMap;
    if (!g.builtin.empty()) {
        out << YAML::Key << "builtin" << YAML::Value << g.builtin << YAML::EndMap;
        return;
    }
    out << YAML::Key << "points" << YAML::Value << g.points;
    out << YAML::Key << "bundle-order" << YAML::Value << g.bundle_order;
    out << YAML::Key << "generators" << YAML::Value << YAML::BeginSeq;
    for (const auto& x : g.generators) {
        out << YAML::BeginMap << YAML::Key << "name" << YAML::Value << x.name;
        out << YAML::Key << "pairs" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& [a, b] : x.pairs)
            out << YAML::Flow << YAML::BeginSeq << a << b << YAML::EndSeq;
        out << YAML::EndSeq;
        if (!x.bundle.empty()) {
            out << YAML::Key << "bundle" << YAML::Value;
            emit_indices(out, x.bundle);
        }
        if (!x.ell.empty()) {
            out << YAML::Key << "ell" << YAML::Value;
            emit(out, x.ell);
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
}

void emit_hopf(YAML::Emitter& out, const HopfSpec& h)
{
    out << YAML::BeginMap;
    emit_text(out, "builtin", h.builtin);
    if (h.builtin.empty()) {
        out << YAML::Key << "algebra" << YAML::Value << h.algebra;
        out << YAML::Key << "coproduct" << YAML::Value << YAML::BeginMap;
        for (const auto& [name, terms] : h.coproduct) {
            out << YAML::Key << name << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (const auto& t : terms) {
                out << YAML::Flow << YAML::BeginSeq << t.left << t.right;
                emit(out, t.coef);
                out << YAML::EndSeq;
            }
            out << YAML::EndSeq;
        }
        out << YAML::EndMap;
        out << YAML::Key << "counit" << YAML::Value;
        emit(out, h.counit);
        out << YAML::Key << "antipode" << YAML::Value;
        emit(out, h.antipode);
    }
    if (!h.pair.named.empty()) {
        if (h.pair.named != "trivial")
            out << YAML::Key << "pair" << YAML::Value << h.pair.named;
    } else {
        out << YAML::Key << "pair" << YAML::Value << YAML::BeginMap;
        if (h.pair.delta) {
            out << YAML::Key << "delta" << YAML::Value;
            emit(out, *h.pair.delta);
        }
        if (h.pair.sigma) {
            out << YAML::Key << "sigma" << YAML::Value;
            emit(out, *h.pair.sigma);
        }
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
}

void emit_action(YAML::Emitter& out, const ActionSpec& a)
{
    out << YAML::BeginMap;
    out << YAML::Key << "hopf" << YAML::Value << a.hopf;
    out << YAML::Key << "algebra" << YAML::Value << a.algebra;
    out << YAML::Key << "kind" << YAML::Value << a.kind;
    emit_text(out, "nu", a.nu);
    if (a.ell) {
        out << YAML::Key << "ell" << YAML::Value;
        emit(out, *a.ell);
    }
    if (a.bundle) {
        out << YAML::Key << "bundle" << YAML::Value;
        emit_indices(out, *a.bundle);
    }
    if (!a.table.empty()) {
        out << YAML::Key << "table" << YAML::Value << YAML::BeginSeq;
        for (const auto& e : a.table) {
            out << YAML::Flow << YAML::BeginSeq << e.hopf << e.algebra;
            emit(out, e.value);
            out << YAML::EndSeq;
        }
        out << YAML::EndSeq;
    }
    out << YAML::EndMap;
}

void emit_trace(YAML::Emitter& out, const TraceDecl& t)
{
    out << YAML::BeginMap;
    out << YAML::Key << "algebra" << YAML::Value << t.algebra;
    out << YAML::Key << "kind" << YAML::Value << t.kind;
    if (t.kind == "explicit") {
        out << YAML::Key << "weight" << YAML::Value << t.values.weight;
        out << YAML::Key << "values" << YAML::Value;
        emit(out, t.values.values);
    }
    if (t.kind == "unit") {
        out << YAML::Key << "measure" << YAML::Value;
        emit(out, t.measure);
        if (t.fiber_trace) {
            out << YAML::Key << "fiber-trace" << YAML::Value;
            emit(out, *t.fiber_trace);
        }
    }
    out << YAML::EndMap;
}

void emit_twist(YAML::Emitter& out, const TwistSpec& t)
{
    out << YAML::BeginMap;
    out << YAML::Key << "action" << YAML::Value << t.action;
    out << YAML::Key << "kind" << YAML::Value << t.kind;
    emit_text(out, "nu", t.nu);
    if (t.kind == "potential") {
        out << YAML::Key << "potential" << YAML::Value;
        emit(out, t.potential);
    }
    if (t.kind == "bundle-change") {
        out << YAML::Key << "change" << YAML::Value;
        emit_indices(out, t.change);
    }
    if (t.kind == "explicit") {
        out << YAML::Key << "plus" << YAML::Value;
        emit(out, t.plus);
        out << YAML::Key << "minus" << YAML::Value;
        emit(out, t.minus);
    }
    out << YAML::EndMap;
}

void emit_lie(YAML::Emitter& out, const LieSpec& g)
{
    out << YAML::BeginMap;
    emit_text(out, "builtin", g.builtin);
    if (g.builtin.empty()) {
        out << YAML::Key << "dim" << YAML::Value << g.dim;
        if (!g.brackets.empty()) {
            out << YAML::Key << "brackets" << YAML::Value << YAML::BeginSeq;
            for (const auto& b : g.brackets) {
                out << YAML::Flow << YAML::BeginSeq << b.left << b.right << YAML::Flow << YAML::BeginMap;
                for (const auto& [k, c] : b.value) {
                    out << YAML::Key << k << YAML::Value;
                    emit(out, c);
                }
                out << YAML::EndMap << YAML::EndSeq;
            }
            out << YAML::EndSeq;
        }
    }
    if (!g.compact.empty()) {
        out << YAML::Key << "compact" << YAML::Value << YAML::BeginSeq;
        for (const auto& x : g.compact)
            emit(out, x);
        out << YAML::EndSeq;
    }
    if (!g.components.empty()) {
        out << YAML::Key << "components" << YAML::Value << YAML::BeginSeq;
        for (const auto& m : g.components) {
            out << YAML::Flow << YAML::BeginSeq;
            for (const auto& row : m)
                emit(out, row);
            out << YAML::EndSeq;
        }
        out << YAML::EndSeq;
    }
    out << YAML::EndMap;
}

void emit_task(YAML::Emitter& out, const TaskSpec& t)
{
    out << YAML::BeginMap;
    out << YAML::Key << "task" << YAML::Value << t.verb;
    emit_text(out, "label", t.label);
    emit_text(out, "what", t.what);
    emit_text(out, "algebra", t.algebra);
    emit_text(out, "hopf", t.hopf);
    emit_text(out, "action", t.action);
    emit_text(out, "trace", t.trace);
    emit_text(out, "twist", t.twist);
    emit_text(out, "groupoid", t.groupoid);
    emit_text(out, "lie", t.lie);
    emit_text(out, "model", t.model);
    emit_text(out, "invariant", t.invariant);
    emit_range(out, "degrees", t.degrees);
    if (t.normalized)
        out << YAML::Key << "normalized" << YAML::Value << true;
    if (t.window.levels)
        out << YAML::Key << "levels" << YAML::Value << *t.window.levels;
    emit_range(out, "weights", t.window.weights);
    if (t.window.truncate)
        out << YAML::Key << "truncate" << YAML::Value << *t.window.truncate;
    if (!t.tensor.empty()) {
        out << YAML::Key << "tensor" << YAML::Value << YAML::Flow << YAML::BeginMap;
        for (const auto& [legs, c] : t.tensor) {
            std::string key;
            for (std::size_t i = 0; i < legs.size(); ++i)
                key += (i ? "⊗" : "") + legs[i];
            out << YAML::Key << key << YAML::Value;
            emit(out, c);
        }
        out << YAML::EndMap;
    }
    if (t.certificate)
        out << YAML::Key << "certificate" << YAML::Value << true;
    emit_range(out, "k", t.k_range);
    if (t.l != 0)
        out << YAML::Key << "l" << YAML::Value << t.l;
    if (t.seed)
        out << YAML::Key << "seed" << YAML::Value << *t.seed;
    if (t.tau_k) {
        out << YAML::Key << "tau" << YAML::Value << YAML::BeginMap << YAML::Key << "k" << YAML::Value << *t.tau_k;
        out << YAML::Key << "values" << YAML::Value << YAML::BeginSeq;
        for (const auto& e : t.tau) {
            out << YAML::Flow << YAML::BeginSeq;
            emit_indices(out, e.tuple);
            emit(out, e.value);
            out << YAML::EndSeq;
        }
        out << YAML::EndSeq << YAML::EndMap;
    }
    if (t.truncation)
        out << YAML::Key << "truncation" << YAML::Value << *t.truncation;
    if (t.basic)
        out << YAML::Key << "basic" << YAML::Value << true;
    if (t.expect_fail)
        out << YAML::Key << "expect" << YAML::Value << "fail";
    if (t.expect_dims) {
        out << YAML::Key << "expect" << YAML::Value;
        emit_indices(out, *t.expect_dims);
    }
    if (t.expect_certificate)
        out << YAML::Key << "expect-certificate" << YAML::Value << *t.expect_certificate;
    out << YAML::EndMap;
}

void emit_psi_model(YAML::Emitter& out, const PsiModelSpec& m)
{
    out << YAML::BeginMap << YAML::Key << "order" << YAML::Value << m.order << YAML::Key << "fiber" << YAML::Value
        << m.fiber << YAML::EndMap;
}

template <class T>
void emit_section(YAML::Emitter& out, const char* key, const std::vector<T>& items,
                  void (*body)(YAML::Emitter&, const T&))
{
    if (items.empty())
        return;
    out << YAML::Key << key << YAML::Value << YAML::BeginMap;
    for (const auto& x : items) {
        out << YAML::Key << x.name << YAML::Value;
        body(out, x);
    }
    out << YAML::EndMap;
}

}  // namespace

std::string format_scenario(const Scenario& s)
{
    YAML::Emitter out;
    out.SetIndent(2);
    out << YAML::BeginMap;
    emit_text(out, "name", s.name);
    emit_text(out, "description", s.description);
    emit_section(out, "groupoids", s.groupoids, emit_groupoid);
    emit_section(out, "algebras", s.algebras, emit_algebra);
    emit_section(out, "hopf", s.hopf, emit_hopf);
    emit_section(out, "actions", s.actions, emit_action);
    emit_section(out, "traces", s.traces, emit_trace);
    emit_section(out, "twists", s.twists, emit_twist);
    emit_section(out, "lie-algebras", s.lie_algebras, emit_lie);
    emit_section(out, "psi-models", s.psi_models, emit_psi_model);
    out << YAML::Key << "tasks" << YAML::Value << YAML::BeginSeq;
    for (const auto& t : s.tasks)
        emit_task(out, t);
    out << YAML::EndSeq;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace hopfcyc
