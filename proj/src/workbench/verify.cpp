#include "workspace.hpp"

namespace hopfcyc {

namespace {

struct ReferenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SparseVector slot_vector(const AlgebraCochains& cc, const ComplexWindow& w, int degree, const Json& entries)
{
    std::map<std::pair<int, int>, Accumulator> parts;
    for (const auto& e : entries) {
        std::vector<std::size_t> tuple;
        for (const auto& name : e.at("tuple"))
            tuple.push_back(cc.algebra().index(name.get<std::string>()));
        const int level = e.at("level").get<int>();
        if (static_cast<int>(tuple.size()) != level + 1)
            throw ReferenceError("entry tuple length does not match its level");
        parts[{level, e.at("column").get<int>()}].add(cc.key_of(tuple),
                                                      Rational::parse(e.at("value").get<std::string>()));
    }
    std::map<std::pair<int, int>, SparseVector> out;
    for (auto& [lq, acc] : parts)
        out[lq] = acc.take();
    return w.to_slot(degree, out);
}

}  // namespace

VerifyOutcome verify_certificate_json(const Scenario& s, const Json& cert)
{
    using Kind = VerifyOutcome::Kind;
    try {
        if (cert.value("scenario", std::string()) != s.name)
            throw ReferenceError("certificate is for scenario '" + cert.value("scenario", std::string()) +
                                 "', not '" + s.name + "'");
        const std::size_t index = cert.at("task").get<std::size_t>();
        if (index >= s.tasks.size())
            throw ReferenceError("scenario has no task " + std::to_string(index));
        const TaskSpec& t = s.tasks[index];
        const std::string kind = cert.at("kind").get<std::string>();
        if (kind != t.verb || (kind != "chi" && kind != "twist-compare"))
            throw ReferenceError("task " + std::to_string(index) + " is a " + t.verb + " task, certificate is for " +
                                 kind);

        const Workspace ws(s);
        auto setup = make_chi_setup(ws, t, kind == "twist-compare");
        if (!setup->preconditions.passed())
            throw ReferenceError("task preconditions fail: " + setup->preconditions.summary());

        WindowSpec spec;
        const Json& win = cert.at("window");
        spec.max_level = win.at("max-level").get<int>();
        spec.min_degree = win.at("min-degree").get<int>();
        spec.max_degree = win.at("max-degree").get<int>();
        spec.internal = std::pair{win.at("internal")[0].get<int>(), win.at("internal")[1].get<int>()};
        const int degree = cert.at("degree").get<int>();
        if (degree - 1 < spec.min_degree || degree > spec.max_degree)
            throw ReferenceError("certificate degree outside its window");
        const ComplexWindow w(*setup->cochains, spec);

        const SparseVector phi = w.to_slot(degree, {{{setup->level, 0}, setup->cochain()}});
        if (slot_vector(*setup->cochains, w, degree, cert.at("cocycle")) != phi)
            throw ReferenceError("certificate cocycle differs from the cochain computed by task " +
                                 std::to_string(index));
        const SparseVector primitive = slot_vector(*setup->cochains, w, degree - 1, cert.at("primitive"));
        if (auto mismatch = verify_certificate(w, degree, primitive, phi))
            return {Kind::kFail, *mismatch};
        return {Kind::kPass, "∂X = φ holds in degree " + std::to_string(degree)};
    } catch (const ReferenceError& e) {
        return {Kind::kReferenceError, e.what()};
    } catch (const Json::exception& e) {
        return {Kind::kReferenceError, std::string("malformed certificate: ") + e.what()};
    } catch (const std::exception& e) {
        return {Kind::kReferenceError, e.what()};
    }
}

}  // namespace hopfcyc
