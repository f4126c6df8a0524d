#pragma once

#include "hopfcyc/charmap.hpp"
#include "hopfcyc/groupoid.hpp"
#include "hopfcyc/weil.hpp"
#include "hopfcyc/workbench.hpp"

#include <map>
#include <memory>

namespace hopfcyc {

struct ResolvedAlgebra {
    AlgebraPtr algebra;
    std::shared_ptr<const CrossProduct> cross;  // set for cross products
};

struct ResolvedGroupoid {
    GroupoidPtr model;      // null when the generators were rejected
    std::string rejection;  // the rejection witness
};

struct ResolvedHopf {
    HopfPtr hopf;
    ModularPair pair;
};

struct ResolvedAction {
    std::shared_ptr<const HopfAction> action;
    std::string hopf;  // declared Hopf name, for the modular pair
};

struct ResolvedTrace {
    GradedFunctional trace;
};

struct ResolvedTwist {
    TwistCocycle rho;
    std::string action;
};

// Every declaration of a scenario, built once. A declaration that fails to build is kept
// with its error; tasks that use it fail with that message.
class Workspace {
public:
    explicit Workspace(const Scenario& s);

    const ResolvedAlgebra& algebra(const std::string& name) const { return get(algebras_, "algebra", name); }
    const ResolvedGroupoid& groupoid(const std::string& name) const { return get(groupoids_, "groupoid", name); }
    const ResolvedHopf& hopf(const std::string& name) const { return get(hopf_, "Hopf algebra", name); }
    const ResolvedAction& action(const std::string& name) const { return get(actions_, "action", name); }
    const ResolvedTrace& trace(const std::string& name) const { return get(traces_, "trace", name); }
    const ResolvedTwist& twist(const std::string& name) const { return get(twists_, "twist", name); }
    const LieAlgebraData& lie(const std::string& name) const { return get(lie_, "Lie algebra", name); }
    const PsiModel& psi_model(const std::string& name) const { return *get(psi_, "Ψ model", name); }
    const ModularPair& pair_of(const ResolvedAction& a) const { return hopf(a.hopf).pair; }

    template <class T>
    struct Slot {
        std::optional<T> value;
        std::string error;
    };

private:
    template <class T>
    static const T& get(const std::map<std::string, Slot<T>>& m, const char* kind, const std::string& name)
    {
        if (name.empty())
            throw std::invalid_argument(std::string("task needs a ") + kind);
        auto it = m.find(name);
        if (it == m.end())
            throw std::invalid_argument(std::string("no ") + kind + " named '" + name + "'");
        if (!it->second.value)
            throw std::runtime_error(it->second.error);
        return *it->second.value;
    }

    std::map<std::string, Slot<ResolvedAlgebra>> algebras_;
    std::map<std::string, Slot<ResolvedGroupoid>> groupoids_;
    std::map<std::string, Slot<ResolvedHopf>> hopf_;
    std::map<std::string, Slot<ResolvedAction>> actions_;
    std::map<std::string, Slot<ResolvedTrace>> traces_;
    std::map<std::string, Slot<ResolvedTwist>> twists_;
    std::map<std::string, Slot<LieAlgebraData>> lie_;
    std::map<std::string, Slot<std::shared_ptr<PsiModel>>> psi_;
};

// τ from explicit task values.
GroupCochain explicit_tau(const PsiModel& m, const TaskSpec& t);

// χ_π(t), or χ_{π'}(t) - χ_π(t) for a twist; pointers inside CharacteristicMap stay valid
// because the setup is never moved.
struct ChiSetup {
    std::shared_ptr<const HopfAction> action;
    std::optional<HopfAction> twisted;
    ModularPair pair;
    GradedFunctional trace;
    std::unique_ptr<CMCyclicObject> source;
    std::unique_ptr<AlgebraCochains> cochains;
    std::unique_ptr<CharacteristicMap> chi;
    std::unique_ptr<CharacteristicMap> chi_twisted;
    SparseVector tensor;
    int level = 0;
    CheckReport preconditions{"preconditions"};

    SparseVector cochain() const;
};

std::unique_ptr<ChiSetup> make_chi_setup(const Workspace& ws, const TaskSpec& t, bool twisted);

struct BuiltCertificate {
    WindowSpec spec;
    std::unique_ptr<ComplexWindow> window;
    int degree = 0;
    SparseVector phi;
    std::optional<SparseVector> primitive;
    CertificateEvidence evidence;
    std::optional<std::string> error;
    Json window_info;
};

BuiltCertificate build_certificate(const ChiSetup& setup, const TaskSpec& t, const RunOptions& o,
                                   const SparseVector& cochain);
Json certificate_json(const ChiSetup& setup, const BuiltCertificate& c, const std::string& scenario,
                      std::size_t index, const std::string& kind);

}  // namespace hopfcyc
